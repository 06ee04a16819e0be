"""Classification of the length-24 codes that can be residues of extremal
Type II Z4-codes, and their realizability.

Every code satisfying the residue conditions (doubly even, contains 1, dual
minimum weight >= 4) lies in a doubly even self-dual code, so all of them
are reached by walking down through codimension-1 subcodes starting from
the nine self-dual codes. A hyperplane of C containing 1 is the kernel of a
functional f on C with f(1) = 0; only one functional per Aut(C)-orbit is
needed. The conditions only need rechecking for the dual minimum weight.

Statuses are assigned bottom-up: nodes with a weight-4 edge from a
realizable child inherit an explicit extremal code through augmentation,
everything else is decided on its lift space.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .equiv import Perm, automorphism_group, canonical_code, canonical_witness
from .gf2core import (SELF_DUAL_24, BinaryCode, dual, dual_has_no_short_words, min_weight,
                      named_code, ones, rref)
from .lifts import (DEFAULT_BUDGET, DEFAULT_CAP, NonRealizable, Realizable, Unknown, Verdict,
                    build_lift_space, decide_realizability)
from .neighbor import augment_extremal
from .z4core import MonomialMap, Z4Code, apply_monomial, is_extremal

log = logging.getLogger(__name__)

Key = tuple[int, ...]


@dataclass
class CodeRecord:
    key: Key
    code: BinaryCode  # the canonical representative
    min_weight: int
    dual_min_weight: int
    label: str | None = None
    aliases: tuple[str, ...] = ()
    status: Verdict | None = None
    provenance: dict = field(default_factory=dict)

    @property
    def k(self) -> int:
        return self.code.k

    @property
    def realizable(self) -> bool | None:
        if isinstance(self.status, Realizable):
            return True
        if isinstance(self.status, NonRealizable):
            return False
        return None


@dataclass(frozen=True)
class Edge:
    """``sup`` is spanned by an embedded copy of ``sub`` and the vector ``a``.

    ``embed`` carries the canonical representative of ``sub`` onto the
    hyperplane of the canonical representative of ``sup``; ``a`` has weight 4
    whenever one is available (``weight4``)."""

    sub: Key
    sup: Key
    a: int
    embed: Perm
    weight4: bool


@dataclass
class AugmentationDag:
    nodes: dict[Key, CodeRecord]
    edges: list[Edge]

    def by_dimension(self) -> dict[int, list[CodeRecord]]:
        out: dict[int, list[CodeRecord]] = {}
        for rec in self.nodes.values():
            out.setdefault(rec.k, []).append(rec)
        for recs in out.values():
            recs.sort(key=lambda r: r.key)
        return dict(sorted(out.items()))

    def counts(self) -> dict[int, int]:
        return {k: len(v) for k, v in self.by_dimension().items()}

    def children(self, key: Key) -> list[Edge]:
        return [e for e in self.edges if e.sup == key]

    def parents(self, key: Key) -> list[Edge]:
        return [e for e in self.edges if e.sub == key]

    def find(self, code: BinaryCode) -> CodeRecord | None:
        return self.nodes.get(canonical_code(code).basis)

    def label_of(self, label: str) -> CodeRecord:
        for rec in self.nodes.values():
            if rec.label == label or label in rec.aliases:
                return rec
        raise KeyError(label)


def _hyperplane_functionals(code: BinaryCode, gens: Iterable[Perm]) -> list[int]:
    """One nonzero functional per orbit among those vanishing on 1.

    A functional is stored as the bit mask of its values on the basis."""
    k = code.k
    u = code.coordinates(ones(code.n))
    # action on functionals: (s.f)(g_j) = f(s^-1 g_j), linear in f
    mats = []
    for s in gens:
        inv = s.inverse()
        mats.append([code.coordinates(inv(g)) for g in code.basis])

    def act(mat: list[int], f: int) -> int:
        out = 0
        for j, row in enumerate(mat):
            if (row & f).bit_count() & 1:
                out |= 1 << j
        return out

    seen = bytearray(1 << k)
    reps = []
    for f in range(1, 1 << k):
        if seen[f] or (u & f).bit_count() & 1:
            continue
        reps.append(f)
        seen[f] = 1
        stack = [f]
        while stack:
            x = stack.pop()
            for mat in mats:
                y = act(mat, x)
                if not seen[y]:
                    seen[y] = 1
                    stack.append(y)
    return reps


def _kernel(code: BinaryCode, f: int) -> tuple[BinaryCode, int]:
    """The hyperplane ker f and one basis vector outside it."""
    basis = code.basis
    odd = [b for j, b in enumerate(basis) if (f >> j) & 1]
    keep = [b for j, b in enumerate(basis) if not (f >> j) & 1]
    keep += [b ^ odd[0] for b in odd[1:]]
    return BinaryCode(code.n, rref(keep)), odd[0]


def _outside_word(code: BinaryCode, sub: BinaryCode, f: int) -> tuple[int, bool]:
    """A weight-4 word of code \\ sub if any, else a minimum-weight one."""
    best = None
    for w in code.codewords():
        if w and w not in sub:
            if w.bit_count() == 4:
                return w, True
            if best is None or w.bit_count() < best.bit_count():
                best = w
    return best, False


def _record(code: BinaryCode) -> CodeRecord:
    canon = canonical_code(code)
    return CodeRecord(canon.basis, canon, min_weight(canon), min_weight(dual(canon)))


def enumerate_condition_codes(start: Iterable[BinaryCode] | None = None,
                              progress: Callable[[str], None] | None = None) -> AugmentationDag:
    """All inequivalent length-24 codes meeting the residue conditions."""
    if start is None:
        start = [named_code(lbl) for lbl in SELF_DUAL_24]
    nodes: dict[Key, CodeRecord] = {}
    edges: list[Edge] = []
    level: list[Key] = []
    for c in start:
        rec = _record(c)
        if rec.key not in nodes:
            nodes[rec.key] = rec
            level.append(rec.key)
    while level:
        nxt: list[Key] = []
        t0 = time.time()
        for key in sorted(level):
            code = nodes[key].code
            gens, _ = automorphism_group(code)
            for f in _hyperplane_functionals(code, gens):
                sub, _ = _kernel(code, f)
                if not dual_has_no_short_words(sub):
                    continue
                canon, wit = canonical_code(sub), canonical_witness(sub)
                if canon.basis not in nodes:
                    nodes[canon.basis] = CodeRecord(canon.basis, canon, min_weight(canon),
                                                    min_weight(dual(canon)))
                    nxt.append(canon.basis)
                a, w4 = _outside_word(code, sub, f)
                edges.append(Edge(canon.basis, key, a, wit.inverse(), w4))
        if progress and level:
            progress(f"dimension {nodes[level[0]].k}: {len(level)} codes expanded "
                     f"in {time.time() - t0:.1f}s, {len(nxt)} new below")
        level = nxt
    _label_nodes(nodes)
    return AugmentationDag(nodes, edges)


def _label_nodes(nodes: dict[Key, CodeRecord]) -> None:
    from .refdata import TABLE2, TABLE4, table2_code, table4_code
    named = [(lbl, named_code(lbl)) for lbl in SELF_DUAL_24]
    named += [(name, table2_code(name)) for name, _, _ in TABLE2]
    named += [(name, table4_code(name)) for name, *_ in TABLE4]
    for lbl, code in named:
        rec = nodes.get(canonical_code(code).basis)
        if rec is None:
            continue
        if rec.label is None:
            rec.label = lbl
        else:
            rec.aliases += (lbl,)


# ---------------------------------------------------------------------------
# statuses


@dataclass(frozen=True)
class StatusPolicy:
    cap: int = DEFAULT_CAP
    budget: int = DEFAULT_BUDGET
    seed: int = 0


def to_canonical(code: Z4Code, residue_rep: BinaryCode) -> Z4Code:
    """Move a Z4 code with residue equivalent to ``residue_rep`` so that its
    residue becomes the canonical representative."""
    wit = canonical_witness(code.residue)
    out = apply_monomial(code, MonomialMap(wit))
    if out.residue != canonical_code(residue_rep):
        raise RuntimeError("residue does not match the target class")
    return out


def assign_statuses(dag: AugmentationDag, policy: StatusPolicy = StatusPolicy(),
                    progress: Callable[[str], None] | None = None) -> AugmentationDag:
    from .refdata import fig1_code
    c6 = fig1_code()
    seed_rec = dag.find(c6.residue)
    if seed_rec is not None:
        seed_rec.status = Realizable(to_canonical(c6, c6.residue), "seed")
        seed_rec.provenance = {"kind": "seed"}
    w4_children: dict[Key, list[Edge]] = {}
    for e in dag.edges:
        if e.weight4:
            w4_children.setdefault(e.sup, []).append(e)
    for k, recs in dag.by_dimension().items():
        t0 = time.time()
        for rec in recs:
            if rec.status is not None:
                continue
            edge = next((e for e in sorted(w4_children.get(rec.key, []), key=lambda e: e.sub)
                         if dag.nodes[e.sub].realizable), None)
            if edge is not None:
                child = dag.nodes[edge.sub].status.witness
                moved = apply_monomial(child, MonomialMap(edge.embed))
                new, wit = augment_extremal(moved, edge.a, check=False)
                if new.residue != rec.code or not is_extremal(new):
                    raise RuntimeError("augmentation produced a wrong witness")
                rec.status = Realizable(new, "augmentation")
                rec.provenance = {"kind": "augmentation", "from": edge.sub, "a": edge.a,
                                  "embed": edge.embed.images, "b": wit.b}
                continue
            verdict = decide_realizability(rec.code, policy.budget, policy.seed, policy.cap)
            rec.status = verdict
            rec.provenance = {"kind": "lift space", "m": _m_of(verdict)}
        if progress:
            progress(f"dimension {k}: statuses in {time.time() - t0:.1f}s")
    return dag


def _m_of(verdict: Verdict) -> int | None:
    return getattr(verdict, "m", None)


def table1_grid(dag: AugmentationDag) -> dict[int, tuple[int, int, int, int, int]]:
    """k -> (total, R_k8, R_k4, N_k8, N_k4)."""
    grid = {}
    for k, recs in sorted(dag.by_dimension().items(), reverse=True):
        row = [len(recs), 0, 0, 0, 0]
        for r in recs:
            if r.min_weight not in (4, 8):
                raise ValueError(f"unexpected minimum weight {r.min_weight}")
            col = (1 if r.realizable else 3) + (0 if r.min_weight == 8 else 1)
            if r.realizable is None:
                continue
            row[col] += 1
        grid[k] = tuple(row)
    return grid


# ---------------------------------------------------------------------------
# the characterisation of realizable codes


@dataclass
class TheoremReport:
    unreachable_realizable: list[Key]
    realizable_not_upward_closed: list[tuple[Key, Key]]
    nonrealizable_missing_maximal: list[Key]
    table4_reachable_from_realizable: list[Key]
    unknown: list[Key]

    @property
    def ok(self) -> bool:
        return not (self.unreachable_realizable or self.realizable_not_upward_closed
                    or self.nonrealizable_missing_maximal
                    or self.table4_reachable_from_realizable or self.unknown)


def _up_edges(dag: AugmentationDag, weight4_only: bool = True) -> dict[Key, list[Key]]:
    ups: dict[Key, list[Key]] = {}
    for e in dag.edges:
        if e.weight4 or not weight4_only:
            ups.setdefault(e.sub, []).append(e.sup)
    return ups


def _upward(dag: AugmentationDag, starts: Iterable[Key]) -> set[Key]:
    ups = _up_edges(dag)
    seen = set(starts)
    stack = list(seen)
    while stack:
        x = stack.pop()
        for y in ups.get(x, []):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def verify_theorem_3_6(dag: AugmentationDag) -> TheoremReport:
    """Check the three equivalent descriptions of realizability on the DAG.

    (ii) realizable nodes are exactly those reachable by weight-4 steps from
    the realizable minimum-weight-8 nodes; (iii) non-realizable nodes are
    exactly those from which a maximal non-realizable node is reachable."""
    unknown = [k for k, r in dag.nodes.items() if r.realizable is None]
    realizable = {k for k, r in dag.nodes.items() if r.realizable}
    seeds = [k for k in realizable if dag.nodes[k].min_weight == 8]
    reach = _upward(dag, seeds)
    unreachable = sorted(realizable - reach)
    not_closed = sorted((e.sub, e.sup) for e in dag.edges
                        if e.weight4 and e.sub in realizable and e.sup not in realizable)
    table4 = [k for k, r in dag.nodes.items() if r.label and r.label.startswith("N")]
    from_realizable = _upward(dag, realizable)
    t4_bad = sorted(k for k in table4 if k in from_realizable)
    missing = []
    for k, r in dag.nodes.items():
        if r.realizable is False and not (_upward(dag, [k]) & set(table4)):
            missing.append(k)
    return TheoremReport(unreachable, not_closed, sorted(missing), t4_bad, unknown)


def reaches(dag: AugmentationDag, start: Key, goal: Key,
            weight4_only: bool = True) -> list[Key] | None:
    """A path of codimension-1 containments from start to goal, if any;
    by default only weight-4 augmentations are followed."""
    ups = _up_edges(dag, weight4_only)
    prev = {start: None}
    stack = [start]
    while stack:
        x = stack.pop()
        if x == goal:
            path = [x]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            return path[::-1]
        for y in ups.get(x, []):
            if y not in prev:
                prev[y] = x
                stack.append(y)
    return None


def maximal_nonrealizable(dag: AugmentationDag) -> list[CodeRecord]:
    """Non-realizable nodes with no non-realizable weight-4 augmentation."""
    out = []
    for k, r in dag.nodes.items():
        if r.realizable is False and not any(
                e.weight4 and dag.nodes[e.sup].realizable is False for e in dag.parents(k)):
            out.append(r)
    return sorted(out, key=lambda r: (r.k, r.key))


def lift_space_of(rec: CodeRecord):
    return build_lift_space(rec.code)


def witness_for(dag: AugmentationDag, code: BinaryCode) -> Z4Code:
    """The stored extremal witness moved onto the coordinates of ``code``."""
    rec = dag.find(code)
    if rec is None or not rec.realizable:
        raise KeyError("code is not a realizable node")
    perm = canonical_witness(code).inverse()
    out = apply_monomial(rec.status.witness, MonomialMap(perm))
    if out.residue != code:
        raise RuntimeError("witness does not map onto the requested code")
    return out


def table2_witnesses(dag: AugmentationDag) -> dict[str, Z4Code]:
    """Extremal codes whose residues are exactly the realizable
    minimum-weight-8 codes, in the coordinates of the table vectors."""
    from .refdata import TABLE2, table2_code
    return {name: witness_for(dag, table2_code(name)) for name, _, _ in TABLE2}


def deaugmentation_failures(dag: AugmentationDag, limit: int | None = None) -> list[Key]:
    """Realizable nodes whose witness does not de-augment along one of its
    weight-4 words to a realizable node."""
    from .neighbor import deaugment_extremal
    bad = []
    recs = [r for r in sorted(dag.nodes.values(), key=lambda r: (r.k, r.key))
            if r.realizable and r.k >= 7 and r.min_weight == 4]
    for rec in recs[:limit]:
        a = rec.code.words_of_weight(4)[0]
        new, _ = deaugment_extremal(rec.status.witness, a, check=False)
        sub = dag.find(new.residue)
        if sub is None or not sub.realizable or not is_extremal(new):
            bad.append(rec.key)
    return bad


__all__ = ["CodeRecord", "Edge", "AugmentationDag", "StatusPolicy", "enumerate_condition_codes",
           "assign_statuses", "table1_grid", "verify_theorem_3_6", "TheoremReport", "reaches",
           "maximal_nonrealizable", "to_canonical", "lift_space_of", "witness_for",
           "table2_witnesses", "deaugmentation_failures", "Unknown"]
