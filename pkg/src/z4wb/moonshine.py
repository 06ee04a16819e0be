"""Code-level calculus for length-48 triply even codes.

Verdicts are only issued through decidable rules: the necessary conditions
(triply even, contains 1, dual minimum weight >= 4, dimension >= 7), the
doubling rule (the doubling of a length-24 code B is a moonshine code iff B
is the residue of an extremal Type II Z4-code) and the weight-8 rule
(adding xi to a moonshine code D keeps it a moonshine code when the span is
triply even and xi + D has minimum weight 8). Everything else is Unknown.
Each verdict carries a justification that :func:`replay` rechecks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .equiv import are_equivalent
from .gf2core import (BinaryCode, CodeError, _to_words, block_weights, divisibility,
                      dual_has_no_short_words, iter_span_blocks, min_weight, ones, rref,
                      satisfies_residue_conditions, span_with)
from .lifts import NonRealizable, Realizable, decide_realizability
from .neighbor import deaugment_extremal
from .z4core import MonomialMap, Z4Code, apply_monomial, is_extremal

D_LENGTH = 48
MIN_DIM = 7


class MoonshineError(CodeError):
    """A precondition of a moonshine rule fails."""


def map_d(x: int, n: int) -> int:
    """(a1, ..., an) -> (a1, a1, a2, a2, ..., an, an)."""
    out = 0
    for i in range(n):
        if (x >> i) & 1:
            out |= 3 << (2 * i)
    return out


def map_l(x: int, n: int) -> int:
    """(a1, ..., an) -> (a1, 0, a2, 0, ..., an, 0)."""
    out = 0
    for i in range(n):
        if (x >> i) & 1:
            out |= 1 << (2 * i)
    return out


def doubling(code: BinaryCode) -> BinaryCode:
    """Span of the doubled code and l(1)."""
    n = code.n
    rows = [map_d(b, n) for b in code.basis] + [map_l(ones(n), n)]
    return BinaryCode(2 * n, rref(rows))


def undouble(code: BinaryCode) -> BinaryCode | None:
    """B with doubling(B) == code, if the code is a doubling in these coordinates."""
    if code.n % 2 or map_l(ones(code.n // 2), code.n // 2) not in code:
        return None
    n = code.n // 2
    even = 0
    for i in range(n):
        even |= 1 << (2 * i)
    rows = []
    for w in code.codewords():
        if ((w >> 1) & even) == (w & even):
            rows.append(sum(1 << i for i in range(n) if (w >> (2 * i)) & 1))
    b = BinaryCode(n, rref(rows))
    return b if doubling(b) == code else None


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class DoublingOfRealizable:
    b: BinaryCode
    witness: Z4Code


@dataclass(frozen=True)
class Weight8AugmentationOf:
    base: "Moonshine"
    xi: int


@dataclass(frozen=True)
class FailsLemma43:
    condition: str


@dataclass(frozen=True)
class DoublingOfNonRealizable:
    b: BinaryCode
    certificate: NonRealizable | str  # exhaustive enumeration, or the failed residue condition


@dataclass(frozen=True)
class Moonshine:
    code: BinaryCode
    justification: Union[DoublingOfRealizable, Weight8AugmentationOf]


@dataclass(frozen=True)
class NotMoonshine:
    code: BinaryCode
    reason: Union[FailsLemma43, DoublingOfNonRealizable]


@dataclass(frozen=True)
class UnknownMoonshine:
    code: BinaryCode
    note: str = ""


MoonshineStatus = Union[Moonshine, NotMoonshine, UnknownMoonshine]


@dataclass(frozen=True)
class TriplyEvenCandidate:
    code: BinaryCode
    triply_even: bool
    contains_one: bool
    dual_min_ge4: bool
    status: MoonshineStatus = field(compare=False)


def _dual_min_ge4(code: BinaryCode) -> bool:
    if not dual_has_no_short_words(code):
        return False
    cols = [0] * code.n
    for j, b in enumerate(code.basis):
        for i in range(code.n):
            if (b >> i) & 1:
                cols[i] |= 1 << j
    index = {c: i for i, c in enumerate(cols)}
    for i in range(code.n):
        for j in range(i + 1, code.n):
            if index.get(cols[i] ^ cols[j], -1) > j:
                return False
    return True


def moonshine_candidate_check(code: BinaryCode) -> TriplyEvenCandidate:
    if code.n != D_LENGTH:
        raise CodeError(f"expected length {D_LENGTH}, got {code.n}")
    triply = code.k > 0 and divisibility(code) == 8
    has_one = ones(code.n) in code
    dual_ok = _dual_min_ge4(code)
    failed = [name for name, ok in (("triply_even", triply), ("contains_one", has_one),
                                    ("dual_min_ge4", dual_ok), ("dim_ge7", code.k >= MIN_DIM))
              if not ok]
    if failed:
        status = NotMoonshine(code, FailsLemma43(failed[0]))
    else:
        status = UnknownMoonshine(code, "necessary conditions hold")
    return TriplyEvenCandidate(code, triply, has_one, dual_ok, status)


def doubling_status(b: BinaryCode, dag=None, witness: Z4Code | None = None,
                    seed: int = 0) -> MoonshineStatus:
    """Verdict for the doubling of a length-24 doubly even code.

    The realizability of b is read from ``dag`` when given, else taken from
    ``witness`` (an extremal code with residue b), else decided directly."""
    if b.n != D_LENGTH // 2:
        raise CodeError(f"expected length {D_LENGTH // 2}, got {b.n}")
    if divisibility(b) < 4:
        raise MoonshineError("b is not doubly even")
    d = doubling(b)
    cand = moonshine_candidate_check(d)
    if isinstance(cand.status, NotMoonshine):
        return cand.status
    if not satisfies_residue_conditions(b):
        return NotMoonshine(d, DoublingOfNonRealizable(b, "residue conditions"))
    if witness is not None:
        if witness.residue != b or not is_extremal(witness):
            raise MoonshineError("witness is not an extremal code with residue b")
        return Moonshine(d, DoublingOfRealizable(b, witness))
    if dag is not None:
        from .classify import witness_for
        rec = dag.find(b)
        if rec is None:
            raise MoonshineError("b is missing from the classification")
        verdict = rec.status
        if isinstance(verdict, Realizable):
            return Moonshine(d, DoublingOfRealizable(b, witness_for(dag, b)))
    else:
        verdict = decide_realizability(b, seed=seed)
        if isinstance(verdict, Realizable):
            return Moonshine(d, DoublingOfRealizable(b, verdict.witness))
    if isinstance(verdict, NonRealizable):
        return NotMoonshine(d, DoublingOfNonRealizable(b, verdict))
    return UnknownMoonshine(d, "realizability of b is undecided")


def known_witness(b: BinaryCode) -> Z4Code | None:
    """An extremal code with residue b built from the stored generator
    matrices, when b is equivalent to one of their residues."""
    from .refdata import APPENDIX_BLOCKS, appendix_code, fig1_code
    for code in [fig1_code()] + [appendix_code(lbl) for lbl in APPENDIX_BLOCKS]:
        if code.residue.k != b.k:
            continue
        p = are_equivalent(code.residue, b)
        if p is not None:
            return apply_monomial(code, MonomialMap(p))
    return None


# ---------------------------------------------------------------------------
# weight-8 augmentation


def coset_min_weight(code: BinaryCode, xi: int) -> int:
    shift = _to_words(xi, max(1, (code.n + 63) // 64))
    best = None
    for block in iter_span_blocks(code.basis, code.n):
        w = int(block_weights(block ^ shift).min())
        best = w if best is None else min(best, w)
    return best


def weight8_augment_status(status: MoonshineStatus, xi: int) -> MoonshineStatus:
    if not isinstance(status, Moonshine):
        raise MoonshineError("the base code is not known to be a moonshine code")
    code = status.code
    if xi in code:
        raise MoonshineError("xi lies in the code")
    new = span_with(code, xi)
    if divisibility(new) != 8:
        raise MoonshineError("the span with xi is not triply even")
    if coset_min_weight(code, xi) != 8:
        return UnknownMoonshine(new, "coset minimum weight is not 8")
    return Moonshine(new, Weight8AugmentationOf(status, xi))


def weight8_deaugment_candidates(code: BinaryCode, eta: int) -> list[BinaryCode]:
    """Every index-2 subcode D' with D' + eta = D; at least one of them is a
    moonshine code when D is, but which one is not decided here."""
    if eta.bit_count() != 8:
        raise MoonshineError(f"eta has weight {eta.bit_count()}, expected 8")
    if eta not in code:
        raise MoonshineError("eta is not in the code")
    k = code.k
    e = code.coordinates(eta)
    out = []
    for f in range(1 << k):
        if not (e & f).bit_count() & 1:
            continue
        odd = [b for j, b in enumerate(code.basis) if (f >> j) & 1]
        keep = [b for j, b in enumerate(code.basis) if not (f >> j) & 1]
        keep += [b ^ odd[0] for b in odd[1:]]
        out.append(BinaryCode(code.n, rref(keep)))
    return out


# ---------------------------------------------------------------------------
# replay and decomposition


def replay(status: MoonshineStatus) -> bool:
    """Recheck a justification from its payload alone."""
    if isinstance(status, Moonshine):
        j = status.justification
        if isinstance(j, DoublingOfRealizable):
            return (j.witness.residue == j.b and is_extremal(j.witness)
                    and doubling(j.b) == status.code)
        return (replay(j.base) and j.xi not in j.base.code
                and span_with(j.base.code, j.xi) == status.code
                and divisibility(status.code) == 8
                and coset_min_weight(j.base.code, j.xi) == 8)
    if isinstance(status, NotMoonshine):
        r = status.reason
        if isinstance(r, FailsLemma43):
            cand = moonshine_candidate_check(status.code)
            return isinstance(cand.status, NotMoonshine)
        if doubling(r.b) != status.code:
            return False
        if isinstance(r.certificate, str):
            return not satisfies_residue_conditions(r.b)
        return isinstance(r.certificate, NonRealizable) and r.certificate.classes_checked > 0
    return False


@dataclass(frozen=True)
class Decomposition:
    """A minimum-weight-16 moonshine code and weight-8 vectors whose
    successive spans end at the decomposed code."""

    base: Moonshine
    steps: tuple[int, ...]


def weight16_decomposition(status: Moonshine) -> Decomposition:
    """Rewrite a justification as weight-8 augmentations of a moonshine code
    of minimum weight 16.

    The doubling of a residue b with a weight-4 word a splits as the doubling
    of the de-augmented residue b' plus d(a); repeating until b' has minimum
    weight 8 leaves a doubling of minimum weight 16."""
    j = status.justification
    if isinstance(j, Weight8AugmentationOf):
        inner = weight16_decomposition(j.base)
        return Decomposition(inner.base, inner.steps + (j.xi,))
    b, w = j.b, j.witness
    steps: list[int] = []
    while min_weight(b, stop_at=4) == 4:
        a = b.words_of_weight(4)[0]
        w, _ = deaugment_extremal(w, a, check=False)
        b = w.residue
        steps.append(map_d(a, b.n))
    base = Moonshine(doubling(b), DoublingOfRealizable(b, w))
    return Decomposition(base, tuple(reversed(steps)))


def check_decomposition(dec: Decomposition, target: BinaryCode) -> bool:
    if not replay(dec.base) or min_weight(dec.base.code) != 16:
        return False
    cur: MoonshineStatus = dec.base
    for xi in dec.steps:
        if xi.bit_count() != 8:
            return False
        cur = weight8_augment_status(cur, xi)
        if not isinstance(cur, Moonshine):
            return False
    return cur.code == target


# ---------------------------------------------------------------------------
# the three direct sums of doublings


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: BinaryCode
    rhs: BinaryCode
    coset_min_weight: int
    status: MoonshineStatus

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs and self.coset_min_weight == 8 and isinstance(
            self.status, Moonshine)


def direct_sum_identities(seed: int = 0) -> list[IdentityCheck]:
    """Three direct sums of doublings reached from doublings of self-dual
    codes by one weight-8 augmentation each."""
    from .gf2core import direct_sum, named_code
    e8, d16 = named_code("e8"), named_code("d16plus")
    tail = map_l(ones(8) << 16, 24)    # ((0,0)^16, (1,0)^8)
    head = map_l(ones(8), 24)          # ((1,0)^8, (0,0)^16)
    d_e8 = doubling(e8)

    def base(b: BinaryCode) -> MoonshineStatus:
        return doubling_status(b, witness=known_witness(b), seed=seed)

    out = []
    s1 = base(direct_sum(e8, e8, e8))
    r1 = direct_sum(doubling(direct_sum(e8, e8)), d_e8)
    st1 = weight8_augment_status(s1, tail)
    out.append(IdentityCheck("D(e8+e8)+D(e8)", st1.code, r1, coset_min_weight(s1.code, tail),
                             st1))
    r2 = direct_sum(d_e8, d_e8, d_e8)
    st2 = weight8_augment_status(st1, head)
    out.append(IdentityCheck("D(e8)+D(e8)+D(e8)", st2.code, r2,
                             coset_min_weight(st1.code, head), st2))
    s3 = base(direct_sum(d16, e8))
    r3 = direct_sum(doubling(d16), d_e8)
    st3 = weight8_augment_status(s3, tail)
    out.append(IdentityCheck("D(d16+)+D(e8)", st3.code, r3, coset_min_weight(s3.code, tail),
                             st3))
    return out


def census(dag) -> dict[str, int]:
    counts = {"Moonshine": 0, "NotMoonshine": 0, "Unknown": 0}
    for rec in dag.nodes.values():
        st = doubling_status(rec.code, dag)
        key = {Moonshine: "Moonshine", NotMoonshine: "NotMoonshine"}.get(type(st), "Unknown")
        counts[key] += 1
    return counts
