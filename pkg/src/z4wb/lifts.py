"""Type II lifts of a binary code and their classification up to equivalence.

Fix a code R (doubly even, containing 1, dual minimum weight >= 4) with
reduced echelon basis g_1..g_k and pivots p_1..p_k, and put T = R^perp.
Every Z4-code with residue R and torsion T has generators g_i + 2 x_i with
x_i determined modulo T, hence by the k x k bit matrix P[i][j] = <x_i, g_j>.
Conversely ``x_i = sum_j P[i][j] e_{p_j}`` rebuilds the code from P. The
code is Type II exactly when

* ``P[i][j] + P[j][i] = |g_i & g_j| / 2`` for i < j (orthogonality), and
* ``wt(g_i)/4 + sum_j u_j P[i][j] + P[i][i] = 0`` where 1 = sum u_j g_j
  (Euclidean weights divisible by 8),

all mod 2, so the Type II lifts form an affine space of dimension ``m0``.
Negating coordinate c adds the outer product of column c of the generator
matrix to P; these translations span the negation space N. Points of the
quotient by N (dimension m) are coded by m bits, and a permutation
automorphism of R acts on them by an affine map, read off by decoding,
permuting and re-encoding. Orbits of the group generated by these maps are
the equivalence classes of Type II codes with residue R.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numba
import numpy as np

from .equiv import Perm, automorphism_group
from .gf2core import BinaryCode, CodeError, dot, dual, lowbit, ones, rref, solve_affine
from .z4core import (MonomialMap, Z4Code, apply_monomial, is_extremal,
                     z4_add, z4_from_rows)

DEFAULT_CAP = 24
DEFAULT_BUDGET = 10**6


class LiftError(CodeError):
    """The code cannot be the residue of a Type II code."""


@dataclass(frozen=True)
class AffineMap:
    """z -> shift ^ XOR of columns[i] over the set bits i of z."""

    columns: tuple[int, ...]
    shift: int

    def __call__(self, z: int) -> int:
        out = self.shift
        i = 0
        while z:
            if z & 1:
                out ^= self.columns[i]
            z >>= 1
            i += 1
        return out


@dataclass
class LiftSpace:
    residue: BinaryCode
    base_point: int  # P of the base lift, packed row-major (bit i*k + j)
    directions: tuple[int, ...]  # basis of the homogeneous solutions
    negation_space: tuple[int, ...]  # echelon basis of N
    quotient_basis: tuple[int, ...]  # complement of N inside the directions
    aut_generators: tuple[Perm, ...]
    aut_order: int
    _coords: list[tuple[int, int]] = field(default_factory=list, repr=False)

    @property
    def k(self) -> int:
        return self.residue.k

    @property
    def n(self) -> int:
        return self.residue.n

    @property
    def m0(self) -> int:
        return len(self.directions)

    @property
    def m(self) -> int:
        return len(self.quotient_basis)

    @property
    def predicted_m0(self) -> int:
        return 1 + self.k * (self.k - 1) // 2

    @property
    def negation_dim(self) -> int:
        return len(self.negation_space)

    # -- coordinates ---------------------------------------------------------

    def parameters(self, z: int) -> int:
        p = self.base_point
        i = 0
        while z:
            if z & 1:
                p ^= self.quotient_basis[i]
            z >>= 1
            i += 1
        return p

    def decode_parameters(self, p: int) -> Z4Code:
        k, res = self.k, self.residue
        piv = res.pivots
        rows = []
        for i, g in enumerate(res.basis):
            x = 0
            for j in range(k):
                if (p >> (i * k + j)) & 1:
                    x |= 1 << piv[j]
            rows.append((g, x))
        rows += [(0, t) for t in self._torsion_complement]
        return z4_from_rows(self.n, rows)

    def decode(self, z: int) -> Z4Code:
        """The Type II code at quotient point z (a fixed representative)."""
        return self.decode_parameters(self.parameters(z))

    def encode(self, code: Z4Code) -> int:
        """P of a code with residue R and torsion R^perp."""
        if code.residue != self.residue:
            raise LiftError("code has a different residue")
        k = self.k
        p = 0
        for i, (_, hi) in enumerate(code.gen4):
            for j, g in enumerate(self.residue.basis):
                if dot(hi, g):
                    p |= 1 << (i * k + j)
        return p

    def coordinates(self, p: int) -> int:
        """Quotient point of a parameter matrix (raises if not a Type II point)."""
        v = p ^ self.base_point
        tag = 0
        for e, t in self._coords:
            if (v >> lowbit(e)) & 1:
                v ^= e
                tag ^= t
        if v:
            raise LiftError("parameters do not describe a Type II code with this residue")
        return tag

    def point_of(self, code: Z4Code) -> int:
        return self.coordinates(self.encode(code))

    @cached_property
    def _torsion_complement(self) -> tuple[int, ...]:
        rows = [(g, 0) for g in self.residue.basis] + [(0, t) for t in dual(self.residue).basis]
        return z4_from_rows(self.n, rows).gen2

    # -- group action ----------------------------------------------------------

    def permutation_action(self, perm: Perm) -> AffineMap:
        mono = MonomialMap(perm)

        def image(z: int) -> int:
            return self.point_of(apply_monomial(self.decode(z), mono))

        shift = image(0)
        cols = tuple(image(1 << i) ^ shift for i in range(self.m))
        return AffineMap(cols, shift)

    @cached_property
    def actions(self) -> tuple[AffineMap, ...]:
        return tuple(self.permutation_action(g) for g in self.aut_generators)

    def negation_signs(self, p_from: int, p_to: int) -> int | None:
        """Coordinates whose negation carries parameters p_from to p_to."""
        cols = [self._negation_vector(c) for c in range(self.n)]
        target = p_from ^ p_to
        # solve over the (dependent) column vectors by greedy echelon with tags
        ech: list[tuple[int, int]] = []
        for c, v in enumerate(cols):
            tag = 1 << c
            for e, t in ech:
                if (v >> lowbit(e)) & 1:
                    v ^= e
                    tag ^= t
            if v:
                ech.append((v, tag))
        tag = 0
        for e, t in ech:
            if (target >> lowbit(e)) & 1:
                target ^= e
                tag ^= t
        return tag if target == 0 else None

    def _negation_vector(self, c: int) -> int:
        return negation_vector(self.residue, c)


def negation_vector(residue: BinaryCode, c: int) -> int:
    k = residue.k
    col = [(g >> c) & 1 for g in residue.basis]
    v = 0
    for i in range(k):
        if col[i]:
            for j in range(k):
                if col[j]:
                    v |= 1 << (i * k + j)
    return v


def type2_equations(residue: BinaryCode) -> list[tuple[int, int]]:
    """The GF(2) system on P whose solutions are the Type II lifts."""
    _check_residue(residue)
    g = residue.basis
    k = residue.k
    u = residue.coordinates(ones(residue.n))
    eqs = []
    for i in range(k):
        for j in range(i + 1, k):
            mask = (1 << (i * k + j)) | (1 << (j * k + i))
            eqs.append((mask, ((g[i] & g[j]).bit_count() // 2) & 1))
        mask = 0
        for j in range(k):
            if (u >> j) & 1:
                mask ^= 1 << (i * k + j)
        mask ^= 1 << (i * k + i)
        eqs.append((mask, (g[i].bit_count() // 4) & 1))
    return eqs


def _check_residue(code: BinaryCode) -> None:
    if ones(code.n) not in code:
        raise LiftError("the all-one vector is not in the code")
    if any(b.bit_count() % 4 for b in code.basis) or any(
            dot(x, y) for i, x in enumerate(code.basis) for y in code.basis[i + 1:]):
        raise LiftError("the code is not doubly even")


def build_lift_space(code: BinaryCode, aut: tuple[tuple[Perm, ...], int] | None = None
                     ) -> LiftSpace:
    _check_residue(code)
    k = code.k
    sol = solve_affine(type2_equations(code), k * k)
    if sol is None:
        raise LiftError("no Type II lift exists")
    base, directions = sol
    neg = []
    for c in range(code.n):
        v = negation_vector(code, c)
        for e in neg:
            if (v >> lowbit(e)) & 1:
                v ^= e
        if v:
            neg = [e ^ v if (e >> lowbit(v)) & 1 else e for e in neg] + [v]
    # complement of N inside the direction space, with coordinate tags
    coords: list[tuple[int, int]] = [(e, 0) for e in neg]
    quotient = []
    for d in directions:
        v, tag = d, 0
        for e, t in coords:
            if (v >> lowbit(e)) & 1:
                v ^= e
                tag ^= t
        if v:
            tag ^= 1 << len(quotient)
            coords.append((v, tag))
            quotient.append(d)
    gens, order = aut if aut is not None else automorphism_group(code)
    space = LiftSpace(code, base, tuple(directions), tuple(neg), tuple(quotient),
                      tuple(gens), order)
    space._coords = coords
    return space


def base_type2_lift(code: BinaryCode) -> Z4Code:
    """One Type II code with residue ``code`` (the zero point of the space)."""
    _check_residue(code)
    k = code.k
    sol = solve_affine(type2_equations(code), k * k)
    if sol is None:
        raise LiftError("no Type II lift exists")
    space = LiftSpace(code, sol[0], tuple(sol[1]), (), (), (), 1)
    return space.decode_parameters(sol[0])


# ---------------------------------------------------------------------------
# orbit enumeration


def _byte_tables(actions: Sequence[AffineMap], m: int) -> tuple[np.ndarray, np.ndarray]:
    nb = max(1, (m + 7) // 8)
    tables = np.zeros((len(actions), nb, 256), dtype=np.int64)
    shifts = np.zeros(len(actions), dtype=np.int64)
    for g, act in enumerate(actions):
        shifts[g] = act.shift
        for b in range(nb):
            cols = [act.columns[8 * b + i] if 8 * b + i < m else 0 for i in range(8)]
            row = tables[g, b]
            for v in range(256):
                acc = 0
                for i in range(8):
                    if (v >> i) & 1:
                        acc ^= cols[i]
                row[v] = acc
    return tables, shifts


@numba.njit(cache=True)
def _apply(tables, shifts, g, z):
    out = shifts[g]
    b = 0
    while z:
        out ^= tables[g, b, z & 255]
        z >>= 8
        b += 1
    return out


@numba.njit(cache=True)
def _orbit_scan(m, tables, shifts):
    size = 1 << m
    visited = np.zeros(size, dtype=np.uint8)
    stack = np.empty(size, dtype=np.int32)
    reps = []
    sizes = []
    ngen = shifts.shape[0]
    for start in range(size):
        if visited[start]:
            continue
        visited[start] = 1
        top = 0
        stack[top] = start
        top += 1
        count = 0
        while top:
            top -= 1
            z = stack[top]
            count += 1
            for g in range(ngen):
                w = _apply(tables, shifts, g, z)
                if not visited[w]:
                    visited[w] = 1
                    stack[top] = w
                    top += 1
        reps.append(start)
        sizes.append(count)
    return reps, sizes


@numba.njit(cache=True)
def _orbit_from(m, tables, shifts, start):
    seen = {start: 1}
    stack = [start]
    best = start
    while stack:
        z = stack.pop()
        if z < best:
            best = z
        for g in range(shifts.shape[0]):
            w = _apply(tables, shifts, g, z)
            if w not in seen:
                seen[w] = 1
                stack.append(w)
    return best, len(seen)


@dataclass(frozen=True)
class OrbitEnumeration:
    m: int
    representatives: tuple[int, ...]
    sizes: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.representatives)


def enumerate_orbits(m: int, actions: Sequence[AffineMap], cap: int = DEFAULT_CAP
                     ) -> OrbitEnumeration:
    """Orbit representatives (least point of each orbit) and orbit sizes."""
    if m > cap:
        raise CapExceeded(m, cap)
    if m > 30:
        raise CapExceeded(m, 30)
    tables, shifts = _byte_tables(actions, m)
    if not len(actions):
        tables = np.zeros((0, 1, 256), dtype=np.int64)
    reps, sizes = _orbit_scan(m, tables, shifts)
    return OrbitEnumeration(m, tuple(int(r) for r in reps), tuple(int(s) for s in sizes))


def enumerate_classes(space: LiftSpace, cap: int = DEFAULT_CAP) -> OrbitEnumeration:
    return enumerate_orbits(space.m, space.actions, cap)


def orbit_of(space: LiftSpace, z: int) -> tuple[int, int]:
    """(least point, size) of the orbit through z."""
    tables, shifts = _byte_tables(space.actions, space.m)
    if not len(space.actions):
        return z, 1
    best, size = _orbit_from(space.m, tables, shifts, z)
    return int(best), int(size)


class CapExceeded(RuntimeError):
    def __init__(self, m: int, cap: int):
        super().__init__(f"quotient dimension {m} exceeds the enumeration cap {cap}")
        self.m = m
        self.cap = cap


# ---------------------------------------------------------------------------
# extremality as conditions on the quotient point


class ExtremalityConstraints:
    """Fast extremality test for every point of a lift space.

    For a residue word r the codewords over r are lift(r) + 2t (t in T) and
    their Euclidean weight is wt(r) + 4 * wt((h ^ t) off supp(r)), h being
    the high plane of the lift. For a Type II code only residue words of
    weight 4 and 8 can produce weight below 16 (torsion words give at least
    16 since T has minimum weight at least 4, and the other weights are
    forced up to 16 by divisibility). The condition depends only on the
    syndrome of h off supp(r) with respect to T restricted there, which is
    an affine function of the quotient point:

    * weight 8: the syndrome must be nonzero;
    * weight 4: the coset must have no word of weight 1 (or 0).
    """

    def __init__(self, space: LiftSpace):
        if space.n != 24:
            raise ValueError("constraints are set up for length 24")
        self.space = space
        res = space.residue
        tors = dual(res)
        n, k = space.n, space.k
        piv = res.pivots
        words = [w for w in res.codewords() if w and w.bit_count() <= 8]
        self.words = words
        # carry part of the lift of each word built from 0/1 generator lifts
        base_lifts = [(g, 0) for g in res.basis]
        m = space.m
        offsets = [0]
        bad_tables = []
        shift = np.zeros(len(words), dtype=np.int64)
        cols = np.zeros((m, len(words)), dtype=np.int64)
        for wi, r in enumerate(words):
            coeff = res.coordinates(r)
            carry = (0, 0)
            for i in range(k):
                if (coeff >> i) & 1:
                    carry = z4_add(carry, base_lifts[i])
            off = ones(n) & ~r
            # parity checks of T restricted to the complement of supp(r)
            checks = _restricted_checks(tors.basis, off)
            def syndrome(h: int, checks=checks) -> int:
                s = 0
                for b, c in enumerate(checks):
                    if dot(h, c):
                        s |= 1 << b
                return s

            def high_plane(p: int, coeff=coeff, carry=carry) -> int:
                h = carry[1]
                for i in range(k):
                    if (coeff >> i) & 1:
                        for j in range(k):
                            if (p >> (i * k + j)) & 1:
                                h ^= 1 << piv[j]
                return h

            s0 = syndrome(high_plane(space.base_point))
            shift[wi] = s0
            for d in range(m):
                cols[d, wi] = syndrome(high_plane(space.base_point ^ space.quotient_basis[d])) ^ s0
            bad = np.zeros(1 << len(checks), dtype=np.uint8)
            bad[0] = 1
            if r.bit_count() == 4:
                for j in range(n):
                    if (off >> j) & 1:
                        bad[syndrome(1 << j)] = 1
            bad_tables.append(bad)
            offsets.append(offsets[-1] + len(bad))
        self.shift = shift
        self.cols = cols
        self.offsets = np.array(offsets[:-1], dtype=np.int64)
        self.bad = np.concatenate(bad_tables) if bad_tables else np.zeros(0, dtype=np.uint8)

    def syndromes(self, z: int) -> np.ndarray:
        s = self.shift.copy()
        i = 0
        while z:
            if z & 1:
                s ^= self.cols[i]
            z >>= 1
            i += 1
        return s

    def violations(self, z: int) -> int:
        s = self.syndromes(z)
        return int(self.bad[self.offsets + s].sum())

    def is_extremal(self, z: int) -> bool:
        return self.violations(z) == 0


def _restricted_checks(tors_basis: Sequence[int], off: int) -> list[int]:
    """Basis of the vectors supported on ``off`` orthogonal to T restricted there."""
    restricted = BinaryCode(24, rref(t & off for t in tors_basis))
    return list(rref(v & off for v in dual(restricted).basis))


# ---------------------------------------------------------------------------
# realizability


@dataclass(frozen=True)
class Realizable:
    witness: Z4Code
    method: str
    point: int | None = None
    classes_checked: int | None = None


@dataclass(frozen=True)
class NonRealizable:
    classes_checked: int
    m: int


@dataclass(frozen=True)
class Unknown:
    budget: int
    m: int
    reason: str = ""


Verdict = Realizable | NonRealizable | Unknown


def extremal_classes(space: LiftSpace, enum: OrbitEnumeration) -> list[int]:
    """Representatives whose decoded code is extremal."""
    return [z for z in enum.representatives if is_extremal(space.decode(z))]


def decide_realizability(code: BinaryCode, budget: int = DEFAULT_BUDGET, seed: int = 0,
                         cap: int = DEFAULT_CAP, space: LiftSpace | None = None) -> Verdict:
    if space is None:
        space = build_lift_space(code)
    if space.m <= cap:
        enum = enumerate_classes(space, cap)
        for z in enum.representatives:
            cand = space.decode(z)
            if is_extremal(cand):
                return Realizable(cand, "exhaustive", z, enum.count)
        return NonRealizable(enum.count, space.m)
    z = local_search(space, budget, seed)
    if z is None:
        return Unknown(budget, space.m, "randomized search exhausted its budget")
    cand = space.decode(z)
    if not is_extremal(cand):
        raise RuntimeError("search returned a point that is not extremal")
    return Realizable(cand, f"search(seed={seed})", z)


def local_search(space: LiftSpace, budget: int = DEFAULT_BUDGET, seed: int = 0,
                 noise: float = 0.3, restart: int = 4000) -> int | None:
    """Seeded search for an extremal point.

    Starts from a uniformly random point and repeatedly flips one quotient
    coordinate, choosing among flips that change a randomly picked violated
    condition the one leaving the fewest violations (with probability
    ``noise`` a random such flip instead). Every flip counts against
    ``budget``; the walk restarts from a fresh random point every
    ``restart`` flips.
    """
    cons = ExtremalityConstraints(space)
    rng = np.random.default_rng(seed)
    m = space.m
    if m == 0:
        return 0 if cons.is_extremal(0) else None
    cols, bad, offsets = cons.cols, cons.bad, cons.offsets
    used = 0
    while used < budget:
        z = int(rng.integers(0, 1 << m)) if m < 63 else _random_bits(rng, m)
        s = cons.syndromes(z)
        for _ in range(restart):
            viol = bad[offsets + s]
            if not viol.any():
                return z
            used += 1
            if used > budget:
                return None
            vidx = np.flatnonzero(viol)
            target = vidx[rng.integers(len(vidx))]
            movers = np.flatnonzero(cols[:, target])
            if rng.random() < noise:
                d = int(movers[rng.integers(len(movers))])
            else:
                trial = s[None, :] ^ cols[movers]
                scores = bad[offsets[None, :] + trial].sum(axis=1)
                best = np.flatnonzero(scores == scores.min())
                d = int(movers[best[rng.integers(len(best))]])
            z ^= 1 << d
            s = s ^ cols[d]
    return None


def _random_bits(rng: np.random.Generator, m: int) -> int:
    z = 0
    for i in range(0, m, 32):
        z |= int(rng.integers(0, 1 << 32)) << i
    return z & ((1 << m) - 1)
