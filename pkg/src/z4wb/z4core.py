"""Linear codes over Z4.

A Z4 vector of length n is a pair of bit planes ``(lo, hi)`` with entry
``lo_i + 2*hi_i``; so 1 is ``(1,0)``, 2 is ``(0,1)`` and 3 is ``(1,1)``.
A :class:`Z4Code` is kept in a standard form: the order-4 generators have
low planes equal to the reduced echelon basis of the residue code and high
planes reduced modulo the torsion code, and the order-2 generators ``2t``
are stored by ``t``, the echelon basis of the torsion vectors that vanish on
the residue pivots. Equal codes therefore have equal fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .equiv import Perm
from .gf2core import BinaryCode, BudgetExceeded, CodeError, dual, lowbit, reduce_vector, rref

Z4Vec = tuple[int, int]

# fibers larger than this many torsion words are refused by the exact search
FIBER_BUDGET_DIM = 24
PAIR_BUDGET = 1 << 36


# ---------------------------------------------------------------------------
# vector arithmetic


def z4_vec(entries: Iterable[int] | str) -> Z4Vec:
    if isinstance(entries, str):
        entries = [int(ch) for ch in entries if not ch.isspace()]
    lo = hi = 0
    for i, e in enumerate(entries):
        if e not in (0, 1, 2, 3):
            raise CodeError(f"entry {i} is {e!r}, expected 0..3")
        lo |= (e & 1) << i
        hi |= (e >> 1) << i
    return lo, hi


def z4_entries(x: Z4Vec, n: int) -> list[int]:
    lo, hi = x
    return [((lo >> i) & 1) + 2 * ((hi >> i) & 1) for i in range(n)]


def z4_str(x: Z4Vec, n: int) -> str:
    return "".join(str(e) for e in z4_entries(x, n))


def z4_add(x: Z4Vec, y: Z4Vec) -> Z4Vec:
    return x[0] ^ y[0], x[1] ^ y[1] ^ (x[0] & y[0])


def z4_neg(x: Z4Vec) -> Z4Vec:
    return x[0], x[1] ^ x[0]


def z4_sub(x: Z4Vec, y: Z4Vec) -> Z4Vec:
    return z4_add(x, z4_neg(y))


def z4_double(x: Z4Vec) -> Z4Vec:
    return 0, x[0]


def z4_negate_coords(x: Z4Vec, mask: int) -> Z4Vec:
    return x[0], x[1] ^ (x[0] & mask)


def z4_inner(x: Z4Vec, y: Z4Vec) -> int:
    """Standard inner product in Z4."""
    return ((x[0] & y[0]).bit_count()
            + 2 * ((x[0] & y[1]).bit_count() + (x[1] & y[0]).bit_count())) % 4


def _as_vec(x) -> Z4Vec:
    """A 2-tuple is taken as bit planes; anything else as a list of entries."""
    if isinstance(x, tuple) and len(x) == 2:
        return x
    return z4_vec(x)


def euclidean_weight(x: Z4Vec | Sequence[int] | str) -> int:
    """n1 + 4*n2 + n3."""
    lo, hi = _as_vec(x)
    return lo.bit_count() + 4 * (hi & ~lo).bit_count()


# ---------------------------------------------------------------------------
# the code type


@dataclass(frozen=True)
class Z4Code:
    n: int
    gen4: tuple[Z4Vec, ...]
    gen2: tuple[int, ...]

    @property
    def k1(self) -> int:
        return len(self.gen4)

    @property
    def k2(self) -> int:
        return len(self.gen2)

    @property
    def log2_size(self) -> int:
        return 2 * self.k1 + self.k2

    @cached_property
    def residue(self) -> BinaryCode:
        return BinaryCode(self.n, tuple(g[0] for g in self.gen4))

    @cached_property
    def torsion(self) -> BinaryCode:
        return BinaryCode(self.n, rref([g[0] for g in self.gen4] + list(self.gen2)))

    def rows(self) -> list[Z4Vec]:
        """Generators, order-4 rows first, order-2 rows as ``2t``."""
        return list(self.gen4) + [(0, t) for t in self.gen2]

    def lift(self, r: int) -> Z4Vec:
        """The codeword ``sum c_i gen4_i`` whose residue is ``r``."""
        out = (0, 0)
        for g in self.gen4:
            if (r >> lowbit(g[0])) & 1:
                out = z4_add(out, g)
        if out[0] != r:
            raise CodeError("vector is not in the residue code")
        return out

    def __contains__(self, x: Z4Vec) -> bool:
        lo, hi = x
        if lo not in self.residue:
            return False
        return (hi ^ self.lift(lo)[1]) in self.torsion

    def __repr__(self) -> str:
        return f"Z4Code(n={self.n}, k1={self.k1}, k2={self.k2})"

    def codewords(self) -> Iterable[Z4Vec]:
        """Every codeword (small codes only)."""
        if self.log2_size > 22:
            raise BudgetExceeded(f"refusing to list 2^{self.log2_size} codewords")
        tors = self.torsion.codewords()
        for r in self.residue.codewords():
            base = self.lift(r)
            for t in tors:
                yield base[0], base[1] ^ t


def z4_from_rows(n: int, rows: Iterable[Z4Vec | Sequence[int] | str]) -> Z4Code:
    """Z4 span of ``rows`` in standard form.

    A row is either a ``(lo, hi)`` pair of bit planes or a sequence/string
    of entries in 0..3.
    """
    four: list[Z4Vec] = []  # pivot entry 1, low planes fully reduced
    twos: list[int] = []
    for r in rows:
        if not (isinstance(r, tuple) and len(r) == 2) and len(r) != n:
            raise CodeError(f"row of length {len(r)} in a length-{n} code")
        x = _as_vec(r)
        if (x[0] | x[1]) >> n:
            raise CodeError("row longer than the code length")
        for g in four:
            p = lowbit(g[0])
            if (x[0] >> p) & 1:
                x = z4_sub(x, g) if not (x[1] >> p) & 1 else z4_add(x, g)
        if x[0] == 0:
            if x[1]:
                twos.append(x[1])
            continue
        p = lowbit(x[0])
        if (x[1] >> p) & 1:
            x = z4_neg(x)
        new_four = []
        for g in four:
            if (g[0] >> p) & 1:
                g = z4_sub(g, x) if not (g[1] >> p) & 1 else z4_add(g, x)
            new_four.append(g)
        four = new_four + [x]
    four.sort(key=lambda g: lowbit(g[0]))
    res = tuple(g[0] for g in four)
    tors = rref(list(res) + twos)
    comp = rref(reduce_vector(t, res) for t in tors)
    tors_basis = rref(list(res) + list(comp))
    gen4 = tuple((g[0], reduce_vector(g[1], tors_basis)) for g in four)
    return Z4Code(n, gen4, comp)


def residue(code: Z4Code) -> BinaryCode:
    return code.residue


def torsion(code: Z4Code) -> BinaryCode:
    return code.torsion


def order_two_code(code: BinaryCode) -> Z4Code:
    """The code ``2C``."""
    return z4_from_rows(code.n, [(0, b) for b in code.basis])


def z4_dual(code: Z4Code) -> Z4Code:
    """All y with <x, y> = 0 in Z4 for every codeword x."""
    res = code.residue
    piv = res.pivots
    rows: list[Z4Vec] = []
    for y1 in dual(code.torsion).basis:
        # choose y2 on the residue pivots so that every order-4 row is orthogonal
        y2 = 0
        for (g1, g2), p in zip(code.gen4, piv):
            half = ((g1 & y1).bit_count() // 2 + (g2 & y1).bit_count()) & 1
            if half:
                y2 |= 1 << p
        rows.append((y1, y2))
    rows += [(0, t) for t in dual(res).basis]
    return z4_from_rows(code.n, rows)


def is_self_orthogonal(code: Z4Code) -> bool:
    gens = code.rows()
    return all(z4_inner(x, y) == 0 for i, x in enumerate(gens) for y in gens[i:])


def is_self_dual(code: Z4Code) -> bool:
    return code.log2_size == code.n and is_self_orthogonal(code)


def is_type2(code: Z4Code) -> bool:
    """Self-dual with every Euclidean weight divisible by 8 (checked on generators)."""
    if not is_self_dual(code):
        return False
    return all(euclidean_weight(g) % 8 == 0 for g in code.rows())


def is_type2_exhaustive(code: Z4Code) -> bool:
    """Reference check by listing every codeword."""
    if code.log2_size != code.n:
        return False
    words = list(code.codewords())
    gens = code.rows()
    if any(z4_inner(g, w) for g in gens for w in words):
        return False
    return all(euclidean_weight(w) % 8 == 0 for w in words)


# ---------------------------------------------------------------------------
# minimum Euclidean weight


def _span_array(basis: Sequence[int]) -> np.ndarray:
    arr = np.zeros(1, dtype=np.uint64)
    for b in basis:
        arr = np.concatenate([arr, arr ^ np.uint64(b)])
    return arr


def min_euclidean_weight(code: Z4Code, stop_below: int | None = None) -> int:
    """Exact minimum Euclidean weight over nonzero codewords.

    Codewords are grouped by residue word r. The words over r are
    ``lift(r) + 2t`` with t in the torsion code, and the weight of such a
    word is ``wt(r) + 4 * wt((h ^ t) & ~r)`` where h is the high plane of the
    lift. Residue words are visited by increasing weight, so the scan ends
    once ``wt(r)`` reaches the best value found. With ``stop_below`` the scan
    also ends as soon as a weight below that value is seen (the returned
    value is then an upper bound that is already below the threshold).
    """
    if code.log2_size == 0:
        raise CodeError("the zero code has no minimum weight")
    if code.n > 64:
        raise BudgetExceeded("the vectorised search handles length <= 64")
    tors = code.torsion
    if tors.k > FIBER_BUDGET_DIM:
        raise BudgetExceeded(f"torsion dimension {tors.k} exceeds {FIBER_BUDGET_DIM}")
    t_words = _span_array(tors.basis)
    t_weights = np.bitwise_count(t_words)
    best = 4 * int(t_weights[1:].min()) if tors.k else 4 * code.n + 1
    if stop_below is not None and best < stop_below:
        return best
    if code.k1 > 20 or (1 << code.k1) * len(t_words) > PAIR_BUDGET:
        raise BudgetExceeded("codeword count exceeds the enumeration budget")
    res_words = sorted(code.residue.codewords()[1:], key=lambda r: (r.bit_count(), r))
    for r in res_words:
        w = r.bit_count()
        if w >= best:
            break
        h = code.lift(r)[1]
        off = np.uint64(~r & ((1 << code.n) - 1))
        extra = int(np.bitwise_count((t_words ^ np.uint64(h)) & off).min())
        best = min(best, w + 4 * extra)
        if stop_below is not None and best < stop_below:
            break
    return best


def min_euclidean_weight_bruteforce(code: Z4Code) -> int:
    """Oracle: the minimum over an explicit list of codewords."""
    return min(euclidean_weight(w) for w in code.codewords() if w != (0, 0))


def extremal_bound(n: int) -> int:
    return 8 * (n // 24) + 8


def is_extremal(code: Z4Code) -> bool:
    if not is_type2(code):
        return False
    bound = extremal_bound(code.n)
    return min_euclidean_weight(code, stop_below=bound) == bound


# ---------------------------------------------------------------------------
# monomial maps


@dataclass(frozen=True)
class MonomialMap:
    """Negate the coordinates in ``signs``, then permute by ``perm``."""

    perm: Perm
    signs: int = 0

    def __call__(self, x: Z4Vec) -> Z4Vec:
        lo, hi = z4_negate_coords(x, self.signs)
        return self.perm(lo), self.perm(hi)

    def inverse(self) -> "MonomialMap":
        return MonomialMap(self.perm.inverse(), self.perm(self.signs))

    @classmethod
    def identity(cls, n: int) -> "MonomialMap":
        return cls(Perm.identity(n), 0)


def apply_monomial(code: Z4Code, m: MonomialMap) -> Z4Code:
    return z4_from_rows(code.n, [m(x) for x in code.rows()])


def negate_coordinates(code: Z4Code, mask: int) -> Z4Code:
    return apply_monomial(code, MonomialMap(Perm.identity(code.n), mask))


# ---------------------------------------------------------------------------
# text format


def format_z4(code: Z4Code) -> str:
    lines = [f"z4 {code.n} {code.k1} {code.k2}"]
    lines += [z4_str(x, code.n) for x in code.rows()]
    return "\n".join(lines) + "\n"


def parse_z4(text: str) -> Z4Code:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise CodeError("empty input")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "z4":
        raise CodeError(f"bad header {lines[0]!r}; expected 'z4 <n> <k1> <k2>'")
    try:
        n, k1, k2 = (int(v) for v in head[1:])
    except ValueError as exc:
        raise CodeError(f"bad header {lines[0]!r}") from exc
    body = lines[1:]
    if len(body) != k1 + k2:
        raise CodeError(f"header announces {k1 + k2} rows, found {len(body)}")
    for ln in body:
        if len(ln) != n or set(ln) - set("0123"):
            raise CodeError(f"bad row {ln!r}")
    code = z4_from_rows(n, [z4_vec(ln) for ln in body])
    if (code.k1, code.k2) != (k1, k2):
        raise CodeError(f"rows generate a code of type 4^{code.k1} 2^{code.k2}, "
                        f"header says 4^{k1} 2^{k2}")
    return code
