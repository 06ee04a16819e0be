"""Binary linear codes over GF(2).

Vectors are Python ints used as bit masks: bit ``i`` is coordinate ``i``
(coordinate 0 is the leftmost character in the text format). A
:class:`BinaryCode` stores its basis in reduced row-echelon form, pivots
taken at the lowest set bit of each row, so two codes with the same length
are equal as sets exactly when their stored bases are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_LENGTH = 128
ENUM_BUDGET_DIM = 28
_BLOCK_BITS = 18


class CodeError(ValueError):
    """Malformed input to a code constructor or parser."""


class BudgetExceeded(RuntimeError):
    """An exhaustive computation would exceed its configured budget."""


# ---------------------------------------------------------------------------
# bit-vector helpers


def vec(bits: Iterable[int] | str) -> int:
    """Pack a 0/1 sequence (or a string of 0/1 characters) into an int."""
    if isinstance(bits, str):
        bits = [int(ch) for ch in bits if ch in "01"]
    v = 0
    for i, b in enumerate(bits):
        if b not in (0, 1):
            raise CodeError(f"bit {i} is {b!r}, expected 0 or 1")
        if b:
            v |= 1 << i
    return v


def support(v: int) -> list[int]:
    out = []
    i = 0
    while v:
        if v & 1:
            out.append(i)
        v >>= 1
        i += 1
    return out


def to_bits(v: int, n: int) -> list[int]:
    return [(v >> i) & 1 for i in range(n)]


def to_str(v: int, n: int) -> str:
    return "".join("1" if (v >> i) & 1 else "0" for i in range(n))


def wt(v: int) -> int:
    return v.bit_count()


def dot(x: int, y: int) -> int:
    return (x & y).bit_count() & 1


def ones(n: int) -> int:
    return (1 << n) - 1


def lowbit(v: int) -> int:
    return (v & -v).bit_length() - 1


def permute_vector(v: int, images: Sequence[int]) -> int:
    """Move coordinate ``i`` of ``v`` to coordinate ``images[i]``."""
    out = 0
    for i in support(v):
        out |= 1 << images[i]
    return out


def rref(rows: Iterable[int]) -> tuple[int, ...]:
    """Reduced row-echelon basis of the span of ``rows``."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            if (r >> lowbit(b)) & 1:
                r ^= b
        if not r:
            continue
        p = lowbit(r)
        basis = [b ^ r if (b >> p) & 1 else b for b in basis]
        basis.append(r)
    basis.sort(key=lowbit)
    return tuple(basis)


def reduce_vector(v: int, basis: Sequence[int]) -> int:
    """Reduce ``v`` against an echelon basis; zero iff ``v`` is in the span."""
    for b in basis:
        if (v >> lowbit(b)) & 1:
            v ^= b
    return v


def solve_combination(basis: Sequence[int], v: int) -> int | None:
    """Return a bit mask ``c`` with ``XOR_{i in c} basis[i] == v``, or None.

    ``basis`` must be linearly independent but need not be in echelon form.
    """
    ech: list[tuple[int, int]] = []  # (vector, combination mask)
    for i, b in enumerate(basis):
        tag = 1 << i
        for e, t in ech:
            if (b >> lowbit(e)) & 1:
                b ^= e
                tag ^= t
        if not b:
            raise CodeError("basis vectors are linearly dependent")
        ech.append((b, tag))
    tag = 0
    for e, t in ech:
        if (v >> lowbit(e)) & 1:
            v ^= e
            tag ^= t
    return tag if v == 0 else None


def solve_affine(equations: Iterable[tuple[int, int]], nvars: int
                 ) -> tuple[int, list[int]] | None:
    """Solve a linear system over GF(2).

    Each equation is ``(coefficient mask, rhs bit)``. Returns a particular
    solution (free variables set to zero) and a basis of the homogeneous
    solution space, or None when the system is inconsistent.
    """
    pivots: dict[int, tuple[int, int]] = {}  # pivot variable -> (mask, rhs)
    for mask, rhs in equations:
        for p, (m, r) in pivots.items():
            if (mask >> p) & 1:
                mask ^= m
                rhs ^= r
        if not mask:
            if rhs:
                return None
            continue
        p = lowbit(mask)
        for q, (m, r) in list(pivots.items()):
            if (m >> p) & 1:
                pivots[q] = (m ^ mask, r ^ rhs)
        pivots[p] = (mask, rhs)
    particular = 0
    for p, (_, r) in pivots.items():
        if r:
            particular |= 1 << p
    null = []
    for f in range(nvars):
        if f in pivots:
            continue
        v = 1 << f
        for p, (m, _) in pivots.items():
            if (m >> f) & 1:
                v |= 1 << p
        null.append(v)
    return particular, null


def _to_words(v: int, width: int) -> np.ndarray:
    return np.array([(v >> (64 * w)) & 0xFFFFFFFFFFFFFFFF for w in range(width)],
                    dtype=np.uint64)


def iter_span_blocks(basis: Sequence[int], n: int,
                     block_bits: int = _BLOCK_BITS) -> Iterator[np.ndarray]:
    """Yield every vector of the span as rows of ``(B, W)`` uint64 arrays.

    The low ``block_bits`` basis vectors are expanded by XOR-doubling into one
    block; the remaining ones are walked in Gray-code order, each step
    XOR-ing a single basis vector into the whole block.
    """
    width = max(1, (n + 63) // 64)
    low, high = list(basis[:block_bits]), list(basis[block_bits:])
    block = np.zeros((1, width), dtype=np.uint64)
    for b in low:
        block = np.concatenate([block, block ^ _to_words(b, width)])
    yield block
    offset = np.zeros(width, dtype=np.uint64)
    for step in range(1, 1 << len(high)):
        flip = (step & -step).bit_length() - 1
        offset ^= _to_words(high[flip], width)
        yield block ^ offset


def block_weights(block: np.ndarray) -> np.ndarray:
    return np.bitwise_count(block).sum(axis=1, dtype=np.int64)


# ---------------------------------------------------------------------------
# the code type


@dataclass(frozen=True)
class BinaryCode:
    n: int
    basis: tuple[int, ...]

    def __post_init__(self):
        if not 0 < self.n <= MAX_LENGTH:
            raise CodeError(f"length {self.n} outside 1..{MAX_LENGTH}")
        if any(b >> self.n for b in self.basis):
            raise CodeError("basis vector longer than the code length")

    @property
    def k(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return 1 << self.k

    def __contains__(self, v: int) -> bool:
        return reduce_vector(v, self.basis) == 0

    def __le__(self, other: "BinaryCode") -> bool:
        return self.n == other.n and all(b in other for b in self.basis)

    def __repr__(self) -> str:
        return f"BinaryCode(n={self.n}, k={self.k})"

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(lowbit(b) for b in self.basis)

    def matrix(self) -> np.ndarray:
        """Generator matrix as a ``(k, n)`` uint8 array."""
        return np.array([to_bits(b, self.n) for b in self.basis],
                        dtype=np.uint8).reshape(self.k, self.n)

    def codewords(self) -> list[int]:
        """All 2^k codewords as ints, in doubling order (small codes only)."""
        if self.k > 20:
            raise BudgetExceeded(f"refusing to list 2^{self.k} codewords")
        words = [0]
        for b in self.basis:
            words += [w ^ b for w in words]
        return words

    def words_of_weight(self, w: int) -> list[int]:
        return [c for c in self.codewords() if c.bit_count() == w]

    def coordinates(self, v: int) -> int:
        """Coefficient mask of ``v`` in the stored basis (raises if absent)."""
        tag = 0
        for i, b in enumerate(self.basis):
            if (v >> lowbit(b)) & 1:
                v ^= b
                tag |= 1 << i
        if v:
            raise CodeError("vector is not a codeword")
        return tag

    def permuted(self, images: Sequence[int]) -> "BinaryCode":
        return from_rows(self.n, [permute_vector(b, images) for b in self.basis])

    @cached_property
    def weight_distribution(self) -> "WeightDistribution":
        return weight_distribution(self)


@dataclass(frozen=True)
class WeightDistribution:
    counts: tuple[int, ...]

    def __getitem__(self, w: int) -> int:
        return self.counts[w] if 0 <= w < len(self.counts) else 0

    def support(self) -> list[int]:
        return [w for w, c in enumerate(self.counts) if c]

    @property
    def total(self) -> int:
        return sum(self.counts)


# ---------------------------------------------------------------------------
# operations


def from_rows(n: int, rows: Iterable[int | Sequence[int] | str]) -> BinaryCode:
    """Span of ``rows``; each row may be an int mask, a 0/1 sequence or a string."""
    packed = []
    for r in rows:
        if not isinstance(r, int):
            bits = [int(ch) for ch in r] if isinstance(r, str) else list(r)
            if len(bits) != n:
                raise CodeError(f"row of length {len(bits)} in a length-{n} code")
            r = vec(bits)
        elif r >> n:
            raise CodeError(f"row {r:#x} does not fit in length {n}")
        packed.append(r)
    return BinaryCode(n, rref(packed))


def zero_code(n: int) -> BinaryCode:
    return BinaryCode(n, ())


def dual(code: BinaryCode) -> BinaryCode:
    piv = code.pivots
    rows = []
    for j in range(code.n):
        if j in piv:
            continue
        v = 1 << j
        for b, p in zip(code.basis, piv):
            if (b >> j) & 1:
                v |= 1 << p
        rows.append(v)
    return BinaryCode(code.n, rref(rows))


def weight_distribution(code: BinaryCode) -> WeightDistribution:
    if code.k > ENUM_BUDGET_DIM:
        raise BudgetExceeded(f"dimension {code.k} exceeds enumeration budget "
                             f"{ENUM_BUDGET_DIM}")
    counts = np.zeros(code.n + 1, dtype=np.int64)
    for block in iter_span_blocks(code.basis, code.n):
        counts += np.bincount(block_weights(block), minlength=code.n + 1)
    return WeightDistribution(tuple(int(c) for c in counts))


def min_weight(code: BinaryCode, stop_at: int = 1) -> int:
    """Smallest nonzero weight; the scan stops early once ``stop_at`` is seen."""
    if code.k == 0:
        raise CodeError("the zero code has no minimum weight")
    if code.k > ENUM_BUDGET_DIM:
        raise BudgetExceeded(f"dimension {code.k} exceeds enumeration budget")
    best = code.n + 1
    for block in iter_span_blocks(code.basis, code.n):
        w = block_weights(block)
        w = w[w > 0]
        if w.size:
            best = min(best, int(w.min()))
        if best <= stop_at:
            break
    return best


def divisibility(code: BinaryCode) -> int:
    """Largest 2^e (e <= 3) dividing every codeword weight.

    Only the basis is inspected: for e <= 2 the usual self-orthogonality
    identities suffice, and for e = 3 the full distribution is consulted.
    """
    if code.k == 0:
        raise CodeError("divisibility of the zero code is undefined")
    if any(b.bit_count() % 2 for b in code.basis):
        return 1
    doubly = all(b.bit_count() % 4 == 0 for b in code.basis) and all(
        dot(x, y) == 0 for i, x in enumerate(code.basis) for y in code.basis[i + 1:])
    if not doubly:
        return 2
    if all(w % 8 == 0 for w in code.weight_distribution.support()):
        return 8
    return 4


def is_self_orthogonal(code: BinaryCode) -> bool:
    return all(dot(x, y) == 0 for x in code.basis for y in code.basis)


def is_self_dual(code: BinaryCode) -> bool:
    return 2 * code.k == code.n and is_self_orthogonal(code)


def dual_has_no_short_words(code: BinaryCode) -> bool:
    """True iff the dual has no word of weight 1 or 2.

    Weight-1 dual words are zero columns and weight-2 dual words are pairs of
    equal columns of any generator matrix.
    """
    cols = [tuple((b >> j) & 1 for b in code.basis) for j in range(code.n)]
    zero = (0,) * code.k
    return zero not in cols and len(set(cols)) == code.n


def satisfies_residue_conditions(code: BinaryCode) -> bool:
    """Doubly even, contains the all-one vector, dual minimum weight >= 4."""
    if code.k == 0 or ones(code.n) not in code:
        return False
    if divisibility(code) < 4:
        return False
    # the dual is even because 1 is in the code, so no weight-3 words either
    return dual_has_no_short_words(code)


def span_with(code: BinaryCode, v: int) -> BinaryCode:
    if v >> code.n:
        raise CodeError("vector longer than the code")
    return BinaryCode(code.n, rref(code.basis + (v,)))


def direct_sum(*codes: BinaryCode) -> BinaryCode:
    rows, shift = [], 0
    for c in codes:
        rows += [b << shift for b in c.basis]
        shift += c.n
    return BinaryCode(shift, rref(rows))


def concat(*parts: tuple[int, int]) -> int:
    """Concatenate ``(vector, length)`` pieces left to right."""
    v, shift = 0, 0
    for x, n in parts:
        v |= x << shift
        shift += n
    return v


# ---------------------------------------------------------------------------
# text format


def format_code(code: BinaryCode) -> str:
    lines = [f"binary {code.n} {code.k}"]
    lines += [to_str(b, code.n) for b in code.basis]
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> BinaryCode:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise CodeError("empty input")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "binary":
        raise CodeError(f"bad header {lines[0]!r}; expected 'binary <n> <k>'")
    try:
        n, k = int(head[1]), int(head[2])
    except ValueError as exc:
        raise CodeError(f"bad header {lines[0]!r}") from exc
    body = lines[1:]
    if len(body) != k:
        raise CodeError(f"header announces {k} rows, found {len(body)}")
    for ln in body:
        if len(ln) != n or set(ln) - {"0", "1"}:
            raise CodeError(f"bad row {ln!r}")
    return from_rows(n, body)


# ---------------------------------------------------------------------------
# named reference codes


def _pairs_code(m: int) -> list[int]:
    """Generators of d_{2m}: unions of two consecutive coordinate pairs."""
    return [0b1111 << (2 * i) for i in range(m - 1)]


def _d_glue(m: int) -> dict[str, int]:
    """Coset representatives of d_{2m}^perp / d_{2m}."""
    s = sum(1 << (2 * i) for i in range(m))
    return {"s": s, "t": s ^ 0b11, "p": 0b11}


_E7 = [vec("1110100"), vec("0111010"), vec("0011101")]
_E8 = [vec("11110000"), vec("00111100"), vec("00001111"), vec("01010101")]
_GOLAY_B = [
    "110111000101", "101110001011", "011100010111", "111000101101",
    "110001011011", "100010110111", "000101101111", "001011011101",
    "010110111001", "101101110001", "011011100011", "111111111110",
]
_M6 = ["110000", "011000", "001100", "000110", "000011"]
M12_ROWS = [
    "100000011111", "010000101001", "001000110100",
    "000100101010", "000010100101", "000001110010",
]
# glue words over the Klein group d_{2m}^perp / d_{2m}, written as class names
_D6_GLUE = [("0", "s", "s", "p"), ("0", "t", "p", "s"),
            ("s", "0", "t", "p"), ("t", "0", "p", "t")]
_D4_GLUE = [("0", "0", "s", "s", "s", "s"), ("0", "0", "t", "t", "t", "t"),
            ("0", "s", "0", "s", "t", "p"), ("0", "t", "0", "t", "p", "s"),
            ("s", "0", "0", "s", "p", "t"), ("t", "0", "0", "t", "s", "p")]


def _glued(components: list[tuple[list[int], int, dict[str, int]]],
           glue: list[tuple[str, ...]]) -> BinaryCode:
    """Direct sum of components plus glue words given by class names."""
    n = sum(length for _, length, _ in components)
    rows, shift = [], 0
    for gens, length, _ in components:
        rows += [g << shift for g in gens]
        shift += length
    for word in glue:
        v, shift = 0, 0
        for name, (_, length, classes) in zip(word, components):
            if name != "0":
                v |= classes[name] << shift
            shift += length
        rows.append(v)
    return BinaryCode(n, rref(rows))


def _d(m: int) -> tuple[list[int], int, dict[str, int]]:
    return _pairs_code(m), 2 * m, _d_glue(m)


def _e7() -> tuple[list[int], int, dict[str, int]]:
    return _E7, 7, {"s": ones(7)}


def _e8() -> tuple[list[int], int, dict[str, int]]:
    return _E8, 8, {}


def _build_named(label: str) -> BinaryCode:
    if label == "g24":
        return from_rows(24, [("0" * i + "1" + "0" * (11 - i)) + b
                              for i, b in enumerate(_GOLAY_B)])
    if label == "e6_parity":
        return from_rows(6, _M6)
    if label == "e7":
        return from_rows(7, _E7)
    if label == "e8":
        return from_rows(8, _E8)
    if label == "d16plus":
        return _glued([_d(8)], [("s",)])
    if label == "d24":
        return _glued([_d(12)], [("s",)])
    if label == "d16e8":
        return direct_sum(named_code("d16plus"), named_code("e8"))
    if label == "e8^3":
        e8 = named_code("e8")
        return direct_sum(e8, e8, e8)
    if label == "d12^2":
        return _glued([_d(6), _d(6)], [("s", "p"), ("p", "s")])
    if label == "d10e7^2":
        return _glued([_d(5), _e7(), _e7()], [("s", "s", "0"), ("t", "0", "s")])
    if label == "d8^3":
        return _glued([_d(4)] * 3, [("s", "p", "p"), ("p", "s", "p"), ("p", "p", "s")])
    if label == "d6^4":
        return _glued([_d(3)] * 4, _D6_GLUE)
    if label == "d4^6":
        return _glued([_d(2)] * 6, _D4_GLUE)
    if label == "M12_bordered":
        return from_rows(12, M12_ROWS)
    if label == "C7_1":
        rows = [r * 4 for r in _M6]
        rows += ["1" * 12 + "0" * 12, "1" * 6 + "0" * 6 + "1" * 6 + "0" * 6]
        return from_rows(24, rows)
    if label == "C7_2":
        return from_rows(24, ["1" * 12 + "0" * 12] + [r + r for r in M12_ROWS])
    raise KeyError(f"unknown code label {label!r}")


SELF_DUAL_24 = ("g24", "d12^2", "d10e7^2", "d8^3", "d6^4", "d24", "d4^6",
                "e8^3", "d16e8")
NAMED_LABELS = SELF_DUAL_24 + ("e6_parity", "e7", "e8", "d16plus",
                               "M12_bordered", "C7_1", "C7_2")
_NAMED_CACHE: dict[str, BinaryCode] = {}


def named_code(label: str) -> BinaryCode:
    """Fixed reference generator matrices; see ``NAMED_LABELS``."""
    if label not in _NAMED_CACHE:
        _NAMED_CACHE[label] = _build_named(label)
    return _NAMED_CACHE[label]


def repetition_code(n: int) -> BinaryCode:
    return BinaryCode(n, (ones(n),))


def even_weight_code(n: int) -> BinaryCode:
    return dual(repetition_code(n))
