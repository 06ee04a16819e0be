"""Weight-4 augmentation and de-augmentation of extremal Type II Z4-codes.

Both operations replace a code C by a neighbour sharing an index-2
subcode K. With a 0/1 vector alpha supported on a weight-4 word a,
K is the set of codewords z with <alpha, z> = 0 in Z4 (for every codeword
this inner product is 0 or 2). The new code is K together with one glue
word. Working at the code level keeps every step checkable with the tools
in :mod:`z4core`.

Augmentation (a outside the residue, inside the torsion code) glues
``alpha + 2b`` for a torsion vector b with <a, b> = 1; the residue grows by a.

De-augmentation (a inside the residue) takes a codeword alpha' over a with
entries (3, 1, 1, 1) on the support of a (3 at the first support index),
sets alpha = alpha' on the support with the first entry negated, which is
the 0/1 vector of the support, and glues ``alpha - alpha'``. The residue
shrinks to the words orthogonal to c = (alpha - alpha')/2 mod 2. Because
alpha is the 0/1 vector, de-augmenting an augmented code along the same
vector shares the same K and gives back the original residue.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2core import BinaryCode, CodeError, dot, lowbit, rref, span_with, support
from .z4core import (Z4Code, Z4Vec, euclidean_weight, extremal_bound, is_type2,
                     min_euclidean_weight,
                     negate_coordinates, z4_add, z4_from_rows, z4_inner, z4_sub)


class NeighborError(CodeError):
    """A precondition of augmentation or de-augmentation fails."""


@dataclass(frozen=True)
class AugmentationWitness:
    a: int
    alpha: Z4Vec
    b: int
    beta: Z4Vec
    glue: Z4Vec
    kernel_index: int = 2


@dataclass(frozen=True)
class DeaugmentationWitness:
    a: int
    negated: int  # coordinates of the input negated before the step (0 or one bit)
    alpha_prime: Z4Vec
    alpha: Z4Vec
    c: int
    glue: Z4Vec
    kernel_index: int = 2


def _check_extremal(code: Z4Code, what: str) -> None:
    if not is_type2(code):
        raise NeighborError(f"{what} is not Type II")
    bound = extremal_bound(code.n)
    if min_euclidean_weight(code, stop_below=bound) != bound:
        raise NeighborError(f"{what} does not have minimum Euclidean weight {bound}")


def kernel_rows(code: Z4Code, alpha: Z4Vec) -> list[Z4Vec]:
    """Generators of {z in C : <alpha, z> = 0 in Z4}, an index-2 subgroup."""
    rows = code.rows()
    values = [z4_inner(alpha, g) for g in rows]
    if any(v % 2 for v in values):
        raise NeighborError("<alpha, c> is odd on the code; alpha is not in the torsion code")
    odd = [g for g, v in zip(rows, values) if v == 2]
    kept = [g for g, v in zip(rows, values) if v == 0]
    if not odd:
        raise NeighborError("alpha is orthogonal to the whole code")
    g0 = odd[0]
    kept += [z4_sub(g, g0) for g in odd[1:]]
    kept.append(z4_add(g0, g0))
    return kept


def augment_extremal(code: Z4Code, a: int, check: bool = True
                     ) -> tuple[Z4Code, AugmentationWitness]:
    """Extremal code whose residue is the residue of ``code`` plus ``a``."""
    res = code.residue
    if a.bit_count() != 4:
        raise NeighborError(f"a has weight {a.bit_count()}, expected 4")
    if a in res:
        raise NeighborError("a already lies in the residue code")
    if any(dot(a, g) for g in res.basis):
        raise NeighborError("residue plus a is not doubly even (a is not orthogonal to it)")
    if check:
        _check_extremal(code, "input code")
    alpha = (a, 0)
    b = next((t for t in code.gen2 if dot(a, t)), None)
    if b is None:
        raise RuntimeError("no torsion vector meets a oddly although a is outside the residue")
    glue = (a, b)
    kernel = kernel_rows(code, alpha)
    new = z4_from_rows(code.n, kernel + [glue])
    if new.log2_size != code.log2_size:
        raise RuntimeError("augmented code has the wrong size")
    if new.residue != span_with(res, a):
        raise RuntimeError("augmented residue is not the expected span")
    if check:
        _check_extremal(new, "augmented code")
    return new, AugmentationWitness(a, alpha, b, (b, 0), glue)


def _normalised_lift(code: Z4Code, a: int) -> Z4Vec | None:
    """A codeword over a with entries (3,1,1,1) on supp(a), or None when the
    number of 3-entries on the support has the wrong parity."""
    supp = support(a)
    i1 = supp[0]
    x = code.lift(a)
    target = 1 << i1  # high plane on the support
    diff = (x[1] ^ target) & a
    if diff.bit_count() % 2:
        return None
    if not diff:
        return x
    # torsion words restricted to supp(a) give every even pattern there
    combo = _solve_restricted(code.torsion.basis, a, diff)
    if combo is None:
        raise RuntimeError("torsion code misses an even pattern on a weight-4 residue word")
    return x[0], x[1] ^ combo


def _solve_restricted(basis: tuple[int, ...], mask: int, target: int) -> int | None:
    """A vector t in span(basis) with t & mask == target."""
    ech: list[tuple[int, int]] = []  # (restricted vector, full vector)
    for b in basis:
        r, full = b & mask, b
        for e, f in ech:
            if (r >> lowbit(e)) & 1:
                r ^= e
                full ^= f
        if r:
            ech.append((r, full))
    t = 0
    for e, f in ech:
        if (target >> lowbit(e)) & 1:
            target ^= e
            t ^= f
    return t if target == 0 else None


def deaugment_extremal(code: Z4Code, a: int, check: bool = True
                       ) -> tuple[Z4Code, DeaugmentationWitness]:
    """Extremal code whose residue is an index-2 subcode of the residue of
    ``code`` that does not contain ``a``."""
    res = code.residue
    if a.bit_count() != 4:
        raise NeighborError(f"a has weight {a.bit_count()}, expected 4")
    if a not in res:
        raise NeighborError("a is not in the residue code")
    if check:
        _check_extremal(code, "input code")
    negated = 0
    alpha_prime = _normalised_lift(code, a)
    if alpha_prime is None:
        negated = 1 << support(a)[0]
        code = negate_coordinates(code, negated)
        alpha_prime = _normalised_lift(code, a)
        if alpha_prime is None:
            raise RuntimeError("sign normalisation failed")
    alpha = (a, 0)
    glue = z4_sub(alpha, alpha_prime)
    c = glue[1]
    if glue[0] or dot(a, c) != 1 or z4_inner(alpha, alpha_prime) != 2:
        raise RuntimeError("normalised lift violates the de-augmentation identities")
    kernel = kernel_rows(code, alpha)
    new = z4_from_rows(code.n, kernel + [glue])
    if new.log2_size != code.log2_size or new.residue != orthogonal_subcode(res, c):
        raise RuntimeError("de-augmented code has the wrong residue or size")
    if check:
        _check_extremal(new, "de-augmented code")
    return new, DeaugmentationWitness(a, negated, alpha_prime, alpha, c, glue)


@dataclass(frozen=True)
class NeighborStep:
    v: int
    u: int  # alpha = v + 2u
    alpha: Z4Vec
    glue: Z4Vec


def _type2_glues(code: Z4Code, alpha: Z4Vec) -> list[tuple[Z4Code, Z4Vec]]:
    """The Type II codes other than ``code`` that contain the kernel of
    <alpha, .> on ``code``. The kernel K has index 2 and K^perp / K has order
    4, spanned by alpha and a codeword p0 outside K, so the glue is alpha or
    alpha + p0."""
    rows = code.rows()
    p0 = next((g for g in rows if z4_inner(alpha, g) == 2), None)
    if p0 is None:
        return []
    kernel = kernel_rows(code, alpha)
    out = []
    for glue in (alpha, z4_add(alpha, p0)):
        if euclidean_weight(glue) % 8:
            continue
        new = z4_from_rows(code.n, kernel + [glue])
        if new.log2_size == code.log2_size and is_type2(new):
            out.append((new, glue))
    return out


def augment_along(code: Z4Code, v: int, check: bool = True
                  ) -> tuple[Z4Code, NeighborStep] | None:
    """An extremal neighbour whose residue is the residue of ``code`` plus v.

    Generalises :func:`augment_extremal` to doubly even v of any weight.
    The shared subgroup is the kernel of <alpha, .> with alpha = v + 2u; it
    only depends on u modulo the torsion code, so u runs over the span of
    the unit vectors at the residue pivots. Every admissible glue word is
    tried until the result is extremal. Returns None when none is."""
    res = code.residue
    if v.bit_count() % 4:
        raise NeighborError("v is not doubly even")
    if v in res:
        raise NeighborError("v already lies in the residue code")
    if any(dot(v, g) for g in res.basis):
        raise NeighborError("v is not orthogonal to the residue code")
    if check:
        _check_extremal(code, "input code")
    target = span_with(res, v)
    bound = extremal_bound(code.n)
    pivots = [1 << p for p in res.pivots]
    for pattern in range(1 << len(pivots)):
        u = 0
        for j, e in enumerate(pivots):
            if (pattern >> j) & 1:
                u |= e
        alpha = (v, u)
        for new, glue in _type2_glues(code, alpha):
            if new.residue == target and min_euclidean_weight(new, stop_below=bound) == bound:
                return new, NeighborStep(v, u, alpha, glue)
    return None


def orthogonal_subcode(code: BinaryCode, c: int) -> BinaryCode:
    """{b in code : <b, c> = 0}."""
    odd = [b for b in code.basis if dot(b, c)]
    keep = [b for b in code.basis if not dot(b, c)]
    if odd:
        keep += [b ^ odd[0] for b in odd[1:]]
    return BinaryCode(code.n, rref(keep))


def share_index_two_subcode(old: Z4Code, new: Z4Code, alpha: Z4Vec) -> bool:
    """True when old != new, both have the same size and the kernel of
    <alpha, .> on ``old`` lies in ``new``; then old and new meet in exactly
    that kernel, a subgroup of index 2 in each."""
    if old == new or old.log2_size != new.log2_size:
        return False
    return all(g in new for g in kernel_rows(old, alpha))
