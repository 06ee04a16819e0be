"""Permutation equivalence, canonical forms and automorphism groups of binary codes.

A code is turned into a two-coloured bipartite graph: one vertex per
coordinate, one vertex per codeword in a permutation-invariant spanning set
(see :func:`_spanning_words`), a codeword joined to the coordinates in its
support. Graph automorphisms restricted to the coordinate vertices are then
exactly the code automorphisms, and a canonical labelling of the graph
induces a canonical coordinate order. nauty (through pynauty) does the
search.

When the dual is smaller than the code, the dual's graph is used instead:
a permutation maps C to C' iff it maps C^perp to C'^perp.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import pynauty
from sympy.combinatorics import Permutation as _SymPerm
from sympy.combinatorics import PermutationGroup

from .gf2core import (BinaryCode, BudgetExceeded, CodeError, dual, permute_vector, rref,
                      support)

DEFAULT_MAX_WORDS = 1 << 17


@dataclass(frozen=True)
class Perm:
    """A coordinate permutation: coordinate ``i`` moves to ``images[i]``."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("images do not form a permutation")

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, v: int) -> int:
        return permute_vector(v, self.images)

    def __mul__(self, other: "Perm") -> "Perm":
        """``(self * other)(v) == self(other(v))``."""
        return Perm(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Perm":
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def apply_code(self, code: BinaryCode) -> BinaryCode:
        return code.permuted(self.images)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))


@dataclass(frozen=True)
class CanonicalCertificate:
    canonical: BinaryCode
    witness: Perm
    aut_generators: tuple[Perm, ...]
    aut_order: int

    @property
    def canonical_basis(self) -> tuple[int, ...]:
        return self.canonical.basis


def _spanning_words(code: BinaryCode) -> list[int]:
    """A union of whole weight classes that spans the code.

    Classes are taken smallest first (by size, then weight) until they span.
    The set is fixed by every automorphism and determines the code, so it
    can stand in for the full codeword list in the graph."""
    by_weight: dict[int, list[int]] = {}
    for w in code.codewords():
        if w:
            by_weight.setdefault(w.bit_count(), []).append(w)
    chosen: list[int] = []
    for weight in sorted(by_weight, key=lambda w: (len(by_weight[w]), w)):
        chosen += by_weight[weight]
        if len(rref(chosen)) == code.k:
            break
    return chosen


def _graph(code: BinaryCode, max_words: int) -> tuple[pynauty.Graph, int]:
    n = code.n
    use = dual(code) if 2 * code.k > n else code
    if (1 << use.k) > max_words:
        raise BudgetExceeded(
            f"canonical search over 2^{use.k} codewords exceeds cap {max_words}")
    words = _spanning_words(use)
    adjacency = {n + idx: support(w) for idx, w in enumerate(words)}
    coloring = [set(range(n))]
    if words:
        coloring.append(set(range(n, n + len(words))))
    g = pynauty.Graph(n + len(words), directed=False, adjacency_dict=adjacency,
                      vertex_coloring=coloring)
    return g, n


def _group_order(gens: Sequence[Perm], n: int) -> int:
    if not gens:
        return 1
    return int(PermutationGroup([_SymPerm(list(p.images)) for p in gens]).order())


@lru_cache(maxsize=16384)
def _labelling(code: BinaryCode, max_words: int) -> tuple[BinaryCode, Perm]:
    g, n = _graph(code, max_words)
    lab = pynauty.canon_label(g)
    images = [0] * n
    for new, old in enumerate(lab[:n]):
        if old >= n:
            raise RuntimeError("canonical labelling mixed colour classes")
        images[old] = new
    witness = Perm(tuple(images))
    return witness.apply_code(code), witness


@lru_cache(maxsize=4096)
def _automorphisms(code: BinaryCode, max_words: int) -> tuple[tuple[Perm, ...], int]:
    g, n = _graph(code, max_words)
    gens = []
    for gen in pynauty.autgrp(g)[0]:
        p = Perm(tuple(gen[:n]))
        if not p.is_identity():
            gens.append(p)
    return tuple(gens), _group_order(gens, n)


def canonical_form(code: BinaryCode,
                   max_words: int = DEFAULT_MAX_WORDS) -> CanonicalCertificate:
    """Canonical representative, mapping witness and automorphism group.

    Raises :class:`BudgetExceeded` when the smaller of the code and its dual
    has more than ``max_words`` codewords.
    """
    canonical, witness = _labelling(code, max_words)
    gens, order = _automorphisms(code, max_words)
    return CanonicalCertificate(canonical, witness, gens, order)


def canonical_code(code: BinaryCode, max_words: int = DEFAULT_MAX_WORDS) -> BinaryCode:
    """Only the canonical representative (skips the automorphism search)."""
    return _labelling(code, max_words)[0]


def canonical_witness(code: BinaryCode, max_words: int = DEFAULT_MAX_WORDS) -> Perm:
    return _labelling(code, max_words)[1]


def canonical_key(code: BinaryCode) -> tuple[int, tuple[int, ...]]:
    return code.n, canonical_code(code).basis


def automorphism_group(code: BinaryCode) -> tuple[tuple[Perm, ...], int]:
    return _automorphisms(code, DEFAULT_MAX_WORDS)


def are_equivalent(a: BinaryCode, b: BinaryCode) -> Perm | None:
    """A permutation ``p`` with ``p.apply_code(a) == b``, or None."""
    if a.n != b.n:
        raise CodeError("codes of different lengths")
    if a.k != b.k:
        return None
    ca, wa = _labelling(a, DEFAULT_MAX_WORDS)
    cb, wb = _labelling(b, DEFAULT_MAX_WORDS)
    if ca != cb:
        return None
    return wb.inverse() * wa


def fixes(perm: Perm, code: BinaryCode) -> bool:
    return all(perm(b) in code for b in code.basis)
