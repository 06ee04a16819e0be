"""Independent brute-force references used by the tests.

Everything here works on plain tuples, sets and itertools products and does
not call into the package's algorithms, so agreement is a real cross-check.
"""

from __future__ import annotations

import itertools

import numpy as np


def bits(v: int, n: int) -> tuple[int, ...]:
    return tuple((v >> i) & 1 for i in range(n))


def span(rows, n: int) -> set[int]:
    out = {0}
    for r in rows:
        out |= {x ^ r for x in out}
    return out


def dual(words: set[int], n: int) -> set[int]:
    return {x for x in range(1 << n)
            if all(bin(x & w).count("1") % 2 == 0 for w in words)}


def weight_counts(words, n: int) -> list[int]:
    counts = [0] * (n + 1)
    for w in words:
        counts[bin(w).count("1")] += 1
    return counts


def equivalent(a: set[int], b: set[int], n: int) -> bool:
    """Try every coordinate permutation (n <= 7)."""
    for p in itertools.permutations(range(n)):
        img = set()
        for w in a:
            x = 0
            for i in range(n):
                if (w >> i) & 1:
                    x |= 1 << p[i]
            img.add(x)
        if img == b:
            return True
    return False


def z4_span(rows: list[tuple[int, ...]], n: int) -> np.ndarray:
    """All codewords as an (N, n) array of entries mod 4."""
    place = 4 ** np.arange(n, dtype=np.int64)
    words = np.zeros((1, n), dtype=np.int64)
    for r in rows:
        r = np.array(r, dtype=np.int64)
        words = np.concatenate([(words + c * r) % 4 for c in range(4)])
        _, keep = np.unique(words @ place, return_index=True)
        words = words[np.sort(keep)]
    return words


def euclid(x) -> int:
    return sum({0: 0, 1: 1, 2: 4, 3: 1}[int(e) % 4] for e in x)


def z4_type2(rows: list[tuple[int, ...]], n: int) -> bool:
    words = z4_span(rows, n)
    if len(words) != 2 ** n:
        return False
    gens = np.array(rows, dtype=np.int64) % 4
    if len(gens) and np.any((gens @ gens.T) % 4):
        return False
    e = np.where(words == 2, 4, np.where(words == 0, 0, 1)).sum(axis=1)
    return bool(np.all(e % 8 == 0))


def z4_min_euclid(rows, n: int) -> int:
    words = z4_span(rows, n)
    e = np.where(words == 2, 4, np.where(words == 0, 0, 1)).sum(axis=1)
    return int(e[e > 0].min())


def lattice_min_norm(rows, n: int, bound: int = 2) -> float:
    """Minimum squared norm of (1/2){x in Z^n : x mod 4 in C} over the
    integer vectors with entries in [-bound, bound], together with the
    frame vectors 4e_i. With bound >= 4 the search is exhaustive."""
    code = np.unique((oracles_base4(z4_span(rows, n))), axis=0)
    grid = np.stack(np.meshgrid(*([np.arange(-bound, bound + 1)] * n), indexing="ij"),
                    axis=-1).reshape(-1, n)
    grid = grid[np.any(grid != 0, axis=1)]
    keys = oracles_base4(grid % 4)
    hit = grid[np.isin(keys, code)]
    best = float((hit * hit).sum(axis=1).min()) / 4 if len(hit) else np.inf
    return min(best, 4.0)


def oracles_base4(words: np.ndarray) -> np.ndarray:
    return (words * (4 ** np.arange(words.shape[1]))).sum(axis=1)


def doubling(words: set[int], n: int) -> set[int]:
    def d(x):
        return sum(3 << (2 * i) for i in range(n) if (x >> i) & 1)
    ell = sum(1 << (2 * i) for i in range(n))
    return span([d(w) for w in words] + [ell], 2 * n)


def orbits(points: int, maps) -> list[set[int]]:
    """Orbits of callables acting on range(points), by plain search."""
    seen, out = set(), []
    for p in range(points):
        if p in seen:
            continue
        orb, todo = {p}, [p]
        while todo:
            x = todo.pop()
            for g in maps:
                y = g(x)
                if y not in orb:
                    orb.add(y)
                    todo.append(y)
        seen |= orb
        out.append(orb)
    return out
