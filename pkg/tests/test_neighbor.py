import numpy as np
import pytest

from z4wb.equiv import automorphism_group
from z4wb.gf2core import dot, dual, reduce_vector, span_with
from z4wb.neighbor import (NeighborError, augment_along, augment_extremal, deaugment_extremal,
                           share_index_two_subcode)
from z4wb.refdata import fig1_code, vector
from z4wb.z4core import is_extremal, is_type2, min_euclidean_weight, z4_inner


def torsion_weight4(code):
    """Weight-4 torsion words outside the residue."""
    res = code.residue
    return [t for t in dual(res).codewords() if t.bit_count() == 4 and t not in res]


@pytest.fixture(scope="module")
def fig1():
    return fig1_code()


def test_augment_postconditions(fig1):
    a = torsion_weight4(fig1)[0]
    new, wit = augment_extremal(fig1, a)
    assert is_type2(new) and min_euclidean_weight(new) == 16
    assert new.residue == span_with(fig1.residue, a)
    assert new.log2_size == fig1.log2_size
    assert wit.glue[0] == a and dot(a, wit.b) == 1 and wit.kernel_index == 2
    assert share_index_two_subcode(fig1, new, wit.alpha)


def test_augment_preconditions(fig1):
    with pytest.raises(NeighborError):
        augment_extremal(fig1, fig1.residue.basis[0])
    with pytest.raises(NeighborError):
        augment_extremal(fig1, vector("v7"))  # weight 12


def test_deaugment_preconditions(fig1):
    a = torsion_weight4(fig1)[0]
    new, _ = augment_extremal(fig1, a)
    with pytest.raises(NeighborError):
        deaugment_extremal(new, next(t for t in torsion_weight4(new)))
    eight = next(w for w in new.residue.codewords() if w.bit_count() == 8)
    with pytest.raises(NeighborError):
        deaugment_extremal(new, eight)


def test_deaugment_postconditions(fig1):
    a = torsion_weight4(fig1)[3]
    up, _ = augment_extremal(fig1, a)
    down, wit = deaugment_extremal(up, a)
    assert is_extremal(down)
    assert down.residue.k == up.residue.k - 1 and a not in down.residue
    assert span_with(down.residue, a) == up.residue
    assert z4_inner(wit.alpha, wit.alpha_prime) == 2 and dot(a, wit.c) == 1
    assert wit.glue[0] == 0


def test_round_trip_50_random_weight4_vectors(fig1):
    rng = np.random.default_rng(0)
    pool = torsion_weight4(fig1)
    for i in rng.choice(len(pool), size=50, replace=False):
        a = pool[int(i)]
        up, wit = augment_extremal(fig1, a)
        down, _ = deaugment_extremal(up, a)
        assert down.residue == fig1.residue
        assert is_extremal(down)
        assert share_index_two_subcode(fig1, up, wit.alpha)


def test_table_vector_has_no_extremal_neighbour(fig1):
    """No extremal code over C6 + v7 shares an index-2 subgroup with an
    extremal code over C6: every kernel and glue word is tried for every
    image of v7 under Aut(C6) modulo C6."""
    res = fig1.residue
    gens, _ = automorphism_group(res)
    v = vector("v7")
    seen, todo = {reduce_vector(v, res.basis)}, [v]
    while todo:
        x = todo.pop()
        for g in gens:
            y = g(x)
            key = reduce_vector(y, res.basis)
            if key not in seen:
                seen.add(key)
                todo.append(y)
    assert all(augment_along(fig1, x, check=False) is None for x in seen)


def test_augment_along_agrees_with_weight4_step(fig1):
    a = torsion_weight4(fig1)[5]
    new, _ = augment_along(fig1, a)
    assert is_extremal(new) and new.residue == span_with(fig1.residue, a)
