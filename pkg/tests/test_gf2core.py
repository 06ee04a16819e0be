import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from z4wb.gf2core import (NAMED_LABELS, SELF_DUAL_24, CodeError, direct_sum,
                          divisibility, dual, format_code, from_rows, is_self_dual, min_weight,
                          named_code, ones, parse_code, repetition_code, satisfies_residue_conditions,
                          span_with, vec, weight_distribution, zero_code)
from z4wb.refdata import FIG1_ROWS, c6, vector


def random_code(rng, n, k):
    return from_rows(n, [int(x) for x in rng.integers(0, 1 << n, size=k, dtype=np.int64)])


codes = st.integers(2, 14).flatmap(
    lambda n: st.lists(st.integers(0, (1 << n) - 1), max_size=n).map(lambda r: from_rows(n, r)))


def test_from_rows_examples():
    assert from_rows(6, [ones(6)]).k == 1
    assert from_rows(24, [0]).k == 0
    fig1_mod2 = [vec([int(ch) % 2 for ch in row if ch.isdigit()]) for row in FIG1_ROWS]
    assert from_rows(24, fig1_mod2).k == 6
    with pytest.raises(CodeError):
        from_rows(4, [1 << 5])


def test_dual_examples():
    parity = named_code("e6_parity")
    assert parity.k == 5 and min_weight(parity) == 2
    assert dual(parity) == repetition_code(6)
    g = named_code("g24")
    assert dual(g) == g


@given(codes)
def test_dual_matches_brute_force(code):
    words = oracles.span(code.basis, code.n)
    assert set(dual(code).codewords()) == oracles.dual(words, code.n)


@given(codes)
def test_weight_distribution_matches_enumeration(code):
    wd = weight_distribution(code)
    ref = oracles.weight_counts(oracles.span(code.basis, code.n), code.n)
    assert list(wd.counts) == ref
    assert wd.total == 2 ** code.k and wd[0] == 1
    if code.k:
        m = min_weight(code)
        assert wd[m] >= 1 and all(wd[w] == 0 for w in range(1, m))


def test_weight_distribution_examples():
    rep = weight_distribution(repetition_code(6))
    assert rep[0] == rep[6] == 1 and rep.total == 2
    g = weight_distribution(named_code("g24"))
    assert g[8] == 759 and g[12] == 2576 and g[16] == 759
    assert weight_distribution(zero_code(5)).counts == (1, 0, 0, 0, 0, 0)


def test_min_weight_and_divisibility():
    g = named_code("g24")
    ref = oracles.weight_counts(oracles.span(g.basis, 24), 24)
    assert min_weight(g) == min(w for w in range(1, 25) if ref[w]) == 8
    assert divisibility(g) == 4
    rep = repetition_code(6)
    assert min_weight(rep) == 6 and divisibility(rep) == 2
    with pytest.raises(CodeError):
        min_weight(zero_code(4))


def test_residue_conditions():
    assert satisfies_residue_conditions(named_code("g24"))
    assert not satisfies_residue_conditions(repetition_code(24))
    assert satisfies_residue_conditions(c6())


def test_span_and_direct_sum():
    c = c6()
    assert span_with(c, c.basis[0] ^ c.basis[1]) == c
    c73 = span_with(c, vector("v7"))
    assert c73.k == 7
    e8 = named_code("e8")
    s = direct_sum(e8, e8)
    assert s.n == 16 and s.k == 8


def test_nine_self_dual_codes():
    for label in SELF_DUAL_24:
        code = named_code(label)
        assert is_self_dual(code) and divisibility(code) >= 4
        assert min_weight(code) == (8 if label == "g24" else 4)


def test_named_small_codes():
    for label in NAMED_LABELS:
        named_code(label)
    assert named_code("C7_1").k == 7 and named_code("C7_2").k == 7
    with pytest.raises(KeyError):
        named_code("nope")


def test_text_format_round_trip():
    c = c6()
    assert parse_code(format_code(c)) == c
    for bad in ["", "binary 3 1\n102\n", "binary 3 2\n101\n", "z4 3 1 0\n101\n"]:
        with pytest.raises(CodeError):
            parse_code(bad)


def test_duality_suite_1000_random_codes():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        n = int(rng.integers(1, 41))
        code = random_code(rng, n, int(rng.integers(0, n + 1)))
        d = dual(code)
        assert code.k + d.k == n
        assert dual(d) == code
        assert all(bin(a & b).count("1") % 2 == 0 for a in code.basis for b in d.basis)


def test_residue_conditions_imply_self_orthogonal(dag):
    for rec in dag.nodes.values():
        assert satisfies_residue_conditions(rec.code)
        assert all(b in dual(rec.code) for b in rec.code.basis)
