import numpy as np
import pytest

import oracles
from z4wb.gf2core import (BinaryCode, CodeError, divisibility, dual, from_rows, min_weight,
                          named_code, ones, rref, span_with)
from z4wb.lifts import Realizable
from z4wb.moonshine import (DoublingOfNonRealizable, DoublingOfRealizable, FailsLemma43,
                            Moonshine, MoonshineError, NotMoonshine, census, check_decomposition,
                            coset_min_weight, direct_sum_identities, doubling, doubling_status,
                            known_witness, map_d, map_l, moonshine_candidate_check, replay,
                            undouble, weight16_decomposition, weight8_augment_status,
                            weight8_deaugment_candidates)
from z4wb.refdata import c6, fig1_code, table4_code


def random_doubly_even(rng, n):
    rows = []
    for _ in range(40):
        v = int(rng.integers(1, 1 << n))
        if v.bit_count() % 4 == 0 and all((v & r).bit_count() % 2 == 0 for r in rows):
            rows.append(v)
    return from_rows(n, rows)


def test_maps():
    assert map_d(0b101, 3) == 0b110011
    assert map_l(0b101, 3) == 0b010001
    rng = np.random.default_rng(0)
    for _ in range(50):
        x, y = (int(v) for v in rng.integers(0, 1 << 12, 2))
        assert map_d(x ^ y, 12) == map_d(x, 12) ^ map_d(y, 12)
        assert map_l(x ^ y, 12) == map_l(x, 12) ^ map_l(y, 12)
        assert map_d(x, 12).bit_count() == 2 * x.bit_count()
        assert map_l(x, 12).bit_count() == x.bit_count()


def test_doubling_examples():
    g = doubling(named_code("g24"))
    assert (g.n, g.k, divisibility(g)) == (48, 13, 8)
    e = doubling(named_code("e8"))
    assert (e.n, e.k, divisibility(e)) == (16, 5, 8)
    c = doubling(c6())
    assert (c.n, c.k) == (48, 7)
    assert undouble(g) == named_code("g24")


def test_doubling_matches_oracle():
    rng = np.random.default_rng(1)
    for _ in range(10):
        code = random_doubly_even(rng, 8)
        ref = oracles.doubling(oracles.span(code.basis, 8), 8)
        assert set(doubling(code).codewords()) == ref


def test_doubling_properties_200_codes():
    rng = np.random.default_rng(2)
    seen_dual = 0
    for _ in range(200):
        n = 8 * int(rng.integers(1, 4))
        code = random_doubly_even(rng, n)
        d = doubling(code)
        assert divisibility(d) >= 8 and d.k == code.k + 1 and d.n == 2 * n
        cd = dual(code)
        if divisibility(cd) >= 2 and min_weight(cd) >= 4:
            seen_dual += 1
            dd = dual(d)
            assert divisibility(dd) >= 2 and min_weight(dd) >= 4
    assert seen_dual


def test_candidate_checks():
    g = moonshine_candidate_check(doubling(named_code("g24")))
    assert g.triply_even and g.contains_one and g.dual_min_ge4
    trivial = moonshine_candidate_check(from_rows(48, [ones(48)]))
    assert isinstance(trivial.status, NotMoonshine) and not trivial.dual_min_ge4
    rng = np.random.default_rng(3)
    rows = [int(x) for x in rng.integers(0, 1 << 48, 5, dtype=np.uint64)]
    code = BinaryCode(48, rref(rows + [ones(48)]))
    c = moonshine_candidate_check(code)
    assert not c.triply_even and isinstance(c.status.reason, FailsLemma43)
    with pytest.raises(CodeError):
        moonshine_candidate_check(from_rows(24, [ones(24)]))


def test_doubling_status_verdicts():
    st = doubling_status(c6(), witness=fig1_code())
    assert isinstance(st, Moonshine) and isinstance(st.justification, DoublingOfRealizable)
    assert replay(st)
    assert isinstance(doubling_status(named_code("d24")), Moonshine)
    bad = doubling_status(table4_code("N9_1"))
    assert isinstance(bad, NotMoonshine)
    assert isinstance(bad.reason, DoublingOfNonRealizable) and replay(bad)
    assert bad.reason.certificate.classes_checked == 159
    e8 = named_code("e8")
    short = doubling_status(from_rows(24, list(e8.basis) + [b << 8 for b in e8.basis]))
    assert isinstance(short, NotMoonshine) and isinstance(short.reason, FailsLemma43)
    with pytest.raises(MoonshineError):
        doubling_status(from_rows(24, [0b11]))


def test_census_and_coherence(dag):
    assert census(dag) == {"Moonshine": 149, "NotMoonshine": 30, "Unknown": 0}
    for rec in dag.nodes.values():
        st = doubling_status(rec.code, dag)
        assert isinstance(st, Moonshine) == isinstance(rec.status, Realizable)


def test_direct_sum_identities():
    checks = direct_sum_identities()
    assert [c.ok for c in checks] == [True] * 3
    assert sorted(c.lhs.k for c in checks) == [14, 14, 15]
    for c in checks:
        assert c.coset_min_weight == 8 and replay(c.status)
        assert set(c.lhs.codewords()) == set(c.rhs.codewords())


def test_weight8_augmentation_rules():
    e8 = named_code("e8")
    from z4wb.gf2core import direct_sum
    b = direct_sum(e8, e8, e8)
    st = doubling_status(b, witness=known_witness(b))
    xi = map_l(ones(8) << 16, 24)
    assert coset_min_weight(st.code, xi) == 8
    with pytest.raises(MoonshineError):
        weight8_augment_status(st, st.code.basis[0])
    with pytest.raises(MoonshineError):
        weight8_augment_status(NotMoonshine(st.code, FailsLemma43("x")), xi)


def test_deaugment_candidates():
    g = doubling(named_code("d24"))
    eta = next(w for w in g.codewords() if w.bit_count() == 8)
    subs = weight8_deaugment_candidates(g, eta)
    assert len(subs) == 1 << (g.k - 1)
    assert len({s.basis for s in subs}) == len(subs)
    for s in subs:
        assert s.k == g.k - 1 and eta not in s and span_with(s, eta) == g
    with pytest.raises(MoonshineError):
        weight8_deaugment_candidates(g, ones(48))


def test_weight16_decompositions(dag):
    for rec in sorted(dag.nodes.values(), key=lambda r: r.key)[::7]:
        st = doubling_status(rec.code, dag)
        if isinstance(st, Moonshine):
            dec = weight16_decomposition(st)
            assert check_decomposition(dec, st.code)
            assert len(dec.steps) == rec.code.k - dec.base.code.k + 1
