import itertools
import math
import random

from hypothesis import given
from hypothesis import strategies as st

import oracles
from z4wb.equiv import (Perm, are_equivalent, automorphism_group, canonical_code,
                        canonical_form, fixes)
from z4wb.gf2core import SELF_DUAL_24, from_rows, named_code, repetition_code


def random_perm(rng, n):
    p = list(range(n))
    rng.shuffle(p)
    return Perm(tuple(p))


def test_nine_distinct_canonical_forms():
    forms = {canonical_code(named_code(label)) for label in SELF_DUAL_24}
    assert len(forms) == 9


def test_known_group_orders():
    assert canonical_form(named_code("g24")).aut_order == 244823040
    assert canonical_form(repetition_code(24)).aut_order == math.factorial(24)


def test_certificate_checks_by_application():
    for label in SELF_DUAL_24:
        code = named_code(label)
        cert = canonical_form(code)
        assert cert.witness.apply_code(code) == cert.canonical
        assert all(fixes(g, code) for g in cert.aut_generators)


def test_inequivalent_pairs():
    assert are_equivalent(named_code("g24"), named_code("d24")) is None
    assert are_equivalent(named_code("C7_1"), named_code("C7_2")) is None


def test_are_equivalent_returns_mapping():
    rng = random.Random(3)
    for label in ("g24", "d6^4", "C7_1"):
        code = named_code(label)
        img = random_perm(rng, 24).apply_code(code)
        p = are_equivalent(code, img)
        assert p is not None and p.apply_code(code) == img
        q = are_equivalent(img, code)
        assert q.apply_code(img) == code


def check_canonical_invariance(trials: int, seed: int = 0) -> None:
    rng = random.Random(seed)
    for label in SELF_DUAL_24:
        code = named_code(label)
        target = canonical_code(code)
        for _ in range(trials):
            assert canonical_code(random_perm(rng, 24).apply_code(code)) == target


def test_canonical_invariance_nine_codes():
    check_canonical_invariance(10, seed=1)


small_codes = st.integers(3, 7).flatmap(
    lambda n: st.lists(st.integers(0, (1 << n) - 1), max_size=4).map(lambda r: from_rows(n, r)))


@given(small_codes, small_codes)
def test_equivalence_agrees_with_brute_force(a, b):
    if a.n != b.n:
        return
    ref = oracles.equivalent(oracles.span(a.basis, a.n), oracles.span(b.basis, b.n), a.n)
    assert (are_equivalent(a, b) is not None) == ref
    assert (canonical_code(a) == canonical_code(b)) == ref


@given(small_codes)
def test_group_order_matches_brute_force(code):
    count = 0
    for p in itertools.permutations(range(code.n)):
        if Perm(p).apply_code(code) == code:
            count += 1
    assert automorphism_group(code)[1] == count
