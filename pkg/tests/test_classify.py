import random

from z4wb.classify import (deaugmentation_failures, enumerate_condition_codes,
                           maximal_nonrealizable, reaches, table1_grid, table2_witnesses,
                           verify_theorem_3_6)
from z4wb.equiv import Perm, canonical_code
from z4wb.gf2core import (SELF_DUAL_24, dual_has_no_short_words, named_code,
                          satisfies_residue_conditions)
from z4wb.lifts import NonRealizable, Realizable
from z4wb.refdata import TABLE1, TABLE2, TABLE4, c6, table2_code
from z4wb.z4core import is_extremal


def test_counts_per_dimension(dag):
    assert dag.counts() == {12: 9, 11: 21, 10: 49, 9: 60, 8: 32, 7: 7, 6: 1}
    assert len(dag.nodes) == 179


def test_bottom_is_c6(dag):
    (rec,) = dag.by_dimension()[6]
    assert rec.code == canonical_code(c6())


def test_every_node_meets_the_residue_conditions(dag):
    for rec in dag.nodes.values():
        assert satisfies_residue_conditions(rec.code)
        assert rec.code == canonical_code(rec.code)


def test_edges_are_codimension_one_containments(dag):
    rng = random.Random(0)
    for e in rng.sample(dag.edges, 60):
        sub, sup = dag.nodes[e.sub], dag.nodes[e.sup]
        assert sub.k + 1 == sup.k
        image = e.embed.apply_code(sub.code)
        assert all(b in sup.code for b in image.basis)
        assert e.a in sup.code and e.a not in image
        assert e.weight4 == (e.a.bit_count() == 4)


def test_table1_grid(dag):
    assert table1_grid(dag) == TABLE1


def test_labels_present(dag):
    for name, _, _ in TABLE2:
        rec = dag.label_of(name)
        assert rec.realizable and rec.min_weight == 8
    for name, *_ in TABLE4:
        rec = dag.label_of(name)
        assert rec.realizable is False
    for lbl in SELF_DUAL_24:
        assert dag.label_of(lbl).k == 12


def test_characterisation_holds(dag):
    report = verify_theorem_3_6(dag)
    assert report.ok, report


def test_maximal_nonrealizable_are_the_table_codes(dag):
    labels = {r.label for r in maximal_nonrealizable(dag)}
    assert labels == {name for name, *_ in TABLE4}


def test_table4_not_reachable_from_realizable(dag):
    n91 = dag.label_of("N9_1").key
    for rec in dag.nodes.values():
        if rec.realizable:
            assert reaches(dag, rec.key, n91) is None


def test_containment_chain(dag):
    names = ["C6", "C7_3", "C8_3", "C9_4", "C10_1", "C11", "C12"]
    keys = [dag.label_of(n).key for n in names]
    for a, b in zip(keys, keys[1:]):
        assert reaches(dag, a, b, weight4_only=False) == [a, b]


def test_table4_statuses_are_exhaustive(dag):
    counts = {}
    for name, _, m, n in TABLE4:
        st = dag.label_of(name).status
        assert isinstance(st, NonRealizable) and st.m == m
        counts[name] = st.classes_checked
    assert counts == {name: n for name, _, _, n in TABLE4}


def test_no_unknown_statuses(dag):
    assert all(r.realizable is not None for r in dag.nodes.values())
    for rec in dag.nodes.values():
        if isinstance(rec.status, Realizable):
            assert rec.status.witness.residue == rec.code


def test_table2_witnesses(dag):
    wits = table2_witnesses(dag)
    assert set(wits) == {name for name, _, _ in TABLE2}
    for name, w in wits.items():
        assert w.residue == table2_code(name) and is_extremal(w)


def test_downward_closure(dag):
    assert deaugmentation_failures(dag) == []


def test_isomorph_rejection_with_permuted_start(dag):
    rng = random.Random(1)
    start = []
    for lbl in SELF_DUAL_24:
        p = list(range(24))
        rng.shuffle(p)
        start.append(Perm(tuple(p)).apply_code(named_code(lbl)))
    start.append(start[0])
    again = enumerate_condition_codes(start)
    assert set(again.nodes) == set(dag.nodes)
    assert len(again.edges) == len(dag.edges)
    for rec in again.nodes.values():
        assert dual_has_no_short_words(rec.code)
