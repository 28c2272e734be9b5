import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liedual import FiniteAbelianGroup, RootDatumError, load_datum, preset_names

ROOT_COUNTS = {
    "SL2": 2, "PGL2": 2, "SL3": 6, "PGL3": 6, "Sp4": 8, "Spin5": 8,
    "G2": 12, "SL4": 12, "Spin7": 18, "Sp6": 18, "Spin8": 24, "F4": 48,
    "E6sc": 72, "E7sc": 126,
}

EXPONENTS = {
    "SL2": [1], "SL3": [1, 2], "SL4": [1, 2, 3], "Sp4": [1, 3],
    "Spin5": [1, 3], "G2": [1, 5], "Spin7": [1, 3, 5], "Sp6": [1, 3, 5],
    "Spin8": [1, 3, 3, 5], "F4": [1, 5, 7, 11], "E6sc": [1, 4, 5, 7, 8, 11],
    "E7sc": [1, 5, 7, 9, 11, 13, 17],
}

LENGTH_RATIOS = {
    "SL2": 1, "SL3": 1, "SL4": 1, "Spin8": 1, "E6sc": 1, "E7sc": 1,
    "Sp4": 2, "Spin5": 2, "Spin7": 2, "Sp6": 2, "F4": 2, "G2": 3,
}

CENTER_ORDERS = {
    "SL2": 2, "PGL2": 1, "SL3": 3, "PGL3": 1, "Sp4": 2, "PSp4": 1,
    "SL4": 4, "Spin5": 2, "Spin7": 2, "Sp6": 2, "PSp6": 1, "Spin8": 4,
    "SO8": 2, "PSO8": 1, "Spin10": 4, "SO10": 2, "PSO10": 1,
    "E6sc": 3, "PE6": 1, "E7sc": 2, "PE7": 1, "F4": 1, "G2": 1,
}


def test_root_counts():
    for name, count in ROOT_COUNTS.items():
        assert len(load_datum(name).roots()) == count, name


def test_positive_roots_height_sorted():
    for name in ["SL3", "Sp4", "G2", "Spin7"]:
        pos = load_datum(name).positive_roots()
        heights = [rt.height for rt in pos]
        assert heights == sorted(heights)
        assert all(rt.height >= 1 for rt in pos)


def test_exponents():
    for name, exps in EXPONENTS.items():
        d = load_datum(name)
        assert d.exponents() == exps, name
        # sum of exponents counts the positive roots
        assert sum(d.exponents()) == len(d.positive_roots())


def test_length_ratio():
    for name, ratio in LENGTH_RATIOS.items():
        assert load_datum(name).length_ratio() == ratio, name


def test_symmetrizer_symmetrizes():
    for name in preset_names():
        d = load_datum(name)
        C = d.cartan
        s = d.symmetrizer()
        n = len(C)
        assert all(x >= 1 for x in s)
        for i in range(n):
            for j in range(n):
                assert s[i] * C[i][j] == s[j] * C[j][i]


def test_simple_coroots_consistent_with_roots():
    for name in ["SL3", "Sp4", "G2"]:
        d = load_datum(name)
        pos = {rt.coeffs: rt for rt in d.positive_roots()}
        r = d.derived_rank
        for i in range(r):
            unit = tuple(int(j == i) for j in range(r))
            assert list(pos[unit].coroot) == list(d.simple_coroots[i])


def test_killing_form_values():
    d = load_datum("SL2")
    a = d.simple_coroots[0]
    assert d.killing_form(a, a) == 8
    d3 = load_datum("SL3")
    a1, a2 = d3.simple_coroots
    assert d3.killing_form(a1, a1) == 12
    assert d3.killing_form(a1, a2) == -6


def test_two_rho_degree_of_highest_coroot():
    d = load_datum("G2")
    assert max(d.two_rho_degree(rt.coroot) for rt in d.positive_roots()) == 10
    d2 = load_datum("SL3")
    assert max(d2.two_rho_degree(rt.coroot) for rt in d2.positive_roots()) == 4


def test_component_group_and_center():
    assert load_datum("SL2").component_group().torsion_order == 1
    assert load_datum("PGL2").component_group().torsion_order == 2
    assert load_datum("PSO8").component_group().torsion_order == 4
    for name, z in CENTER_ORDERS.items():
        assert load_datum(name).center_order() == z, name
    assert load_datum("Spin8").center().invariant_factors == (2, 2)
    assert load_datum("SL4").center().invariant_factors == (4,)


def test_central_torus_gives_free_rank():
    d = load_datum("GL2")
    pi0 = d.component_group()
    assert pi0.free_rank == 1
    assert pi0.torsion_order == 1


def test_dual_is_involution():
    for name in preset_names():
        d = load_datum(name)
        dd = d.dual_datum().dual_datum()
        assert dd.cartan == d.cartan
        assert dd.cochar_basis == d.cochar_basis


def test_dual_swaps_center_and_pi0():
    for name in preset_names():
        d = load_datum(name)
        dual = d.dual_datum()
        assert d.component_group().torsion_order == dual.center_order()
        assert d.center_order() == dual.component_group().torsion_order


def test_document_round_trip():
    for name in ["SL2", "PGL3", "Sp4", "G2", "GL2", "SO8plus"]:
        d = load_datum(name)
        doc = d.to_document()
        text = json.dumps(doc)
        d2 = load_datum(text)
        assert d2.cartan == d.cartan
        assert d2.cochar_basis == d.cochar_basis
        assert d2.central_rank == d.central_rank


def test_rejects_bad_cartan():
    with pytest.raises(RootDatumError):
        load_datum({"name": "bad", "cartan": [[2, -2], [-2, 2]],
                    "lattice": [[1, 0], [0, 1]], "central_rank": 0})
    with pytest.raises(RootDatumError):
        load_datum({"name": "bad", "cartan": [[2, 1], [1, 2]],
                    "lattice": [[1, 0], [0, 1]], "central_rank": 0})


def test_rejects_bad_lattice():
    # lattice must contain the coroots with integral pairings
    with pytest.raises(RootDatumError):
        load_datum({"name": "bad", "cartan": [[2]], "lattice": [[3]],
                    "central_rank": 0})


def test_unknown_preset():
    with pytest.raises((RootDatumError, KeyError, ValueError)):
        load_datum("E8madeup")


def test_finite_abelian_group_str():
    assert str(FiniteAbelianGroup(())) == "1"
    assert "2" in str(FiniteAbelianGroup((2,)))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(sorted(ROOT_COUNTS)), st.data())
def test_root_negation_closure(name, data):
    d = load_datum(name)
    roots = d.roots()
    coeff_set = {rt.coeffs for rt in roots}
    rt = data.draw(st.sampled_from(roots))
    assert tuple(-c for c in rt.coeffs) in coeff_set
    # pairing of a root with its own coroot is 2
    assert sum(a * b for a, b in zip(rt.vector, rt.coroot)) == 2
