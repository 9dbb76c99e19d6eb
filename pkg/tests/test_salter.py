import pytest

from fibering.exactq import Subspace, intersect
from fibering.prodring import LemmaViolation
from fibering.salter import (
    MSSpace,
    OutsideH1,
    fibering_pullbacks,
    ms_annihilator,
    ms_cup_is_zero,
    ms_h1,
    no_fifth_fibering_check,
    pattern_subspace,
    randomized_trials,
    salter_case_classify,
)


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_h1_dimension(g):
    assert ms_h1(g).dim == 6 * g


@pytest.mark.parametrize("g", [2, 3])
def test_pullbacks_transverse(g):
    P = fibering_pullbacks(g)
    assert all(p.dim == 2 * g and p <= ms_h1(g) for p in P)
    for i in range(4):
        for j in range(i + 1, 4):
            assert intersect(P[i], P[j]).dim == 0


def test_pullback_cups_follow_base_form():
    g = 2
    J = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
    for P in fibering_pullbacks(g):
        B = P.basis
        for i in range(4):
            for j in range(4):
                assert ms_cup_is_zero(B[i], B[j], g) == (J[i][j] == 0)


def test_cross_pattern_is_pullback():
    g = 2
    P = fibering_pullbacks(g)
    assert pattern_subspace(g, [1, 3]) == P[0]


def test_generic_annihilator_is_line():
    g = 2
    sp = MSSpace(g)
    u = sp.join([1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [-1, -1, -1, 0])
    assert ms_annihilator(u, g) == Subspace(sp.ambient_dim, [u])


def test_outside_h1_rejected():
    with pytest.raises(OutsideH1):
        ms_annihilator([1] + [0] * 15, 2)


def test_case_labels():
    g = 2
    P = fibering_pullbacks(g)
    u, v = P[0].basis[0], P[0].basis[2]
    assert salter_case_classify(u, v, g) == ("1'", "2'")


def test_classify_rejects_nonzero_cup():
    g = 2
    sp = MSSpace(g)
    u = sp.join([1, 0, 0, 0], [0, 0, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 0])
    v = sp.join([0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, -1, 0, 0])
    with pytest.raises((LemmaViolation, ValueError)):
        salter_case_classify(u, v, g)


def test_trials_are_seeded():
    assert randomized_trials(2, 40, 5) == randomized_trials(2, 40, 5)


def test_genus_one_rejected():
    with pytest.raises(ValueError):
        no_fifth_fibering_check(1)


def test_zero_trials_withhold_conclusion():
    cert = no_fifth_fibering_check(2, trials=0)
    assert cert.all_passed and cert.fib is None


def test_certificate_g2():
    cert = no_fifth_fibering_check(2, trials=100, seed=7)
    assert cert.fib == 4 and not cert.failed
