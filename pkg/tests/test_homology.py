from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fibering.exactq import RationalMatrix
from fibering.homology import (
    MappingAction,
    NotSymplecticError,
    SymplecticSpace,
    eigenspace,
    format_class,
    intersection,
    is_symplectic,
    parse_class,
    push_data,
    tau_involution,
    transvection_matrix,
    twist,
)

S2 = SymplecticSpace(2)
S3 = SymplecticSpace(3)


def test_form_convention():
    assert intersection(S2["a1"], S2["b1"]) == 1
    assert intersection(S2["b1"], S2["a1"]) == -1
    assert intersection(S2["a1"], S2["a2"]) == 0


def test_parse_and_format():
    x = parse_class("a1 + 2 b2 - a3", S3)
    assert x.coords == (1, 0, 0, 2, -1, 0)
    assert format_class(x) == "a1 + 2 b2 - a3"
    assert parse_class("1/2 a1", S3).coords[0] == Fraction(1, 2)
    with pytest.raises(ValueError):
        parse_class("a1 + q7", S3)


def test_twist_on_basis():
    # T_x(c) = c + i(c, x) x, so T_{a1}(b1) = b1 - a1
    T = twist(S2["a1"])
    assert T(S2["b1"]) == S2["b1"] - S2["a1"]
    assert T(S2["a1"]) == S2["a1"]
    assert T(S2["a2"]) == S2["a2"]


def test_non_symplectic_rejected():
    M = RationalMatrix.identity(4).scale(2)
    with pytest.raises(NotSymplecticError):
        MappingAction(M, S2)


def test_push_is_identity_on_closed_surface():
    for label in ("a1", "b3"):
        assert push_data(S3[label]).push().matrix == RationalMatrix.identity(6)
        assert push_data(S3[label], False).double_lifting == "y"


def test_tau_eigenspaces():
    tau = tau_involution(S3)
    assert (tau @ tau).matrix == RationalMatrix.identity(6)
    assert eigenspace(tau, 1).dim == 4 and eigenspace(tau, -1).dim == 2
    with pytest.raises(ValueError):
        tau_involution(S2)


coords = st.lists(st.integers(-3, 3), min_size=4, max_size=4).filter(any)


@settings(max_examples=60, deadline=None)
@given(coords, st.integers(-3, 3), st.integers(-3, 3))
def test_twist_powers_add(x, m, n):
    A = transvection_matrix(S2, x, m)
    B = transvection_matrix(S2, x, n)
    assert A @ B == transvection_matrix(S2, x, m + n)


@settings(max_examples=60, deadline=None)
@given(coords, coords, coords, coords)
def test_twists_preserve_form(x, y, u, v):
    T = twist(S2.vector(x)) @ twist(S2.vector(y), -2)
    assert is_symplectic(T.matrix, S2.form)
    assert intersection(T(S2.vector(u)), T(S2.vector(v))) == intersection(S2.vector(u), S2.vector(v))
