from __future__ import annotations

from fractions import Fraction as Q
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affine_whittaker.lie import (
    CENTRAL,
    DERIVATION,
    LEVI,
    RADICAL_MINUS,
    RADICAL_PLUS,
    affine_algebra,
    bracket,
    cartan_loop,
    heisenberg_basis,
    parabolic_from_subset,
    root_vector,
)
from affine_whittaker.roots import build_root_system, invariant_form
from oracles import lie_terms_to_loop, loop_bracket, to_loop


def test_bracket_examples():
    A = affine_algebra("A1")
    assert bracket(A.e((1,), 2), A.f((1,), -2)) == A.h(1, 0) + A.c * 2
    assert bracket(A.d, A.f((1,), -3)) == A.f((1,), -3) * -3
    assert bracket(A.c, A.e((1,), 5)).is_zero()
    for m in range(1, 5):
        assert bracket(A.h(1, m), A.h(1, -m)) == A.c * (2 * m)


@pytest.mark.parametrize("label,window", [("A1", 3), ("A2", 2)])
def test_bracket_matches_matrix_oracle(label, window):
    A = affine_algebra(label)
    basis = A.basis_window(-window, window)
    for a, b in product(basis, repeat=2):
        got = lie_terms_to_loop(A.bracket_basis(a, b), A.rank)
        want = loop_bracket(to_loop(tuple(a), A.rank), to_loop(tuple(b), A.rank))
        assert got == want, (a, b)


def test_mixed_root_systems_rejected():
    with pytest.raises(ValueError):
        bracket(affine_algebra("A1").c, affine_algebra("A2").c)


def test_heisenberg_basis_examples():
    rs1 = build_root_system("A1")
    got = heisenberg_basis(rs1, -2, 2)
    assert set(got) == {cartan_loop(0, n) for n in (-2, -1, 1, 2)} | {CENTRAL}
    rs2 = build_root_system("A2")
    assert set(heisenberg_basis(rs2, 1, 1)) == {cartan_loop(0, 1), cartan_loop(1, 1), CENTRAL}
    A = affine_algebra("A2")
    hb = heisenberg_basis(rs2, -2, 2)
    for a, b in product(hb, repeat=2):
        assert set(A.bracket_basis(a, b)) <= {CENTRAL}


def test_parabolic_examples():
    spec = parabolic_from_subset("A1", ())
    for n in range(-3, 4):
        assert spec.classify(root_vector((-1,), n)) == RADICAL_MINUS
        assert spec.classify(root_vector((1,), n)) == RADICAL_PLUS
        assert spec.classify(cartan_loop(0, n)) == LEVI
    assert spec.classify(root_vector((1,), -7)) == RADICAL_PLUS
    s2 = parabolic_from_subset("A2", (0,))
    assert s2.classify(root_vector((-1, 0), 3)) == LEVI
    assert s2.classify(root_vector((1, 1), -1)) == RADICAL_PLUS
    assert s2.classify(DERIVATION) == LEVI and s2.classify(CENTRAL) == LEVI


def test_complement_is_orthogonal_oracle():
    rs = build_root_system("A2")
    spec = parabolic_from_subset("A2", (0,))
    assert spec.hperp_basis == ((1, 2),)
    for v in spec.hperp_basis:
        assert invariant_form(rs, v, rs.simple_roots[0]) == 0
    (gp,) = spec.g_perp(2)
    assert gp == affine_algebra("A2").h(1, 2) + affine_algebra("A2").h(2, 2) * 2
    (gl,) = spec.g_levi(-1)
    assert gl == affine_algebra("A2").h(1, -1)


@pytest.mark.parametrize("subset", [(), (0,), (1,), (0, 1)])
def test_opposite_weight_brackets_land_in_levi(subset):
    spec = parabolic_from_subset("A2", subset)
    A = spec.algebra
    for r in spec.rs.roots:
        for n in range(-2, 3):
            x = root_vector(r, n)
            if spec.classify(x) != RADICAL_PLUS:
                continue
            y = root_vector(tuple(-c for c in r), -n)
            assert spec.classify(y) == RADICAL_MINUS
            assert all(spec.classify(k) == LEVI for k in A.bracket_basis(x, y))


def test_classify_negation_symmetry():
    for subset in [(), (0,), (1,)]:
        spec = parabolic_from_subset("A2", subset)
        swap = {LEVI: LEVI, RADICAL_PLUS: RADICAL_MINUS, RADICAL_MINUS: RADICAL_PLUS}
        for r in spec.rs.roots:
            assert spec.classify(root_vector(tuple(-c for c in r), 1)) == swap[spec.classify(root_vector(r, 1))]


def test_bad_subset_rejected():
    with pytest.raises(ValueError):
        parabolic_from_subset("A2", (2,))


def test_text_round_trip():
    A = affine_algebra("A2")
    for b in A.basis_window(-2, 2):
        assert A.parse_basis(A.render_basis(b)) == b
    x = A.parse("2*e[a1]@1 - 1/2*h1@0 + c")
    assert x == A.e((1, 0), 1) * 2 - A.h(1, 0) * Q(1, 2) + A.c
    assert A.render_basis(root_vector((1, 1), -3)) == "e[a1+a2]@-3"
    assert A.render_basis(cartan_loop(0, 2)) == "h1@2"


basis_a2 = st.sampled_from(affine_algebra("A2").basis_window(-3, 3))


@settings(max_examples=200)
@given(basis_a2, basis_a2)
def test_antisymmetry_property(a, b):
    A = affine_algebra("A2")
    x, y = A.element(a), A.element(b)
    assert bracket(x, y) == bracket(y, x) * -1


@settings(max_examples=100)
@given(basis_a2, basis_a2, basis_a2)
def test_jacobi_property(a, b, c):
    A = affine_algebra("A2")
    x, y, z = A.element(a), A.element(b), A.element(c)
    total = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    assert total.is_zero()
