import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpfaff import classical
from qpfaff.matrix import generator_matrix, identity_matrix
from qpfaff.ncalg import free_spec, generic_spec, numeric_spec, q_inverse_spec
from qpfaff.qlinalg import (
    adjugate,
    antisymmetry_ratios,
    build_B,
    build_Bprime,
    cdet,
    cofactor_col,
    cofactor_row,
    enumerate_Pi,
    enumerate_Pi_prime,
    evaluate_numeric,
    hf_full,
    hf_matching,
    hf_recursive,
    inversions,
    jay,
    laplace_col,
    laplace_row,
    maya_residuals,
    minor,
    numeric_matrix_assignment,
    per_q,
    pf_full,
    pf_matching,
    pf_recursive,
    rdet,
    tau,
)

SPEC2 = generic_spec(2)
r, s = SPEC2.r, SPEC2.s
A2 = generator_matrix(SPEC2)


def a(i, j, spec=SPEC2):
    return spec.gen(i, j)


# permutations ------------------------------------------------------------------


def test_permutation_sets():
    assert inversions((1, 2, 3)) == 0
    assert inversions((3, 2, 1)) == 3
    assert len(enumerate_Pi_prime(4)) == 6
    assert len(enumerate_Pi(4)) == 3
    assert len(enumerate_Pi(6)) == 15
    assert sorted(inversions(p) for p in enumerate_Pi(4)) == [0, 1, 2]
    for p in enumerate_Pi(6):
        assert all(p[2 * k] < p[2 * k + 1] for k in range(3))
        assert [p[2 * k] for k in range(3)] == sorted(p[2 * k] for k in range(3))


# determinants ----------------------------------------------------------------------


def test_determinant_examples():
    det = a(1, 1) * a(2, 2) - (a(1, 2) * a(2, 1)).scale(r)
    assert rdet(A2) == det
    assert str(rdet(A2)) == "a11*a22 - r*a12*a21"
    raw_cdet = a(1, 1) * a(2, 2) - (a(2, 1) * a(1, 2)).scale(s.inverse())
    assert cdet(A2) == raw_cdet == det


@pytest.mark.parametrize("n", [2, 3, 4])
def test_rdet_equals_cdet(n):
    A = generator_matrix(generic_spec(n))
    assert rdet(A) == cdet(A)


def test_per_q_example():
    spec = q_inverse_spec(2)
    q = spec.q
    g = spec.gen
    assert per_q(generator_matrix(spec)) == g(1, 1) * g(2, 2) + (g(2, 1) * g(1, 2)).scale(q)
    with pytest.raises(ValueError):
        per_q(A2)


def test_minor_examples():
    m = minor(A2, [1], [2])
    assert m.shape == (1, 1) and m[1, 1] == a(1, 2)
    assert rdet(minor(A2, [1, 2], [1, 2])) == rdet(A2)
    A3 = generator_matrix(generic_spec(3))
    for rows in combinations((1, 2, 3), 2):
        for cols in combinations((1, 2, 3), 2):
            M = minor(A3, rows, cols)
            assert rdet(M) == cdet(M)


def test_laplace_examples():
    assert laplace_row(A2, ([1], [2])) == rdet(A2)
    assert cofactor_row(A2, 1, 2).is_zero()
    assert cofactor_col(A2, 2, 1).is_zero()
    A3 = generator_matrix(generic_spec(3))
    d = rdet(A3)
    for first in ([1], [2], [3]):
        rest = [x for x in (1, 2, 3) if x not in first]
        assert laplace_row(A3, (first, rest)) == d
        assert laplace_col(A3, (first, rest)) == d


def test_adjugate_and_tau():
    adj = adjugate(A2)
    assert [[adj[i, j] for j in (1, 2)] for i in (1, 2)] == [[a(2, 2), -a(1, 2)], [-a(2, 1), a(1, 1)]]
    t = tau(A2, r)
    assert t[1, 2] == a(1, 2).scale(r) and t[2, 1] == a(2, 1).scale(r.inverse())
    assert t[1, 1] == a(1, 1)
    assert tau(tau(A2, r), r.inverse()) == A2


@pytest.mark.parametrize("n", [2, 3])
def test_cramer(n):
    spec = generic_spec(n)
    A = generator_matrix(spec)
    adj = adjugate(A)
    D = identity_matrix(spec, n, rdet(A))
    assert tau(A, spec.r) @ adj == D
    assert adj @ tau(A, spec.s.inverse()) == D
    assert A @ tau(adj, spec.r.inverse()) == D
    assert tau(adj, spec.s) @ A == D


def test_transposed_adjugate_breaks_cramer():
    adj_t = adjugate(A2).transpose()
    D = identity_matrix(SPEC2, 2, rdet(A2))
    assert tau(A2, r) @ adj_t != D


# quadratic matrices ------------------------------------------------------------------


def test_quadratic_entries_2x2():
    B = build_B(SPEC2)
    assert B[1, 2] == a(1, 1) * a(2, 2) - (a(2, 1) * a(1, 2)).scale(s.inverse())
    Bp = build_Bprime(SPEC2)
    assert Bp[1, 2] == a(1, 1) * a(2, 2) - (a(1, 2) * a(2, 1)).scale(r)
    assert B[1, 1].is_zero() and B[2, 2].is_zero()


def test_diagonal_vanishes_4x4():
    B = build_B(generic_spec(4))
    assert all(B[i, i].is_zero() for i in range(1, 5))


def test_jay():
    J = jay(r, 2, SPEC2)
    assert J[1, 2] == 1 and J[2, 1] == SPEC2.const(-r) and J[3, 4] == 1 and J[1, 3].is_zero()


def test_antisymmetry_ratios():
    spec = generic_spec(4)
    assert set(antisymmetry_ratios(build_B(spec)).values()) == {-spec.s.inverse()}
    assert set(antisymmetry_ratios(build_Bprime(spec)).values()) == {-spec.r}


# Pfaffians and Hafnians ---------------------------------------------------------------


def test_small_pf_hf():
    spec = free_spec(2, symbol="b")
    B = generator_matrix(spec)
    assert pf_full(B, spec.r) == B[1, 2]
    assert hf_full(B, spec.r) == B[1, 2]


def test_matching_forms_free():
    spec = free_spec(4, symbol="b", like=q_inverse_spec(4))
    q = spec.r
    b = spec.gen
    assert pf_matching(generator_matrix(spec), q) == (
        b(1, 2) * b(3, 4) - (b(1, 3) * b(2, 4)).scale(q) + (b(1, 4) * b(2, 3)).scale(q * q)
    )
    assert hf_matching(generator_matrix(spec), q) == (
        b(1, 2) * b(3, 4) + (b(1, 3) * b(2, 4)).scale(q) + (b(1, 4) * b(2, 3)).scale(q * q)
    )


def test_pf_forms_agree_q_inverse(qi4):
    B = build_B(qi4)
    q = qi4.q
    full = pf_full(B, q)
    assert full == pf_matching(B, q) == pf_recursive(B, q)
    assert full == rdet(generator_matrix(qi4))


def test_hf_forms_agree_q_negative(qn4):
    B = build_Bprime(qn4, qn4.q)
    q = qn4.q
    full = hf_full(B, q)
    assert full == hf_matching(B, q) == hf_recursive(B, q)
    assert full == per_q(generator_matrix(qn4))


def test_matching_form_invalid_generically():
    spec = generic_spec(4)
    B = build_B(spec)
    assert pf_full(B, spec.r) != pf_matching(B, spec.r)


def test_pf_theorems_generic():
    spec = generic_spec(4)
    A = generator_matrix(spec)
    pf_b = pf_full(build_B(spec), spec.r)
    pf_bp = pf_full(build_Bprime(spec), spec.s.inverse())
    assert pf_b == rdet(A)
    assert pf_bp == cdet(A)
    assert pf_b == pf_bp


def test_maya(qi4, qn4):
    assert not any(not p.is_zero() for p in maya_residuals(build_B(qi4), qi4.r, "plus"))
    assert all(p.is_zero() for p in maya_residuals(build_Bprime(qn4), qn4.r, "minus"))
    g = generic_spec(4)
    assert any(not p.is_zero() for p in maya_residuals(build_B(g), g.r, "plus"))
    assert maya_residuals(build_B(SPEC2), r) == []


def test_odd_pfaffian_rejected():
    with pytest.raises(ValueError):
        pf_full(generator_matrix(generic_spec(3)), r)


# numeric evaluation -----------------------------------------------------------------

ONE2 = numeric_spec(2, 1, 1)


def test_numeric_examples():
    vals = numeric_matrix_assignment([[1, 2], [3, 4]])
    A = generator_matrix(ONE2)
    assert evaluate_numeric(rdet(A), vals) == -2
    assert evaluate_numeric(per_q(A, q=1), vals) == 10


def test_numeric_needs_commutative_algebra():
    spec = numeric_spec(2, 2, 1)
    with pytest.raises(ValueError):
        evaluate_numeric(rdet(generator_matrix(spec)), numeric_matrix_assignment([[1, 2], [3, 4]]))
    with pytest.raises(ValueError):
        evaluate_numeric(rdet(A2), {})


def test_pf_of_symplectic_product_is_det():
    rng = random.Random(7)
    spec = numeric_spec(4, 1, 1)
    expr = pf_full(build_B(spec), 1)
    for _ in range(10):
        M = [[rng.randint(-9, 9) for _ in range(4)] for _ in range(4)]
        assert evaluate_numeric(expr, numeric_matrix_assignment(M)) == classical.det(M)


# classical references --------------------------------------------------------------

small = st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=3, max_size=3)


@settings(max_examples=30, deadline=None)
@given(small)
def test_engine_matches_classical_3x3(M):
    spec = numeric_spec(3, 1, 1)
    A = generator_matrix(spec)
    vals = numeric_matrix_assignment(M)
    assert evaluate_numeric(rdet(A), vals) == classical.det(M)
    assert evaluate_numeric(per_q(A, q=1), vals) == classical.per(M)


def test_classical_reference_values():
    assert classical.det([[1, 2], [3, 4]]) == -2
    assert classical.per([[1, 2], [3, 4]]) == 10
    assert classical.pf([[0, 1, 2, 3], [-1, 0, 4, 5], [-2, -4, 0, 6], [-3, -5, -6, 0]]) == 1 * 6 - 2 * 5 + 3 * 4
    assert classical.hf([[0, 1, 2, 3], [1, 0, 4, 5], [2, 4, 0, 6], [3, 5, 6, 0]]) == 6 + 10 + 12
    assert classical.det([[Fraction(1, 2)]]) == Fraction(1, 2)


def test_classical_hf_of_product_is_not_per():
    # Hf(A J A^T) = per(A) is false even at r = s = 1
    M = [[1] * 4 for _ in range(4)]
    C = classical.matmul(classical.matmul(M, classical.symplectic(2)), classical.transpose(M))
    assert classical.per(M) == 24
    assert classical.hf(C) == 0
