import pytest

from qpfaff.matrix import generator_matrix
from qpfaff.ncalg import Letter, NCPoly, free_spec, generic_spec, q_inverse_spec
from qpfaff.qexterior import (
    MixedPoly,
    delta,
    det_oracle,
    manin_check,
    minor_expansion,
    mixed_mul,
    omega,
    partial,
    pf_oracle,
    phi_check,
    wedge_power,
    x_wedge,
    y_wedge,
)
from qpfaff.qlinalg import build_B, pf_full, rdet
from qpfaff.ratfunc import RatFunc

SPEC2 = generic_spec(2)
r, s = SPEC2.r, SPEC2.s


def lift(p, x=(), y=()):
    return MixedPoly.lift(p, x=x, y=y)


def test_x_wedge_examples():
    assert x_wedge((2,), (1,), SPEC2) == (-r, (1, 2))
    c, m = x_wedge((1,), (1,), SPEC2)
    assert c.is_zero() and m is None
    assert x_wedge((1, 3), (2,), SPEC2) == (-r, (1, 2, 3))


def test_y_wedge_examples():
    assert y_wedge((2,), (1,), SPEC2) == (-s.inverse(), (1, 2))
    c, m = y_wedge((1,), (1,), SPEC2)
    assert c.is_zero() and m is None
    assert y_wedge((2, 3), (1,), SPEC2) == (s**-2, (1, 2, 3))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_wedge_relations_all_pairs(n):
    spec = generic_spec(n)
    for i in range(1, n + 1):
        assert x_wedge((i,), (i,), spec)[1] is None
        for j in range(i + 1, n + 1):
            assert x_wedge((j,), (i,), spec) == (-spec.r, (i, j))
            assert x_wedge((i,), (j,), spec) == (RatFunc.const(spec.variables, 1), (i, j))
            assert y_wedge((j,), (i,), spec) == (-spec.s.inverse(), (i, j))


def test_mixed_mul_examples():
    a = SPEC2.gen
    one = SPEC2.one()
    assert mixed_mul(lift(a(1, 1), x=(1,)), lift(a(1, 2), x=(2,))) == lift(a(1, 1) * a(1, 2), x=(1, 2))
    assert lift(a(1, 2), x=(2,)) * lift(a(1, 1), x=(1,)) == lift(-(a(1, 1) * a(1, 2)), x=(1, 2))
    assert lift(one, x=(1,)) * lift(one, y=(1,)) == lift(one, x=(1,), y=(1,))
    assert lift(one, y=(1,)) * lift(one, x=(1,)) == lift(one, x=(1,), y=(1,))


def test_delta_partial():
    a = SPEC2.gen
    assert delta(1, SPEC2) == lift(a(1, 1), x=(1,)) + lift(a(1, 2), x=(2,))
    assert partial(2, SPEC2) == lift(a(1, 2), y=(1,)) + lift(a(2, 2), y=(2,))
    assert (delta(1, SPEC2) * delta(1, SPEC2)).is_zero()
    with pytest.raises(IndexError):
        delta(3, SPEC2)


@pytest.mark.parametrize("n", [2, 3])
def test_omega_relations(n):
    spec = generic_spec(n)
    om = [omega(i, spec) for i in range(1, n + 1)]
    ratio = spec.r / spec.s
    for i in range(n):
        assert (om[i] * om[i]).is_zero()
        for j in range(i + 1, n):
            assert om[j] * om[i] == (om[i] * om[j]).scale(ratio)


def test_det_oracle_examples():
    assert det_oracle(generic_spec(1)) == generic_spec(1).gen(1, 1)
    a = SPEC2.gen
    expected = a(1, 1) * a(2, 2) - (a(1, 2) * a(2, 1)).scale(r)
    assert det_oracle(SPEC2, "row") == expected
    assert det_oracle(SPEC2, "column") == expected


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_det_oracle_matches_permutation_sum(n):
    spec = generic_spec(n)
    assert det_oracle(spec, "row") == rdet(generator_matrix(spec))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_phi(n):
    rep = phi_check(generic_spec(n))
    assert rep.holds and rep.identity == "phi" and rep.size == n


@pytest.mark.parametrize("n", [2, 3])
def test_manin(n):
    assert manin_check(generic_spec(n)).holds


def test_manin_free_control_does_not_vanish():
    spec = free_spec(2)
    d = delta(1, spec)
    sq = d * d
    assert not sq.is_zero()
    # contains a11*a12 - r*a12*a11 on x1^x2
    coeff = sq.coefficient(x=(1, 2))
    w = lambda *p: tuple(Letter(0, i, j) for i, j in p)  # noqa: E731
    assert coeff.coefficient(w((1, 1), (1, 2))) == 1
    assert coeff.coefficient(w((1, 2), (1, 1))) == -spec.r


def test_wedge_power_grading():
    spec = generic_spec(3)
    form = MixedPoly(spec)
    for i in range(1, 4):
        for j in range(i + 1, 4):
            form = form + lift(spec.gen(i, j), x=(i, j))
    assert wedge_power(form, 1).x_degrees() == {2}
    assert wedge_power(form, 2).x_degrees() <= {4}


# Pfaffian oracle --------------------------------------------------------------


def test_pf_oracle_2x2():
    spec = free_spec(2, symbol="b")
    B = generator_matrix(spec)
    assert pf_oracle(B, spec.r) == B[1, 2]


def _free_pf_expected(spec, v):
    b = lambda i, j: spec.gen(i, j)  # noqa: E731
    total = (
        b(1, 2) * b(3, 4)
        + (b(3, 4) * b(1, 2)).scale(v**4)
        - (b(1, 3) * b(2, 4)).scale(v)
        - (b(2, 4) * b(1, 3)).scale(v**3)
        + (b(1, 4) * b(2, 3)).scale(v**2)
        + (b(2, 3) * b(1, 4)).scale(v**2)
    )
    return total.scale((1 + v**4).inverse())


def test_pf_oracle_free_4x4():
    spec = free_spec(4, symbol="b")
    B = generator_matrix(spec)
    expected = _free_pf_expected(spec, spec.r)
    assert pf_oracle(B, spec.r, "x") == expected
    assert pf_full(B, spec.r) == expected


def test_pf_oracle_y_flavor_matches_full():
    spec = free_spec(4, symbol="b")
    B = generator_matrix(spec)
    v = spec.s
    assert pf_oracle(B, v, "y") == pf_full(B, v.inverse())


def test_pf_oracle_on_quadratic_entries():
    spec = generic_spec(4)
    B = build_B(spec)
    assert pf_oracle(B, spec.r) == pf_full(B, spec.r)


def test_pf_oracle_bad_input():
    with pytest.raises(ValueError):
        pf_oracle(generator_matrix(generic_spec(3)), r)
    with pytest.raises(ValueError):
        pf_oracle(generator_matrix(generic_spec(2)), r, "z")


# minors ---------------------------------------------------------------------------


def test_minor_expansion_examples():
    a = SPEC2.gen
    assert minor_expansion([1], SPEC2) == {(1,): a(1, 1), (2,): a(1, 2)}
    assert minor_expansion([1, 2], SPEC2) == {(1, 2): rdet(generator_matrix(SPEC2))}
    assert minor_expansion([1, 1], SPEC2) == {}


def test_minor_expansion_in_one_parameter_regime():
    spec = q_inverse_spec(3)
    exp = minor_expansion([1, 3], spec)
    assert set(exp) == {(1, 2), (1, 3), (2, 3)}
    assert all(isinstance(p, NCPoly) for p in exp.values())
