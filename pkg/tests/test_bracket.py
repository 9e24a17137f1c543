import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rcbracket.algebra import LAM, MU, ONE, ParamPoly, ParamScalar
from rcbracket.bracket import (
    SYMBOLS,
    TN,
    OutputWeightError,
    ScalarDensity,
    apply_bracket,
    build_bracket,
    equivariance_residual,
    equivariance_sweep,
    infer_output_weight,
    monomials,
    tn_rewrite,
)
from rcbracket.operators import RST, Poly, SpaceMismatchError, x_space
from rcbracket.singular import clear_denominators, solve_recurrence, verify_annihilation

lam, mu = ParamScalar.lam(), ParamScalar.mu()


def bracket(n, N, **kw):
    return build_bracket(solve_recurrence(n, N, **kw))


def xmono(n, *e, c=1):
    return Poly.monomial(x_space(n), e, c)


# -- construction and application -------------------------------------------------


def test_N0_symbol_is_one():
    assert bracket(3, 0).symbol == Poly.const(SYMBOLS, 1)


def test_N1_symbol():
    n = 4
    B = bracket(n, 1)
    s, t, r = (Poly.var(SYMBOLS, k) for k in range(3))
    expect = r + s.scale(-mu / (lam * 2 + n - 2)) + t.scale(-lam / (mu * 2 + n - 2))
    assert B.symbol == expect


def test_cleared_N1_symbol():
    n = 5
    B = build_bracket(clear_denominators(solve_recurrence(n, 1)).as_table())
    a, b = lam * 2 + n - 2, mu * 2 + n - 2
    s, t, r = (Poly.var(SYMBOLS, k) for k in range(3))
    assert B.symbol == r.scale(a * b) + s.scale(-mu * b) + t.scale(-lam * a)


def test_N0_is_pointwise_product():
    B = bracket(3, 0)
    f, g = xmono(3, 1, 2, 0) + xmono(3, 0, 0, 1), xmono(3, 0, 1, 1, c=3)
    assert apply_bracket(B, f, g) == f * g


def test_N1_examples():
    B = bracket(3, 1)
    x1 = xmono(3, 1, 0, 0)
    assert apply_bracket(B, x1, x1) == Poly.const(x_space(3), 1)
    norm = xmono(3, 2, 0, 0) + xmono(3, 0, 2, 0) + xmono(3, 0, 0, 2)
    one = Poly.const(x_space(3), 1)
    assert apply_bracket(B, norm, one) == Poly.const(x_space(3), -mu * 6 / (lam * 2 + 1))


def test_density_wrapper_and_mismatch():
    B = bracket(3, 1)
    f = ScalarDensity(xmono(3, 1, 0, 0), LAM)
    assert apply_bracket(B, f, f.poly) == Poly.const(x_space(3), 1)
    with pytest.raises(SpaceMismatchError):
        apply_bracket(B, xmono(4, 1, 0, 0, 0), xmono(3, 1, 0, 0))
    with pytest.raises(ValueError):
        ScalarDensity(f.poly, LAM * MU)


def test_bilinearity_random_instances():
    rng = random.Random(3)
    B = bracket(3, 2)
    mons = monomials(3, 3)
    for _ in range(50):
        f1, f2, g = (sum((m.scale(rng.randint(-3, 3)) for m in rng.sample(mons, 3)), Poly(x_space(3))) for _ in range(3))
        a = ParamScalar.coerce(Fraction(rng.randint(-9, 9), rng.randint(1, 9))) + lam * rng.randint(0, 2)
        lhs = apply_bracket(B, f1.scale(a) + f2, g)
        assert lhs == apply_bracket(B, f1, g).scale(a) + apply_bracket(B, f2, g)


# -- equivariance -----------------------------------------------------------------


@pytest.mark.parametrize("N", [0, 1, 2, 3])
def test_translations_and_rotations(N):
    rep = equivariance_sweep(bracket(3, N), 3, kinds=("translation", "rotation"))
    assert rep.passed and rep.checked > 0


def test_rotation_example_degree_two():
    B = bracket(3, 1)
    for f in monomials(3, 2):
        for g in monomials(3, 2):
            assert not equivariance_residual(B, ("rotation", 1, 2), f, g)


def test_special_conformal_weight_selection():
    B = bracket(3, 1)
    results = {}
    for c in (-2, 0, 2):
        results[c] = all(
            not equivariance_residual(B, ("special_conformal", 1), f, g, LAM + MU + c)
            for f in monomials(3, 3)
            for g in monomials(3, 3)
        )
    assert results == {-2: True, 0: False, 2: False}


@pytest.mark.parametrize("N", [0, 1, 2])
def test_inferred_output_weight(N):
    assert infer_output_weight(bracket(3, N), N + 1) == LAM + MU - 2 * N


def test_infer_weight_precondition_and_failure():
    B = bracket(3, 1)
    with pytest.raises(ValueError):
        infer_output_weight(B, 1)
    bad = build_bracket(solve_recurrence(3, 1).perturbed((1, 0), 1))
    with pytest.raises(OutputWeightError):
        infer_output_weight(bad, 2)


def test_full_sweep_at_inferred_weight_N2():
    B = bracket(3, 2)
    rep = equivariance_sweep(B, 3, LAM + MU - 4)
    assert rep.passed


def test_specialized_bracket_weights():
    pt = (Fraction(2, 3), Fraction(-1, 5))
    B = bracket(3, 1, lam=pt[0], mu=pt[1])
    assert B.weights == (ParamPoly.const(pt[0]), ParamPoly.const(pt[1]))
    assert infer_output_weight(B, 2) == ParamPoly.const(sum(pt) - 2)


@pytest.mark.parametrize("ij", [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)])
def test_perturbation_is_detected(ij):
    T = solve_recurrence(3, 2).perturbed(ij, 1)
    rep = equivariance_sweep(build_bracket(T), 3, LAM + MU - 4, kinds=("special_conformal",), stop_at_first=True)
    assert not rep.passed


@pytest.mark.parametrize("perturb", [None, (1, 0), (1, 1)])
def test_equivariance_cooccurs_with_annihilation(perturb):
    T = solve_recurrence(3, 2)
    if perturb:
        T = T.perturbed(perturb, Fraction(1, 2))
    sweep = equivariance_sweep(build_bracket(T), 3, LAM + MU - 4, stop_at_first=True)
    assert sweep.passed == verify_annihilation(T).passed


# -- tangent / normal rewrite -------------------------------------------------------


def test_tn_examples():
    r, s, t = (Poly.var(RST, k) for k in range(3))
    tt, nn, tn = (Poly.var(TN, k) for k in range(3))
    q = Fraction(1, 4)
    assert tn_rewrite(r) == (tt - nn).scale(q)
    assert tn_rewrite(s + t) == (tt + nn).scale(Fraction(1, 2))
    assert tn_rewrite(s - t) == tn
    with pytest.raises(SpaceMismatchError):
        tn_rewrite(xmono(3, 1, 0, 0))


@st.composite
def rst_polys(draw):
    terms = draw(
        st.dictionaries(
            st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)).filter(lambda e: sum(e) <= 3),
            st.sampled_from([ONE, -ONE, lam, mu * 2 - 1, ParamScalar.coerce(Fraction(1, 3))]),
            max_size=4,
        )
    )
    return Poly(RST, terms)


@settings(max_examples=50, deadline=None)
@given(rst_polys(), rst_polys())
def test_tn_rewrite_is_homomorphism(p, q):
    assert tn_rewrite(p * q) == tn_rewrite(p) * tn_rewrite(q)
    assert tn_rewrite(p + q) == tn_rewrite(p) + tn_rewrite(q)
