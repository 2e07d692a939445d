from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gentoda.algebra.basis import MixedGenerator, mixed_basis
from gentoda.algebra.commutative import borel_restrict, classical_ring, poisson_bracket
from gentoda.algebra.symbol import principal_symbol
from gentoda.algebra.uea import RankMismatchError, UEAElement, adjoint_action, commutator, nc_mul
from gentoda.algebra.weyl import WeylElement, weyl_mul


def e(n, i, j):
    return UEAElement.e(n, i, j)


# -- basis ---------------------------------------------------------------------


def test_basis_order_puts_f_before_e():
    b = mixed_basis(3)
    kinds = [g.kind for g in b.generators]
    assert kinds == ["F"] * 3 + ["E"] * 6
    assert b.size == 9


@pytest.mark.parametrize("kind,i,j", [("F", 2, 1), ("E", 1, 2), ("G", 1, 1)])
def test_generator_validation(kind, i, j):
    with pytest.raises(ValueError):
        MixedGenerator(kind, i, j)


def test_raw_round_trip():
    b = mixed_basis(3)
    for g in b.generators:
        raw = b.to_raw(g)
        back = {}
        for (i, j), c in raw.items():
            for k, v in b.raw(i, j).items():
                back[k] = back.get(k, 0) + c * v
        assert {k: v for k, v in back.items() if v} == {b.index[g]: 1}


# -- nc_mul / commutator ---------------------------------------------------------


def test_unit_law():
    a = e(2, 1, 2) * e(2, 2, 1) + 3
    one = UEAElement.one(2)
    assert nc_mul(one, a) == a
    assert nc_mul(a, one) == a


def test_defining_relation():
    lhs = e(2, 1, 2) * e(2, 2, 1)
    rhs = e(2, 2, 1) * e(2, 1, 2) + e(2, 1, 1) - e(2, 2, 2)
    assert lhs == rhs


def test_associativity_example():
    a, b = e(2, 1, 2), e(2, 2, 1)
    assert (a * b) * a == a * (b * a)


def test_commutator_examples():
    assert commutator(e(2, 1, 1), e(2, 1, 2)) == e(2, 1, 2)
    assert commutator(e(2, 1, 2), e(2, 2, 1)) == e(2, 1, 1) - e(2, 2, 2)
    assert commutator(e(4, 1, 2), e(4, 3, 4)).is_zero()


def test_rank_mismatch():
    with pytest.raises(RankMismatchError):
        nc_mul(e(2, 1, 1), e(3, 1, 1))


def test_adjoint_action_examples():
    assert adjoint_action(MixedGenerator("E", 1, 1), e(2, 2, 1)) == -e(2, 2, 1)
    assert adjoint_action(MixedGenerator("E", 2, 1), e(2, 2, 1)).is_zero()
    sq = e(2, 2, 1) * e(2, 2, 1)
    assert adjoint_action(("E", 1, 1), sq) == sq * -2


def test_normal_form_of_product():
    # e_12 e_21 = F12 E21 + E21^2
    x = e(2, 1, 2) * e(2, 2, 1)
    assert str(x) == "F12*E21 + E21*E21"


def test_spectral_variables_central_and_weyl():
    n = 2
    u, D, eps = UEAElement.u(n), UEAElement.D(n), UEAElement.eps(n)
    assert D * u == u * D - u * u
    assert commutator(eps, e(n, 1, 2)).is_zero()
    assert commutator(u, e(n, 2, 1)).is_zero()
    assert commutator(D, e(n, 2, 1)).is_zero()


# random elements -------------------------------------------------------------


def _monomials(n, max_len):
    raw = st.tuples(st.integers(1, n), st.integers(1, n))
    return st.lists(raw, min_size=0, max_size=max_len)


@st.composite
def uea_products(draw, n, max_len=4):
    factors = draw(_monomials(n, max_len))
    coef = draw(st.integers(-3, 3).filter(bool))
    out = UEAElement.scalar(n, coef)
    for i, j in factors:
        out = out * e(n, i, j)
    return out


@st.composite
def quadratic(draw, n):
    out = UEAElement.zero(n)
    for _ in range(draw(st.integers(1, 3))):
        out = out + draw(uea_products(n, 2))
    return out


@settings(max_examples=200)
@given(st.integers(2, 3).flatmap(lambda n: st.tuples(uea_products(n), uea_products(n), uea_products(n))))
def test_associativity_random(triple):
    a, b, c = triple
    assert nc_mul(a, nc_mul(b, c)) == nc_mul(nc_mul(a, b), c)


@settings(max_examples=60)
@given(st.integers(2, 3).flatmap(lambda n: st.tuples(quadratic(n), quadratic(n), quadratic(n))))
def test_commutator_antisymmetry_and_jacobi(triple):
    a, b, c = triple
    assert (commutator(a, b) + commutator(b, a)).is_zero()
    jac = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b))
    assert jac.is_zero()


# -- Poisson bracket --------------------------------------------------------------


def test_poisson_examples():
    R = classical_ring(2)
    x = R.x
    assert poisson_bracket(x(1, 1), x(2, 1)) == -x(2, 1)
    assert poisson_bracket(x(2, 1), x(2, 2)) == -x(2, 1)
    assert poisson_bracket(x(1, 1) * x(2, 2), x(2, 1)) == x(1, 1) * x(2, 1) - x(2, 2) * x(2, 1)
    assert poisson_bracket(R.lam * x(1, 2), R.eps + R.u) == 0


@st.composite
def comm_quadratic(draw, n):
    R = classical_ring(n)
    out = R.zero()
    for _ in range(draw(st.integers(1, 3))):
        term = R.from_scalar(draw(st.integers(-3, 3)))
        for i, j in draw(_monomials(n, 2)):
            term *= R.x(i, j)
        out += term
    return out


@settings(max_examples=60)
@given(st.integers(2, 3).flatmap(lambda n: st.tuples(comm_quadratic(n), comm_quadratic(n), comm_quadratic(n))))
def test_poisson_antisymmetry_and_jacobi(triple):
    f, g, h = triple
    pb = poisson_bracket
    assert pb(f, g) + pb(g, f) == 0
    assert pb(f, pb(g, h)) + pb(g, pb(h, f)) + pb(h, pb(f, g)) == 0


def test_borel_restrict_mirrors_upper():
    R = classical_ring(3)
    assert borel_restrict(R.x(1, 3) * R.x(2, 2)) == R.x(3, 1) * R.x(2, 2)


# -- Weyl ----------------------------------------------------------------------------


def test_weyl_examples():
    u, D = WeylElement.u(), WeylElement.D()
    assert weyl_mul(D, u) == u * D - u * u
    assert weyl_mul(u, D) == WeylElement({(1, 1): 1})
    assert D * (u * u) == WeylElement({(2, 1): 1, (3, 0): -2})


weyl_terms = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-3, 3), min_size=1, max_size=3
).map(WeylElement)


@settings(max_examples=100)
@given(weyl_terms, weyl_terms, weyl_terms)
def test_weyl_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


# -- principal symbol ----------------------------------------------------------------


def test_symbol_examples():
    R = classical_ring(2)
    x = R.x
    assert principal_symbol(e(2, 1, 1) * e(2, 2, 2) - e(2, 2, 1) * e(2, 1, 2)) == x(1, 1) * x(2, 2) - x(2, 1) * x(1, 2)
    assert principal_symbol(e(2, 1, 2) * e(2, 2, 1)) == x(2, 1) * x(1, 2)
    assert principal_symbol(UEAElement.one(2)) == R.one()


def test_symbol_of_pencil_entry():
    n = 2
    R = classical_ring(n)
    q = e(n, 1, 2) * UEAElement.u(n) + 1 - UEAElement.D(n)
    assert principal_symbol(q) == R.x(1, 2) * R.u + 1 - R.lam


@settings(max_examples=100)
@given(st.integers(2, 3).flatmap(lambda n: st.tuples(uea_products(n, 3), uea_products(n, 3))))
def test_symbol_multiplicative(pair):
    a, b = pair
    assert principal_symbol(a * b) == principal_symbol(a) * principal_symbol(b)


def test_fraction_coefficients_survive():
    a = e(2, 1, 1) * Fraction(1, 3)
    assert (a * 3) == e(2, 1, 1)
    assert (a / Fraction(1, 3)) == e(2, 1, 1)
