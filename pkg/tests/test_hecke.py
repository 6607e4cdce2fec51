import random

import pytest
from hypothesis import given, settings, strategies as st

from localfactors.exactalg import LaurentPoly
from localfactors.hecke import (
    HeckeElt,
    basis,
    basis_inverse,
    bernstein_theta,
    commutant_check,
    commutant_quotient,
    identity_suite,
    psi_iso,
    random_elt,
    structure_fault,
)
from localfactors.weyl import A, IDENTITY, S0, S1, T, AffWeylElt, from_translation

U = LaurentPoly.var()


def x(a, b):
    return LaurentPoly.monomial((a, b))


@pytest.mark.parametrize("omega", [1, -1])
def test_quadratic_relation(omega):
    got = basis(S1, omega) * basis(S1, omega)
    assert got == HeckeElt({IDENTITY: U**2, S1: omega * (U**2 - 1)}, omega)


def test_braid_like_products():
    assert basis(T) * basis(S0) == basis(A) == basis(S1) * basis(T)
    assert basis(S1) * basis(S0) == basis(from_translation((1, -1)))


@pytest.mark.parametrize("w", [S0, S1, T, A, AffWeylElt(-2, (1, 0, 1))])
@pytest.mark.parametrize("omega", [1, -1])
def test_basis_inverse(w, omega):
    assert basis(w, omega) * basis_inverse(w, omega) == basis(IDENTITY, omega)


@pytest.mark.parametrize(
    "mu,want",
    [
        ((0, 0), basis(IDENTITY)),
        ((1, 0), basis(A).scale(U**-1)),
        ((1, 1), basis(AffWeylElt(2))),
    ],
)
def test_theta_examples(mu, want):
    assert bernstein_theta(mu) == want


def test_theta_product_central():
    assert bernstein_theta((1, 0)) * bernstein_theta((0, 1)) == basis(AffWeylElt(2))


@pytest.mark.parametrize(
    "mu,want",
    [((1, 0), x(1, 0)), ((1, 1), LaurentPoly(2)), ((2, 0), x(2, 0) + x(1, 1))],
)
def test_commutant_quotient(mu, want):
    assert commutant_quotient(mu) == want


@pytest.mark.parametrize("mu", [(1, 0), (1, 1), (2, 0), (-2, 1), (0, 3)])
@pytest.mark.parametrize("omega", [1, -1])
def test_commutant_vanishes(mu, omega):
    assert commutant_check(mu, omega).is_zero()


@pytest.mark.parametrize("omega", [1, -1])
def test_psi_examples(omega):
    assert psi_iso(basis(S1), omega) == basis(S1, omega).scale(omega)
    assert psi_iso(basis(A), omega) == basis(A, omega)
    tm = from_translation((2, -1))
    assert psi_iso(basis(tm), omega) == basis(tm, omega)


def test_twisted_elements_do_not_mix():
    with pytest.raises(ValueError):
        basis(S1, 1) + basis(S1, -1)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([1, -1]))
def test_associative(seed, omega):
    rng = random.Random(seed)
    a, b, c = (random_elt(rng, omega, 2) for _ in range(3))
    assert (a * b) * c == a * (b * c)


def test_suite_passes():
    results = identity_suite()
    assert results and all(r.ok for r in results), [r.line() for r in results if not r.ok]


def test_fault_is_detected_and_reverted():
    with structure_fault():
        bad = [r for r in identity_suite(n_random=5) if not r.ok]
    assert bad and bad[0].name == "quadratic_relation"
    assert all(r.ok for r in identity_suite(n_random=5))


def test_json_shape():
    doc = bernstein_theta((-1, 0)).to_json()
    assert doc["omega"] == 1 and set(doc["terms"]) == {"t^-1", "t^-1.s1"}
