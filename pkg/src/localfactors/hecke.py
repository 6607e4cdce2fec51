"""
Generic Iwahori-Hecke algebra of GL2 over Z[u, 1/u], with ``u**2 = q_a``.

Elements are finite sums ``sum c_w * T_w`` over the extended affine Weyl
group.  The quadratic relation carries a sign ``omega``::

    T_s * T_s = u^2 T_1 + omega (u^2 - 1) T_s

``omega = 1`` is the standard algebra; ``omega = -1`` is the sign-twisted
algebra reached from it by :func:`psi_iso`.
"""

from __future__ import annotations

import itertools
import random
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping

from .exactalg import LaurentPoly, exact_div
from .report import CheckResult, check
from .weyl import (
    A,
    IDENTITY,
    S0,
    S1,
    T,
    W0,
    AffWeylElt,
    CochLattice,
    from_translation,
    length,
)

__all__ = [
    "U",
    "HeckeElt",
    "hecke_mul",
    "basis",
    "basis_inverse",
    "bernstein_theta",
    "commutant_quotient",
    "commutant_check",
    "psi_iso",
    "theta_of",
    "random_elt",
    "identity_suite",
    "structure_fault",
]

U = LaurentPoly.var()
_ONE = LaurentPoly.const(1)

# debug hook for harness self-tests: scales the (u^2 - 1) structure constant
_FAULT = {"quad": 1}


@contextmanager
def structure_fault(scale: int = 2) -> Iterator[None]:
    """Temporarily corrupt the quadratic relation (verification self-test)."""
    old = _FAULT["quad"]
    _FAULT["quad"] = scale
    try:
        yield
    finally:
        _FAULT["quad"] = old


def _upow(k: int) -> LaurentPoly:
    return LaurentPoly.monomial((k,))


@dataclass(frozen=True)
class HeckeElt:
    """Linear combination of ``T_w`` with Laurent-polynomial coefficients in u."""

    terms: Mapping[AffWeylElt, LaurentPoly] = field(default_factory=dict)
    omega: int = 1

    def __post_init__(self):
        if self.omega not in (1, -1):
            raise ValueError("omega must be +1 or -1")
        clean = {}
        for w in sorted(self.terms):
            c = self.terms[w]
            if not isinstance(c, LaurentPoly):
                c = LaurentPoly.const(c)
            if not c.is_zero():
                clean[w] = c
        object.__setattr__(self, "terms", clean)

    def _check(self, other: "HeckeElt"):
        if self.omega != other.omega:
            raise ValueError("cannot combine elements of differently twisted algebras")

    def __add__(self, other):
        if not isinstance(other, HeckeElt):
            return NotImplemented
        self._check(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            acc[w] = acc[w] + c if w in acc else c
        return HeckeElt(acc, self.omega)

    def __neg__(self):
        return HeckeElt({w: -c for w, c in self.terms.items()}, self.omega)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "HeckeElt":
        if not isinstance(c, LaurentPoly):
            c = LaurentPoly.const(c)
        return HeckeElt({w: c * v for w, v in self.terms.items()}, self.omega)

    def __mul__(self, other):
        if isinstance(other, HeckeElt):
            return hecke_mul(self, other)
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list[AffWeylElt]:
        return list(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.terms.items():
            cs = c.pretty(("u",))
            tw = f"T[{w}]"
            parts.append(tw if cs == "1" else f"({cs})·{tw}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "omega": self.omega,
            "terms": {str(w): c.to_json() for w, c in self.terms.items()},
        }


def basis(w: AffWeylElt, omega: int = 1) -> HeckeElt:
    return HeckeElt({w: _ONE}, omega)


def _right_letter(x: HeckeElt, g: AffWeylElt) -> HeckeElt:
    """``x * T_g`` for a single generator ``g`` (a t-power or a reflection)."""
    acc: dict[AffWeylElt, LaurentPoly] = {}

    def add(w, c):
        acc[w] = acc[w] + c if w in acc else c

    if not g.word:
        for w, c in x.terms.items():
            add(w * g, c)
        return HeckeElt(acc, x.omega)
    u2 = _upow(2)
    quad = (u2 - 1) * (x.omega * _FAULT["quad"])
    for w, c in x.terms.items():
        ws = w * g
        if length(ws) > length(w):
            add(ws, c)
        else:
            add(ws, c * u2)
            add(w, c * quad)
    return HeckeElt(acc, x.omega)


def hecke_mul(x: HeckeElt, y: HeckeElt) -> HeckeElt:
    x._check(y)
    out = HeckeElt({}, x.omega)
    for w, c in y.terms.items():
        part = x
        for g in w.letters():
            part = _right_letter(part, g)
        out = out + part.scale(c)
    return out


@lru_cache(maxsize=None)
def basis_inverse(w: AffWeylElt, omega: int = 1) -> HeckeElt:
    """Inverse of ``T_w``: reversed product of generator inverses."""
    out = basis(IDENTITY, omega)
    for g in reversed(w.letters()):
        if g.word:
            inv = HeckeElt(
                {g: _upow(-2), IDENTITY: (_upow(-2) - 1) * omega},
                omega,
            )
        else:
            inv = basis(g.inverse(), omega)
        out = out * inv
    return out


@lru_cache(maxsize=None)
def bernstein_theta(mu: CochLattice, omega: int = 1) -> HeckeElt:
    """Bernstein element ``theta_mu``; multiplicative in ``mu``."""
    m1, m2 = mu
    if m1 >= m2:
        tw = from_translation(mu)
        return HeckeElt({tw: _upow(-length(tw))}, omega)
    plus = (m2, m2)
    minus = (m2 - m1, 0)
    tm = from_translation(minus)
    inv = basis_inverse(tm, omega).scale(_upow(length(tm)))
    return bernstein_theta(plus, omega) * inv


def _w0(mu: CochLattice) -> CochLattice:
    return (mu[1], mu[0])


def commutant_quotient(mu: CochLattice) -> LaurentPoly:
    """``(x^mu - x^{w0 mu}) / (1 - x^{(-1,1)})`` in the lattice group algebra."""
    num = LaurentPoly.monomial(mu) - LaurentPoly.monomial(_w0(mu))
    den = LaurentPoly(2, {(0, 0): 1, (-1, 1): -1})
    return exact_div(num, den)


def theta_of(poly: LaurentPoly, omega: int = 1) -> HeckeElt:
    """Map a lattice group-algebra element to ``sum c_nu theta_nu``."""
    out = HeckeElt({}, omega)
    for nu, c in poly.items():
        out = out + bernstein_theta(nu, omega).scale(c)
    return out


def commutant_check(mu: CochLattice, omega: int = 1) -> HeckeElt:
    """``theta_mu T_w0 - T_w0 theta_{w0 mu} - omega (u^2-1) B(mu)``; zero when correct."""
    tw0 = basis(W0, omega)
    lhs = bernstein_theta(mu, omega) * tw0 - tw0 * bernstein_theta(_w0(mu), omega)
    b = theta_of(commutant_quotient(mu), omega).scale((_upow(2) - 1) * omega)
    return lhs - b


def psi_iso(x: HeckeElt, omega: int) -> HeckeElt:
    """Twist ``T_w -> omega^(k + len(w)) T_w`` from the untwisted algebra."""
    if x.omega != 1:
        raise ValueError("psi_iso expects an element of the untwisted algebra")
    terms = {
        w: (c if (w.tpow + length(w)) % 2 == 0 else -c) if omega == -1 else c
        for w, c in x.terms.items()
    }
    return HeckeElt(terms, omega)


# ---------------------------------------------------------------------------
# identity suite


def random_elt(rng: random.Random, omega: int = 1, max_support: int = 3) -> HeckeElt:
    terms = {}
    for _ in range(rng.randint(1, max_support)):
        k = rng.randint(-2, 2)
        ln = rng.randint(0, 4)
        first = rng.randint(0, 1)
        word = tuple((first + i) % 2 for i in range(ln))
        coeff = LaurentPoly(
            1, {(rng.randint(-2, 2),): rng.randint(-3, 3) for _ in range(rng.randint(1, 2))}
        )
        terms[AffWeylElt(k, word)] = coeff
    return HeckeElt(terms, omega)


def identity_suite(seed: int = 0, n_random: int = 200, box: int = 2) -> list[CheckResult]:
    """The Hecke relations, Bernstein multiplicativity, the commutation
    relation and multiplicativity of the sign twist."""
    out = []
    u2 = _upow(2)
    for om in (1, -1):
        sq = basis(S1, om) * basis(S1, om)
        want = HeckeElt({IDENTITY: u2, S1: (u2 - 1) * om}, om)
        out.append(check("quadratic_relation", sq == want, f"got {sq}", f"omega={om}"))
    a = basis(A)
    out.append(check("t_s0_is_a", basis(T) * basis(S0) == a, str(basis(T) * basis(S0))))
    out.append(check("s1_t_is_a", basis(S1) * basis(T) == a, str(basis(S1) * basis(T))))
    s1s0 = basis(S1) * basis(S0)
    out.append(check("s1_s0_is_coroot", s1s0 == basis(from_translation((1, -1))), str(s1s0)))

    rng_ = range(-box, box + 1)
    lattice = list(itertools.product(rng_, rng_))
    thetas = {mu: bernstein_theta(mu) for mu in lattice}
    bad = []
    for mu, nu in itertools.product(lattice, lattice):
        s = (mu[0] + nu[0], mu[1] + nu[1])
        if thetas[mu] * thetas[nu] != bernstein_theta(s):
            bad.append((mu, nu))
    out.append(check("theta_multiplicative", not bad, f"fails at {bad[:3]}"))
    for om in (1, -1):
        bad = [mu for mu in lattice if not commutant_check(mu, om).is_zero()]
        out.append(check("commutation_relation", not bad, f"fails at {bad[:3]}", f"omega={om}"))

    rng = random.Random(seed)
    for om in (1, -1):
        bad = 0
        for _ in range(n_random):
            x, y = random_elt(rng), random_elt(rng)
            if psi_iso(x * y, om) != psi_iso(x, om) * psi_iso(y, om):
                bad += 1
        out.append(check("psi_multiplicative", bad == 0, f"{bad} of {n_random} pairs", f"omega={om},seed={seed}"))
    return out
