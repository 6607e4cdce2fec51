"""
Iwahori-fixed vectors of an unramified principal series of GL2.

The two-dimensional module is modelled as ``H tensor_{H_ab} C_{w0 chi}`` with
internal basis ``e1 = T_1 (x) 1`` and ``e2 = T_w0 (x) 1``.  The public basis is
``(phi_1, phi_w0)`` with ``phi_w0 = e1`` and ``phi_1 = (e2 - (q-1) e1) / q``.

Scalars are pluggable: Fractions, :class:`QuadExt` values, or :class:`RatFunc`
(symbolic mode, ``z1 = z`` and ``z2 = 1``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .exactalg import PoleError, QuadExt, RatFunc, qpow
from .hecke import HeckeElt, bernstein_theta, commutant_quotient, random_elt
from .report import CheckResult, check
from .weyl import AffWeylElt

__all__ = [
    "RegularityError",
    "SatakeParams",
    "IwahoriVec",
    "hecke_action",
    "theta_action",
    "intertwine",
    "c_w0",
    "whittaker",
    "local_coeff",
    "spherical",
    "closed_form_local_coeff",
    "identity_suite",
]


class RegularityError(ValueError):
    """The character is fixed by w0 (z1 == z2)."""


def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, RatFunc) else x == 0


def _pow(x, k: int):
    if k >= 0:
        return x**k if not isinstance(x, int) else Fraction(x) ** k
    return (Fraction(1) / x) ** (-k)


@dataclass(frozen=True)
class SatakeParams:
    """Unramified character ``chi = chi1 (x) chi2`` via ``z_i = chi_i(varpi)``."""

    z1: Any
    z2: Any
    qa: int

    def __post_init__(self):
        if _is_zero(self.z1) or _is_zero(self.z2):
            raise ValueError("Satake parameters must be invertible")
        if self.qa < 2:
            raise ValueError("q_a must be at least 2")

    @classmethod
    def symbolic(cls, qa: int) -> "SatakeParams":
        return cls(RatFunc.gen("z"), RatFunc.const(1, "z"), qa)

    @classmethod
    def numeric(cls, z1, z2, qa: int) -> "SatakeParams":
        return cls(Fraction(z1), Fraction(z2), qa)

    @property
    def z(self):
        return self.z1 / self.z2

    def swap(self) -> "SatakeParams":
        return SatakeParams(self.z2, self.z1, self.qa)

    @property
    def regular(self) -> bool:
        return not _is_zero(self.z1 - self.z2)

    def w0_eval(self, nu) -> Any:
        """``(w0 chi)(nu) = z2^nu1 * z1^nu2``."""
        return _pow(self.z2, nu[0]) * _pow(self.z1, nu[1])


@dataclass(frozen=True)
class IwahoriVec:
    """Coordinates in the public basis ``(phi_1, phi_w0)``."""

    c1: Any
    cw0: Any

    def __add__(self, other: "IwahoriVec") -> "IwahoriVec":
        return IwahoriVec(self.c1 + other.c1, self.cw0 + other.cw0)

    def scale(self, c) -> "IwahoriVec":
        return IwahoriVec(c * self.c1, c * self.cw0)

    def __eq__(self, other):
        if not isinstance(other, IwahoriVec):
            return NotImplemented
        return _is_zero(self.c1 - other.c1) and _is_zero(self.cw0 - other.cw0)

    __hash__ = None


def spherical() -> IwahoriVec:
    """``phi_K = phi_1 + phi_w0``."""
    return IwahoriVec(Fraction(1), Fraction(1))


def _to_internal(v: IwahoriVec, q: int):
    return v.cw0 - v.c1 * Fraction(q - 1, q), v.c1 * Fraction(1, q)


def _to_public(x1, x2, q: int) -> IwahoriVec:
    return IwahoriVec(x2 * q, x1 + x2 * (q - 1))


def theta_action(mu, x, chi: SatakeParams):
    """Bernstein element acting on internal coordinates ``x = (x1, x2)``."""
    x1, x2 = x
    q = chi.qa
    b = commutant_quotient(mu)
    b_val = Fraction(0)
    for nu, c in b.items():
        b_val = b_val + chi.w0_eval(nu) * c
    y1 = chi.w0_eval(mu) * x1 + b_val * (q - 1) * x2
    y2 = chi.w0_eval((mu[1], mu[0])) * x2
    return y1, y2


def _ts1(x, q):
    x1, x2 = x
    return x2 * q, x1 + x2 * (q - 1)


def _ts1_inv(x, q):
    # T_s^-1 = q^-1 T_s + (q^-1 - 1)
    y1, y2 = _ts1(x, q)
    c = Fraction(1, q)
    return y1 * c + x[0] * (c - 1), y2 * c + x[1] * (c - 1)


def _scale(x, c):
    return x[0] * c, x[1] * c


def _u(q: int):
    return qpow(q, Fraction(1, 2))


def _ta(x, chi):
    return _scale(theta_action((1, 0), x, chi), _u(chi.qa))


def _ta_inv(x, chi):
    return _scale(theta_action((-1, 0), x, chi), 1 / _u(chi.qa))


def _tt(x, chi):
    return _ts1_inv(_ta(x, chi), chi.qa)


def _tt_inv(x, chi):
    return _ta_inv(_ts1(x, chi.qa), chi)


def _ts0(x, chi):
    return _tt_inv(_ta(x, chi), chi)


def _basis_action(w: AffWeylElt, x, chi: SatakeParams):
    for s in reversed(w.word):
        x = _ts1(x, chi.qa) if s == 1 else _ts0(x, chi)
    step = _tt if w.tpow > 0 else _tt_inv
    for _ in range(abs(w.tpow)):
        x = step(x, chi)
    return x


def _simplify(x):
    if isinstance(x, QuadExt) and x.b == 0:
        return x.a
    return x


def hecke_action(h: HeckeElt, v: IwahoriVec, chi: SatakeParams) -> IwahoriVec:
    """Action of an untwisted Hecke element on ``v``."""
    if h.omega != 1:
        raise ValueError("the module is over the untwisted algebra")
    u = _u(chi.qa)
    x = _to_internal(v, chi.qa)
    y1, y2 = Fraction(0), Fraction(0)
    for w, c in h.terms.items():
        cv = c(u)
        z1, z2 = _basis_action(w, x, chi)
        y1 = y1 + z1 * cv
        y2 = y2 + z2 * cv
    out = _to_public(y1, y2, chi.qa)
    return IwahoriVec(_simplify(out.c1), _simplify(out.cw0))


def c_w0(chi: SatakeParams):
    """Harish-Chandra factor ``(1 - z/q) / (1 - z)``."""
    if not chi.regular:
        raise RegularityError("c_w0 needs a regular character")
    z = chi.z
    return (1 - z * Fraction(1, chi.qa)) / (1 - z)


def intertwine(chi: SatakeParams):
    """Matrix of ``A(chi, w0)``; rows index the target basis, columns the source."""
    c = c_w0(chi)
    q = Fraction(1, chi.qa)
    return ((c - 1, Fraction(1)), (q, c - q))


def whittaker(chi: SatakeParams):
    """Covector ``(Omega(phi_1), Omega(phi_w0))``."""
    return (-chi.z * Fraction(1, chi.qa), Fraction(1))


def local_coeff(chi: SatakeParams):
    """Scalar ``C`` with ``C * Omega_{w0 chi} o A(chi) = Omega_chi``.

    Both basis components are solved and must agree.
    """
    if not chi.regular:
        raise RegularityError("local coefficient needs a regular character")
    a = intertwine(chi)
    om_src = whittaker(chi)
    om_tgt = whittaker(chi.swap())
    comp = [om_tgt[0] * a[0][j] + om_tgt[1] * a[1][j] for j in range(2)]
    sols = []
    for j in range(2):
        if _is_zero(comp[j]):
            if not _is_zero(om_src[j]):
                raise PoleError(f"local coefficient has a pole at {chi}")
            continue
        sols.append(om_src[j] / comp[j])
    if not sols:
        raise PoleError(f"local coefficient undetermined at {chi}")
    for s in sols[1:]:
        if not _is_zero(s - sols[0]):
            raise AssertionError("Whittaker components disagree on the local coefficient")
    return sols[0]


# ---------------------------------------------------------------------------
# identity suite

SUITE_QA = (2, 3, 4, 5, 9)


def _matmul(a, b):
    return tuple(
        tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)) for i in range(2)
    )


def closed_form_local_coeff(qa: int) -> RatFunc:
    """``(1 - z) / (1 - q_a^-1 z^-1)`` built directly, independent of the module."""
    z = RatFunc.gen("z")
    return (1 - z) / (1 - Fraction(1, qa) / z)


def identity_suite(seed: int = 0, n_random: int = 50) -> list[CheckResult]:
    """Symbolic and numeric checks of the Iwahori block."""
    out = []
    for qa in SUITE_QA:
        key = f"qa={qa}"
        chi = SatakeParams.symbolic(qa)
        C = local_coeff(chi)
        out.append(check("local_coeff_closed_form", C == closed_form_local_coeff(qa), str(C), key))
        c, cc = c_w0(chi), c_w0(chi.swap())
        out.append(check("c_sum", c + cc == 1 + Fraction(1, qa), str(c + cc), key))
        comp = _matmul(intertwine(chi.swap()), intertwine(chi))
        s = c * cc
        ok = comp[0][0] == s and comp[1][1] == s and comp[0][1] == 0 and comp[1][0] == 0
        out.append(check("intertwiner_composition", ok, str(comp), key))
        a = intertwine(chi)
        ok = a[0][0] + a[0][1] == c and a[1][0] + a[1][1] == c
        out.append(check("spherical_eigen", ok, "A(phi_K) != c phi_K", key))

    rng = random.Random(seed)
    bad_eig, bad_lc, bad_rep = [], 0, 0
    for i in range(n_random):
        qa = SUITE_QA[i % len(SUITE_QA)]
        while True:
            z1 = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            z2 = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            if z1 and z2 and z1 != z2:
                break
        chi = SatakeParams(z1, z2, qa)
        try:
            C = local_coeff(chi)
            bad_lc += C * (1 - Fraction(1, qa) / chi.z) != 1 - chi.z
        except PoleError:
            pass
        if i < 10:
            v = IwahoriVec(Fraction(rng.randint(-5, 5)), Fraction(rng.randint(-5, 5)))
            x, y = random_elt(rng, max_support=2), random_elt(rng, max_support=2)
            lhs = hecke_action(x * y, v, chi)
            rhs = hecke_action(x, hecke_action(y, v, chi), chi)
            bad_rep += lhs != rhs
        if i < 5:
            for m1 in range(-2, 3):
                for m2 in range(-2, 3):
                    got = hecke_action(bernstein_theta((m1, m2)), IwahoriVec(Fraction(0), Fraction(1)), chi)
                    if got != IwahoriVec(Fraction(0), chi.w0_eval((m1, m2))):
                        bad_eig.append((m1, m2))
    key = f"seed={seed}"
    out.append(check("whittaker_components_agree", bad_lc == 0, f"{bad_lc} mismatches", key))
    out.append(check("module_is_representation", bad_rep == 0, f"{bad_rep} mismatches", key))
    out.append(check("theta_eigenvector", not bad_eig, f"fails at {bad_eig[:3]}", key))
    return out
