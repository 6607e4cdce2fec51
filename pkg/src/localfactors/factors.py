"""
Closed-form local factors for a pair of supercuspidals given by type data.

All s-dependence is written in ``t = q**(-s/2)``, so ``q_a**(-s) = t**(2N)``
with ``N = n/e``.  A value is a :class:`Factor`: a complex ``unit`` (exactly
``1`` whenever the factor is determined in closed form) times an exact
:class:`RatFunc` in ``t``.  The unit only becomes non-trivial for
inequivalent pairs, where it comes from a finite-field Gauss sum.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exactalg import LaurentPoly, RatFunc, qpow, subst_affine_s
from .report import CheckResult

__all__ = [
    "InputError",
    "UnavailableError",
    "PairTypeData",
    "DerivedParams",
    "VolumeData",
    "GaussData",
    "Factor",
    "derive",
    "l_factor",
    "gamma_epsilon",
    "local_coeff_pair",
    "plancherel",
    "unitary_shift",
    "verify_suite",
    "CheckResult",
    "dim_formula_level_zero",
    "gl_order",
    "level_zero_gauss",
    "local_coeff_rs",
    "grid_points",
    "grid_suite",
    "level_zero_suite",
    "dim_suite",
    "point_key",
    "UNIT_TOL",
]

UNIT_TOL = 1e-9


class InputError(ValueError):
    """Type data violating its divisibility or sign invariants."""


class UnavailableError(LookupError):
    """A factor with no closed form and no supplied Gauss data."""


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(p for p in range(2, q + 1) if q % p == 0)
    while q % p == 0:
        q //= p
    return q == 1


@dataclass(frozen=True)
class PairTypeData:
    n: int
    q: int
    d: int
    e: int
    m: int
    sign1: int = 1
    sign2: int = 1
    equal_case: bool = True

    def __post_init__(self):
        if self.n < 1:
            raise InputError("n must be positive")
        if not _is_prime_power(self.q):
            raise InputError(f"q={self.q} is not a prime power")
        if self.d < 1 or self.e < 1 or self.n % self.d or self.d % self.e:
            raise InputError(f"need e | d | n, got e={self.e}, d={self.d}, n={self.n}")
        if self.m < 0:
            raise InputError("m must be non-negative")
        if self.sign1 not in (1, -1) or self.sign2 not in (1, -1):
            raise InputError("signs must be +1 or -1")
        if self.equal_case and self.sign1 != self.sign2:
            raise InputError("equal case needs sign1 == sign2")

    @property
    def N(self) -> int:
        return self.n // self.e

    @property
    def level_zero(self) -> bool:
        return (self.d, self.e, self.m) == (1, 1, 0)

    @classmethod
    def from_mapping(cls, doc: dict) -> "PairTypeData":
        keys = ("n", "q", "d", "e", "m", "sign1", "sign2", "equal_case")
        missing = [k for k in ("n", "q", "d", "e", "m") if k not in doc]
        if missing:
            raise InputError(f"missing fields: {', '.join(missing)}")
        kw = {k: doc[k] for k in keys if k in doc}
        for k in ("n", "q", "d", "e", "m", "sign1", "sign2"):
            if k in kw and (isinstance(kw[k], bool) or not isinstance(kw[k], int)):
                raise InputError(f"{k} must be an integer")
        if "equal_case" in kw and not isinstance(kw["equal_case"], bool):
            raise InputError("equal_case must be a boolean")
        return cls(**kw)


@dataclass(frozen=True)
class DerivedParams:
    qa: int
    qE: int
    f_equal: int
    f_unequal: int
    disc: Fraction
    f: int


@dataclass(frozen=True)
class VolumeData:
    prod_split: Fraction
    volN_times_v: object
    volNbar_over_v: object


def derive(data: PairTypeData) -> tuple[DerivedParams, VolumeData]:
    N = data.N
    qa = data.q**N
    qE = data.q ** (data.d // data.e)
    f_eq = -(data.m + 1) * N
    f_un = -data.m * N
    disc = Fraction(-data.m * data.d**2, data.n * data.e)
    dp = DerivedParams(qa, qE, f_eq, f_un, disc, f_eq if data.equal_case else f_un)
    vol = VolumeData(
        prod_split=Fraction(qa) ** data.m,
        volN_times_v=qpow(data.q, Fraction(N * (data.m + 1), 2)),
        volNbar_over_v=qpow(data.q, Fraction(N * (data.m - 1), 2)),
    )
    return dp, vol


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaussData:
    """Units of modulus one for an inequivalent pair.

    ``unit``: the pair ``(pi1, pi2)`` against ``psi``; ``unit_swap``: the pair
    ``(pi2, pi1)`` against ``psi``; ``unit_dual``: the contragredient pair
    against the conjugate character.
    """

    unit: complex
    unit_swap: complex
    unit_dual: complex
    nu: Fraction = Fraction(0)
    source: str = "caller"


@dataclass(frozen=True)
class Factor:
    """``unit * rf`` with ``rf`` an exact rational function of ``t``."""

    rf: RatFunc
    unit: complex = 1

    def __mul__(self, other: "Factor") -> "Factor":
        return Factor(self.rf * other.rf, _unit_mul(self.unit, other.unit))

    def scale(self, c) -> "Factor":
        return Factor(self.rf * c, self.unit)

    def subst(self, direction: int, shift, q: int) -> "Factor":
        return Factor(subst_affine_s(self.rf, direction, shift, q), self.unit)

    @property
    def exact(self) -> bool:
        return self.unit == 1

    def to_json(self) -> dict:
        u = complex(self.unit)
        return {"unit_re": u.real, "unit_im": u.imag, "rf": self.rf.to_json()}


def _unit_mul(a, b):
    if a == 1:
        return b
    if b == 1:
        return a
    if isinstance(a, int) and isinstance(b, int):
        return a * b
    return complex(a) * complex(b)


def _t(k: int) -> RatFunc:
    return RatFunc(LaurentPoly.monomial((k,)))


def _qa_s_pow(data: PairTypeData, c) -> RatFunc:
    """``q_a**(c*s)`` as a monomial in ``t``."""
    return _t(-2 * data.N * c)


def l_factor(data: PairTypeData) -> RatFunc:
    if not data.equal_case:
        return RatFunc.const(1)
    return RatFunc(1, 1 - LaurentPoly.monomial((2 * data.N,)))


def _eps_rf(data: PairTypeData, c: int) -> RatFunc:
    """``q_a**(c*(s - 1/2))``."""
    return _qa_s_pow(data, c) * qpow(data.q, Fraction(-data.N * c, 2))


def gamma_epsilon(
    data: PairTypeData, gauss: Optional[GaussData] = None
) -> tuple[Factor, Factor]:
    """``(gamma, epsilon)`` of the pair.

    Equal case: ``eps = omega^(n-1) q_a^((m+1)(s-1/2))`` and
    ``gamma = eps * L(1-s) / L(s)``.  Inequivalent case:
    ``gamma = eps = omega2^(n-1) * unit * q_a^(m(s-1/2))``.
    """
    if data.equal_case:
        sgn = data.sign1 ** (data.n - 1)
        eps = Factor(_eps_rf(data, data.m + 1) * sgn)
        L = l_factor(data)
        ratio = subst_affine_s(L, -1, 1, data.q) / L
        return Factor(eps.rf * ratio), eps
    if gauss is None:
        raise UnavailableError(
            "inequivalent pair: epsilon needs Gauss data (none supplied)"
        )
    sgn = data.sign2 ** (data.n - 1)
    eps = Factor(_eps_rf(data, data.m) * sgn, gauss.unit)
    return eps, eps


def local_coeff_pair(data: PairTypeData, gauss: Optional[GaussData] = None) -> Factor:
    """Local coefficient ``C(s, pi1 x pi2)``.

    The equal case is assembled from the measure identities: the volume
    combination, the conductor monomial ``q^(-f s)`` and the L-quotient.
    """
    dp, vol = derive(data)
    if data.equal_case:
        L = l_factor(data)
        vol_factor = 1 / vol.volN_times_v
        rf = _t(2 * dp.f) * vol_factor * data.sign1 * (subst_affine_s(L, -1, 1, data.q) / L)
        return Factor(rf)
    gamma, _ = gamma_epsilon(data, gauss)
    return gamma.scale(data.sign2**data.n)


def local_coeff_rs(data: PairTypeData, gauss: Optional[GaussData] = None) -> Factor:
    """Local coefficient from the Rankin-Selberg side: ``omega2^n * gamma``."""
    gamma, _ = gamma_epsilon(data, gauss)
    return gamma.scale(data.sign2**data.n)


def plancherel(data: PairTypeData) -> RatFunc:
    """``mu(s) = q^f L(1+s) L(1-s) / (L(s) L(-s))``."""
    dp, _ = derive(data)
    L = l_factor(data)
    q = data.q
    num = subst_affine_s(L, 1, 1, q) * subst_affine_s(L, -1, 1, q)
    den = L * subst_affine_s(L, -1, 0, q)
    return num / den * Fraction(q) ** dp.f


def unitary_shift(F: RatFunc, sigma0, q: int) -> RatFunc:
    return subst_affine_s(F, 1, sigma0, q)


def level_zero_gauss(n: int, q: int, l1: int, l2: int) -> tuple[PairTypeData, GaussData]:
    """Type data and Gauss units for an inequivalent level-zero pair.

    For ``n = 1`` the labels are exponents of characters of ``F_q^x``; for
    ``n = 2`` they are cuspidal labels of ``GL2(F_q)``.
    """
    from . import finitegl as fg

    if n == 1:
        unit = fg.gl1_unit(q, l1, l2)
        swap = fg.gl1_unit(q, l2, l1)
        dual = fg.gl1_unit(q, -l1, -l2, conj_psi=True)
        s1, s2 = fg.gl1_sign(q, l1), fg.gl1_sign(q, l2)
    elif n == 2:
        unit = fg.level_zero_unit(q, l1, l2)
        swap = fg.level_zero_unit(q, l2, l1)
        dual = fg.level_zero_unit(q, -l1, -l2, conj_psi=True)
        s1, s2 = fg.central_sign(q, l1), fg.central_sign(q, l2)
    else:
        raise InputError("level-zero Gauss data exists for n = 1, 2 only")
    data = PairTypeData(n, q, 1, 1, 0, s1, s2, equal_case=False)
    g = GaussData(unit.unit, swap.unit, dual.unit, unit.nu, f"finite field, n={n}")
    return data, g


def swapped(data: PairTypeData) -> PairTypeData:
    return PairTypeData(
        data.n, data.q, data.d, data.e, data.m, data.sign2, data.sign1, data.equal_case
    )


def swapped_gauss(g: GaussData) -> GaussData:
    # the dual unit of the swapped pair is never consumed; keep it well-typed
    return GaussData(g.unit_swap, g.unit, complex(g.unit_swap).conjugate(), g.nu, g.source)


# ---------------------------------------------------------------------------
# verification


def _same(a: Factor, b: Factor) -> tuple[bool, str]:
    """Exact when both units are 1; otherwise the rational parts must differ
    by an exact constant that the units make up to within ``UNIT_TOL``."""
    if a.exact and b.exact:
        return (True, "") if a.rf == b.rf else (False, f"{a.rf} != {b.rf}")
    if b.rf.is_zero() or a.rf.is_zero():
        ok = a.rf.is_zero() and b.rf.is_zero()
        return ok, "" if ok else "one side vanishes"
    ratio = a.rf / b.rf
    if not ratio.is_const():
        return False, f"{a.rf} / {b.rf} is not constant"
    c = complex(ratio.const_value())
    if abs(c * complex(a.unit) - complex(b.unit)) > UNIT_TOL:
        return False, f"units differ: {c * complex(a.unit)} vs {b.unit}"
    return True, ""


def verify_suite(
    data: PairTypeData, gauss: Optional[GaussData] = None
) -> list[CheckResult]:
    """Cross-check identities for one grid point; failures are returned, not raised."""
    out: list[CheckResult] = []
    dp, vol = derive(data)
    q = data.q
    have_units = data.equal_case or gauss is not None

    def record(name, ok, detail=""):
        out.append(CheckResult(name, "pass" if ok else "fail", "" if ok else detail))

    # 1. functional equation of epsilon
    if have_units:
        _, eps = gamma_epsilon(data, gauss)
        if data.equal_case:
            eps_dual = eps
        else:
            eps_dual = Factor(eps.rf, complex(gauss.unit_dual))
        prod = eps * eps_dual.subst(-1, 1, q)
        ok, why = _same(prod, Factor(RatFunc.const(1)))
        record("epsilon_fe", ok, why)
    else:
        out.append(CheckResult("epsilon_fe", "skip", "no Gauss data"))

    # 2. Plancherel constant as a product of local coefficients
    if have_units:
        c12 = local_coeff_pair(data, gauss)
        c21 = local_coeff_pair(swapped(data), swapped_gauss(gauss) if gauss else None)
        prod = c12 * c21.subst(-1, 0, q)
        ok, why = _same(prod, Factor(plancherel(data)))
        record("plancherel_product", ok, why)
    else:
        out.append(CheckResult("plancherel_product", "skip", "no Gauss data"))

    # 3. the two routes to the local coefficient
    if data.equal_case:
        ok, why = _same(local_coeff_pair(data), local_coeff_rs(data))
        record("ls_equals_rs", ok, why)
    else:
        out.append(CheckResult("ls_equals_rs", "skip", "inequivalent pair"))

    # 4. conductor exponent
    c = data.m + 1 if data.equal_case else data.m
    ok = _t(2 * dp.f) == _qa_s_pow(data, c)
    record("conductor", ok, f"q^(-f s) with f={dp.f} vs q_a^({c} s)")

    # 5. volume identity
    prod = vol.volN_times_v * vol.volNbar_over_v
    ok = prod == vol.prod_split and vol.prod_split == Fraction(dp.qa) ** data.m
    record("volume_product", ok, f"{prod} vs {vol.prod_split}")

    # 6. discriminant
    lhs = data.n * dp.disc / data.d**2
    ok = lhs == Fraction(-data.m, data.e) and Fraction(q) ** (
        -data.n**2 * dp.disc / data.d**2
    ) == vol.prod_split
    record("discriminant", ok, f"n c / d^2 = {lhs}")
    return out


# ---------------------------------------------------------------------------


def gl_order(n: int, q: int) -> int:
    return math.prod(q**n - q**i for i in range(n))


def dim_formula_level_zero(n: int, q: int) -> tuple[int, Fraction, bool]:
    """Cuspidal dimension against ``|GL_n(F_q)| q^((n-n^2)/2) / (q^n - 1)``."""
    if n not in (2, 3):
        raise InputError("n must be 2 or 3")
    if not _is_prime_power(q):
        raise InputError(f"q={q} is not a prime power")
    lhs = math.prod(q**i - 1 for i in range(1, n))
    rhs = Fraction(gl_order(n, q)) * Fraction(q) ** ((n - n * n) // 2) / (q**n - 1)
    return lhs, rhs, lhs == rhs


# ---------------------------------------------------------------------------
# grids


def _divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def grid_points(
    n_max: int = 4, m_max: int = 4, qs=(2, 3, 5), include_unequal: bool = True
) -> list[PairTypeData]:
    """Every ``e | d | n`` with ``n <= n_max``, ``m <= m_max``, ``q`` in ``qs``
    and every sign choice; equal-case points first."""
    pts = []
    unequal = []
    for n in range(1, n_max + 1):
        for d in _divisors(n):
            for e in _divisors(d):
                for m, q in itertools.product(range(m_max + 1), qs):
                    for w in (1, -1):
                        pts.append(PairTypeData(n, q, d, e, m, w, w, True))
                    if include_unequal:
                        for w1, w2 in itertools.product((1, -1), repeat=2):
                            unequal.append(PairTypeData(n, q, d, e, m, w1, w2, False))
    return pts + unequal


def point_key(data: PairTypeData) -> str:
    kind = "equal" if data.equal_case else "unequal"
    return (
        f"n={data.n},q={data.q},d={data.d},e={data.e},m={data.m},"
        f"signs={data.sign1:+d}/{data.sign2:+d},{kind}"
    )


def _run_point(args) -> list[CheckResult]:
    data, gauss = args
    key = point_key(data)
    return [r.keyed(key) for r in verify_suite(data, gauss)]


def grid_suite(points=None, workers: int = 1) -> list[CheckResult]:
    """Run :func:`verify_suite` over a grid; output sorted by key, so the
    result does not depend on the worker count."""
    points = grid_points() if points is None else points
    jobs = [(p, None) for p in points]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            chunks = list(ex.map(_run_point, jobs))
    else:
        chunks = [_run_point(j) for j in jobs]
    results = [r for chunk in chunks for r in chunk]
    return sorted(results, key=lambda r: (r.key, r.name))


LEVEL_ZERO_CASES = ((1, 3), (1, 5), (1, 7), (2, 2), (2, 3), (2, 5))


def level_zero_suite(cases=LEVEL_ZERO_CASES) -> list[CheckResult]:
    """Inequivalent level-zero pairs with units from the finite-field sums."""
    from . import finitegl as fg

    out = []
    for n, q in cases:
        pairs = fg._pairs(n, q)
        if not pairs:
            out.append(CheckResult("level_zero_pairs", "skip", "no inequivalent pair", f"n={n},q={q}"))
            continue
        for l1, l2 in pairs:
            data, g = level_zero_gauss(n, q, l1, l2)
            key = f"n={n},q={q},labels={l1}/{l2}"
            out.extend(r.keyed(key) for r in verify_suite(data, g))
    return out


DIM_CASES = ((2, 2), (2, 3), (2, 5), (2, 7), (3, 2), (3, 3))


def dim_suite(cases=DIM_CASES) -> list[CheckResult]:
    out = []
    for n, q in cases:
        lhs, rhs, eq = dim_formula_level_zero(n, q)
        out.append(CheckResult("dim_formula", "pass" if eq else "fail",
                               "" if eq else f"{lhs} != {rhs}", f"n={n},q={q}"))
    return out
