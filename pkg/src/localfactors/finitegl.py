"""
GL2 over a finite field: cuspidal characters, Bessel functions and Gauss sums.

This is the level-zero model.  Field elements of ``F_q`` are ints in
``range(q)``; for ``q = p**2`` an element ``a + b*x`` is encoded as
``a + p*b``.  ``F_{q^2}`` is built as a quadratic extension of ``F_q`` with
the same encoding one level up, so ``F_q`` embeds as ``range(q)``.

Complex sums use :func:`math.fsum` on real and imaginary parts.
"""

from __future__ import annotations

import cmath
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from fractions import Fraction
from typing import Sequence

from .report import CheckResult, check

__all__ = [
    "SUPPORTED_Q",
    "FiniteField",
    "field_pair",
    "enum_group",
    "cuspidal_labels",
    "canonical_label",
    "cuspidal_char",
    "BesselTable",
    "bessel",
    "pair_sums",
    "gl1_gauss",
    "gauss_sum",
    "central_sign",
    "gl1_sign",
    "LevelZeroUnit",
    "level_zero_unit",
    "gl1_unit",
    "oracle_nu",
    "PINNED_NU",
    "bessel_suite",
    "gauss_suite",
    "determinism_suite",
    "NormalizationError",
    "csum",
]

SUPPORTED_Q = (2, 3, 4, 5, 7, 9)


class NormalizationError(ArithmeticError):
    """A Gauss-sum modulus disagrees with the pinned normalization exponent."""


def _prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            r, x = 0, q
            while x % p == 0:
                x //= p
                r += 1
            if x != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, r
    raise ValueError(f"{q} is not a prime power")


class FiniteField:
    """A finite field given by full addition/multiplication tables.

    ``base`` is ``None`` for a prime field; otherwise the field is
    ``base[x] / (x^2 - c1 x - c0)``.
    """

    def __init__(self, base: "FiniteField | None", p: int, poly=None):
        self.base = base
        self.p = p
        if base is None:
            self.order = p
            self.add = [[(a + b) % p for b in range(p)] for a in range(p)]
            self.mul = [[(a * b) % p for b in range(p)] for a in range(p)]
        else:
            k = base.order
            self.order = k * k
            self.poly = poly
            c0, c1 = poly
            n = self.order
            split = [(e % k, e // k) for e in range(n)]
            ba, bm = base.add, base.mul
            self.add = [
                [ba[a0][b0] + k * ba[a1][b1] for (b0, b1) in split]
                for (a0, a1) in split
            ]
            mul = []
            for a0, a1 in split:
                row = []
                for b0, b1 in split:
                    hi = bm[a1][b1]
                    lo = ba[bm[a0][b0]][bm[hi][c0]]
                    mid = ba[ba[bm[a0][b1]][bm[a1][b0]]][bm[hi][c1]]
                    row.append(lo + k * mid)
                mul.append(row)
            self.mul = mul
        n = self.order
        self.neg = [next(b for b in range(n) if self.add[a][b] == 0) for a in range(n)]
        self.gen = self._find_generator()
        self.exp = [1] * (n - 1)
        for i in range(1, n - 1):
            self.exp[i] = self.mul[self.exp[i - 1]][self.gen]
        self.log = {x: i for i, x in enumerate(self.exp)}
        self.inv = [0] + [self.exp[(-self.log[x]) % (n - 1)] for x in range(1, n)]

    def _find_generator(self) -> int:
        n = self.order
        for g in range(2, n) if n > 2 else [1]:
            x, k = g, 1
            while x != 1:
                x = self.mul[x][g]
                k += 1
            if k == n - 1:
                return g
        raise RuntimeError("no generator found")

    def pow(self, x: int, k: int) -> int:
        if x == 0:
            return 0
        return self.exp[(self.log[x] * k) % (self.order - 1)]

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]

    def frob(self, x: int, k: int) -> int:
        """``x ** k`` where ``k`` is typically the base order."""
        return self.pow(x, k)

    def trace_to_prime(self, x: int) -> int:
        """Absolute trace to the prime field, as an int mod p."""
        t, y = 0, x
        n_steps = _prime_power(self.order)[1]
        for _ in range(n_steps):
            t = self.add[t][y]
            y = self.pow(y, self.p)
        assert t < self.p
        return t

    @staticmethod
    def quadratic_ext(base: "FiniteField") -> "FiniteField":
        k = base.order
        for c0, c1 in product(range(k), range(k)):
            # x^2 - c1 x - c0 irreducible iff no root in base
            if all(
                base.sub(base.sub(base.mul[r][r], base.mul[c1][r]), c0) != 0
                for r in range(k)
            ):
                return FiniteField(base, base.p, (c0, c1))
        raise RuntimeError("no irreducible quadratic")


@lru_cache(maxsize=None)
def field_pair(q: int) -> tuple[FiniteField, FiniteField]:
    """``(F_q, F_{q^2})`` with compatible encodings."""
    if q not in SUPPORTED_Q:
        raise ValueError(f"unsupported q={q}; supported: {SUPPORTED_Q}")
    p, r = _prime_power(q)
    fq = FiniteField(None, p)
    if r == 2:
        fq = FiniteField.quadratic_ext(fq)
    return fq, FiniteField.quadratic_ext(fq)


@lru_cache(maxsize=None)
def _psi_table(q: int) -> tuple[complex, ...]:
    fq, _ = field_pair(q)
    p = fq.p
    return tuple(cmath.exp(2j * math.pi * fq.trace_to_prime(x) / p) for x in range(q))


def psi(q: int, x: int) -> complex:
    return _psi_table(q)[x]


Mat = tuple  # (a, b, c, d) row-major


@lru_cache(maxsize=None)
def enum_group(q: int) -> tuple[Mat, ...]:
    """All invertible 2x2 matrices over ``F_q`` in lexicographic entry order."""
    fq, _ = field_pair(q)
    m = fq.mul
    out = []
    for a, b, c, d in product(range(q), repeat=4):
        if fq.sub(m[a][d], m[b][c]) != 0:
            out.append((a, b, c, d))
    return tuple(out)


@lru_cache(maxsize=None)
def _index(q: int) -> dict:
    return {g: i for i, g in enumerate(enum_group(q))}


def mat_mul(q: int, x: Mat, y: Mat) -> Mat:
    fq, _ = field_pair(q)
    m, a = fq.mul, fq.add
    return (
        a[m[x[0]][y[0]]][m[x[1]][y[2]]],
        a[m[x[0]][y[1]]][m[x[1]][y[3]]],
        a[m[x[2]][y[0]]][m[x[3]][y[2]]],
        a[m[x[2]][y[1]]][m[x[3]][y[3]]],
    )


def mat_inv(q: int, x: Mat) -> Mat:
    fq, _ = field_pair(q)
    m = fq.mul
    det = fq.sub(m[x[0]][x[3]], m[x[1]][x[2]])
    di = fq.inv[det]
    return (m[x[3]][di], m[fq.neg[x[1]]][di], m[fq.neg[x[2]]][di], m[x[0]][di])


# ---------------------------------------------------------------------------
# cuspidal characters


def canonical_label(q: int, j: int) -> int:
    n = q * q - 1
    j %= n
    if (j * (q - 1)) % n == 0:
        raise ValueError(f"label {j} is not regular (theta = theta^q)")
    return min(j, (q * j) % n)


def cuspidal_labels(q: int) -> list[int]:
    n = q * q - 1
    return sorted({canonical_label(q, j) for j in range(n) if (j * (q - 1)) % n})


def _theta(q: int, label: int, x: int) -> complex:
    """Character of ``F_{q^2}^x`` with generator -> exp(2 pi i label / (q^2-1))."""
    _, fq2 = field_pair(q)
    return cmath.exp(2j * math.pi * label * fq2.log[x] / (q * q - 1))


def _sqrt_in_ext(q: int, d: int) -> int:
    """A square root in ``F_{q^2}`` of ``d`` from ``F_q``."""
    _, fq2 = field_pair(q)
    for y in range(fq2.order):
        if fq2.mul[y][y] == d:
            return y
    raise RuntimeError("no square root in the quadratic extension")


@lru_cache(maxsize=None)
def _class_data(q: int, g: Mat):
    """('central', a) | ('unipotent', a) | ('split', a, b) | ('elliptic', lam)."""
    fq, fq2 = field_pair(q)
    a, b, c, d = g
    m = fq.mul
    tr = fq.add[a][d]
    det = fq.sub(m[a][d], m[b][c])
    if b == 0 and c == 0 and a == d:
        return ("central", a)
    # roots of x^2 - tr x + det in F_{q^2}
    roots = [
        y for y in range(fq2.order)
        if fq2.add[fq2.sub(fq2.mul[y][y], fq2.mul[tr][y])][det] == 0
    ]
    if len(roots) == 1:
        return ("unipotent", roots[0])
    if all(r < q for r in roots):
        return ("split", roots[0], roots[1])
    return ("elliptic", roots[0])


def cuspidal_char(q: int, label: int, g: Mat) -> complex:
    """Character value of the cuspidal representation attached to ``label``."""
    kind = _class_data(q, g)
    if kind[0] == "central":
        return (q - 1) * _theta(q, label, kind[1])
    if kind[0] == "unipotent":
        return -_theta(q, label, kind[1])
    if kind[0] == "split":
        return 0j
    lam = kind[1]
    _, fq2 = field_pair(q)
    return -(_theta(q, label, lam) + _theta(q, label, fq2.pow(lam, q)))


def central_sign(q: int, label: int) -> int:
    """``omega(-1)`` for the cuspidal attached to ``label``."""
    fq, _ = field_pair(q)
    v = _theta(q, label, fq.neg[1])
    return 1 if v.real > 0 else -1


# ---------------------------------------------------------------------------
# Bessel functions


def csum(values) -> complex:
    vals = list(values)
    return complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals))


@dataclass(frozen=True)
class BesselTable:
    q: int
    label: int
    values: tuple[complex, ...] = field(repr=False)
    conj_psi: bool = False

    def __call__(self, g: Mat) -> complex:
        return self.values[_index(self.q)[g]]

    @property
    def group(self) -> tuple[Mat, ...]:
        return enum_group(self.q)


def _unip(x: int) -> Mat:
    return (1, x, 0, 1)


@lru_cache(maxsize=None)
def bessel(q: int, label: int, conj_psi: bool = False) -> BesselTable:
    """``J(g) = |U|^-1 sum_u psi(u)^-1 chi(g u)``; ``conj_psi`` uses ``psi^-1``."""
    label = canonical_label(q, label)
    grp = enum_group(q)
    chars = {g: cuspidal_char(q, label, g) for g in grp}
    ps = _psi_table(q)
    if conj_psi:
        ps = tuple(p.conjugate() for p in ps)
    vals = []
    for g in grp:
        terms = [ps[x].conjugate() * chars[mat_mul(q, g, _unip(x))] for x in range(q)]
        vals.append(csum(terms) / q)
    return BesselTable(q, label, tuple(vals), conj_psi)


def _pair_terms(t1: BesselTable, t2: BesselTable, mode: str, conj_psi: bool):
    ps = _psi_table(t1.q)
    grp = enum_group(t1.q)
    if mode == "schur":
        return [abs(v) ** 2 + 0j for v in t1.values]
    if mode == "cross":
        return [a.conjugate() * b for a, b in zip(t1.values, t2.values)]
    if mode == "gauss":
        out = []
        for g, a, b in zip(grp, t1.values, t2.values):
            ph = ps[g[2]]
            out.append(a.conjugate() * b * (ph.conjugate() if conj_psi else ph))
        return out
    raise ValueError(f"unknown mode {mode!r}")


def pair_sums(
    t1: BesselTable,
    t2: BesselTable,
    mode: str,
    *,
    schedule: str = "sequential",
    chunks: int = 8,
    workers: int = 4,
    conj_psi: bool = False,
) -> complex:
    """Group sums of Bessel tables.

    ``schedule="chunked"`` splits the enumeration at fixed boundaries, sums
    each chunk on a thread pool, and combines the partials in chunk order.
    """
    if t1.q != t2.q:
        raise ValueError("tables over different fields")
    terms = _pair_terms(t1, t2, mode, conj_psi)
    if schedule == "sequential":
        return csum(terms)
    if schedule != "chunked":
        raise ValueError(f"unknown schedule {schedule!r}")
    size = -(-len(terms) // chunks)
    parts = [terms[i : i + size] for i in range(0, len(terms), size)]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        partials = list(ex.map(csum, parts))
    return csum(partials)


def gauss_sum(q: int, l1: int, l2: int, *, conj_psi: bool = False, **kw) -> complex:
    """Gauss sum of two labels, everything taken against ``psi`` or its conjugate."""
    t1, t2 = bessel(q, l1, conj_psi), bessel(q, l2, conj_psi)
    return pair_sums(t1, t2, "gauss", conj_psi=conj_psi, **kw)


def gl1_gauss(e1: int, e2: int, q: int, *, conj_psi: bool = False) -> complex:
    """``sum_x conj(chi1(x)) chi2(x) psi(x)`` over ``F_q^x``."""
    fq, _ = field_pair(q)
    ps = _psi_table(q)
    terms = []
    for x in range(1, q):
        k = fq.log[x]
        ang = 2 * math.pi * (e2 - e1) * k / (q - 1)
        ph = ps[x].conjugate() if conj_psi else ps[x]
        terms.append(cmath.exp(1j * ang) * ph)
    return csum(terms)


def gl1_sign(q: int, e: int) -> int:
    """``chi(-1)`` for the character ``generator -> exp(2 pi i e / (q-1))``."""
    fq, _ = field_pair(q)
    k = fq.log[fq.neg[1]]
    return 1 if (e * k) % (q - 1) == 0 else -1


# ---------------------------------------------------------------------------
# normalization of the level-zero Gauss sums

# |S| = q**nu for every inequivalent pair; found by oracle_nu and asserted
PINNED_NU = {1: Fraction(1, 2), 2: Fraction(2)}
NU_TOL = 1e-6


def _pairs(n: int, q: int):
    if n == 1:
        labels = range(q - 1)
    else:
        labels = cuspidal_labels(q)
    return [(a, b) for a in labels for b in labels if a != b]


def _raw_sum(n: int, q: int, l1: int, l2: int, conj_psi: bool = False) -> complex:
    if n == 1:
        return gl1_gauss(l1, l2, q, conj_psi=conj_psi)
    return gauss_sum(q, l1, l2, conj_psi=conj_psi)


def oracle_nu(n: int, qs: Sequence[int]) -> Fraction | None:
    """Brute-force exponent ``log_q |S|`` over all inequivalent pairs.

    Returns the common value as a half-integer, or ``None`` when the
    exponents differ or no pair exists.
    """
    seen = set()
    for q in qs:
        for l1, l2 in _pairs(n, q):
            lg = math.log(abs(_raw_sum(n, q, l1, l2)), q)
            half = round(2 * lg)
            if abs(2 * lg - half) > NU_TOL:
                return None
            seen.add(Fraction(half, 2))
    return seen.pop() if len(seen) == 1 else None


@dataclass(frozen=True)
class LevelZeroUnit:
    q: int
    n: int
    l1: int
    l2: int
    sum: complex
    nu: Fraction
    unit: complex

    @property
    def modulus(self) -> float:
        return abs(self.sum)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "l1": self.l1,
            "l2": self.l2,
            "sum_re": self.sum.real,
            "sum_im": self.sum.imag,
            "modulus": self.modulus,
            "nu": str(self.nu),
            "unit_re": self.unit.real,
            "unit_im": self.unit.imag,
            "nu_pinned": True,
        }


def _normalize(n: int, q: int, l1: int, l2: int, s: complex) -> LevelZeroUnit:
    nu = PINNED_NU[n]
    scale = q ** float(nu)
    if abs(abs(s) / scale - 1) > NU_TOL:
        raise NormalizationError(
            f"|S|={abs(s):.12g} at q={q}, labels ({l1},{l2}) does not match q^{nu}"
        )
    return LevelZeroUnit(q, n, l1, l2, s, nu, s / scale)


def level_zero_unit(
    q: int, l1: int, l2: int, *, conj_psi: bool = False, **kw
) -> LevelZeroUnit:
    """Normalized GL2 Gauss sum of two inequivalent cuspidal labels."""
    l1, l2 = canonical_label(q, l1), canonical_label(q, l2)
    if l1 == l2:
        raise ValueError("level_zero_unit needs inequivalent cuspidal labels")
    s = gauss_sum(q, l1, l2, conj_psi=conj_psi, **kw)
    return _normalize(2, q, l1, l2, s)


def gl1_unit(q: int, e1: int, e2: int, *, conj_psi: bool = False) -> LevelZeroUnit:
    """Normalized Gauss sum of two distinct characters of ``F_q^x``."""
    e1, e2 = e1 % (q - 1), e2 % (q - 1)
    if e1 == e2:
        raise ValueError("gl1_unit needs distinct characters")
    return _normalize(1, q, e1, e2, gl1_gauss(e1, e2, q, conj_psi=conj_psi))


# ---------------------------------------------------------------------------
# suites


def _worst(values) -> float:
    return max(values, default=0.0)


def bessel_suite(qs: Sequence[int] = (2, 3, 5), seed: int = 0) -> list[CheckResult]:
    """Bessel-function and character invariants over ``GL2(F_q)``."""
    out = []
    for q in qs:
        grp = enum_group(q)
        order = len(grp)
        ps = _psi_table(q)
        fq, _ = field_pair(q)
        labels = cuspidal_labels(q)
        key = f"q={q}"
        chars = {l: [cuspidal_char(q, l, g) for g in grp] for l in labels}
        norm = _worst(abs(csum(abs(c) ** 2 for c in chars[l]) - order) for l in labels)
        out.append(check("character_norm", norm < 1e-6, f"deviation {norm:.3g}", key))
        orth = _worst(
            abs(csum(a.conjugate() * b for a, b in zip(chars[l1], chars[l2])))
            for l1 in labels for l2 in labels if l1 != l2
        )
        out.append(check("character_orthogonality", orth < 1e-6, f"max {orth:.3g}", key))

        tables = {l: bessel(q, l) for l in labels}
        one = _worst(abs(t((1, 0, 0, 1)) - 1) for t in tables.values())
        out.append(check("bessel_at_identity", one <= 1e-12, f"deviation {one:.3g}", key))
        equi = 0.0
        for t in tables.values():
            for g in grp:
                jg = t(g)
                for x in range(q):
                    left = mat_mul(q, _unip(x), g)
                    for y in range(q):
                        v = t(mat_mul(q, left, _unip(y)))
                        equi = max(equi, abs(v - ps[x] * ps[y] * jg))
        out.append(check("bessel_bi_equivariance", equi < 1e-9, f"max {equi:.3g}", key))
        inv = _worst(
            abs(t(mat_inv(q, g)) - t(g).conjugate()) for t in tables.values() for g in grp
        )
        out.append(check("bessel_inverse_conjugate", inv < 1e-9, f"max {inv:.3g}", key))
        mir = 0.0
        for t in tables.values():
            for a in range(1, q):
                for b in range(q):
                    want = ps[b] if a == 1 else 0
                    mir = max(mir, abs(t((a, b, 0, 1)) - want))
        out.append(check("bessel_mirabolic_support", mir < 1e-9, f"max {mir:.3g}", key))
        schur = _worst(
            abs(pair_sums(t, t, "schur") - order / (q - 1)) for t in tables.values()
        )
        out.append(check("bessel_schur_norm", schur < 1e-6, f"deviation {schur:.3g}", key))
        cross = _worst(
            abs(pair_sums(tables[l1], tables[l2], "cross"))
            for l1 in labels for l2 in labels if l1 != l2
        )
        out.append(check("bessel_cross_orthogonality", cross < 1e-6, f"max {cross:.3g}", key))
        sym = _worst(
            abs(
                pair_sums(tables[l2], tables[l1], "gauss", conj_psi=True)
                - pair_sums(tables[l1], tables[l2], "gauss").conjugate()
            )
            for l1 in labels for l2 in labels
        )
        out.append(check("gauss_conjugation_symmetry", sym < 1e-9, f"max {sym:.3g}", key))
        if q in (2, 3):
            rng = random.Random(seed)
            comp = 0.0
            for t in tables.values():
                for _ in range(100):
                    g1, g2 = rng.choice(grp), rng.choice(grp)
                    s = csum(
                        t(mat_mul(q, g1, (a, 0, 0, 1))) * t(mat_mul(q, (fq.inv[a], 0, 0, 1), g2))
                        for a in range(1, q)
                    )
                    comp = max(comp, abs(s - t(mat_mul(q, g1, g2))))
            out.append(check("bessel_composition", comp < 1e-9, f"max {comp:.3g}", key + f",seed={seed}"))
    return out


def gauss_suite() -> list[CheckResult]:
    """Modulus laws for the normalized Gauss sums."""
    out = []
    for q in (5, 7):
        dev = _worst(
            abs(abs(gl1_gauss(a, b, q)) - math.sqrt(q))
            for a in range(q - 1) for b in range(q - 1) if a != b
        )
        out.append(check("gl1_modulus_sqrt_q", dev < 1e-9, f"deviation {dev:.3g}", f"q={q}"))
    nu = oracle_nu(2, (2, 3))
    out.append(check("nu_oracle_pinned", nu == PINNED_NU[2], f"oracle gives {nu}", "q in {2,3}"))
    nu1 = oracle_nu(1, (3, 5, 7))
    out.append(check("nu_oracle_gl1", nu1 == PINNED_NU[1], f"oracle gives {nu1}", "q in {3,5,7}"))
    for q in (2, 3, 5):
        dev, count = 0.0, 0
        try:
            for l1, l2 in _pairs(2, q):
                dev = max(dev, abs(abs(level_zero_unit(q, l1, l2).unit) - 1))
                count += 1
            out.append(check("unit_modulus_one", dev < 1e-6, f"deviation {dev:.3g}", f"q={q},pairs={count}"))
        except NormalizationError as exc:
            out.append(check("unit_modulus_one", False, str(exc), f"q={q}"))
    return out


def determinism_suite(qs: Sequence[int] = (3, 5)) -> list[CheckResult]:
    """Sequential and chunked-parallel summation agree."""
    out = []
    for q in qs:
        labels = cuspidal_labels(q)
        dev = 0.0
        for l1 in labels:
            for l2 in labels:
                t1, t2 = bessel(q, l1), bessel(q, l2)
                for mode in ("schur", "cross", "gauss"):
                    a = pair_sums(t1, t2, mode)
                    b = pair_sums(t1, t2, mode, schedule="chunked")
                    dev = max(dev, abs(a - b))
        out.append(check("schedule_agreement", dev <= 1e-10, f"max {dev:.3g}", f"q={q}"))
    return out
