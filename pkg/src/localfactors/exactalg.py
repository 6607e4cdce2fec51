"""
Exact coefficient arithmetic.

Rationals are :class:`fractions.Fraction`.  Half-integer powers of the
residue cardinality live in :class:`QuadExt`, the field Q(sqrt(q)).  On top of
these sit sparse Laurent polynomials in one or two variables and normalized
rational functions in one variable.

>>> T = LaurentPoly.var()
>>> (1 - T) * (1 + T)
LaurentPoly(1, {(0,): 1, (2,): -1})
>>> F = RatFunc(1 - T, 1 - T / 3)
>>> F(Fraction(0))
Fraction(1, 1)
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Union

__all__ = [
    "ExactError",
    "DivisibilityError",
    "PoleError",
    "QuadExt",
    "LaurentPoly",
    "RatFunc",
    "qpow",
    "lp_arith",
    "exact_div",
    "subst_affine_s",
    "rf_eval",
    "coeff_to_json",
    "coeff_from_json",
]


class ExactError(ValueError):
    """Bad input to an exact-arithmetic operation (arity, radicand, ...)."""


class DivisibilityError(ArithmeticError):
    """A Laurent polynomial division that was required to be exact is not."""


class PoleError(ZeroDivisionError):
    """Evaluation of a rational function at a zero of its denominator."""

    def __init__(self, msg: str, denominator: "LaurentPoly | None" = None):
        super().__init__(msg)
        self.denominator = denominator


def _is_square(n: int) -> int | None:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


class QuadExt:
    """An element ``a + b*sqrt(radicand)`` with rational ``a``, ``b``.

    When the radicand is a perfect square the irrational part is folded into
    ``a`` so that ``b == 0``.  Instances are immutable and hashable.
    """

    __slots__ = ("a", "b", "radicand")

    def __init__(self, a=0, b=0, radicand: int = 1):
        radicand = int(radicand)
        if radicand <= 0:
            raise ExactError(f"radicand must be positive, got {radicand}")
        a, b = Fraction(a), Fraction(b)
        root = _is_square(radicand)
        if root is not None:
            a, b = a + b * root, Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "radicand", radicand)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    @classmethod
    def sqrt(cls, q: int) -> "QuadExt":
        return cls(0, 1, q)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b:
            raise ExactError(f"{self} is irrational")
        return self.a

    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.radicand == self.radicand or other.b == 0:
                return other.a, other.b
            if self.b == 0:
                return None
            raise ExactError(
                f"radicand mismatch: {self.radicand} vs {other.radicand}"
            )
        if isinstance(other, (int, _RationalABC)):
            return Fraction(other), Fraction(0)
        return NotImplemented

    def _radicand_with(self, other) -> int:
        if isinstance(other, QuadExt) and self.b == 0:
            return other.radicand
        return self.radicand

    def __add__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        if c is None:
            return other + self
        return _simplify(QuadExt(self.a + c[0], self.b + c[1], self._radicand_with(other)))

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.radicand)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        if c is None:
            return other * self
        r = self._radicand_with(other)
        a, b = self.a, self.b
        return _simplify(QuadExt(a * c[0] + b * c[1] * r, a * c[1] + b * c[0], r))

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        norm = self.a * self.a - self.b * self.b * self.radicand
        if norm == 0:
            raise ZeroDivisionError("inverse of zero in QuadExt")
        return QuadExt(self.a / norm, -self.b / norm, self.radicand)

    def __truediv__(self, other):
        if isinstance(other, QuadExt):
            return self * other.inverse()
        if isinstance(other, (int, _RationalABC)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, _RationalABC)):
            return self.inverse() * Fraction(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadExt(1, 0, self.radicand)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "QuadExt":
        """Galois conjugate ``a - b*sqrt(q)`` (not complex conjugation)."""
        return QuadExt(self.a, -self.b, self.radicand)

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return self.a == other.a and self.b == other.b and (
                self.b == 0 or self.radicand == other.radicand
            )
        if isinstance(other, (int, _RationalABC)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.radicand))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.radicand)

    def __complex__(self):
        return complex(float(self))

    def __repr__(self):
        return f"QuadExt({self.a}, {self.b}, {self.radicand})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        s = f"{self.b}*sqrt({self.radicand})"
        return s if self.a == 0 else f"{self.a} + {s}"


Coeff = Union[Fraction, QuadExt]


def _simplify(x):
    """Collapse a rational QuadExt to a Fraction (the canonical coefficient form)."""
    if isinstance(x, QuadExt) and x.b == 0:
        return x.a
    return x


def _canon_coeff(c) -> Coeff:
    if isinstance(c, QuadExt):
        return _simplify(c)
    if isinstance(c, (int, _RationalABC)):
        return Fraction(c)
    raise ExactError(f"unsupported coefficient type {type(c).__name__}")


def qpow(q: int, e) -> Coeff:
    """``q**e`` for rational ``e`` as an exact Fraction or QuadExt.

    Works whenever ``2e`` is an integer, or ``q`` is a perfect square and the
    exponent can be halved into that range.
    """
    e = Fraction(e)
    if (2 * e).denominator == 1:
        k2 = int(2 * e)
        whole, half = divmod(k2, 2)
        base = Fraction(q) ** whole
        if half:
            return _simplify(QuadExt(0, base, q))
        return base
    root = _is_square(q)
    if root is not None and root > 1:
        return qpow(root, 2 * e)
    raise ExactError(f"{q}^{e} is not representable in Q(sqrt({q}))")


# ---------------------------------------------------------------------------
# Laurent polynomials


Exp = tuple


class LaurentPoly:
    """Sparse Laurent polynomial in ``arity`` (1 or 2) variables.

    ``terms`` maps exponent tuples to nonzero coefficients.  Iteration is in
    lexicographic exponent order.
    """

    __slots__ = ("arity", "_terms", "_hash")

    def __init__(self, arity: int, terms: Mapping[Exp, object] | Iterable = ()):
        if arity not in (1, 2):
            raise ExactError(f"arity must be 1 or 2, got {arity}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exp, Coeff] = {}
        for exp, c in items:
            if isinstance(exp, int):
                exp = (exp,)
            exp = tuple(int(x) for x in exp)
            if len(exp) != arity:
                raise ExactError(f"exponent {exp} does not have arity {arity}")
            c = _canon_coeff(c)
            if exp in acc:
                c = _simplify(acc[exp] + c)
            acc[exp] = c
        object.__setattr__(
            self, "_terms", {k: acc[k] for k in sorted(acc) if acc[k] != 0}
        )
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def _raw(cls, arity: int, acc: dict) -> "LaurentPoly":
        """Trusted constructor: keys are int tuples, values canonical coefficients."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "_terms", {k: acc[k] for k in sorted(acc) if acc[k] != 0})
        object.__setattr__(obj, "arity", arity)
        object.__setattr__(obj, "_hash", None)
        return obj

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, c, arity: int = 1) -> "LaurentPoly":
        return cls(arity, {(0,) * arity: c})

    @classmethod
    def monomial(cls, exp, c=1) -> "LaurentPoly":
        exp = (exp,) if isinstance(exp, int) else tuple(exp)
        return cls(len(exp), {exp: c})

    @classmethod
    def var(cls, k: int = 1) -> "LaurentPoly":
        return cls.monomial((k,))

    # access -------------------------------------------------------------
    @property
    def terms(self) -> dict[Exp, Coeff]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, exp) -> Coeff:
        exp = (exp,) if isinstance(exp, int) else tuple(exp)
        return self._terms.get(exp, Fraction(0))

    def min_exp(self, i: int = 0) -> int:
        return min(e[i] for e in self._terms)

    def max_exp(self, i: int = 0) -> int:
        return max(e[i] for e in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def radicand(self) -> int | None:
        for c in self._terms.values():
            if isinstance(c, QuadExt):
                return c.radicand
        return None

    # ring ops -------------------------------------------------------------
    def _lift(self, other) -> "LaurentPoly | None":
        if isinstance(other, LaurentPoly):
            if other.arity != self.arity:
                raise ExactError(f"arity mismatch: {self.arity} vs {other.arity}")
            return other
        if isinstance(other, (int, _RationalABC, QuadExt)):
            return LaurentPoly.const(other, self.arity)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in o._terms.items():
            acc[e] = _simplify(acc[e] + c) if e in acc else c
        return LaurentPoly._raw(self.arity, acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.arity, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        acc: dict[Exp, Coeff] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = _simplify(c1 * c2)
                acc[e] = _simplify(acc[e] + p) if e in acc else p
        return LaurentPoly._raw(self.arity, acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, _RationalABC, QuadExt)):
            inv = 1 / Fraction(other) if not isinstance(other, QuadExt) else other.inverse()
            return self * inv
        if isinstance(other, LaurentPoly):
            return exact_div(self, other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial():
                raise DivisibilityError("negative power of a non-monomial")
            (e, c), = self._terms.items()
            return LaurentPoly.monomial(tuple(-x for x in e), 1 / _as_field(c)) ** (-k)
        out = LaurentPoly.const(1, self.arity)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, exp) -> "LaurentPoly":
        """Multiply by the monomial ``x**exp``."""
        exp = (exp,) if isinstance(exp, int) else tuple(exp)
        return LaurentPoly(
            self.arity,
            {tuple(a + b for a, b in zip(e, exp)): c for e, c in self._terms.items()},
        )

    def map_coeffs(self, f) -> "LaurentPoly":
        return LaurentPoly(self.arity, {e: f(c) for e, c in self._terms.items()})

    def __call__(self, *point):
        """Evaluate at a point; entries may be any field element (incl. RatFunc)."""
        if len(point) != self.arity:
            raise ExactError(f"need {self.arity} coordinates")
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for x, k in zip(point, e):
                if k < 0:
                    if _is_zero(x):
                        raise PoleError(f"negative power of zero at {point}", self)
                    term = term * _inv(x) ** (-k)
                elif k:
                    term = term * x**k
            total = total + term
        return _simplify(total) if isinstance(total, QuadExt) else total

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.arity == other.arity and self._terms == other._terms
        if isinstance(other, (int, _RationalABC, QuadExt)):
            return self == LaurentPoly.const(other, self.arity)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.arity, tuple(self._terms.items()))))
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{e}: {c}" for e, c in self._terms.items())
        return f"LaurentPoly({self.arity}, {{{body}}})"

    def pretty(self, names=("t",)) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms.items():
            mono = "·".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            cs = str(c)
            if isinstance(c, QuadExt) and c.a != 0:
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}·{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # serialization --------------------------------------------------------
    def to_json(self) -> dict:
        rows = []
        for e, c in self._terms.items():
            rows.append(list(e) + coeff_to_json(c))
        out = {"arity": self.arity, "terms": rows}
        r = self.radicand()
        if r is not None:
            out["radicand"] = r
        return out

    @classmethod
    def from_json(cls, doc: dict) -> "LaurentPoly":
        k = int(doc["arity"])
        r = int(doc.get("radicand", 1))
        terms = {}
        for row in doc["terms"]:
            terms[tuple(row[:k])] = coeff_from_json(row[k:], r)
        return cls(k, terms)


def coeff_to_json(c) -> list[int]:
    if isinstance(c, QuadExt):
        return [c.a.numerator, c.a.denominator, c.b.numerator, c.b.denominator]
    c = Fraction(c)
    return [c.numerator, c.denominator, 0, 1]


def coeff_from_json(row, radicand: int = 1) -> Coeff:
    a = Fraction(row[0], row[1])
    b = Fraction(row[2], row[3])
    return _simplify(QuadExt(a, b, radicand)) if b else a


def _is_zero(x) -> bool:
    if isinstance(x, (LaurentPoly, RatFunc)):
        return x.is_zero()
    return x == 0


def _inv(x):
    if isinstance(x, QuadExt):
        return x.inverse()
    if isinstance(x, RatFunc):
        return x.inverse()
    if isinstance(x, (int, _RationalABC)):
        return 1 / Fraction(x)
    return 1 / x


def _as_field(c):
    return c if isinstance(c, QuadExt) else Fraction(c)


def lp_arith(op: str, f: LaurentPoly, g: LaurentPoly | None = None) -> LaurentPoly:
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "neg":
        return -f
    raise ExactError(f"unknown op {op!r}")


def exact_div(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Quotient ``h`` with ``g*h == f``; raise DivisibilityError otherwise.

    Long division on the lex-leading term.  Since the Newton polytope of a
    product is the Minkowski sum of the factors', every quotient exponent lies
    in a known box and the loop is finite.
    """
    if not isinstance(g, LaurentPoly) or not isinstance(f, LaurentPoly):
        raise ExactError("exact_div needs LaurentPoly operands")
    if f.arity != g.arity:
        raise ExactError(f"arity mismatch: {f.arity} vs {g.arity}")
    if g.is_zero():
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    k = f.arity
    if f.is_zero():
        return LaurentPoly(k)
    lo = [f.min_exp(i) - g.min_exp(i) for i in range(k)]
    hi = [f.max_exp(i) - g.max_exp(i) for i in range(k)]
    if any(a > b for a, b in zip(lo, hi)):
        raise DivisibilityError(f"{g!r} does not divide {f!r}")
    g_lead, g_lc = next(reversed(g._terms.items()))
    g_lc_inv = _inv(_as_field(g_lc))
    rem = dict(f._terms)
    quot: dict[Exp, Coeff] = {}
    while rem:
        lead = max(rem)
        qe = tuple(a - b for a, b in zip(lead, g_lead))
        if any(x < a or x > b for x, a, b in zip(qe, lo, hi)):
            raise DivisibilityError(f"{g!r} does not divide {f!r}")
        qc = _simplify(rem[lead] * g_lc_inv)
        quot[qe] = qc
        for e, c in g._terms.items():
            ee = tuple(a + b for a, b in zip(e, qe))
            v = _simplify(rem.get(ee, 0) - qc * c)
            if v == 0:
                rem.pop(ee, None)
            else:
                rem[ee] = v
    return LaurentPoly(k, quot)


# ---------------------------------------------------------------------------
# univariate helpers for RatFunc normalization


def _to_dense(p: LaurentPoly) -> tuple[int, list]:
    """(valuation, coefficient list from low to high degree)."""
    lo, hi = p.min_exp(), p.max_exp()
    return lo, [p.coeff((e,)) for e in range(lo, hi + 1)]


def _from_dense(val: int, coeffs: list) -> LaurentPoly:
    return LaurentPoly(1, {(val + i,): c for i, c in enumerate(coeffs) if c != 0})


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    b = _trim(list(b))
    lc_inv = _inv(_as_field(b[-1]))
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = _simplify(a[-1] * lc_inv)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = _simplify(a[shift + i] - c * bc)
        a.pop()
    return q, _trim(a)


def _poly_gcd(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    lc_inv = _inv(_as_field(a[-1]))
    return [_simplify(c * lc_inv) for c in a]


# ---------------------------------------------------------------------------
# rational functions


class RatFunc:
    """Quotient ``num/den`` of univariate Laurent polynomials, normalized.

    After construction ``gcd(num, den) == 1`` as polynomials, ``den`` is an
    ordinary polynomial with constant term ``1`` and every monomial factor is
    carried by ``num``.  Equality is therefore structural.
    """

    __slots__ = ("num", "den", "var")

    def __init__(self, num, den=None, var: str = "t"):
        num = _as_lp1(num)
        den = LaurentPoly.const(1) if den is None else _as_lp1(den)
        if den.is_zero():
            raise ZeroDivisionError("RatFunc with zero denominator")
        num, den = _normalize(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def const(cls, c, var: str = "t") -> "RatFunc":
        return cls(LaurentPoly.const(c), var=var)

    @classmethod
    def gen(cls, var: str = "t", k: int = 1) -> "RatFunc":
        return cls(LaurentPoly.var(k), var=var)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return self.den == 1 and (self.num.is_zero() or set(self.num.terms) == {(0,)})

    def const_value(self) -> Coeff:
        if not self.is_const():
            raise ExactError(f"{self} is not constant")
        return self.num.coeff((0,))

    def is_monomial(self) -> bool:
        return self.den == 1 and self.num.is_monomial()

    def _lift(self, other):
        if isinstance(other, RatFunc):
            if other.var != self.var and not (other.is_const() or self.is_const()):
                raise ExactError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, LaurentPoly):
            return RatFunc(other, var=self.var)
        if isinstance(other, (int, _RationalABC, QuadExt)):
            return RatFunc.const(other, self.var)
        return None

    def _var_with(self, other: "RatFunc") -> str:
        return other.var if self.is_const() else self.var

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den, self._var_with(o))
        return RatFunc(
            self.num * o.den + o.num * self.den, self.den * o.den, self._var_with(o)
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, self.var)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den, self._var_with(o))

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero RatFunc")
        return RatFunc(self.den, self.num, self.var)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num**k, self.den**k, self.var)

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, RatFunc) else other
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, x):
        return rf_eval(self, x)

    def compose_monomial(self, k: int, c=1) -> "RatFunc":
        """Substitute ``var -> c * var**k`` (k = +1 or -1 mostly)."""
        return RatFunc(_subst_mono(self.num, k, c), _subst_mono(self.den, k, c), self.var)

    def map_coeffs(self, f) -> "RatFunc":
        return RatFunc(self.num.map_coeffs(f), self.den.map_coeffs(f), self.var)

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r}, var={self.var!r})"

    def __str__(self):
        n = self.num.pretty((self.var,))
        if self.den == 1:
            return n
        return f"({n})/({self.den.pretty((self.var,))})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json(), "var": self.var}

    @classmethod
    def from_json(cls, doc: dict) -> "RatFunc":
        return cls(
            LaurentPoly.from_json(doc["num"]),
            LaurentPoly.from_json(doc["den"]),
            doc.get("var", "t"),
        )


def _as_lp1(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        if x.arity != 1:
            raise ExactError("RatFunc needs univariate Laurent polynomials")
        return x
    if isinstance(x, (int, _RationalABC, QuadExt)):
        return LaurentPoly.const(x)
    raise ExactError(f"cannot build RatFunc from {type(x).__name__}")


def _normalize(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if num.is_zero():
        return num, LaurentPoly.const(1)
    nv, nc = _to_dense(num)
    dv, dc = _to_dense(den)
    if len(dc) > 1 and len(nc) > 1:
        g = _poly_gcd(nc, dc)
        if len(g) > 1:
            nc, r1 = _poly_divmod(nc, g)
            dc, r2 = _poly_divmod(dc, g)
            assert not r1 and not r2
            nc, dc = _trim(nc), _trim(dc)
    lc_inv = _inv(_as_field(dc[0]))
    nc = [_simplify(c * lc_inv) for c in nc]
    dc = [_simplify(c * lc_inv) for c in dc]
    return _from_dense(nv - dv, nc), _from_dense(0, dc)


def _subst_mono(p: LaurentPoly, k: int, c) -> LaurentPoly:
    out: dict[Exp, Coeff] = {}
    for (e,), a in p.items():
        out[(k * e,)] = _simplify(a * _field_pow(c, e))
    return LaurentPoly(1, out)


def _field_pow(c, e: int):
    if e >= 0:
        return c**e if not isinstance(c, int) else Fraction(c) ** e
    return _inv(c) ** (-e)


def subst_affine_s(F: RatFunc, direction: int, shift, q: int) -> RatFunc:
    """Return ``F(s -> direction*s + shift)`` for ``F`` written in ``t = q^(-s/2)``.

    On ``t`` this is ``t -> t**direction * q**(-shift/2)``.
    """
    if direction not in (1, -1):
        raise ExactError("direction must be +1 or -1")
    shift = Fraction(shift)
    if (2 * shift).denominator != 1:
        raise ExactError("shift must be a half-integer")
    c = qpow(q, -shift / 2)
    return F.compose_monomial(direction, c)


def rf_eval(F: RatFunc, t0):
    """Exact value of ``F`` at ``t0``; PoleError at a zero of the denominator."""
    d = F.den(t0)
    if _is_zero(d):
        raise PoleError(f"pole of {F} at {t0}", F.den)
    n = F.num(t0)
    v = n * _inv(d)
    return _simplify(v) if isinstance(v, QuadExt) else v
