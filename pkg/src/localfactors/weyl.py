"""
Extended affine Weyl group of GL2.

Elements are written uniquely as ``t**k * w`` where ``w`` is an alternating
word in the simple reflections ``s0``, ``s1`` (the subgroup they generate is
infinite dihedral).  Conjugation by ``t`` swaps ``s0`` and ``s1``, so ``t**2``
is central.  The translation lattice is Z^2 with ``a = t*s0 = s1*t`` the
translation by ``(1, 0)`` and ``t**2`` the translation by ``(1, 1)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Tuple

__all__ = [
    "AffWeylElt",
    "CochLattice",
    "IDENTITY",
    "T",
    "S0",
    "S1",
    "A",
    "W0",
    "weyl_mul",
    "length",
    "from_translation",
    "translation_decompose",
    "parse_weyl",
]

CochLattice = Tuple[int, int]


def _reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for s in letters:
        if out and out[-1] == s:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


@dataclass(frozen=True, order=True)
class AffWeylElt:
    """``t**tpow`` followed by the reduced word ``word`` (entries 0 or 1)."""

    tpow: int = 0
    word: tuple[int, ...] = ()

    def __post_init__(self):
        word = tuple(int(s) for s in self.word)
        if any(s not in (0, 1) for s in word):
            raise ValueError(f"letters must be 0 or 1, got {word}")
        object.__setattr__(self, "word", _reduce(word))
        object.__setattr__(self, "tpow", int(self.tpow))

    def __mul__(self, other: "AffWeylElt") -> "AffWeylElt":
        return weyl_mul(self, other)

    def inverse(self) -> "AffWeylElt":
        # (t^k w)^-1 = w^-1 t^-k = t^-k (w^-1 twisted by t^k)
        rev = self.word[::-1]
        if self.tpow % 2:
            rev = tuple(1 - s for s in rev)
        return AffWeylElt(-self.tpow, rev)

    def __pow__(self, k: int) -> "AffWeylElt":
        base = self if k >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(k)):
            out = out * base
        return out

    @property
    def length(self) -> int:
        return len(self.word)

    def letters(self) -> list["AffWeylElt"]:
        """Generator factorization: ``t``-power first, then the reflections."""
        out = [AffWeylElt(self.tpow)] if self.tpow else []
        return out + [AffWeylElt(0, (s,)) for s in self.word]

    def __str__(self) -> str:
        parts = []
        if self.tpow == 1:
            parts.append("t")
        elif self.tpow:
            parts.append(f"t^{self.tpow}")
        parts.extend(f"s{s}" for s in self.word)
        return ".".join(parts) if parts else "1"

    def __repr__(self) -> str:
        return f"AffWeylElt({self.tpow}, {self.word})"


IDENTITY = AffWeylElt()
T = AffWeylElt(1)
S0 = AffWeylElt(0, (0,))
S1 = AffWeylElt(0, (1,))
A = AffWeylElt(1, (0,))
W0 = S1


def weyl_mul(x: AffWeylElt, y: AffWeylElt) -> AffWeylElt:
    w1 = x.word
    if y.tpow % 2:
        w1 = tuple(1 - s for s in w1)
    return AffWeylElt(x.tpow + y.tpow, w1 + y.word)


def length(x: AffWeylElt) -> int:
    return len(x.word)


def from_translation(mu: CochLattice) -> AffWeylElt:
    m1, m2 = mu
    r = m1 - m2
    base = A**r if r >= 0 else A.inverse() ** (-r)
    return base * AffWeylElt(2 * m2)


# semidirect images of the generators in Z^2 x {1, w0}
_GEN_IMAGE = {
    "t": ((0, 1), 1),
    0: ((-1, 1), 1),
    1: ((0, 0), 1),
}


def _compose(p, q):
    (mu1, w1), (mu2, w2) = p, q
    m = mu2[::-1] if w1 else mu2
    return (mu1[0] + m[0], mu1[1] + m[1]), w1 ^ w2


def translation_decompose(x: AffWeylElt) -> tuple[CochLattice, AffWeylElt]:
    """Unique ``(mu, w)`` with ``x = t_mu * w`` and ``w`` in ``{1, w0}``."""
    acc = ((0, 0), 0)
    tgen = _GEN_IMAGE["t"]
    if x.tpow >= 0:
        tk = tgen
    else:
        # inverse of (mu, w) is (-w^-1 mu, w)
        mu, w = tgen
        m = mu[::-1] if w else mu
        tk = ((-m[0], -m[1]), w)
    for _ in range(abs(x.tpow)):
        acc = _compose(acc, tk)
    for s in x.word:
        acc = _compose(acc, _GEN_IMAGE[s])
    mu, w = acc
    return mu, (W0 if w else IDENTITY)


_TOKEN = re.compile(r"^(?:t(?:\^(-?\d+))?|s([01]))$")


def parse_weyl(text: str) -> AffWeylElt:
    """Parse the dot-separated text form, e.g. ``"t^-1.s0.s1"`` or ``"1"``."""
    text = text.strip()
    if text in ("", "1", "e"):
        return IDENTITY
    out = IDENTITY
    for tok in text.split("."):
        m = _TOKEN.match(tok.strip())
        if not m:
            raise ValueError(f"bad Weyl token {tok!r} in {text!r}")
        if m.group(2) is not None:
            out = out * AffWeylElt(0, (int(m.group(2)),))
        else:
            out = out * AffWeylElt(int(m.group(1)) if m.group(1) else 1)
    return out
