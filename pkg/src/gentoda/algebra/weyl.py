"""Differential operators in the spectral variable.

``u = 1/z`` and ``D = d/dz`` satisfy ``D u = u D - u**2``.  Elements are kept
with every power of ``u`` to the left of every power of ``D``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from types import MappingProxyType


@lru_cache(maxsize=4096)
def weyl_monomial_product(a1: int, b1: int, a2: int, b2: int) -> tuple[tuple[int, int, int], ...]:
    """Normal form of ``u^a1 D^b1 * u^a2 D^b2`` as ``((coef, a, b), ...)``.

    Uses ``D^b u^a = sum_j C(b, j) (-1)^j a(a+1)...(a+j-1) u^(a+j) D^(b-j)``.
    """
    if b1 == 0 or a2 == 0:
        return ((1, a1 + a2, b1 + b2),)
    out = []
    rising = 1
    for j in range(b1 + 1):
        if j:
            rising *= a2 + j - 1
        coef = comb(b1, j) * rising * (-1) ** j
        out.append((coef, a1 + a2 + j, b1 - j + b2))
    return tuple(out)


class WeylElement:
    """Rational combination of normal-ordered ``u^a D^b``."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        for (a, b), c in (terms or {}).items():
            if a < 0 or b < 0:
                raise ValueError("negative exponent")
            c = Fraction(c)
            if c:
                clean[(a, b)] = c
        self._terms = clean

    @classmethod
    def u(cls) -> "WeylElement":
        return cls({(1, 0): 1})

    @classmethod
    def D(cls) -> "WeylElement":
        return cls({(0, 1): 1})

    @classmethod
    def scalar(cls, c) -> "WeylElement":
        return cls({(0, 0): c})

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def __add__(self, other):
        other = _as_weyl(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return WeylElement(out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-_as_weyl(other))

    def __rsub__(self, other):
        return _as_weyl(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return WeylElement({k: v * other for k, v in self._terms.items()})
        return weyl_mul(self, other)

    def __rmul__(self, other):
        return WeylElement({k: v * other for k, v in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylElement.scalar(other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        if not self._terms:
            return "WeylElement(0)"
        parts = []
        for (a, b), c in sorted(self._terms.items()):
            parts.append(f"{c}*u^{a}*D^{b}")
        return "WeylElement(" + " + ".join(parts) + ")"


def _as_weyl(x) -> WeylElement:
    if isinstance(x, WeylElement):
        return x
    return WeylElement.scalar(x)


def weyl_mul(a: WeylElement, b: WeylElement) -> WeylElement:
    out: dict[tuple[int, int], Fraction] = {}
    for (a1, b1), c1 in a._terms.items():
        for (a2, b2), c2 in b._terms.items():
            for k, ea, eb in weyl_monomial_product(a1, b1, a2, b2):
                out[(ea, eb)] = out.get((ea, eb), 0) + c1 * c2 * k
    return WeylElement(out)
