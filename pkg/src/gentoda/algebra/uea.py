"""Elements of U(gl_n)[u, D, eps] in PBW normal form.

A term key is ``(monomial, a, b, c)`` standing for ``m * u^a * D^b * eps^c``
where ``m`` is a nondecreasing tuple of mixed-basis indices.  The gl_n
generators commute with ``u``, ``D`` and ``eps``; ``D u = u D - u^2``; ``eps``
is central.  Elements with only ``(m, 0, 0, 0)`` keys are plain elements of
U(gl_n).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from types import MappingProxyType

from .basis import MixedGenerator, mixed_basis
from .kernel import get_kernel
from .weyl import weyl_monomial_product


class RankMismatchError(ValueError):
    pass


_Scalar = (int, Fraction)


class UEAElement:
    __slots__ = ("n", "_terms", "_scaled", "_hash")

    def __init__(self, n: int, terms=None):
        self.n = n
        clean = {}
        for key, c in (terms or {}).items():
            c = _normalize(c)
            if c:
                clean[key] = c
        self._terms = clean
        self._scaled = None
        self._hash = None

    @classmethod
    def _raw(cls, n, terms):
        # terms already clean
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        obj._scaled = None
        obj._hash = None
        return obj

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "UEAElement":
        return cls(n)

    @classmethod
    def scalar(cls, n: int, c) -> "UEAElement":
        return cls(n, {((), 0, 0, 0): c})

    @classmethod
    def one(cls, n: int) -> "UEAElement":
        return cls.scalar(n, 1)

    @classmethod
    def generator(cls, n: int, g: MixedGenerator | tuple) -> "UEAElement":
        if not isinstance(g, MixedGenerator):
            g = MixedGenerator(*g)
        b = mixed_basis(n)
        if g not in b.index:
            raise ValueError(f"{g} is not a generator of gl_{n}")
        return cls(n, {((b.index[g],), 0, 0, 0): 1})

    @classmethod
    def e(cls, n: int, i: int, j: int) -> "UEAElement":
        """The matrix unit ``e_ij`` rewritten in the mixed basis."""
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"e_{i}{j} out of range for gl_{n}")
        return cls(n, {((k,), 0, 0, 0): c for k, c in mixed_basis(n).raw(i, j).items()})

    @classmethod
    def u(cls, n: int) -> "UEAElement":
        return cls(n, {((), 1, 0, 0): 1})

    @classmethod
    def D(cls, n: int) -> "UEAElement":
        return cls(n, {((), 0, 1, 0): 1})

    @classmethod
    def eps(cls, n: int) -> "UEAElement":
        return cls(n, {((), 0, 0, 1): 1})

    # -- inspection ----------------------------------------------------------

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degree(self) -> int:
        """Largest PBW degree among the terms (-1 for zero)."""
        return max((len(k[0]) for k in self._terms), default=-1)

    def in_borel(self) -> bool:
        """True when no term contains an F-generator."""
        nf = mixed_basis(self.n).num_f
        return all(not k[0] or k[0][0] >= nf for k in self._terms)

    def is_pure(self) -> bool:
        """True when no spectral variable (u, D, eps) occurs."""
        return all(k[1] == k[2] == k[3] == 0 for k in self._terms)

    def coefficient(self, a: int = 0, b: int = 0, c: int = 0) -> "UEAElement":
        """The U(gl_n) coefficient of ``u^a D^b eps^c``."""
        return UEAElement._raw(
            self.n,
            {(m, 0, 0, 0): v for (m, x, y, z), v in self._terms.items() if (x, y, z) == (a, b, c)},
        )

    def scalar_part(self) -> Fraction:
        return self._terms.get(((), 0, 0, 0), Fraction(0))

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "UEAElement"):
        if self.n != other.n:
            raise RankMismatchError(f"rank mismatch: gl_{self.n} vs gl_{other.n}")

    def _coerce(self, other):
        if isinstance(other, UEAElement):
            self._check(other)
            return other
        if isinstance(other, _Scalar):
            return UEAElement.scalar(self.n, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for k, v in other._terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return UEAElement._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return UEAElement._raw(self.n, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, _Scalar):
            if not other:
                return UEAElement.zero(self.n)
            return UEAElement._raw(self.n, {k: v * other for k, v in self._terms.items()})
        if not isinstance(other, UEAElement):
            return NotImplemented
        return nc_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, _Scalar):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, _Scalar):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        out = UEAElement.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, _Scalar):
            other = UEAElement.scalar(self.n, other)
        if not isinstance(other, UEAElement):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    # integer numerators over a common denominator, for fast products
    def scaled(self):
        if self._scaled is None:
            den = 1
            for v in self._terms.values():
                den = lcm(den, v.denominator)
            nums = {k: v.numerator * (den // v.denominator) for k, v in self._terms.items()}
            self._scaled = (nums, den)
        return self._scaled

    # -- display -----------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        gens = mixed_basis(self.n).generators
        parts = []
        for (m, a, b, c), v in sorted(self._terms.items(), key=_sort_key):
            factors = []
            for g in m:
                factors.append(str(gens[g]))
            for name, e in (("u", a), ("D", b), ("eps", c)):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(str(v))
            elif v == 1:
                parts.append(body)
            elif v == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{v}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"UEAElement(n={self.n}, {self})"


def _normalize(c):
    """Integral coefficients are kept as ``int``; everything else as ``Fraction``.

    ``Fraction`` and ``int`` compare and hash equal, so normal forms stay
    canonical while integer-only arithmetic skips ``Fraction`` overhead.
    """
    if type(c) is int:
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def _sort_key(item):
    (m, a, b, c), _ = item
    return (-len(m), m, a, b, c)


def nc_mul(x: UEAElement, y: UEAElement) -> UEAElement:
    """Normal-form product ``x * y``."""
    x._check(y)
    if not x._terms or not y._terms:
        return UEAElement.zero(x.n)
    kernel = get_kernel(x.n)
    kmul = kernel.mul
    xn, xd = x.scaled()
    yn, yd = y.scaled()
    out: dict[tuple, int] = {}
    get = out.get
    for (m1, a1, b1, c1), p in xn.items():
        for (m2, a2, b2, c2), q in yn.items():
            pq = p * q
            c = c1 + c2
            pbw = kmul(m1, m2)
            if b1 == 0 or a2 == 0:
                a = a1 + a2
                b = b1 + b2
                for mono, k in pbw.items():
                    key = (mono, a, b, c)
                    out[key] = get(key, 0) + pq * k
            else:
                weyl = weyl_monomial_product(a1, b1, a2, b2)
                for mono, k in pbw.items():
                    pqk = pq * k
                    for w, a, b in weyl:
                        key = (mono, a, b, c)
                        out[key] = get(key, 0) + pqk * w
    den = xd * yd
    if den == 1:
        terms = {k: v for k, v in out.items() if v}
    else:
        terms = {}
        for k, v in out.items():
            if v:
                g = gcd(v, den)
                terms[k] = v // g if den == g else Fraction(v // g, den // g)
    return UEAElement._raw(x.n, terms)


def commutator(a: UEAElement, b: UEAElement) -> UEAElement:
    return nc_mul(a, b) - nc_mul(b, a)


def adjoint_action(X: MixedGenerator | tuple, a: UEAElement) -> UEAElement:
    """``ad_X(a) = [X, a]``."""
    return commutator(UEAElement.generator(a.n, X), a)
