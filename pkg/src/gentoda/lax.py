"""Lax matrices, the antidiagonal deformation, pencils and chopped minors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra.commutative import classical_ring
from .algebra.uea import UEAElement

RING_TAGS = ("classical", "quantum", "numeric")


@dataclass(frozen=True)
class OperatorMatrix:
    """Square matrix whose entries all live in one coefficient ring."""

    n: int
    ring: str
    entries: tuple

    def __post_init__(self):
        if self.ring not in RING_TAGS:
            raise ValueError(f"unknown ring tag {self.ring!r}")
        if len(self.entries) != self.n or any(len(row) != self.n for row in self.entries):
            raise ValueError("entries must form an n x n array")

    @classmethod
    def from_rows(cls, rows, ring: str) -> "OperatorMatrix":
        rows = tuple(tuple(r) for r in rows)
        return cls(len(rows), ring, rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def map(self, fn) -> "OperatorMatrix":
        return OperatorMatrix(self.n, self.ring, tuple(tuple(fn(x) for x in row) for row in self.entries))

    def to_numpy(self) -> np.ndarray:
        if self.ring != "numeric":
            raise TypeError("only numeric matrices convert to arrays")
        return np.array(self.entries, dtype=float)


def _check_rank(n: int):
    if n < 1:
        raise ValueError("rank must be >= 1")


def build_full_lax(n: int, mode: str = "quantum") -> OperatorMatrix:
    """``A = sum E_ij (x) e_ij``: generators (quantum) or coordinates (classical)."""
    _check_rank(n)
    if mode == "quantum":
        rows = [[UEAElement.e(n, i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]
    elif mode == "classical":
        R = classical_ring(n)
        rows = [[R.x(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]
    else:
        raise ValueError(f"mode must be classical or quantum, got {mode!r}")
    return OperatorMatrix.from_rows(rows, mode)


def build_borel_lax(n: int) -> OperatorMatrix:
    """Symmetric matrix with ``A_ij = A_ji = x_ij`` for ``i >= j``."""
    _check_rank(n)
    R = classical_ring(n)
    rows = [[R.x(max(i, j), min(i, j)) for j in range(1, n + 1)] for i in range(1, n + 1)]
    return OperatorMatrix.from_rows(rows, "classical")


@dataclass(frozen=True)
class OmegaMatrix:
    """Antidiagonal matrix with ``(i, n-i+1) -> eps^(i-1)``."""

    n: int

    def __post_init__(self):
        _check_rank(self.n)

    def exponent(self, i: int, j: int) -> int | None:
        """eps-exponent of entry (i, j), 1-based, or None for a zero entry."""
        return i - 1 if i + j == self.n + 1 else None

    def nonzero(self):
        return [(i, self.n - i + 1, i - 1) for i in range(1, self.n + 1)]

    def as_matrix(self, mode: str) -> OperatorMatrix:
        n = self.n
        if mode == "quantum":
            eps = UEAElement.eps(n)
            zero = UEAElement.zero(n)
            one = UEAElement.one(n)
        elif mode == "classical":
            R = classical_ring(n)
            eps, zero, one = R.eps, R.zero(), R.one()
        else:
            raise ValueError(mode)
        rows = [[zero] * n for _ in range(n)]
        for i, j, k in self.nonzero():
            rows[i - 1][j - 1] = one * eps**k if k else one
        return OperatorMatrix.from_rows(rows, mode)


def build_omega(n: int) -> OmegaMatrix:
    return OmegaMatrix(n)


def _lam(mode: str, n: int):
    if mode == "quantum":
        return UEAElement.D(n)
    return classical_ring(n).lam


def chop(A: OperatorMatrix, k: int, lam=None) -> OperatorMatrix:
    """Form ``A - lam*Id`` and delete the top ``k`` rows and right ``k`` columns.

    ``lam`` defaults to the spectral variable of the ring; pass ``0`` to chop
    ``A`` itself.
    """
    n = A.n
    if not 0 <= k <= n - 1:
        raise ValueError(f"k must lie in [0, {n - 1}], got {k}")
    if lam is None:
        lam = _lam(A.ring, n)
    rows = []
    for r in range(k, n):
        row = []
        for c in range(0, n - k):
            x = A.entries[r][c]
            if r == c:
                x = x - lam
            row.append(x)
        rows.append(row)
    return OperatorMatrix.from_rows(rows, A.ring)


def assemble_pencil(A: OperatorMatrix, mode: str) -> OperatorMatrix:
    """``A u + Omega_eps - lam Id`` (classical) or ``A u + Omega_eps - D Id`` (quantum)."""
    if mode != A.ring:
        raise ValueError(f"cannot assemble a {mode} pencil from a {A.ring} matrix")
    n = A.n
    if mode == "quantum":
        u = UEAElement.u(n)
        spec = UEAElement.D(n)
    else:
        R = classical_ring(n)
        u, spec = R.u, R.lam
    omega = build_omega(n).as_matrix(mode)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            x = A.entries[i][j] * u + omega.entries[i][j]
            if i == j:
                x = x - spec
            row.append(x)
        rows.append(row)
    return OperatorMatrix.from_rows(rows, mode)


def build_pencil(n: int, mode: str) -> OperatorMatrix:
    return assemble_pencil(build_full_lax(n, mode), mode)


# -- open Toda chain ---------------------------------------------------------


def build_open_lax(q, p, w: float = 0.0) -> OperatorMatrix:
    """Numeric Lax matrix of the open chain with corner parameter ``w``.

    Diagonal ``-p_k``, off-diagonals ``c_k = exp((q_k - q_{k+1})/2)`` and the
    lower-left corner ``w * c_{n-1}`` with ``q_n`` read cyclically as ``q_0``.
    """
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    n = len(q)
    if n < 2 or len(p) != n:
        raise ValueError("need n >= 2 positions and momenta of equal length")
    c = np.exp((q - np.roll(q, -1)) / 2.0)
    L = np.diag(-p)
    for k in range(n - 1):
        L[k, k + 1] = c[k]
        L[k + 1, k] = c[k]
    L[n - 1, 0] += w * c[n - 1]
    return OperatorMatrix.from_rows(L.tolist(), "numeric")


def rational_matrix(rows) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def rational_inverse(g) -> list[list[Fraction]]:
    """Exact inverse by Gauss-Jordan elimination over the rationals."""
    n = len(g)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(g)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def conjugate(M: OperatorMatrix, g) -> OperatorMatrix:
    """``g M g^{-1}`` for an exact rational matrix ``g`` (central scalars)."""
    g = rational_matrix(g)
    gi = rational_inverse(g)
    n = M.n
    if len(g) != n:
        raise ValueError("size mismatch")

    def scale(x, c):
        return x * _coerce_scalar(M.ring, c)

    # (g M)_{ij} = sum_k g_ik M_kj
    gm = [[_sum([scale(M.entries[k][j], g[i][k]) for k in range(n) if g[i][k]], M, i, j) for j in range(n)] for i in range(n)]
    out = [[_sum([scale(gm[i][k], gi[k][j]) for k in range(n) if gi[k][j]], M, i, j) for j in range(n)] for i in range(n)]
    return OperatorMatrix.from_rows(out, M.ring)


def _coerce_scalar(ring: str, c: Fraction):
    if ring == "classical":
        from sympy.polys.domains import QQ

        return QQ(c.numerator, c.denominator)
    return c


def _sum(items, M, i, j):
    if not items:
        return M.entries[i][j] * 0
    out = items[0]
    for x in items[1:]:
        out = out + x
    return out


def numeric_charpoly(L: np.ndarray) -> np.ndarray:
    """Coefficients of ``det(L - lam)`` in ascending powers of ``lam``.

    Faddeev-LeVerrier recursion; for the desk-scale sizes used here it is
    accurate to roundoff and needs no eigen-decomposition.
    """
    L = np.asarray(L, dtype=float)
    n = L.shape[0]
    # det(lam - L) = lam^n + c_{n-1} lam^{n-1} + ... + c_0
    c = np.zeros(n + 1)
    c[n] = 1.0
    M = np.zeros_like(L)
    I = np.eye(n)
    for k in range(1, n + 1):
        M = L @ M + c[n - k + 1] * I
        c[n - k] = -np.trace(L @ M) / k
    # det(L - lam) = (-1)^n det(lam - L)
    return c * (-1) ** n

