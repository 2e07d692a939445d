"""Commutative polynomials on gl_n^* and the Kirillov-Kostant bracket.

Polynomials live in sympy's sparse ring ``QQ[x_i_j, lam, eps, u]`` (one ring
per rank).  The spectral variables ``lam``, ``eps`` and ``u`` are central for
the bracket.
"""

from __future__ import annotations

from functools import lru_cache

from sympy.polys.domains import QQ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, PolyRing

CommPoly = PolyElement

SPECTRAL = ("lam", "eps", "u")


class ClassicalRing:
    """``QQ[x_ij (1<=i,j<=n), lam, eps, u]`` with index helpers."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("rank must be >= 1")
        self.n = n
        names = [f"x_{i}_{j}" for i in range(1, n + 1) for j in range(1, n + 1)]
        self.ring = PolyRing(names + list(SPECTRAL), QQ, lex)
        gens = self.ring.gens
        self._x = gens[: n * n]
        self.lam, self.eps, self.u = gens[n * n :]
        self.lam_index = n * n
        self.eps_index = n * n + 1
        self.u_index = n * n + 2

    def x(self, i: int, j: int) -> CommPoly:
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise ValueError(f"x_{i}{j} out of range for gl_{self.n}")
        return self._x[(i - 1) * self.n + (j - 1)]

    def x_index(self, i: int, j: int) -> int:
        return (i - 1) * self.n + (j - 1)

    def var_label(self, index: int) -> tuple:
        """``("x", i, j)`` for coordinates, ``(name,)`` for spectral variables."""
        nn = self.n * self.n
        if index < nn:
            return ("x", index // self.n + 1, index % self.n + 1)
        return (SPECTRAL[index - nn],)

    def zero(self) -> CommPoly:
        return self.ring.zero

    def one(self) -> CommPoly:
        return self.ring.one

    def from_scalar(self, c) -> CommPoly:
        return self.ring(QQ.convert(c)) if not isinstance(c, PolyElement) else c


@lru_cache(maxsize=None)
def classical_ring(n: int) -> ClassicalRing:
    return ClassicalRing(n)


def rank_of(f: CommPoly) -> int:
    """Rank ``n`` of the classical ring that ``f`` belongs to."""
    nvars = f.ring.ngens - len(SPECTRAL)
    n = int(round(nvars ** 0.5))
    if n * n != nvars or classical_ring(n).ring != f.ring:
        raise ValueError("polynomial is not in a classical gl_n ring")
    return n


def poisson_bracket(f: CommPoly, g: CommPoly) -> CommPoly:
    """Kirillov-Kostant bracket ``{x_ab, x_cd} = d_bc x_ad - d_da x_cb``.

    Computed as ``sum_ij x_ij [df, dg]_ij`` where ``df`` is the matrix of
    partial derivatives in the coordinates.
    """
    if f.ring != g.ring:
        raise ValueError("rank mismatch between polynomials")
    n = rank_of(f)
    R = classical_ring(n)
    zero = R.ring.zero
    df = [[f.diff(R.x(i, j)) for j in range(1, n + 1)] for i in range(1, n + 1)]
    dg = [[g.diff(R.x(i, j)) for j in range(1, n + 1)] for i in range(1, n + 1)]
    out = zero
    for i in range(n):
        for j in range(n):
            acc = zero
            for k in range(n):
                if df[i][k] and dg[k][j]:
                    acc += df[i][k] * dg[k][j]
                if dg[i][k] and df[k][j]:
                    acc -= dg[i][k] * df[k][j]
            if acc:
                out += R.x(i + 1, j + 1) * acc
    return out


def coordinate_action(i: int, j: int, f: CommPoly) -> CommPoly:
    """Coadjoint action of the generator ``e_ij``: ``{x_ij, f}``."""
    R = classical_ring(rank_of(f))
    return poisson_bracket(R.x(i, j), f)


def borel_restrict(f: CommPoly) -> CommPoly:
    """Substitute ``x_ij -> x_ji`` for ``i < j``.

    Writing ``e_ij = F(i,j) + E(j,i)`` and dropping the so_n part sends each
    upper coordinate to its lower mirror, so this is the S(b) projection.
    """
    n = rank_of(f)
    R = classical_ring(n)
    perm = list(range(R.ring.ngens))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            perm[R.x_index(i, j)] = R.x_index(j, i)
    out = {}
    for mon, c in f.items():
        new = [0] * len(mon)
        for idx, e in enumerate(mon):
            if e:
                new[perm[idx]] += e
        key = tuple(new)
        out[key] = out.get(key, 0) + c
    return R.ring.from_dict({k: v for k, v in out.items() if v})


def involves_upper(f: CommPoly) -> bool:
    n = rank_of(f)
    R = classical_ring(n)
    upper = [R.x_index(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return any(mon[k] for mon in f.keys() for k in upper)
