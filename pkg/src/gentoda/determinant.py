"""Commutative and symmetrized noncommutative determinants.

The noncommutative determinant is

    det B = 1/n! * sum_{tau, sigma} sgn(tau) sgn(sigma) B[tau1, sigma1] ... B[taun, sigman]

with factors kept in position order.  ``det_nc_antisym`` computes the same
quantity as ``Tr(A_n B_1 ... B_n)`` over the n-fold tensor power and is
used as an independent oracle.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .lax import OperatorMatrix, conjugate


def permutation_sign(perm) -> int:
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def _zero_like(M: OperatorMatrix):
    return M.entries[0][0] * 0


def det_commutative(M: OperatorMatrix):
    """Leibniz expansion over one permutation sum."""
    if M.ring == "quantum":
        raise TypeError("use det_nc_permsum for noncommutative entries")
    n = M.n
    total = None
    for sigma in itertools.permutations(range(n)):
        term = None
        for i in range(n):
            x = M.entries[i][sigma[i]]
            if not x:
                term = None
                break
            term = x if term is None else term * x
        if term is None:
            continue
        term = term if permutation_sign(sigma) > 0 else -term
        total = term if total is None else total + term
    if total is None:
        return _zero_like(M)
    return total


def _row_ordered_sum(M: OperatorMatrix, rows: tuple, memo: dict):
    """``sum_sigma sgn(sigma) M[rows0, sigma0] ... M[rows_{n-1}, sigma_{n-1}]``.

    Laplace expansion from the left: the suffix sums over the remaining
    columns are shared between every row order with the same suffix.
    """
    n = M.n

    def suffix(pos: int, cols: tuple):
        key = (rows[pos:], cols)
        hit = memo.get(key)
        if hit is not None:
            return hit
        r = rows[pos]
        if pos == n - 1:
            out = M.entries[r][cols[0]]
        else:
            out = None
            for idx, c in enumerate(cols):
                x = M.entries[r][c]
                if not x:
                    continue
                rest = suffix(pos + 1, cols[:idx] + cols[idx + 1 :])
                if not rest:
                    continue
                t = x * rest
                if idx % 2:
                    t = -t
                out = t if out is None else out + t
            if out is None:
                out = _zero_like(M)
        memo[key] = out
        return out

    return suffix(0, tuple(range(n)))


def _partial_permsum(M: OperatorMatrix, taus: list):
    memo: dict = {}
    total = None
    for tau in taus:
        s = _row_ordered_sum(M, tau, memo)
        if permutation_sign(tau) < 0:
            s = -s
        total = s if total is None else total + s
    return total


def det_nc_permsum(M: OperatorMatrix, workers: int = 1):
    """Symmetrized determinant, summed over row orders ``tau``.

    For each ``tau`` the inner sum over ``sigma`` is a Laplace expansion that
    keeps every product in position order, so the result is the double
    permutation sum term for term.  ``workers > 1`` partitions the ``tau``
    set across processes; partial sums are added back in a fixed order.
    """
    n = M.n
    taus = list(itertools.permutations(range(n)))
    if workers <= 1 or len(taus) < 2:
        total = _partial_permsum(M, taus)
    else:
        chunks = [taus[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_partial_permsum, [M] * len(chunks), chunks))
        total = None
        for p in parts:
            if p is not None:
                total = p if total is None else total + p
    if total is None:
        return _zero_like(M)
    return total * Fraction(1, math.factorial(n))


def antisymmetrizer(n: int) -> dict:
    """Sparse matrix of ``A_n`` on ``(C^n)^{(x)n}``: ``{(r, c): coefficient}``.

    ``A_n e_c = 1/n! sum_sigma sgn(sigma) e_{c o sigma}``.
    """
    out: dict = {}
    perms = [(s, permutation_sign(s)) for s in itertools.permutations(range(n))]
    scale = Fraction(1, math.factorial(n))
    for c in itertools.product(range(n), repeat=n):
        for sigma, sgn in perms:
            r = tuple(c[sigma[k]] for k in range(n))
            out[(r, c)] = out.get((r, c), 0) + sgn * scale
    return {k: v for k, v in out.items() if v}


def det_nc_antisym(M: OperatorMatrix):
    """``Tr_{1..n} A_n B_1 ... B_n`` computed over the full tensor basis.

    ``<e_c| B_1 ... B_n |e_r> = B[c1, r1] ... B[cn, rn]`` and the trace pairs
    it with ``A_n[r, c]``.
    """
    n = M.n
    total = None
    for (r, c), coef in antisymmetrizer(n).items():
        term = None
        for k in range(n):
            x = M.entries[c[k]][r[k]]
            if not x:
                term = None
                break
            term = x if term is None else term * x
        if term is None:
            continue
        term = term * coef
        total = term if total is None else total + term
    if total is None:
        return _zero_like(M)
    return total


def conjugation_check(M: OperatorMatrix, g) -> bool:
    """Whether ``det(g M g^{-1}) == det(M)`` exactly."""
    try:
        conj = conjugate(M, g)
    except ZeroDivisionError as exc:
        raise ValueError("g is singular") from exc
    return det_nc_permsum(conj) == det_nc_permsum(M)
