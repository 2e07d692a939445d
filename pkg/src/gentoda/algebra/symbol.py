"""Classical limit of quantum elements."""

from __future__ import annotations

from .basis import mixed_basis
from .commutative import CommPoly, classical_ring
from .uea import UEAElement


def filtration_degree(key) -> int:
    """PBW degree minus the power of ``u``.

    Reordering in U(gl_n) drops one generator; reordering ``D u`` trades a
    ``D`` for an extra ``u``.  Both strictly lower this degree, while every
    product of pencil entries ``e_ij u``, ``eps^k`` and ``D`` has degree 0.
    """
    m, a, _, _ = key
    return len(m) - a


def principal_symbol(a: UEAElement) -> CommPoly:
    """Top-filtration part of ``a`` with generators replaced by coordinates.

    ``F(i,j) -> x_ij - x_ji``, ``E(i,j) -> x_ij``, ``D -> lam``; ``u`` and
    ``eps`` map to themselves.
    """
    R = classical_ring(a.n)
    if a.is_zero():
        return R.zero()
    gens = mixed_basis(a.n).generators
    images = []
    for g in gens:
        if g.kind == "E":
            images.append(R.x(g.i, g.j))
        else:
            images.append(R.x(g.i, g.j) - R.x(g.j, g.i))
    top = max(filtration_degree(k) for k in a.terms)
    out = R.zero()
    for key, c in a.terms.items():
        if filtration_degree(key) != top:
            continue
        m, ua, db, ec = key
        term = R.ring(c) * R.u**ua * R.lam**db * R.eps**ec
        for g in m:
            term *= images[g]
        out += term
    return out
