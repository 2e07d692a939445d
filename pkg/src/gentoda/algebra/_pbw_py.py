"""Pure-Python PBW normal-ordering kernel.

A normal monomial is a nondecreasing tuple of generator indices.  Products
are expanded by the rewriting rule ``x_h x_g = x_g x_h + [x_h, x_g]`` for
``h > g``; results are integer linear combinations of normal monomials.
Returned dictionaries are cached and shared: callers must not mutate them.
"""

from __future__ import annotations

from .basis import mixed_basis


class PBWKernel:
    backend = "python"

    def __init__(self, n: int):
        self.n = n
        self._bracket = mixed_basis(n).bracket
        self._gen_memo: dict[tuple, dict] = {}
        self._mono_memo: dict[tuple, dict] = {}

    def mul_gen(self, m: tuple, g: int) -> dict[tuple, int]:
        """Normal form of ``m * x_g``."""
        if not m or m[-1] <= g:
            return {m + (g,): 1}
        key = (m, g)
        hit = self._gen_memo.get(key)
        if hit is not None:
            return hit
        head, h = m[:-1], m[-1]
        out: dict[tuple, int] = {}
        for mono, c in self.mul_gen(head, g).items():
            for mono2, c2 in self.mul_gen(mono, h).items():
                out[mono2] = out.get(mono2, 0) + c * c2
        for cg, coef in self._bracket[h][g]:
            for mono, c in self.mul_gen(head, cg).items():
                out[mono] = out.get(mono, 0) + coef * c
        out = {k: v for k, v in out.items() if v}
        self._gen_memo[key] = out
        return out

    def mul(self, m1: tuple, m2: tuple) -> dict[tuple, int]:
        """Normal form of ``m1 * m2``."""
        if not m2:
            return {m1: 1}
        if not m1 or m1[-1] <= m2[0]:
            return {m1 + m2: 1}
        key = (m1, m2)
        hit = self._mono_memo.get(key)
        if hit is not None:
            return hit
        acc: dict[tuple, int] = {m1: 1}
        for g in m2:
            nxt: dict[tuple, int] = {}
            for mono, c in acc.items():
                for mono2, c2 in self.mul_gen(mono, g).items():
                    nxt[mono2] = nxt.get(mono2, 0) + c * c2
            acc = {k: v for k, v in nxt.items() if v}
        self._mono_memo[key] = acc
        return acc
