"""Mixed PBW basis of gl_n.

Generators are ``F(i, j) = e_ij - e_ji`` for ``i < j`` (a basis of so_n) and
``E(i, j) = e_ij`` for ``i >= j`` (a basis of the lower Borel subalgebra).
The global order puts every F before every E, lexicographic on ``(i, j)``
inside each group.  With that order a normal monomial lies in U(b) exactly
when its first factor is an E.

Indices are 1-based to match the usual matrix-unit notation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True, order=True)
class MixedGenerator:
    kind: str  # "F" or "E"
    i: int
    j: int

    def __post_init__(self):
        if self.kind == "F":
            if not self.i < self.j:
                raise ValueError(f"F({self.i},{self.j}) needs i < j")
        elif self.kind == "E":
            if not self.i >= self.j:
                raise ValueError(f"E({self.i},{self.j}) needs i >= j")
        else:
            raise ValueError(f"unknown generator kind {self.kind!r}")

    def __str__(self):
        return f"{self.kind}{self.i}{self.j}"


class MixedBasis:
    """Index bookkeeping and structure constants for rank ``n``."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("rank must be >= 1")
        self.n = n
        f_gens = [MixedGenerator("F", i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        e_gens = [MixedGenerator("E", i, j) for i in range(1, n + 1) for j in range(1, i + 1)]
        self.generators: tuple[MixedGenerator, ...] = tuple(f_gens + e_gens)
        self.num_f = len(f_gens)
        self.index = {g: k for k, g in enumerate(self.generators)}
        self.size = len(self.generators)
        # bracket[h][g] = ((c, coef), ...) with [x_h, x_g] = sum coef * x_c
        self.bracket = tuple(
            tuple(self._bracket(h, g) for g in self.generators) for h in self.generators
        )

    # -- conversions between the raw basis e_ij and the mixed basis --------

    def raw(self, i: int, j: int) -> dict[int, int]:
        """``e_ij`` as ``{generator index: coefficient}``."""
        if i >= j:
            return {self.index[MixedGenerator("E", i, j)]: 1}
        return {
            self.index[MixedGenerator("F", i, j)]: 1,
            self.index[MixedGenerator("E", j, i)]: 1,
        }

    def to_raw(self, g: MixedGenerator) -> dict[tuple[int, int], int]:
        if g.kind == "E":
            return {(g.i, g.j): 1}
        return {(g.i, g.j): 1, (g.j, g.i): -1}

    def _bracket(self, h: MixedGenerator, g: MixedGenerator):
        raw: dict[tuple[int, int], int] = {}
        for (a, b), c1 in self.to_raw(h).items():
            for (c, d), c2 in self.to_raw(g).items():
                # [e_ab, e_cd] = d_bc e_ad - d_da e_cb
                if b == c:
                    raw[(a, d)] = raw.get((a, d), 0) + c1 * c2
                if d == a:
                    raw[(c, b)] = raw.get((c, b), 0) - c1 * c2
        out: dict[int, int] = {}
        for (i, j), c in raw.items():
            if c:
                for k, v in self.raw(i, j).items():
                    out[k] = out.get(k, 0) + c * v
        return tuple(sorted((k, v) for k, v in out.items() if v))

    def is_borel(self, index: int) -> bool:
        return index >= self.num_f


@lru_cache(maxsize=None)
def mixed_basis(n: int) -> MixedBasis:
    return MixedBasis(n)
