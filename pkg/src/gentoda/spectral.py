"""Characteristic polynomials of the deformed pencil and their graded families.

The expansion of ``det(A u + Omega_eps - lam)`` splits by total degree in
``(u, lam)``.  The part of degree ``n - k`` starts at ``eps^(k(k-1)/2)``; its
leading coefficient, split by the power of ``u``, gives the entries
``I[k, i]`` (classical) or ``QI[k, i]`` (quantum) of a graded family.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .algebra.commutative import (
    CommPoly,
    borel_restrict,
    classical_ring,
    poisson_bracket,
)
from .algebra.uea import UEAElement, commutator
from .determinant import det_commutative, det_nc_permsum
from .lax import build_borel_lax, build_pencil, chop


class GradingError(RuntimeError):
    """The expansion violates the eps/homogeneity grading."""


@dataclass
class GradedFamily:
    n: int
    mode: str
    entries: dict  # (k, i) -> element, i = power of u
    leading_eps: dict = field(default_factory=dict)  # k -> leading eps exponent

    def levels(self) -> list[int]:
        return sorted({k for k, _ in self.entries})

    def level(self, k: int) -> dict:
        return {i: v for (kk, i), v in sorted(self.entries.items()) if kk == k}

    def top_index(self, k: int) -> int:
        """u-power of the entry carrying the highest power of lam (or D)."""
        idx = [i for (kk, i) in self.entries if kk == k]
        if not idx:
            raise KeyError(f"level {k} is empty")
        return min(idx)

    def top(self, k: int):
        return self.entries[(k, self.top_index(k))]

    def keys(self) -> list[tuple[int, int]]:
        return sorted(self.entries)


@lru_cache(maxsize=None)
def classical_charpoly(n: int) -> CommPoly:
    """Expanded ``det(A u + Omega_eps - lam Id)`` over ``QQ[x, lam, eps, u]``."""
    return det_commutative(build_pencil(n, "classical"))


@lru_cache(maxsize=None)
def quantum_charpoly(n: int) -> UEAElement:
    """Symmetrized determinant of ``A u + Omega_eps - D Id``, normal-ordered."""
    return det_nc_permsum(build_pencil(n, "quantum"))


def _classical_terms(P: CommPoly, n: int):
    R = classical_ring(n)
    nn = n * n
    for mon, c in P.items():
        yield mon[R.u_index], mon[R.lam_index], mon[R.eps_index], mon[:nn], c


def extract_family(P, n: int, mode: str | None = None) -> GradedFamily:
    """Group by ``(u, lam)``-degree and keep each group's leading eps part.

    Raises ``GradingError`` if a group's leading eps exponent differs from
    ``k(k-1)/2`` or the degree range is not ``0..n``.
    """
    if mode is None:
        mode = "quantum" if isinstance(P, UEAElement) else "classical"
    groups: dict[int, list] = {}
    if mode == "classical":
        R = classical_ring(n)
        for a, b, c, xs, coef in _classical_terms(P, n):
            if sum(xs) != a:
                raise GradingError("coordinate degree differs from the power of u")
            groups.setdefault(a + b, []).append((a, b, c, xs, coef))
    else:
        for (m, a, b, c), coef in P.terms.items():
            if len(m) > a:
                raise GradingError("PBW degree exceeds the power of u")
            groups.setdefault(a + b, []).append((a, b, c, m, coef))
    if any(d < 0 or d > n for d in groups):
        raise GradingError(f"(u, lam)-degrees {sorted(groups)} outside 0..{n}")
    entries: dict = {}
    leading: dict = {}
    for d, terms in sorted(groups.items()):
        k = n - d
        lead = min(t[2] for t in terms)
        leading[k] = lead
        if lead != k * (k - 1) // 2:
            raise GradingError(f"level {k}: leading eps exponent {lead}, expected {k * (k - 1) // 2}")
        parts: dict[int, dict] = {}
        for a, b, c, m, coef in terms:
            if c == lead:
                parts.setdefault(a, {})[m] = parts.setdefault(a, {}).get(m, 0) + coef
        for i, coeffs in parts.items():
            if mode == "classical":
                pad = (0, 0, 0)
                el = R.ring.from_dict({tuple(m) + pad: v for m, v in coeffs.items() if v})
            else:
                el = UEAElement(n, {(m, 0, 0, 0): v for m, v in coeffs.items()})
            if el:
                entries[(k, i)] = el
    missing = [k for k in range(n + 1) if k not in leading]
    if missing:
        raise GradingError(f"levels {missing} absent from the expansion")
    return GradedFamily(n=n, mode=mode, entries=entries, leading_eps=leading)


@lru_cache(maxsize=None)
def classical_family(n: int) -> GradedFamily:
    return extract_family(classical_charpoly(n), n, "classical")


@lru_cache(maxsize=None)
def quantum_family(n: int) -> GradedFamily:
    return extract_family(quantum_charpoly(n), n, "quantum")


def family(n: int, mode: str) -> GradedFamily:
    if mode == "classical":
        return classical_family(n)
    if mode == "quantum":
        return quantum_family(n)
    raise ValueError(f"mode must be classical or quantum, got {mode!r}")


def leading_part(F: GradedFamily, k: int, lam_value=None) -> CommPoly:
    """``I_k^0(u, lam) = sum_i I[k, i] u^i lam^(n-k-i)``; ``u`` set to 1 on request."""
    if F.mode != "classical":
        raise ValueError("leading_part is defined for classical families")
    R = classical_ring(F.n)
    out = R.zero()
    d = F.n - k
    for i, v in F.level(k).items():
        out += v * R.lam ** (d - i) * (R.u**i if lam_value is None else 1)
    return out


# -- chopped Borel minors ------------------------------------------------------


@lru_cache(maxsize=None)
def delta_k(n: int, k: int) -> CommPoly:
    """``det`` of the Borel Lax matrix minus ``lam``, chopped ``k`` times."""
    return det_commutative(chop(build_borel_lax(n), k))


def delta_coefficients(n: int, k: int) -> dict[int, CommPoly]:
    """``{i: Delta[k, i]}`` with ``Delta_k(lam) = sum_i Delta[k, i] lam^i``."""
    R = classical_ring(n)
    out: dict[int, dict] = {}
    for mon, c in delta_k(n, k).items():
        i = mon[R.lam_index]
        key = list(mon)
        key[R.lam_index] = 0
        out.setdefault(i, {})[tuple(key)] = c
    return {i: R.ring.from_dict(v) for i, v in sorted(out.items())}


def symmetrized_match(n: int, k: int) -> tuple[bool, int]:
    """Compare the Borel projection of ``I_k^0(1, lam)`` with ``Delta_k(lam)``.

    Returns ``(match, sign)`` where ``sign`` is fixed by the leading
    lam-coefficients.
    """
    if not 0 <= k <= n - 1:
        raise ValueError(f"k must lie in [0, {n - 1}]")
    lhs = borel_restrict(leading_part(classical_family(n), k, lam_value=1))
    rhs = delta_k(n, k)
    R = classical_ring(n)
    if not lhs or not rhs:
        return (lhs == rhs, 1)

    def lead(p):
        top = max(m[R.lam_index] for m in p.keys())
        return top, {m: c for m, c in p.items() if m[R.lam_index] == top}

    (tl, cl), (tr, cr) = lead(lhs), lead(rhs)
    if tl != tr:
        return (False, 1)
    m0 = max(cl)
    if m0 not in cr:
        return (False, 1)
    sign = 1 if cl[m0] == cr[m0] else -1
    return (lhs == rhs * sign, sign)


# -- commutativity -------------------------------------------------------------


@dataclass
class PairResult:
    a: tuple
    b: tuple
    ok: bool
    residual: str


@dataclass
class Report:
    name: str
    n: int
    mode: str
    pairs: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def status(self) -> str:
        return "pass" if all(p.ok for p in self.pairs) else "fail"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def failures(self) -> list:
        return [p for p in self.pairs if not p.ok]

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "n": self.n,
            "mode": self.mode,
            "status": self.status,
            "pairs": [
                {"a": list(p.a), "b": list(p.b), "ok": p.ok, "residual": p.residual} for p in self.pairs
            ],
            "notes": list(self.notes),
        }


def bracket(F: GradedFamily, a, b):
    if F.mode == "classical":
        return poisson_bracket(a, b)
    return commutator(a, b)


def pairwise_commutativity(F: GradedFamily) -> Report:
    """Bracket every pair of family entries; every residual must vanish."""
    report = Report("poisson-commutativity" if F.mode == "classical" else "quantum-commutativity", F.n, F.mode)
    keys = F.keys()
    for x in range(len(keys)):
        for y in range(x + 1, len(keys)):
            r = bracket(F, F.entries[keys[x]], F.entries[keys[y]])
            report.pairs.append(PairResult(keys[x], keys[y], not r, "0" if not r else str(r)))
    return report
