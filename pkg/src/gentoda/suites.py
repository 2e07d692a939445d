"""Named verification suites returning ``Report`` objects.

Each suite is deterministic: random samples come from a seeded numpy
generator and are converted to exact rationals before use.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import aks
from .algebra.symbol import principal_symbol
from .algebra.uea import UEAElement
from .determinant import conjugation_check, det_nc_antisym, det_nc_permsum
from .lax import OperatorMatrix, build_pencil, rational_inverse
from .spectral import (
    GradingError,
    PairResult,
    Report,
    classical_family,
    extract_family,
    classical_charpoly,
    quantum_charpoly,
    quantum_family,
    pairwise_commutativity,
    symmetrized_match,
)

MODES = ("classical", "quantum")


def random_linear_matrix(n: int, rng: np.random.Generator, density: float = 0.6) -> OperatorMatrix:
    """Matrix with entries ``c + sum a_ij e_ij`` (small integer coefficients)."""
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            x = UEAElement.scalar(n, int(rng.integers(-2, 3)))
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    if rng.random() < density / n:
                        x = x + UEAElement.e(n, i, j) * int(rng.integers(-2, 3))
            row.append(x)
        rows.append(row)
    return OperatorMatrix.from_rows(rows, "quantum")


def random_rational_matrix(n: int, rng: np.random.Generator) -> list[list[Fraction]]:
    """Invertible matrix with entries ``p/q``, ``|p| <= 5``, ``1 <= q <= 4``."""
    while True:
        g = [[Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 5))) for _ in range(n)] for _ in range(n)]
        try:
            rational_inverse(g)
        except ZeroDivisionError:
            continue
        return g


def _pair(a, b, ok, residual="0"):
    return PairResult(tuple(a), tuple(b), bool(ok), residual if not ok else "0")


def suite_poisson_commutativity(n: int, **_) -> Report:
    return pairwise_commutativity(classical_family(n))


def suite_quantum_commutativity(n: int, **_) -> Report:
    return pairwise_commutativity(quantum_family(n))


def suite_grading(n: int, mode: str | None = None, **_) -> Report:
    """Re-extract each family and compare eps-exponents and degrees per level."""
    report = Report("grading", n, mode or "both")
    for m in MODES if mode is None else (mode,):
        P = classical_charpoly(n) if m == "classical" else quantum_charpoly(n)
        try:
            F = extract_family(P, n, m)
        except GradingError as exc:
            report.pairs.append(_pair((m,), ("extract",), False, str(exc)))
            continue
        for k in range(n + 1):
            lead = F.leading_eps.get(k)
            ok = lead == k * (k - 1) // 2 and bool(F.level(k))
            report.pairs.append(_pair((m, k), ("eps", lead), ok, f"leading eps {lead}"))
    return report


def suite_symmetrized_match(n: int, **_) -> Report:
    report = Report("symmetrized-match", n, "classical")
    for k in range(n):
        ok, sign = symmetrized_match(n, k)
        report.pairs.append(_pair((k,), ("sign", sign), ok, "mismatch"))
        report.notes.append(f"k={k}: sign {sign:+d}")
    return report


def suite_determinant_equivalence(n: int, samples: int = 50, seed: int = 0, **_) -> Report:
    """Permutation-sum versus antisymmetrizer trace on the pencil and random matrices."""
    report = Report("determinant-equivalence", n, "quantum")
    M = build_pencil(n, "quantum")
    a, b = det_nc_permsum(M), det_nc_antisym(M)
    report.pairs.append(_pair(("pencil",), ("antisym",), a == b, str(a - b)))
    rng = np.random.default_rng(seed)
    for s in range(samples):
        M = random_linear_matrix(n, rng)
        a, b = det_nc_permsum(M), det_nc_antisym(M)
        report.pairs.append(_pair(("random", s), ("antisym",), a == b, str(a - b)))
    return report


def suite_conjugation(n: int, samples: int = 20, seed: int = 0, **_) -> Report:
    report = Report("conjugation", n, "quantum")
    rng = np.random.default_rng(seed)
    M = build_pencil(n, "quantum")
    for s in range(samples):
        g = random_rational_matrix(n, rng)
        ok = conjugation_check(M, g)
        report.pairs.append(_pair(("g", s), ("pencil",), ok, "det changed under conjugation"))
    return report


def suite_characters(n: int, mode: str | None = None, **_) -> Report:
    """Characters by direct action; compared with the closed form and on brackets."""
    report = Report("characters", n, mode or "both")
    gens = aks.borel_generators(n)
    for m in MODES if mode is None else (mode,):
        F = classical_family(n) if m == "classical" else quantum_family(n)
        for k in F.levels():
            try:
                chi = aks.compute_character(F, k)
            except aks.CharacterError as exc:
                report.pairs.append(_pair((m, k), ("proportional",), False, str(exc)))
                continue
            report.pairs.append(_pair((m, k), ("proportional",), True))
            lower = [g for g in gens if g.i > g.j and chi(g) != 0]
            report.pairs.append(_pair((m, k), ("unipotent",), not lower, f"nonzero on {lower}"))
            integral = all(chi(g).denominator == 1 for g in gens if g.i == g.j)
            report.pairs.append(_pair((m, k), ("cartan-integral",), integral, "non-integer Cartan value"))
            expected = aks.expected_character(n, k)
            same = all(chi(g) == expected(g) for g in gens)
            report.pairs.append(_pair((m, k), ("closed-form",), same, str(chi.to_dict())))
            derived = [(X, Y) for X in gens for Y in gens if aks.character_on_bracket(n, chi, X, Y) != 0]
            report.pairs.append(_pair((m, k), ("derived-algebra",), not derived, f"nonzero on {derived[:3]}"))
            if m == "classical":
                scal = ", ".join(f"a={g.i}: exp({chi(g)}t)-1" for g in gens if g.i == g.j)
                report.notes.append(f"k={k}: exp(t E_aa) rescales the level by exp(chi t); correction {scal}")
    return report


def suite_aks_identity(n: int, **_) -> Report:
    return aks.aks_identity_check(quantum_family(n))


def suite_ratio_commutativity(n: int, **_) -> Report:
    rep = aks.ratio_commutativity_check(aks.reduce_family(n))
    cl = aks.classical_ratio_check(n)
    for p in cl.pairs:
        rep.pairs.append(PairResult(("classical",) + tuple(p.a), ("classical",) + tuple(p.b), p.ok, p.residual))
    return rep


def suite_ore(n: int, **_) -> Report:
    return aks.ore_condition_check(aks.reduce_family(n))


def suite_parabolic(n: int, **_) -> Report:
    report = Report("parabolic", n, "classical")
    for k in range(n):
        r = aks.parabolic_invariance_check(n, k)
        report.pairs += r.pairs
        report.notes += [f"k={k}: {note}" for note in r.notes]
    return report


def suite_quantization(n: int, **_) -> Report:
    """``principal_symbol(QI[k, i]) == I[k, i]`` for every entry."""
    report = Report("quantization", n, "quantum")
    Q, C = quantum_family(n), classical_family(n)
    for key in sorted(set(Q.keys()) | set(C.keys())):
        if key not in Q.entries or key not in C.entries:
            report.pairs.append(_pair(key, ("present",), False, "entry missing in one family"))
            continue
        s = principal_symbol(Q.entries[key])
        ok = s == C.entries[key]
        report.pairs.append(_pair(key, ("symbol",), ok, str(s - C.entries[key])))
    return report


SUITES = {
    "poisson-commutativity": suite_poisson_commutativity,
    "quantum-commutativity": suite_quantum_commutativity,
    "grading": suite_grading,
    "symmetrized-match": suite_symmetrized_match,
    "determinant-equivalence": suite_determinant_equivalence,
    "conjugation": suite_conjugation,
    "characters": suite_characters,
    "aks-identity": suite_aks_identity,
    "ratio-commutativity": suite_ratio_commutativity,
    "ore": suite_ore,
    "parabolic": suite_parabolic,
    "quantization": suite_quantization,
}

# suites whose cost is dominated by the quantum expansion
QUANTUM_SUITES = {
    "quantum-commutativity",
    "determinant-equivalence",
    "conjugation",
    "aks-identity",
    "ratio-commutativity",
    "ore",
    "quantization",
}


def run_suite(name: str, n: int, **kwargs) -> Report:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}") from None
    return fn(n, **kwargs)


def cost_estimate(n: int) -> int:
    """Number of ordered factor products in the symmetrized expansion."""
    return math.factorial(n) ** 2
