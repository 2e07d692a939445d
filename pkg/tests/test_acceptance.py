"""Acceptance criteria, one test per criterion.

Each check returns ``(ok, detail)``.  Results are collected in ``RESULTS``
and printed as one PASS/FAIL line per criterion in the pytest terminal
summary (see conftest.py); ``python tests/test_acceptance.py`` prints the
same lines directly.
"""

from __future__ import annotations

import time

import numpy as np
import pytest

from gentoda import aks, suites
from gentoda.sim import toda
from gentoda.spectral import classical_family, delta_coefficients, pairwise_commutativity, quantum_family

RESULTS: dict[str, tuple[bool, str]] = {}


def _summarize(reports) -> tuple[bool, str]:
    ok = all(r.passed for r in reports)
    parts = []
    for r in reports:
        bad = len(r.failures())
        parts.append(f"{r.name} n={r.n} {r.mode}: {len(r.pairs) - bad}/{len(r.pairs)}")
    return ok, "; ".join(parts)


def crit_classical_commutativity():
    return _summarize([pairwise_commutativity(classical_family(n)) for n in (2, 3, 4)])


def crit_quantum_commutativity():
    return _summarize([pairwise_commutativity(quantum_family(n)) for n in (2, 3)])


def crit_grading():
    return _summarize([suites.suite_grading(n) for n in (2, 3, 4)])


def crit_determinant_equivalence():
    return _summarize([suites.suite_determinant_equivalence(n, samples=50, seed=n) for n in (2, 3)])


def crit_conjugation():
    return _summarize([suites.suite_conjugation(n, samples=20, seed=n) for n in (2, 3)])


def crit_characters():
    reports = [suites.suite_characters(n, mode="classical") for n in (2, 3, 4)]
    reports += [suites.suite_characters(n, mode="quantum") for n in (2, 3)]
    return _summarize(reports)


def crit_aks_identity():
    return _summarize([aks.aks_identity_check(quantum_family(n)) for n in (2, 3)])


def crit_reduced_commutativity():
    reports = [aks.ratio_commutativity_check(aks.reduce_family(n)) for n in (2, 3)]
    reports += [aks.classical_ratio_check(n) for n in (2, 3, 4)]
    return _summarize(reports)


def crit_quantization():
    return _summarize([suites.suite_quantization(n) for n in (2, 3)])


def crit_symmetrized_match():
    return _summarize([suites.suite_symmetrized_match(n) for n in (2, 3, 4)])


def _open_chain_drift(w: float, seed: int = 2024) -> float:
    rng = np.random.default_rng(seed)
    y0 = np.concatenate([rng.uniform(-1, 1, 3), rng.uniform(-1, 1, 3)])
    traj = toda.integrate(y0, toda.open_toda_field, 1e-3, 10.0, stride=10)
    return toda.spectral_drift(traj, w).overall


def _kk_drift(seed: int = 2024) -> dict:
    n = 3
    rng = np.random.default_rng(seed)
    y0 = rng.uniform(-0.5, 0.5, n * (n + 1) // 2)
    flow = toda.KKFlow(delta_coefficients(n, 0)[1], n)
    traj = toda.integrate(y0, flow, 1e-3, 10.0, stride=10)
    inv = {f"D{k},{i}": f for k in range(n) for i, f in delta_coefficients(n, k).items()}
    return toda.invariant_drift(traj, inv).max_drift


def crit_simulation_conservation():
    open_drift = {w: _open_chain_drift(w) for w in (0.0, 1.0)}
    open_ok = all(d <= 1e-8 for d in open_drift.values())
    kk = _kk_drift()
    kk_ok = all(d <= 1e-6 for d in kk.values())
    worst = max(kk, key=kk.get)
    detail = (
        f"open chain max drift w=0: {open_drift[0.0]:.2e}, w=1: {open_drift[1.0]:.2e} (<= 1e-8: {open_ok}); "
        f"KK flow of D0,1 max drift {kk[worst]:.2e} on {worst} (<= 1e-6: {kk_ok}); "
        + ", ".join(f"{k}={v:.1e}" for k, v in sorted(kk.items()))
    )
    return open_ok and kk_ok, detail


def crit_ore():
    return _summarize([aks.ore_condition_check(aks.reduce_family(n)) for n in (2, 3)])


CRITERIA = [
    ("classical-commutativity", crit_classical_commutativity),
    ("quantum-commutativity", crit_quantum_commutativity),
    ("grading", crit_grading),
    ("determinant-equivalence", crit_determinant_equivalence),
    ("conjugation", crit_conjugation),
    ("characters", crit_characters),
    ("quantum-aks-identity", crit_aks_identity),
    ("reduced-family-commutativity", crit_reduced_commutativity),
    ("quantization-consistency", crit_quantization),
    ("symmetrized-match", crit_symmetrized_match),
    ("simulation-conservation", crit_simulation_conservation),
    ("ore-witnesses", crit_ore),
]


def run_criterion(name, fn) -> tuple[bool, str]:
    t0 = time.perf_counter()
    ok, detail = fn()
    detail = f"{detail} [{time.perf_counter() - t0:.2f}s]"
    RESULTS[name] = (ok, detail)
    return ok, detail


def format_line(name: str) -> str:
    ok, detail = RESULTS[name]
    return f"{'PASS' if ok else 'FAIL'} {name}: {detail}"


@pytest.mark.acceptance
@pytest.mark.parametrize("name,fn", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(name, fn):
    ok, detail = run_criterion(name, fn)
    print(format_line(name))
    assert ok, detail


if __name__ == "__main__":
    for name, fn in CRITERIA:
        run_criterion(name, fn)
        print(format_line(name), flush=True)
