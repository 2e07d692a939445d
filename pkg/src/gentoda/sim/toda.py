"""Open Toda chain and Kirillov-Kostant flows on b*, with drift monitoring.

State vectors are flat numpy arrays: ``[q, p]`` for the chain and the lower
coordinates ``x_ij`` (``i >= j``, row-major) for points of b*.  Polynomial
invariants are compiled once to exponent/coefficient arrays and evaluated in
double precision inside the time loop.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from ..algebra.commutative import CommPoly, classical_ring, involves_upper, poisson_bracket, rank_of
from ..lax import build_open_lax, numeric_charpoly


class SimulationError(RuntimeError):
    """The integrator met a non-finite state."""

    def __init__(self, message: str, last_good_time: float):
        super().__init__(f"{message} (last good time {last_good_time:.6g})")
        self.last_good_time = last_good_time


# -- open chain ----------------------------------------------------------------


@dataclass
class OpenChainState:
    q: np.ndarray
    p: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        self.q = np.asarray(self.q, dtype=float)
        self.p = np.asarray(self.p, dtype=float)
        if self.q.shape != self.p.shape or self.q.ndim != 1:
            raise ValueError("q and p must be 1-d arrays of equal length")
        if not (np.all(np.isfinite(self.q)) and np.all(np.isfinite(self.p))):
            raise ValueError("state must be finite")

    @property
    def n(self) -> int:
        return len(self.q)

    def vector(self) -> np.ndarray:
        return np.concatenate([self.q, self.p])

    @classmethod
    def from_vector(cls, y, t: float = 0.0) -> "OpenChainState":
        y = np.asarray(y, dtype=float)
        n = len(y) // 2
        return cls(y[:n], y[n:], t)


def open_toda_energy(q, p) -> float:
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    with np.errstate(over="raise"):
        return float(0.5 * p @ p + np.exp(q[:-1] - q[1:]).sum())


def open_toda_rhs(s: OpenChainState) -> tuple[np.ndarray, np.ndarray]:
    """``(dq, dp)`` for ``H = sum p^2/2 + sum exp(q_k - q_{k+1})``."""
    try:
        with np.errstate(over="raise", invalid="raise"):
            f = np.exp(s.q[:-1] - s.q[1:])
    except FloatingPointError as exc:
        raise OverflowError("exponential overflow in the open chain force") from exc
    dp = np.zeros_like(s.p)
    dp[1:] += f
    dp[:-1] -= f
    return s.p.copy(), dp


def open_toda_field(y: np.ndarray, t: float = 0.0) -> np.ndarray:
    dq, dp = open_toda_rhs(OpenChainState.from_vector(y, t))
    return np.concatenate([dq, dp])


# -- integrator ----------------------------------------------------------------


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # (samples, dim)


def integrate(y0, rhs, dt: float, T: float, stride: int = 1, method: str = "rk4") -> Trajectory:
    """Fixed-step classical RK4 from 0 to ``T``; keeps every ``stride``-th step.

    ``T`` is rounded to a whole number of steps.  A negative ``dt`` runs
    backward in time with ``T`` still positive.
    """
    if method.lower() != "rk4":
        raise ValueError(f"unsupported method {method!r}")
    if dt == 0 or not np.isfinite(dt):
        raise ValueError("dt must be finite and nonzero")
    if T <= 0:
        raise ValueError("T must be positive")
    if stride < 1:
        raise ValueError("stride must be >= 1")
    steps = int(round(T / abs(dt)))
    y = np.array(y0, dtype=float)
    if not np.all(np.isfinite(y)):
        raise SimulationError("non-finite initial state", 0.0)
    times = [0.0]
    states = [y.copy()]
    t = 0.0
    for step in range(1, steps + 1):
        try:
            k1 = rhs(y, t)
            k2 = rhs(y + 0.5 * dt * k1, t + 0.5 * dt)
            k3 = rhs(y + 0.5 * dt * k2, t + 0.5 * dt)
            k4 = rhs(y + dt * k3, t + dt)
        except (OverflowError, FloatingPointError) as exc:
            raise SimulationError(str(exc), t) from exc
        y_new = y + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(y_new)):
            raise SimulationError("state became non-finite", t)
        y = y_new
        t = step * dt
        if step % stride == 0 or step == steps:
            times.append(t)
            states.append(y.copy())
    return Trajectory(np.array(times), np.array(states))


# -- drift ---------------------------------------------------------------------


@dataclass
class DriftReport:
    times: np.ndarray
    series: dict  # name -> values over time
    max_drift: dict = field(default_factory=dict)

    @classmethod
    def from_series(cls, times, series: dict) -> "DriftReport":
        drift = {}
        for name, v in series.items():
            v = np.asarray(v, dtype=float)
            drift[name] = float(np.max(np.abs(v - v[0])) / max(abs(v[0]), 1.0))
        return cls(np.asarray(times), {k: np.asarray(v) for k, v in series.items()}, drift)

    @property
    def overall(self) -> float:
        return max(self.max_drift.values(), default=0.0)

    def relative(self, name: str) -> np.ndarray:
        v = self.series[name]
        return np.abs(v - v[0]) / max(abs(v[0]), 1.0)

    def to_dict(self) -> dict:
        return {
            "samples": int(len(self.times)),
            "t_end": float(self.times[-1]) if len(self.times) else 0.0,
            "max_drift": {k: self.max_drift[k] for k in sorted(self.max_drift)},
            "max_drift_overall": self.overall,
            "initial": {k: float(self.series[k][0]) for k in sorted(self.series)},
        }


def spectral_drift(traj: Trajectory, w: float = 0.0) -> DriftReport:
    """Drift of the coefficients of ``det(L(w) - lam)`` along a chain trajectory."""
    n = traj.states.shape[1] // 2
    coeffs = []
    for y in traj.states:
        L = build_open_lax(y[:n], y[n:], w).to_numpy()
        coeffs.append(numeric_charpoly(L))
    coeffs = np.array(coeffs)
    series = {f"c{i}": coeffs[:, i] for i in range(n + 1)}
    return DriftReport.from_series(traj.times, series)


# -- Kirillov-Kostant flows on b* ----------------------------------------------


def borel_coordinates(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(1, i + 1)]


@dataclass
class BorelPoint:
    values: dict  # (i, j) -> float, i >= j
    t: float = 0.0

    def __post_init__(self):
        for (i, j), v in self.values.items():
            if i < j:
                raise ValueError(f"x_{i}{j} is not a Borel coordinate")
            if not np.isfinite(v):
                raise ValueError("point must be finite")

    @property
    def n(self) -> int:
        return max(i for i, _ in self.values)

    def vector(self) -> np.ndarray:
        return np.array([self.values.get(c, 0.0) for c in borel_coordinates(self.n)])

    @classmethod
    def from_vector(cls, n: int, y, t: float = 0.0) -> "BorelPoint":
        return cls({c: float(v) for c, v in zip(borel_coordinates(n), y)}, t)


class CompiledPoly:
    """Evaluate a polynomial in the Borel coordinates on a flat state vector."""

    def __init__(self, f: CommPoly, n: int | None = None):
        n = rank_of(f) if n is None else n
        R = classical_ring(n)
        coords = borel_coordinates(n)
        cols = [R.x_index(i, j) for i, j in coords]
        allowed = set(cols)
        exps, coefs = [], []
        for mon, c in f.items():
            if any(e and idx not in allowed for idx, e in enumerate(mon)):
                raise ValueError("polynomial involves upper coordinates or spectral variables")
            exps.append([mon[k] for k in cols])
            coefs.append(float(c.numerator) / float(c.denominator) if hasattr(c, "numerator") else float(c))
        self.exps = np.array(exps, dtype=float).reshape(len(exps), len(cols))
        self.coefs = np.array(coefs, dtype=float)

    def __call__(self, y: np.ndarray) -> float:
        if not len(self.coefs):
            return 0.0
        return float(self.coefs @ np.prod(np.power(y, self.exps), axis=1))


class KKFlow:
    """Hamiltonian vector field ``dx/dt = {H, x}`` on b*, compiled once."""

    def __init__(self, H: CommPoly, n: int | None = None):
        n = rank_of(H) if n is None else n
        if involves_upper(H):
            raise ValueError("Hamiltonian must only use coordinates x_ij with i >= j")
        R = classical_ring(n)
        self.n = n
        self.H = H
        self.coords = borel_coordinates(n)
        self.components = [CompiledPoly(poisson_bracket(H, R.x(i, j)), n) for i, j in self.coords]

    def __call__(self, y: np.ndarray, t: float = 0.0) -> np.ndarray:
        return np.array([c(y) for c in self.components])


def kk_flow_rhs(H: CommPoly, s: BorelPoint) -> dict:
    """``{(i, j): {H, x_ij}(s)}`` for every Borel coordinate."""
    flow = KKFlow(H, s.n)
    return dict(zip(flow.coords, flow(s.vector()).tolist()))


def invariant_drift(traj: Trajectory, invariants: dict) -> DriftReport:
    """Evaluate each ``name -> CommPoly`` along a b* trajectory."""
    n = _rank_from_dim(traj.states.shape[1])
    compiled = {name: CompiledPoly(f, n) for name, f in invariants.items()}
    series = {name: np.array([c(y) for y in traj.states]) for name, c in compiled.items()}
    return DriftReport.from_series(traj.times, series)


def delta_root_drift(traj: Trajectory, n: int | None = None) -> DriftReport:
    """Drift of the roots of every ``Delta_k(lam)`` along a b* trajectory.

    Roots depend only on the ratios of coefficients inside one level.  They
    are matched between samples by sorting on (real, imag), adequate while
    the roots stay simple.  Each series is the relative displacement
    ``|r(t) - r(0)| / max(|r(0)|, 1)`` itself.
    """
    from ..spectral import delta_coefficients

    n = _rank_from_dim(traj.states.shape[1]) if n is None else n
    series, drift = {}, {}
    for k in range(n):
        coeffs = delta_coefficients(n, k)
        top = max(coeffs)
        if top == 0:
            continue
        compiled = {i: CompiledPoly(f, n) for i, f in coeffs.items()}
        roots = []
        for y in traj.states:
            c = np.zeros(top + 1)
            for i, f in compiled.items():
                c[i] = f(y)
            roots.append(np.sort_complex(np.roots(c[::-1])))
        roots = np.array(roots)
        for j in range(roots.shape[1]):
            r0 = roots[0, j]
            rel = np.abs(roots[:, j] - r0) / max(abs(r0), 1.0)
            series[f"root_{k}_{j}"] = rel
            drift[f"root_{k}_{j}"] = float(rel.max())
    return DriftReport(np.asarray(traj.times), series, drift)


def _rank_from_dim(dim: int) -> int:
    n = int(round((np.sqrt(8 * dim + 1) - 1) / 2))
    if n * (n + 1) // 2 != dim:
        raise ValueError(f"{dim} is not a triangular number")
    return n


# -- traces --------------------------------------------------------------------


def write_trace_csv(path, traj: Trajectory, state_labels, report: DriftReport | None = None) -> None:
    names = sorted(report.series) if report is not None else []
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["t", *state_labels, *names])
        for idx, (t, y) in enumerate(zip(traj.times, traj.states)):
            row = [repr(float(t))] + [repr(float(v)) for v in y]
            row += [repr(float(report.series[k][idx])) for k in names]
            w.writerow(row)


def chain_labels(n: int) -> list[str]:
    return [f"q{k}" for k in range(1, n + 1)] + [f"p{k}" for k in range(1, n + 1)]


def borel_labels(n: int) -> list[str]:
    return [f"x{i}{j}" for i, j in borel_coordinates(n)]
