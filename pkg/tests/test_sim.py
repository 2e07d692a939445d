import numpy as np
import pytest

from gentoda.algebra.commutative import classical_ring
from gentoda.sim import toda
from gentoda.spectral import delta_coefficients


def test_open_rhs_examples():
    s = toda.OpenChainState(np.zeros(2), np.zeros(2))
    dq, dp = toda.open_toda_rhs(s)
    assert np.allclose(dq, 0) and np.allclose(dp, [-1, 1])
    rng = np.random.default_rng(0)
    s = toda.OpenChainState(rng.normal(size=4), rng.normal(size=4))
    assert abs(toda.open_toda_rhs(s)[1].sum()) < 1e-14
    s = toda.OpenChainState([0.0, 60.0, 120.0], [1.0, 0.0, 0.0])
    dq, dp = toda.open_toda_rhs(s)
    assert np.allclose(dq, [1, 0, 0]) and np.allclose(dp, 0, atol=1e-20)


def test_open_rhs_overflow():
    s = toda.OpenChainState([800.0, 0.0], [0.0, 0.0])
    with pytest.raises(OverflowError):
        toda.open_toda_rhs(s)


def test_state_validation():
    with pytest.raises(ValueError):
        toda.OpenChainState([np.nan, 0.0], [0.0, 0.0])
    with pytest.raises(ValueError):
        toda.OpenChainState([0.0], [0.0, 1.0])


def harmonic(y, t):
    return np.array([y[1], -y[0]])


def test_rk4_zero_field():
    y0 = np.array([1.0, 2.0])
    tr = toda.integrate(y0, lambda y, t: np.zeros_like(y), 0.1, 1.0)
    assert np.all(tr.states == y0)


def test_rk4_harmonic_period():
    tr = toda.integrate([1.0, 0.0], harmonic, 2 * np.pi / 5000, 2 * np.pi, stride=5000)
    assert np.max(np.abs(tr.states[-1] - [1.0, 0.0])) < 1e-8


def test_rk4_order():
    T = 1.0
    exact = np.array([np.cos(T), -np.sin(T)])
    errs = []
    for dt in (0.1, 0.05):
        tr = toda.integrate([1.0, 0.0], harmonic, dt, T)
        errs.append(np.linalg.norm(tr.states[-1] - exact))
    assert 12 < errs[0] / errs[1] < 20


def test_integrate_validation():
    with pytest.raises(ValueError):
        toda.integrate([0.0], harmonic, 0.0, 1.0)
    with pytest.raises(ValueError):
        toda.integrate([0.0], harmonic, 0.1, -1.0)


def test_integrate_aborts_on_blowup():
    with pytest.raises(toda.SimulationError) as info, np.errstate(over="ignore", invalid="ignore"):
        toda.integrate([1.0], lambda y, t: y**2, 0.01, 5.0)
    assert info.value.last_good_time < 1.1


def test_stride_sampling():
    tr = toda.integrate([1.0, 0.0], harmonic, 0.01, 1.0, stride=10)
    assert len(tr.times) == 11
    assert tr.times[-1] == pytest.approx(1.0)


def chain_trajectory(seed=3, w=0.0, T=10.0):
    rng = np.random.default_rng(seed)
    y0 = np.concatenate([rng.uniform(-1, 1, 3), rng.uniform(-1, 1, 3)])
    return toda.integrate(y0, toda.open_toda_field, 1e-3, T, stride=100)


@pytest.mark.parametrize("w", [0.0, 1.0])
def test_open_chain_spectral_conservation(w):
    tr = chain_trajectory()
    rep = toda.spectral_drift(tr, w)
    assert rep.max_drift["c0"] <= 1e-8
    assert rep.overall <= 1e-8
    assert np.all(rep.relative("c1")[:1] == 0)


def test_energy_and_momentum_conserved():
    tr = chain_trajectory()
    n = 3
    E = [toda.open_toda_energy(y[:n], y[n:]) for y in tr.states]
    P = [y[n:].sum() for y in tr.states]
    assert max(abs(e - E[0]) for e in E) < 1e-8
    assert max(abs(p - P[0]) for p in P) < 1e-12


def test_time_reversal():
    rng = np.random.default_rng(4)
    y0 = np.concatenate([rng.uniform(-1, 1, 3), rng.uniform(-1, 1, 3)])
    fwd = toda.integrate(y0, toda.open_toda_field, 1e-3, 5.0, stride=5000)
    back = toda.integrate(fwd.states[-1], toda.open_toda_field, -1e-3, 5.0, stride=5000)
    one_way = toda.spectral_drift(fwd).overall
    assert np.max(np.abs(back.states[-1] - y0)) <= 10 * max(one_way, 1e-12) + 1e-9


def test_kk_rhs_examples():
    R = classical_ring(3)
    pt = toda.BorelPoint.from_vector(3, [1.0, 2.0, 3.0, 4.0, 5.0, 6.0])
    d = toda.kk_flow_rhs(R.x(1, 1), pt)
    assert d[(2, 1)] == -2.0 and d[(3, 1)] == -4.0 and d[(1, 1)] == 0.0
    trace = R.x(1, 1) + R.x(2, 2) + R.x(3, 3)
    d = toda.kk_flow_rhs(trace, pt)
    assert all(d[(i, i)] == 0.0 for i in (1, 2, 3))


def test_kk_rejects_upper():
    R = classical_ring(2)
    with pytest.raises(ValueError):
        toda.KKFlow(R.x(1, 2))


def test_borel_point_validation():
    with pytest.raises(ValueError):
        toda.BorelPoint({(1, 2): 1.0})


def kk_trajectory(n=3, k=0, i=1, seed=0, T=10.0):
    H = delta_coefficients(n, k)[i]
    rng = np.random.default_rng(seed)
    y0 = rng.uniform(-0.5, 0.5, n * (n + 1) // 2)
    return toda.integrate(y0, toda.KKFlow(H, n), 1e-3, T, stride=100)


def test_kk_n2_flow_conserves_delta0():
    tr = kk_trajectory(n=2, k=0, i=1)
    inv = {f"d{i}": f for i, f in delta_coefficients(2, 0).items()}
    assert toda.invariant_drift(tr, inv).overall <= 1e-8


def test_kk_hamiltonian_conserved():
    tr = kk_trajectory()
    rep = toda.invariant_drift(tr, {"H": delta_coefficients(3, 0)[1]})
    assert rep.overall <= 1e-8


def test_kk_ratios_conserved():
    """Along the flow of Delta[0,1] the ratios inside each level stay fixed."""
    tr = kk_trajectory()
    inv = {f"{k},{i}": f for k in range(3) for i, f in delta_coefficients(3, k).items()}
    rep = toda.invariant_drift(tr, inv)
    ratio = rep.series["1,0"] / rep.series["1,1"]
    assert np.max(np.abs(ratio - ratio[0])) / max(abs(ratio[0]), 1.0) <= 1e-6
    for i in range(3):
        assert rep.max_drift[f"0,{i}"] <= 1e-6


def test_constant_invariant_zero_drift():
    tr = kk_trajectory(T=0.5)
    R = classical_ring(3)
    rep = toda.invariant_drift(tr, {"one": R.one() * 3})
    assert rep.overall == 0.0


def test_trace_csv(tmp_path):
    tr = chain_trajectory(T=0.2)
    rep = toda.spectral_drift(tr)
    path = tmp_path / "trace.csv"
    toda.write_trace_csv(path, tr, toda.chain_labels(3), rep)
    lines = path.read_text().splitlines()
    assert lines[0] == "t,q1,q2,q3,p1,p2,p3,c0,c1,c2,c3"
    assert len(lines) == len(tr.times) + 1


def test_kk_delta_roots_conserved():
    tr = kk_trajectory()
    rep = toda.delta_root_drift(tr, 3)
    assert set(rep.max_drift) == {"root_0_0", "root_0_1", "root_0_2", "root_1_0"}
    assert rep.overall <= 1e-8


def test_delta_coefficients_do_not_poisson_commute():
    """Exact witness: level-1 coefficients are not conserved by Delta[0,1] at n = 3."""
    from gentoda.algebra.commutative import poisson_bracket

    R = classical_ring(3)
    x = R.x
    H = delta_coefficients(3, 0)[1]
    b = poisson_bracket(H, delta_coefficients(3, 1)[1])
    assert b != 0
    assert b in (x(3, 1) * (x(1, 1) - x(3, 3)), -x(3, 1) * (x(1, 1) - x(3, 3)))
