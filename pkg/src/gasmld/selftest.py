"""Built-in invariant checks, runnable offline via `gasmld selftest`.

Each check is a tiny deterministic experiment against a closed-form or
cross-module reference.  They are duplicated in spirit by the test suite;
this entry point exists so an installed copy can vouch for itself without
pytest present.
"""

import os
import tempfile

import numpy as np

from .bench import SweepConfig, emit_csv, run_sweep
from .channel import generate_channel
from .circuits import GasCircuitSpec, PhasePolynomial, apply_state_preparation, conditional_value_distributions
from .detect import mmse_equalize
from .gas import GasConfig, _StatevectorEngine, run_gas
from .qcore import apply_iqft, apply_qft, zero_state
from .qubo import MldInstance, evaluate_all_costs, mld_to_qubo
from .bench import trial_instance


def _check_qft_roundtrip():
    rng = np.random.default_rng(0)
    state = zero_state(5)
    state.amps = rng.normal(size=32) + 1j * rng.normal(size=32)
    state.amps /= np.linalg.norm(state.amps)
    before = state.amps.copy()
    apply_qft(state, range(5))
    apply_iqft(state, range(5))
    assert np.allclose(state.amps, before, atol=1e-9)


def _check_value_point_mass():
    poly = PhasePolynomial(constant=-1.0, linear=np.array([2.0, 1.0]), quadratic=np.zeros((2, 2)))
    spec = GasCircuitSpec(n=2, m=4, poly=poly)
    state = zero_state(spec.total_qubits)
    apply_state_preparation(state, spec)
    dists = conditional_value_distributions(state, spec)
    expected_bins = np.mod(poly.evaluate_all().astype(int), 16)
    for row, b in zip(dists, expected_bins):
        assert abs(row[b] - 1.0) < 1e-9


def _check_amplification_constant():
    # one marked state in eight, one iteration: success mass 25/32
    q_cost = np.array([[1.0, 0, 0], [0, 1.0, 0], [0, 0, 1.0]])
    from .qubo import QuboProblem

    q = QuboProblem(Q=q_cost, c=np.zeros(3), offset=0.0)
    engine = _StatevectorEngine(q, 5, "integer", 1.0)
    dist = engine.key_distribution(1.0, 1)
    costs = evaluate_all_costs(q)
    assert abs(dist[costs < 1.0].sum() - 25.0 / 32.0) < 1e-9


def _check_qubo_chain():
    rng = np.random.default_rng(1)
    H = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    y = rng.normal(size=3) + 1j * rng.normal(size=3)
    # wrap into a circulant so the instance validates
    h = np.array([H[0, 0], H[1, 0], H[2, 0]])
    from .channel import circulant_matrix

    Hc = circulant_matrix(h, 3)
    inst = MldInstance(H=Hc, y=y, sigma2=0.5)
    q = mld_to_qubo(inst)
    costs = evaluate_all_costs(q)
    for v in range(8):
        bits = (v >> np.arange(3)) & 1
        x = 2.0 * bits - 1.0
        direct = np.sum(np.abs(y - Hc @ x) ** 2)
        assert abs(costs[v] - direct) < 1e-9


def _check_engine_agreement():
    from .qubo import QuboProblem

    q = QuboProblem(Q=np.diag([2.0, -1.0, 3.0]), c=np.array([-2.0, 1.0, -3.0]), offset=4.0)
    runs = [
        run_gas(q, GasConfig(m=8, seed=5, encoding="integer", engine=engine))
        for engine in ("statevector", "analytic")
    ]
    assert runs[0].threshold_trace == runs[1].threshold_trace
    assert np.array_equal(runs[0].best_bits, runs[1].best_bits)


def _check_equalizer_identity():
    cfg = SweepConfig(trials_per_point=1)
    inst, _ = trial_instance(cfg, 0, 0, 0)
    soft = mmse_equalize(inst)
    H = inst.H
    direct = np.linalg.solve(H.conj().T @ H + inst.sigma2 * np.eye(cfg.N), H.conj().T @ inst.y)
    assert np.allclose(soft, direct, atol=1e-8)


def _check_cascade_alignment():
    rng = np.random.default_rng(2)
    ch = generate_channel(R=3, L_bi=2, L_iu=2, rng=rng)
    first = ch.h_eff[0]
    assert abs(np.imag(first)) < 1e-9 and np.real(first) > 0


def _check_csv_determinism():
    cfg = SweepConfig(
        snr_db_list=[0.0], detectors=["MMSE"], R_list=[0], trials_per_point=3,
        master_seed=7,
    )
    with tempfile.TemporaryDirectory() as tmp:
        paths = [os.path.join(tmp, f"run{i}.csv") for i in (0, 1)]
        for path in paths:
            emit_csv(run_sweep(cfg), path)
        blobs = [open(p, "rb").read() for p in paths]
    assert blobs[0] == blobs[1]


CHECKS = [
    ("statevector transform roundtrip", _check_qft_roundtrip),
    ("integer cost point mass", _check_value_point_mass),
    ("single-iteration amplification constant", _check_amplification_constant),
    ("binary quadratic chain consistency", _check_qubo_chain),
    ("sampling engine agreement", _check_engine_agreement),
    ("equalizer frequency/time identity", _check_equalizer_identity),
    ("cascade phase alignment", _check_cascade_alignment),
    ("sweep CSV determinism", _check_csv_determinism),
]


def run_selftest(out=print) -> int:
    failures = 0
    for label, fn in CHECKS:
        try:
            fn()
            out(f"[PASS] {label}")
        except Exception as exc:  # report and keep going
            failures += 1
            out(f"[FAIL] {label}: {exc}")
    out(f"{len(CHECKS) - failures}/{len(CHECKS)} checks passed")
    return 0 if failures == 0 else 2
