"""Adaptive threshold search over QUBO costs with amplitude amplification.

The driver repeats: sample a rotation count L from the current schedule,
amplify states whose encoded cost falls below the incumbent threshold,
measure the key register, and re-evaluate the candidate classically.  An
improvement lowers the threshold and resets the schedule; otherwise the
schedule grows geometrically up to sqrt(2^n).

Two interchangeable sampling engines are provided.  The statevector engine
builds and runs the actual circuits.  The analytic engine evaluates the
same measurement distribution in closed form: the Grover operator keeps the
state inside the plane spanned by the normalised marked and unmarked
components, so after L iterations the key-register distribution is

    P_L(b) = sin^2((2L+1) alpha) w_good(b) / p0
           + cos^2((2L+1) alpha) w_bad(b) / (1 - p0),

with alpha = arcsin(sqrt(p0)) and w_good(b) the joint weight of key b and a
negative encoded value.  Marked and unmarked components occupy disjoint
value bins, so no cross terms survive the marginalisation.  Both engines
draw identically from the supplied generator (one integer for L, one
uniform for the measurement per round), which makes their traces directly
comparable seed for seed.
"""

from dataclasses import dataclass, field

import numpy as np

from .circuits import GasCircuitSpec, PhasePolynomial, bit_patterns, fejer_distribution
from .circuits import apply_state_preparation, grover_power
from .qcore import CapacityError, MAX_QUBITS, register_distribution, sample_index, zero_state
from .qubo import QuboProblem, evaluate_all_costs, evaluate_cost

ENCODINGS = ("integer", "real_direct")
ENGINES = ("statevector", "analytic")
BOUNDS_BRUTE_FORCE_MAX_N = 16


@dataclass
class GasConfig:
    """Knobs for one adaptive search run.

    ``m=None`` sizes the value register automatically from the cost range.
    ``warm_start`` replaces the uniform initial sample with a supplied bit
    vector whose cost becomes the initial threshold.
    """

    m: int | None = 12
    growth_factor: float = 8.0 / 7.0
    max_rounds: int = 50
    stall_rounds: int = 15
    seed: int | None = None
    warm_start: np.ndarray | None = None
    encoding: str = "real_direct"
    engine: str = "statevector"

    def __post_init__(self):
        if self.m is not None and self.m < 2:
            raise ValueError("value register needs at least 2 qubits")
        if not self.growth_factor > 1.0:
            raise ValueError("growth factor must exceed 1")
        if self.max_rounds < 1 or self.stall_rounds < 1:
            raise ValueError("round caps must be positive")
        if self.encoding not in ENCODINGS:
            raise ValueError(f"unknown encoding {self.encoding!r}")
        if self.engine not in ENGINES:
            raise ValueError(f"unknown engine {self.engine!r}")
        if self.warm_start is not None:
            ws = np.asarray(self.warm_start, dtype=np.int8)
            if ws.ndim != 1 or not np.all((ws == 0) | (ws == 1)):
                raise ValueError("warm start must be a flat 0/1 vector")
            self.warm_start = ws


@dataclass
class GasResult:
    best_bits: np.ndarray
    best_cost: float
    rounds: int
    oracle_queries: int
    measurements: int
    threshold_trace: list = field(default_factory=list)  # (round, threshold)


def sample_rotation_count(k: float, rng: np.random.Generator) -> int:
    """Draw L uniformly from the integers in [0, k-1].

    For fractional k the support therefore holds ceil(k-1) values; the top
    count only becomes reachable once k actually exceeds it by a full unit.
    """
    if k < 1.0:
        raise ValueError("rotation schedule parameter must be >= 1")
    high = int(np.floor(k - 1.0))
    return int(rng.integers(0, high + 1))


def grow_k(k: float, growth_factor: float, n: int) -> float:
    """Schedule update after a non-improving round: min(growth*k, sqrt(2^n))."""
    return min(growth_factor * k, float(np.sqrt(2.0 ** n)))


def cost_bounds(q: QuboProblem) -> tuple[float, float]:
    """Lower/upper bounds on the cost; exact for n <= 16, L1 bound beyond."""
    if q.n <= BOUNDS_BRUTE_FORCE_MAX_N:
        costs = evaluate_all_costs(q)
        return float(costs.min()), float(costs.max())
    lin = np.diag(q.Q) + q.c
    quad = 2.0 * np.triu(q.Q, k=1)
    lo = q.offset + np.minimum(lin, 0.0).sum() + np.minimum(quad, 0.0).sum()
    hi = q.offset + np.maximum(lin, 0.0).sum() + np.maximum(quad, 0.0).sum()
    return float(lo), float(hi)


def required_value_qubits(q: QuboProblem, y0: float | None = None, encoding: str = "integer") -> int:
    """Smallest value register that cannot alias any shifted cost.

    Thresholds are always attained costs, so the worst shift spans
    [lo - hi, hi - lo].  Integer encoding needs the exact span strictly
    inside the signed window; real encoding reserves a factor-2 margin so
    spectral side lobes stay clear of the sign boundary.
    """
    if encoding not in ENCODINGS:
        raise ValueError(f"unknown encoding {encoding!r}")
    lo, hi = cost_bounds(q)
    spread = hi - lo
    if y0 is not None:
        spread = max(spread, hi - y0, y0 - lo)
    m = 2
    while True:
        if encoding == "integer":
            if (1 << (m - 1)) >= spread + 1.0:
                return m
        else:
            if (1 << (m - 2)) >= spread:
                return m
        m += 1


def _phase_scale(q: QuboProblem, m: int, encoding: str) -> float:
    """Multiplier applied to costs before encoding.

    Integer mode encodes costs verbatim.  Real mode stretches the worst-case
    shifted range onto [-2^{m-2}, 2^{m-2}], half the representable window.
    """
    if encoding == "integer":
        return 1.0
    lo, hi = cost_bounds(q)
    spread = hi - lo
    if spread <= 0.0:
        return 1.0
    return float(2 ** (m - 2)) / spread


def _build_spec(q: QuboProblem, threshold: float, m: int, encoding: str, scale: float) -> GasCircuitSpec:
    """Circuit geometry for one threshold: poly(b) = scale * (E(b) - threshold)."""
    lin = scale * (np.diag(q.Q) + q.c)
    quad = scale * 2.0 * np.triu(q.Q, k=1)
    const = scale * (q.offset - threshold)
    poly = PhasePolynomial(constant=const, linear=lin, quadratic=quad)
    spec = GasCircuitSpec(n=q.n, m=m, poly=poly)
    if encoding == "integer":
        if not poly.is_integer():
            raise ValueError("integer encoding requires integer cost coefficients")
        spec.validate_range()
    return spec


class _StatevectorEngine:
    """Runs the actual circuits; caches the prepared state per threshold."""

    def __init__(self, q: QuboProblem, m: int, encoding: str, scale: float):
        self._q = q
        self._m = m
        self._encoding = encoding
        self._scale = scale
        self._cache: dict[float, tuple[GasCircuitSpec, object]] = {}

    def _prepared(self, threshold: float):
        entry = self._cache.get(threshold)
        if entry is None:
            spec = _build_spec(self._q, threshold, self._m, self._encoding, self._scale)
            state = zero_state(spec.total_qubits)
            apply_state_preparation(state, spec)
            entry = (spec, state)
            self._cache[threshold] = entry
        return entry

    def key_distribution(self, threshold: float, L: int) -> np.ndarray:
        spec, base = self._prepared(threshold)
        state = base.copy()
        grover_power(state, spec, L)
        return register_distribution(state, spec.key_register)


class _AnalyticEngine:
    """Closed-form twin of the statevector engine (see module docstring)."""

    def __init__(self, q: QuboProblem, m: int, encoding: str, scale: float):
        if q.n > BOUNDS_BRUTE_FORCE_MAX_N:
            raise CapacityError("analytic engine needs the full cost table (n <= 16)")
        self._q = q
        self._m = m
        self._encoding = encoding
        self._scale = scale
        self._costs = evaluate_all_costs(q)
        self._cache: dict[float, tuple[np.ndarray, np.ndarray, float]] = {}

    def _weights(self, threshold: float):
        entry = self._cache.get(threshold)
        if entry is None:
            # same validation as the circuit path, never executed
            _build_spec(self._q, threshold, self._m, self._encoding, self._scale)
            M = 1 << self._m
            shifted = self._scale * (self._costs - threshold)
            n_keys = self._costs.shape[0]
            w_good = np.empty(n_keys)
            if self._encoding == "integer":
                bins = np.round(shifted).astype(np.int64) % M
                w_good[:] = (bins >= M // 2).astype(float)
            else:
                for idx, a in enumerate(shifted):
                    dist = fejer_distribution(2.0 * np.pi * a / M, self._m)
                    w_good[idx] = dist[M // 2 :].sum()
            w_good /= n_keys
            w_bad = 1.0 / n_keys - w_good
            p0 = float(np.clip(w_good.sum(), 0.0, 1.0))
            entry = (w_good, np.maximum(w_bad, 0.0), p0)
            self._cache[threshold] = entry
        return entry

    def key_distribution(self, threshold: float, L: int) -> np.ndarray:
        w_good, w_bad, p0 = self._weights(threshold)
        if p0 <= 0.0:
            return w_good + w_bad
        if p0 >= 1.0:
            return w_good.copy()
        angle = (2 * L + 1) * np.arcsin(np.sqrt(p0))
        return np.sin(angle) ** 2 * w_good / p0 + np.cos(angle) ** 2 * w_bad / (1.0 - p0)


def _make_engine(q: QuboProblem, cfg: GasConfig, m: int, scale: float):
    if cfg.engine == "statevector":
        return _StatevectorEngine(q, m, cfg.encoding, scale)
    return _AnalyticEngine(q, m, cfg.encoding, scale)


def run_gas(q: QuboProblem, cfg: GasConfig, rng: np.random.Generator | None = None) -> GasResult:
    """Algorithm driver; see the module docstring for the round structure."""
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    n = q.n
    m = cfg.m if cfg.m is not None else required_value_qubits(q, encoding=cfg.encoding)
    if n + m > MAX_QUBITS:
        raise CapacityError(f"{n} key + {m} value qubits exceed the {MAX_QUBITS}-qubit cap")
    scale = _phase_scale(q, m, cfg.encoding)
    engine = _make_engine(q, cfg, m, scale)
    patterns = bit_patterns(n)

    if cfg.warm_start is not None:
        if cfg.warm_start.shape[0] != n:
            raise ValueError("warm start length does not match problem size")
        best_bits = cfg.warm_start.copy()
    else:
        best_bits = rng.integers(0, 2, size=n).astype(np.int8)
    best_cost = evaluate_cost(q, best_bits)
    threshold = best_cost
    trace = [(0, threshold)]

    k = 1.0
    queries = 0
    measurements = 0
    stall = 0
    rounds = 0
    while rounds < cfg.max_rounds and stall < cfg.stall_rounds:
        rounds += 1
        L = sample_rotation_count(k, rng)
        dist = engine.key_distribution(threshold, L)
        idx = sample_index(dist, rng)
        queries += L
        measurements += 1
        candidate = patterns[idx]
        cost = evaluate_cost(q, candidate)
        if cost < threshold:
            threshold = cost
            best_bits = candidate.copy()
            best_cost = cost
            k = 1.0
            stall = 0
        else:
            k = grow_k(k, cfg.growth_factor, n)
            stall += 1
        trace.append((rounds, threshold))

    return GasResult(
        best_bits=best_bits,
        best_cost=best_cost,
        rounds=rounds,
        oracle_queries=queries,
        measurements=measurements,
        threshold_trace=trace,
    )


def query_complexity_summary(results: list, optimal_costs) -> tuple[float, float, float]:
    """(mean queries, mean measurements, fraction ending at the known optimum)."""
    if not results:
        raise ValueError("need at least one result")
    optima = np.asarray(optimal_costs, dtype=float)
    if optima.shape[0] != len(results):
        raise ValueError("one optimal cost per result required")
    queries = np.array([r.oracle_queries for r in results], dtype=float)
    meas = np.array([r.measurements for r in results], dtype=float)
    achieved = np.array([r.best_cost for r in results], dtype=float)
    hits = np.abs(achieved - optima) <= 1e-9
    return float(queries.mean()), float(meas.mean()), float(hits.mean())
