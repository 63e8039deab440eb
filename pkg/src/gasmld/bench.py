"""Monte-Carlo BER/query sweeps with reproducible seeding and CSV output.

Seeding contract: the channel, payload bits, and noise of a trial are drawn
from a stream keyed by (master_seed, snr index, R index, trial, 0), which
does not mention the detector.  Every detector therefore faces the exact
same instance sequence and comparisons are paired.  Randomized detectors
get their own stream keyed by the same tuple with the detector's global
index in METHODS appended, so adding or reordering detectors in a config
never perturbs any other column.
"""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .channel import (
    block_from_bits,
    circulant_matrix,
    generate_channel,
    snr_db_to_sigma2,
    transmit,
)
from .detect import METHODS, gas_detect, hybrid_detect, mld_detect, mmse_detect
from .gas import GasConfig
from .qubo import MldInstance

CSV_HEADER = "snr_db,detector,R,trials,bit_errors,ber,mean_queries,ci95"


class ConfigError(ValueError):
    """Invalid sweep configuration or config-file syntax."""


@dataclass
class SweepConfig:
    snr_db_list: list = field(default_factory=lambda: [0.0])
    detectors: list = field(default_factory=lambda: ["MLD", "MMSE"])
    R_list: list = field(default_factory=lambda: [4])
    N: int = 3
    L_bi: int = 2
    L_iu: int = 2
    trials_per_point: int = 2000
    master_seed: int = 1234
    gas: GasConfig = field(default_factory=lambda: GasConfig(engine="analytic"))
    output_path: str = "sweep.csv"

    def validate(self) -> "SweepConfig":
        if not self.snr_db_list or not self.detectors or not self.R_list:
            raise ConfigError("snr_db, detectors, and ris lists must be nonempty")
        for det in self.detectors:
            if det not in METHODS:
                raise ConfigError(f"unknown detector {det!r}; choose from {METHODS}")
        if self.trials_per_point < 1:
            raise ConfigError("trials must be positive")
        if min(self.R_list) < 0:
            raise ConfigError("RIS element counts must be non-negative")
        if self.N < self.L_bi + self.L_iu - 1:
            raise ConfigError("block length must cover the channel delay spread")
        return self


@dataclass
class BerRecord:
    snr_db: float
    detector: str
    R: int
    trials: int
    bit_errors: int
    ber: float
    mean_queries: float
    ci95: float


def default_channel(rng: np.random.Generator, R: int, L_bi: int, L_iu: int, N: int) -> np.ndarray:
    ch = generate_channel(R=R, L_bi=L_bi, L_iu=L_iu, rng=rng)
    return circulant_matrix(ch.h_eff, N)


def trial_instance(cfg: SweepConfig, snr_idx: int, r_idx: int, trial: int,
                   channel_factory=None):
    """The (instance, true bits) pair a given trial presents to every detector."""
    factory = channel_factory or default_channel
    rng = np.random.default_rng(
        np.random.SeedSequence((cfg.master_seed, snr_idx, r_idx, trial, 0))
    )
    H = factory(rng, cfg.R_list[r_idx], cfg.L_bi, cfg.L_iu, cfg.N)
    bits = rng.integers(0, 2, size=cfg.N)
    sigma2 = snr_db_to_sigma2(cfg.snr_db_list[snr_idx])
    y = transmit(block_from_bits(bits), H, sigma2, rng)
    return MldInstance(H=H, y=y, sigma2=sigma2), bits


def detector_rng(cfg: SweepConfig, snr_idx: int, r_idx: int, trial: int, detector: str):
    return np.random.default_rng(
        np.random.SeedSequence(
            (cfg.master_seed, snr_idx, r_idx, trial, 1 + METHODS.index(detector))
        )
    )


def _run_point(args) -> BerRecord:
    cfg, snr_idx, r_idx, detector, channel_factory = args
    errors = 0
    queries = 0
    for trial in range(cfg.trials_per_point):
        inst, bits = trial_instance(cfg, snr_idx, r_idx, trial, channel_factory)
        if detector == "MLD":
            rep = mld_detect(inst)
        elif detector == "MMSE":
            rep = mmse_detect(inst)
        elif detector == "GAS_random":
            rep = gas_detect(inst, cfg.gas, detector_rng(cfg, snr_idx, r_idx, trial, detector))
        else:
            rep = hybrid_detect(inst, cfg.gas, detector_rng(cfg, snr_idx, r_idx, trial, detector))
        errors += int(np.sum(rep.bits_hat != bits))
        queries += rep.oracle_queries
    nbits = cfg.trials_per_point * cfg.N
    ber = errors / nbits
    ci95 = 1.96 * np.sqrt(ber * (1.0 - ber) / nbits)
    return BerRecord(
        snr_db=float(cfg.snr_db_list[snr_idx]),
        detector=detector,
        R=int(cfg.R_list[r_idx]),
        trials=cfg.trials_per_point,
        bit_errors=errors,
        ber=ber,
        mean_queries=queries / cfg.trials_per_point,
        ci95=float(ci95),
    )


def _worker_count(points: int) -> int:
    env = os.environ.get("GASMLD_THREADS", "").strip()
    cap = int(env) if env else (os.cpu_count() or 1)
    return max(1, min(cap, points))


def run_sweep(cfg: SweepConfig, channel_factory=None) -> list[BerRecord]:
    cfg.validate()
    jobs = [
        (cfg, snr_idx, r_idx, det, channel_factory)
        for snr_idx in range(len(cfg.snr_db_list))
        for r_idx in range(len(cfg.R_list))
        for det in cfg.detectors
    ]
    workers = _worker_count(len(jobs))
    if workers == 1:
        records = [_run_point(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_point, jobs))
    records.sort(key=lambda r: (r.snr_db, r.detector, r.R))
    return records


def emit_csv(records: list[BerRecord], path: str) -> None:
    lines = [CSV_HEADER]
    ordered = sorted(records, key=lambda r: (r.snr_db, r.detector, r.R))
    for r in ordered:
        lines.append(
            f"{r.snr_db:.10g},{r.detector},{r.R},{r.trials},{r.bit_errors},"
            f"{r.ber:.10g},{r.mean_queries:.10g},{r.ci95:.10g}"
        )
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def fig_recipe(name: str) -> SweepConfig:
    """Desk-scale presets for the two benchmark detector line-ups.

    2000 trials per point resolves BER down to roughly 1e-3; floors near
    1e-4 need 1e5+ trials (see README for the runtime arithmetic).
    """
    if name == "fig2":
        detectors = ["MLD", "GAS_random", "GAS_warm"]
    elif name == "fig3":
        detectors = ["MLD", "MMSE", "GAS_warm"]
    else:
        raise ConfigError(f"unknown recipe {name!r}; expected fig2 or fig3")
    return SweepConfig(
        snr_db_list=[-5.0, 0.0, 5.0, 10.0],
        detectors=detectors,
        R_list=[0, 4, 8],
        N=3,
        L_bi=2,
        L_iu=2,
        trials_per_point=2000,
        master_seed=1234,
        gas=GasConfig(engine="analytic"),
        output_path=f"{name}.csv",
    ).validate()


def _parse_list(raw: str, conv):
    items = [s.strip() for s in raw.split(",") if s.strip()]
    if not items:
        raise ConfigError(f"empty list value {raw!r}")
    return [conv(s) for s in items]


def parse_config(text: str, base: SweepConfig | None = None) -> SweepConfig:
    """Flat `key = value` lines; '#' starts a comment; later keys win."""
    cfg = replace(base) if base is not None else SweepConfig()
    gas = replace(cfg.gas)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        try:
            if key == "snr_db":
                cfg.snr_db_list = _parse_list(value, float)
            elif key == "detectors":
                cfg.detectors = _parse_list(value, str)
            elif key == "ris":
                cfg.R_list = _parse_list(value, int)
            elif key == "n":
                cfg.N = int(value)
            elif key == "l_bi":
                cfg.L_bi = int(value)
            elif key == "l_iu":
                cfg.L_iu = int(value)
            elif key == "trials":
                cfg.trials_per_point = int(value)
            elif key == "seed":
                cfg.master_seed = int(value)
            elif key == "out":
                cfg.output_path = value
            elif key == "gas.m":
                gas.m = None if value == "auto" else int(value)
            elif key == "gas.lambda":
                gas.growth_factor = float(value)
            elif key == "gas.max_rounds":
                gas.max_rounds = int(value)
            elif key == "gas.stall_rounds":
                gas.stall_rounds = int(value)
            elif key == "gas.encoding":
                gas.encoding = value
            elif key == "gas.engine":
                gas.engine = value
            else:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key}: {exc}") from exc
    try:
        cfg.gas = replace(gas)  # re-runs GasConfig validation
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return cfg.validate()


def format_config(cfg: SweepConfig) -> str:
    """Inverse of parse_config; floats via repr so round-trips are exact."""
    lines = [
        "snr_db = " + ",".join(repr(float(v)) for v in cfg.snr_db_list),
        "detectors = " + ",".join(cfg.detectors),
        "ris = " + ",".join(str(int(v)) for v in cfg.R_list),
        f"n = {cfg.N}",
        f"l_bi = {cfg.L_bi}",
        f"l_iu = {cfg.L_iu}",
        f"trials = {cfg.trials_per_point}",
        f"seed = {cfg.master_seed}",
        f"out = {cfg.output_path}",
        "gas.m = " + ("auto" if cfg.gas.m is None else str(cfg.gas.m)),
        f"gas.lambda = {cfg.gas.growth_factor!r}",
        f"gas.max_rounds = {cfg.gas.max_rounds}",
        f"gas.stall_rounds = {cfg.gas.stall_rounds}",
        f"gas.encoding = {cfg.gas.encoding}",
        f"gas.engine = {cfg.gas.engine}",
    ]
    return "\n".join(lines) + "\n"
