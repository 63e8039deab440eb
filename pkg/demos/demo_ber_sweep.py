"""Small bit-error-rate sweep across SNR and surface size.

Uses the closed-form sampling engine so a few hundred trials per point run
in seconds.  For publication-grade floors near 1e-4, push trials to 1e5+.

Run as: python3 demos/demo_ber_sweep.py
"""

from gasmld.bench import SweepConfig, run_sweep
from gasmld.gas import GasConfig


def main():
    cfg = SweepConfig(
        snr_db_list=[-5.0, 0.0, 5.0],
        detectors=["MLD", "MMSE", "GAS_warm"],
        R_list=[0, 4],
        trials_per_point=400,
        master_seed=101,
        gas=GasConfig(engine="analytic"),
    )
    records = run_sweep(cfg)
    print(f"{'snr':>5} {'R':>3} {'detector':>10} {'ber':>9} {'ci95':>9} {'queries':>8}")
    for rec in records:
        print(f"{rec.snr_db:5.1f} {rec.R:3d} {rec.detector:>10} "
              f"{rec.ber:9.5f} {rec.ci95:9.5f} {rec.mean_queries:8.2f}")

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not available, skipping plot")
        return
    for det in cfg.detectors:
        for R in cfg.R_list:
            pts = [r for r in records if r.detector == det and r.R == R]
            plt.semilogy([r.snr_db for r in pts], [max(r.ber, 1e-5) for r in pts],
                         marker="o", label=f"{det}, R={R}")
    plt.xlabel("SNR (dB)")
    plt.ylabel("BER")
    plt.grid(True, which="both", alpha=0.3)
    plt.legend()
    plt.savefig("ber_sweep.png", dpi=120)
    print("wrote ber_sweep.png")


if __name__ == "__main__":
    main()
