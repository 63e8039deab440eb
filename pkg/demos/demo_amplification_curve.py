"""Success probability of amplitude amplification versus rotation count.

Simulates plain search for a single marked state on n qubits and compares
each point against sin^2((2L+1) asin(2^{-n/2})).  Optionally saves a plot.

Run as: python3 demos/demo_amplification_curve.py
"""

import numpy as np

from gasmld.qcore import hadamard_all, zero_state


def success_probability(n, iterations, target=1):
    state = hadamard_all(zero_state(n))
    for _ in range(iterations):
        state.amps[target] *= -1.0
        state = hadamard_all(state)
        state.amps[1:] *= -1.0
        state = hadamard_all(state)
    return float(np.abs(state.amps[target]) ** 2)


def main():
    n = 3
    theta = np.arcsin(2.0 ** (-n / 2.0))
    counts = np.arange(9)
    simulated = np.array([success_probability(n, L) for L in counts])
    predicted = np.sin((2 * counts + 1) * theta) ** 2

    print(f"n = {n} qubits, one marked state out of {2**n}")
    print(" L   simulated   predicted")
    for L, s, p in zip(counts, simulated, predicted):
        print(f"{L:2d}   {s:9.6f}   {p:9.6f}")
    best = int(np.floor(np.pi / (4 * theta)))
    print(f"\nbest integer count: L = {best} with p = {simulated[best]:.6f}")
    print(f"max |simulated - predicted| = {np.max(np.abs(simulated - predicted)):.2e}")

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not available, skipping plot")
        return
    plt.plot(counts, predicted, "k-", label="closed form")
    plt.plot(counts, simulated, "ro", label="statevector")
    plt.xlabel("rotation count L")
    plt.ylabel("success probability")
    plt.legend()
    plt.savefig("amplification_curve.png", dpi=120)
    print("wrote amplification_curve.png")


if __name__ == "__main__":
    main()
