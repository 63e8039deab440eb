"""Detection cost to binary optimization conversions.

The squared residual ||y - H x||^2 over BPSK symbols x in {-1,+1}^N expands
into a real quadratic form; substituting x = 2b - 1 turns it into a QUBO over
bits, and b_i = (1 - Z_i)/2 maps the QUBO onto an Ising Hamiltonian.  Every
step preserves the cost of each candidate exactly, which the tests lean on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuits import bit_patterns

BRUTE_FORCE_MAX_N = 24
_CHUNK = 1 << 18


@dataclass
class MldInstance:
    """One detection problem: circulant channel matrix, received block, noise power."""

    H: np.ndarray
    y: np.ndarray
    sigma2: float

    def __post_init__(self):
        self.H = np.asarray(self.H, dtype=complex)
        self.y = np.asarray(self.y, dtype=complex)
        N = self.H.shape[0]
        if self.H.shape != (N, N):
            raise ValueError("H must be square")
        if self.y.shape != (N,):
            raise ValueError("y length must match H")
        if self.sigma2 < 0:
            raise ValueError("sigma2 must be non-negative")
        # circulant check is exact: row i is row 0 rolled right by i
        for i in range(1, N):
            if not np.array_equal(self.H[i], np.roll(self.H[0], i)):
                raise ValueError("H is not circulant")

    @property
    def N(self) -> int:
        return self.H.shape[0]


@dataclass
class BipolarQuadratic:
    """Cost x^T Q x + c^T x + const over bipolar symbols x in {-1,+1}^n."""

    Q: np.ndarray
    c: np.ndarray
    const: float

    def evaluate(self, x) -> float:
        x = np.asarray(x, dtype=float)
        return float(x @ self.Q @ x + self.c @ x + self.const)


@dataclass
class QuboProblem:
    """Cost b^T Q b + c^T b + offset over bits b in {0,1}^n."""

    Q: np.ndarray
    c: np.ndarray
    offset: float

    def __post_init__(self):
        self.Q = np.asarray(self.Q, dtype=float)
        self.c = np.asarray(self.c, dtype=float)
        n = self.c.shape[0]
        if self.Q.shape != (n, n):
            raise ValueError("Q must be n x n")
        if not np.allclose(self.Q, self.Q.T, atol=0):
            raise ValueError("Q must be symmetric")

    @property
    def n(self) -> int:
        return self.c.shape[0]


@dataclass
class IsingModel:
    """sum_i h_i Z_i + sum_{i<j} J_ij Z_i Z_j + const with Z_i = 1 - 2 b_i."""

    h: np.ndarray
    J: np.ndarray
    const: float

    def evaluate(self, z) -> float:
        z = np.asarray(z, dtype=float)
        return float(self.h @ z + z @ self.J @ z + self.const)


def mld_to_bipolar(inst: MldInstance) -> BipolarQuadratic:
    """Expand ||y - H x||^2 for real bipolar x.

    Q = Re(H^H H), c = -2 Re(H^H y), const = ||y||^2.  The imaginary parts of
    the Hermitian Gram matrix cancel against real x, so nothing is lost.
    """
    gram = inst.H.conj().T @ inst.H
    return BipolarQuadratic(
        Q=np.real(gram),
        c=-2.0 * np.real(inst.H.conj().T @ inst.y),
        const=float(np.real(np.vdot(inst.y, inst.y))),
    )


def bipolar_to_binary(bip: BipolarQuadratic) -> QuboProblem:
    """Substitute x = 2b - 1: Q' = 4Q, c' = 2c - 4 Q 1, offset picks up the rest."""
    Q = np.asarray(bip.Q, dtype=float)
    c = np.asarray(bip.c, dtype=float)
    ones = np.ones(Q.shape[0])
    return QuboProblem(
        Q=4.0 * Q,
        c=2.0 * c - 4.0 * (Q @ ones),
        offset=float(bip.const + ones @ Q @ ones - c @ ones),
    )


def to_ising(q: QuboProblem) -> IsingModel:
    """Substitute b_i = (1 - Z_i)/2.

    Diagonal entries of Q act linearly on bits (b^2 = b) and fold into h.
    """
    Q, c = q.Q, q.c
    h = -0.5 * (c + Q.sum(axis=1))
    J = np.triu(Q, k=1) * 0.5
    off_diag = Q.sum() - np.trace(Q)
    const = q.offset + 0.5 * c.sum() + 0.5 * np.trace(Q) + 0.25 * off_diag
    return IsingModel(h=h, J=J, const=float(const))


def evaluate_cost(q: QuboProblem, bits) -> float:
    """E(b) = b^T Q b + c^T b + offset for one bit vector."""
    b = np.asarray(bits, dtype=float)
    return float(b @ q.Q @ b + q.c @ b + q.offset)


def evaluate_all_costs(q: QuboProblem) -> np.ndarray:
    """Costs for every bit pattern, indexed by the integer sum_i b_i 2^i."""
    if q.n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"exhaustive evaluation capped at n = {BRUTE_FORCE_MAX_N}")
    total = 1 << q.n
    out = np.empty(total)
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        values = np.arange(start, stop)
        B = ((values[:, None] >> np.arange(q.n)[None, :]) & 1).astype(float)
        out[start:stop] = np.einsum("ki,ij,kj->k", B, q.Q, B) + B @ q.c + q.offset
    return out


def brute_force_min(q: QuboProblem) -> tuple[np.ndarray, float]:
    """Exhaustive minimum; ties resolve to the smallest bit-pattern integer."""
    costs = evaluate_all_costs(q)
    v = int(np.argmin(costs))  # argmin returns the first, i.e. smallest, index
    bits = np.array([(v >> i) & 1 for i in range(q.n)], dtype=np.int8)
    return bits, float(costs[v])


def bits_to_bipolar(bits) -> np.ndarray:
    """0 -> -1, 1 -> +1."""
    return 2.0 * np.asarray(bits, dtype=float) - 1.0


def bipolar_to_bits(x) -> np.ndarray:
    """+1 -> 1, -1 -> 0 (on the real part's sign, with sign(0) -> +1)."""
    return (np.real(np.asarray(x)) >= 0).astype(np.int8)


def mld_to_qubo(inst: MldInstance) -> QuboProblem:
    """Full chain: residual cost over x down to a QUBO over bits."""
    return bipolar_to_binary(mld_to_bipolar(inst))


__all__ = [
    "MldInstance",
    "BipolarQuadratic",
    "QuboProblem",
    "IsingModel",
    "mld_to_bipolar",
    "bipolar_to_binary",
    "to_ising",
    "evaluate_cost",
    "evaluate_all_costs",
    "brute_force_min",
    "bits_to_bipolar",
    "bipolar_to_bits",
    "mld_to_qubo",
    "bit_patterns",
]
