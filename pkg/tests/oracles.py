"""Independent reference computations used by the tests.

Nothing here imports the package's pipeline code; only plain numpy/sympy.
"""
import itertools

import numpy as np


def brute_force_distribution(mats, rho_ext):
    """Explicit loop over outcome strings with left-to-right matrix products."""
    d = rho_ext.shape[0]
    eye = np.eye(d)
    out = {}
    for bits in itertools.product((0, 1), repeat=len(mats)):
        prod = eye.astype(complex)
        for b, p in zip(bits, mats):
            prod = prod @ (p if b == 0 else eye - p)
        out["".join(map(str, bits))] = np.trace(prod @ rho_ext)
    return out


def kron_by_hand(a, b):
    a, b = np.asarray(a), np.asarray(b)
    n, m = a.shape[0], b.shape[0]
    out = np.zeros((n * m, n * m), dtype=complex)
    for i in range(n):
        for j in range(n):
            for k in range(m):
                for l in range(m):
                    out[i * m + k, j * m + l] = a[i, j] * b[k, l]
    return out


def closest_z_axis_grid(rho, n=20001):
    """Minimize ||rho - (I + r Z)/2||_F over a grid of r in [-1, 1]."""
    z = np.diag([1.0, -1.0])
    best = (np.inf, None)
    for r in np.linspace(-1, 1, n):
        s = (np.eye(2) + r * z) / 2
        dist = np.linalg.norm(rho - s)
        if dist < best[0]:
            best = (dist, s)
    return best


def offdiag_norm(rho):
    return float(np.sqrt(np.sum(np.abs(rho) ** 2) - np.sum(np.abs(np.diag(rho)) ** 2)))


def sic_dual_frame_inverse(probs, sic_mats):
    """Closed-form qubit SIC inversion: rho = sum_k p_k (3 Q_k - I) / 2."""
    return sum(p * (3 * q - np.eye(2)) for p, q in zip(probs, sic_mats)) / 2


def tetrahedron_bloch_vectors():
    t = np.arccos(-1 / 3)
    vs = [np.array([0.0, 0.0, 1.0])]
    for phi in (0, 2 * np.pi / 3, 4 * np.pi / 3):
        vs.append(np.array([np.sin(t) * np.cos(phi), np.sin(t) * np.sin(phi), np.cos(t)]))
    return vs


def partial_transpose_by_hand(rho):
    out = np.zeros((4, 4), dtype=complex)
    for a in range(2):
        for b in range(2):
            for c in range(2):
                for d in range(2):
                    out[2 * a + b, 2 * c + d] = rho[2 * a + d, 2 * c + b]
    return out


def random_state(dim, rng):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_hermitian(dim, rng):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (g + g.conj().T) / 2
