"""Dense complex linear algebra on small Hilbert spaces.

Matrices and kets are plain ``numpy`` arrays (complex128).  The helpers here
validate them, build the handful of states and projectors the rest of the
package needs, and provide a deterministic Hermitian eigensolver.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, ValidationError

MAX_DIM = 64

HERMITIAN_TOL = 1e-9
IDEMPOTENT_TOL = 1e-9
TRACE_TOL = 1e-9
PSD_TOL = 1e-9
KET_NORM_TOL = 1e-10

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SX, SY, SZ)

KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)
KET_PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)
KET_MINUS = np.array([1, -1], dtype=complex) / np.sqrt(2)


def as_cmatrix(a) -> np.ndarray:
    """Coerce ``a`` to a finite square complex matrix."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] < 1:
        raise DimensionError("empty matrix")
    if not np.all(np.isfinite(m)):
        raise ValidationError("finiteness", message="matrix has non-finite entries")
    return m


def as_ket(v, tol: float = KET_NORM_TOL) -> np.ndarray:
    k = np.asarray(v, dtype=complex).reshape(-1)
    dev = abs(np.linalg.norm(k) - 1.0)
    if dev > tol:
        raise ValidationError("normalization", dev)
    return k


def ketbra(k, b=None) -> np.ndarray:
    k = np.asarray(k, dtype=complex).reshape(-1)
    b = k if b is None else np.asarray(b, dtype=complex).reshape(-1)
    return np.outer(k, b.conj())


def dagger(a: np.ndarray) -> np.ndarray:
    return np.asarray(a).conj().T


def hermiticity_error(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - dagger(a)))


def is_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    return hermiticity_error(as_cmatrix(a)) <= tol


def check_hermitian(a, tol: float = HERMITIAN_TOL) -> np.ndarray:
    m = as_cmatrix(a)
    err = hermiticity_error(m)
    if err > tol:
        raise ValidationError("hermiticity", err)
    return m


def density_matrix(a, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Validate ``a`` as a density matrix and return it as a complex array.

    Raises :class:`ValidationError` naming the first violated invariant
    (``hermiticity``, ``trace`` or ``positivity``) with its magnitude.
    """
    m = check_hermitian(a, tol)
    tr_dev = abs(np.trace(m) - 1.0)
    if tr_dev > tol:
        raise ValidationError("trace", tr_dev)
    min_eig = float(np.linalg.eigvalsh((m + dagger(m)) / 2)[0])
    if min_eig < -tol:
        raise ValidationError("positivity", -min_eig)
    return m


def is_density_matrix(a, tol: float = HERMITIAN_TOL) -> bool:
    try:
        density_matrix(a, tol)
    except (ValidationError, DimensionError):
        return False
    return True


@dataclass(frozen=True, eq=False)
class Projector:
    """A validated orthogonal projector.  ``label`` records provenance."""

    mat: np.ndarray
    label: str = ""
    tol: float = field(default=IDEMPOTENT_TOL, repr=False)

    def __post_init__(self):
        m = check_hermitian(self.mat, self.tol)
        err = float(np.linalg.norm(m @ m - m))
        if err > self.tol:
            raise ValidationError("idempotence", err)
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @property
    def rank(self) -> int:
        return int(round(np.trace(self.mat).real))

    def complement(self) -> np.ndarray:
        return np.eye(self.dim) - self.mat

    def idempotence_error(self) -> float:
        return float(np.linalg.norm(self.mat @ self.mat - self.mat))

    @classmethod
    def from_ket(cls, k, label: str = "") -> "Projector":
        return cls(ketbra(as_ket(k)), label)


def tensor(a, b) -> np.ndarray:
    a, b = as_cmatrix(a), as_cmatrix(b)
    d = a.shape[0] * b.shape[0]
    if d > MAX_DIM:
        raise DimensionError(f"tensor product dimension {d} exceeds cap {MAX_DIM}")
    return np.kron(a, b)


def _canonical_phase(v: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    # first non-negligible amplitude made real positive
    idx = int(np.argmax(np.abs(v) > tol))
    a = v[idx]
    return v * (abs(a) / a)


def eig_hermitian(h, tol: float = HERMITIAN_TOL, degeneracy_tol: float = 1e-9):
    """Spectral decomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues ascending and
    eigenvectors as a list of 1-D kets.  Each eigenvector is phase-fixed so
    its first non-negligible amplitude is real and positive; eigenvectors of
    (numerically) degenerate eigenvalues are ordered lexicographically by
    (real, imag) amplitude, which makes the output reproducible.
    """
    m = check_hermitian(h, tol)
    m = (m + dagger(m)) / 2
    vals, vecs = np.linalg.eigh(m)
    kets = [_canonical_phase(vecs[:, i]) for i in range(len(vals))]

    # group degenerate eigenvalues, then sort each group by amplitude key
    order = []
    start = 0
    n = len(vals)
    while start < n:
        stop = start + 1
        while stop < n and vals[stop] - vals[start] <= degeneracy_tol:
            stop += 1
        group = list(range(start, stop))
        group.sort(key=lambda i: tuple(
            x for amp in np.round(kets[i], 12) for x in (amp.real, amp.imag)))
        order.extend(group)
        start = stop
    return np.array([vals[i] for i in order]), [kets[i] for i in order]


def frobenius_distance(a, b) -> float:
    a, b = as_cmatrix(a), as_cmatrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def bloch_state(theta: float, phi: float) -> np.ndarray:
    """``cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>``."""
    return np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)], dtype=complex)


def bloch_vector(rho) -> np.ndarray:
    m = as_cmatrix(rho)
    if m.shape != (2, 2):
        raise DimensionError("Bloch vector needs a qubit operator")
    return np.array([np.trace(m @ p).real for p in PAULIS])


def from_bloch_vector(r) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    return (I2 + sum(ri * p for ri, p in zip(r, PAULIS))) / 2


SIC_AZIMUTHS = (0.0, 2 * np.pi / 3, 4 * np.pi / 3)


def sic_qubit() -> list[Projector]:
    """Tetrahedral qubit SIC anchored at ``|0>``.

    The other three Bloch vectors sit at polar angle ``arccos(-1/3)`` with
    azimuths 0, 2pi/3, 4pi/3.  The four projectors sum to ``2 * I``.
    """
    theta = np.arccos(-1.0 / 3.0)
    kets = [KET0] + [bloch_state(theta, phi) for phi in SIC_AZIMUTHS]
    return [Projector.from_ket(k, label=f"Q{i}") for i, k in enumerate(kets)]


def check_basis(basis, dim: int | None = None, tol: float = 1e-10) -> np.ndarray:
    """Stack ``basis`` as columns of a unitary; raise if incomplete or not orthonormal."""
    cols = np.column_stack([np.asarray(k, dtype=complex).reshape(-1) for k in basis])
    d = cols.shape[0]
    if dim is not None and d != dim:
        raise DimensionError(f"basis vectors have dimension {d}, expected {dim}")
    if cols.shape[1] != d:
        raise ValidationError("completeness", message=f"basis has {cols.shape[1]} vectors in dimension {d}")
    err = float(np.linalg.norm(dagger(cols) @ cols - np.eye(d)))
    if err > tol:
        raise ValidationError("orthonormality", err)
    return cols


def dephase(rho, basis=None) -> np.ndarray:
    """Zero the off-diagonal entries of ``rho`` in ``basis`` (computational by default)."""
    m = density_matrix(rho)
    d = m.shape[0]
    u = np.eye(d, dtype=complex) if basis is None else check_basis(basis, d)
    diag = np.real(np.einsum("ji,jk,ki->i", u.conj(), m, u))
    return density_matrix((u * diag) @ dagger(u))


def partial_transpose(rho, dims=(2, 2), sys: int = 1) -> np.ndarray:
    """Partial transpose of a bipartite operator on subsystem ``sys``."""
    m = as_cmatrix(rho)
    da, db = dims
    if m.shape[0] != da * db:
        raise DimensionError(f"operator of dim {m.shape[0]} does not match subsystems {dims}")
    t = m.reshape(da, db, da, db)
    if sys == 1:
        t = t.transpose(0, 3, 2, 1)
    elif sys == 0:
        t = t.transpose(2, 1, 0, 3)
    else:
        raise ValueError("sys must be 0 or 1")
    return t.reshape(da * db, da * db)


def random_density_matrix(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Ginibre-ensemble density matrix."""
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    m = g @ dagger(g)
    return m / np.trace(m).real


def haar_ket(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (g + dagger(g)) / 2
