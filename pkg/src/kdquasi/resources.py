"""Classical-state sets: membership, closest classical state, sampling."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import qcore
from .errors import DimensionError, UnsupportedModelError, ValidationError

QUBIT_Z = "qubit-z-axis"
INCOHERENT = "incoherent"
SEPARABLE_2Q = "separable-2qubit-sampled"
KINDS = (QUBIT_Z, INCOHERENT, SEPARABLE_2Q)

# short names accepted on the command line
ALIASES = {
    "qubit-z": QUBIT_Z,
    "z": QUBIT_Z,
    "qubit-z-axis": QUBIT_Z,
    "incoherent": INCOHERENT,
    "separable": SEPARABLE_2Q,
    "separable-2qubit": SEPARABLE_2Q,
    "separable-2qubit-sampled": SEPARABLE_2Q,
}


@dataclass(frozen=True, eq=False)
class ClassicalSetModel:
    """A closed convex set of "free" states.

    ``qubit-z-axis``: qubit states with Bloch vector along z.
    ``incoherent``: states diagonal in ``basis`` (computational when None).
    ``separable-2qubit-sampled``: separable two-qubit states; membership is
    exact via PPT, but no closest-state solver exists.
    """

    kind: str
    dim: int
    basis: tuple | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown classical-set kind {self.kind!r}")
        if self.kind == QUBIT_Z and self.dim != 2:
            raise DimensionError("qubit-z-axis model requires dim = 2")
        if self.kind == SEPARABLE_2Q and self.dim != 4:
            raise DimensionError("separable-2qubit-sampled model requires dim = 4")
        if self.basis is not None:
            if self.kind != INCOHERENT:
                raise ValueError("only the incoherent model takes a basis")
            qcore.check_basis(self.basis, self.dim)
            object.__setattr__(self, "basis", tuple(np.asarray(k, dtype=complex) for k in self.basis))

    @property
    def has_exact_solver(self) -> bool:
        return self.kind in (QUBIT_Z, INCOHERENT)

    def unitary(self) -> np.ndarray:
        if self.basis is None:
            return np.eye(self.dim, dtype=complex)
        return qcore.check_basis(self.basis, self.dim)

    def describe(self) -> str:
        if self.kind == INCOHERENT:
            return f"{INCOHERENT}({'computational' if self.basis is None else 'custom'}, dim={self.dim})"
        return self.kind


def qubit_z_axis() -> ClassicalSetModel:
    return ClassicalSetModel(QUBIT_Z, 2)


def incoherent(dim: int, basis=None) -> ClassicalSetModel:
    return ClassicalSetModel(INCOHERENT, dim, None if basis is None else tuple(basis))


def separable_two_qubit() -> ClassicalSetModel:
    return ClassicalSetModel(SEPARABLE_2Q, 4)


def model_from_name(name: str, dim: int | None = None) -> ClassicalSetModel:
    """Build a model from a CLI-style name (``qubit-z``, ``incoherent``, ``separable``)."""
    kind = ALIASES.get(name)
    if kind is None:
        raise ValueError(f"unknown model {name!r}; choose from {sorted(ALIASES)}")
    if kind == QUBIT_Z:
        return qubit_z_axis()
    if kind == SEPARABLE_2Q:
        return separable_two_qubit()
    return incoherent(2 if dim is None else dim)


def _check_dim(rho: np.ndarray, model: ClassicalSetModel):
    if rho.shape[0] != model.dim:
        raise DimensionError(f"state has dim {rho.shape[0]}, model {model.describe()} has dim {model.dim}")


def closest_classical(rho, model: ClassicalSetModel):
    """Frobenius-closest classical state and its distance.

    Only the analytic models are supported.  For the z-axis the Bloch vector
    is projected onto z; for incoherent sets the state is dephased in the
    model basis.
    """
    rho = qcore.density_matrix(rho)
    _check_dim(rho, model)
    if model.kind == QUBIT_Z:
        r = qcore.bloch_vector(rho)
        sigma0 = qcore.from_bloch_vector([0.0, 0.0, r[2]])
    elif model.kind == INCOHERENT:
        sigma0 = qcore.dephase(rho, model.basis)
    else:
        raise UnsupportedModelError(
            f"no exact closest-state solver for {model.kind}; supply a witness instead")
    return sigma0, qcore.frobenius_distance(rho, sigma0)


def is_classical(rho, model: ClassicalSetModel, tol: float = 1e-9) -> bool:
    rho = qcore.density_matrix(rho)
    _check_dim(rho, model)
    if model.kind == SEPARABLE_2Q:
        # PPT is necessary and sufficient for two qubits
        return bool(np.linalg.eigvalsh(qcore.partial_transpose(rho))[0] >= -tol)
    _, dist = closest_classical(rho, model)
    return dist <= tol


def sample_classical(model: ClassicalSetModel, n: int, seed: int) -> list[np.ndarray]:
    """Draw ``n`` classical states, deterministically for a fixed ``seed``.

    z-axis: ``r`` uniform in [-1, 1].  Incoherent: uniform diagonal weights
    normalized to one, rotated into the model basis.  Separable: mixtures of
    up to four Haar-random product states.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    out = []
    if model.kind == QUBIT_Z:
        for r in rng.uniform(-1.0, 1.0, size=n):
            out.append(qcore.from_bloch_vector([0.0, 0.0, r]))
    elif model.kind == INCOHERENT:
        u = model.unitary()
        for _ in range(n):
            w = rng.uniform(size=model.dim)
            w = w / w.sum()
            out.append((u * w) @ qcore.dagger(u))
    else:
        for _ in range(n):
            m = int(rng.integers(1, 5))
            weights = rng.uniform(size=m)
            weights = weights / weights.sum()
            sigma = np.zeros((4, 4), dtype=complex)
            for wt in weights:
                prod = np.kron(qcore.haar_ket(2, rng), qcore.haar_ket(2, rng))
                sigma += wt * qcore.ketbra(prod)
            out.append(sigma)
    for s in out:
        if not is_classical(s, model, 1e-9):
            raise ValidationError("classicality", message="sampler produced a non-classical state")
    return out
