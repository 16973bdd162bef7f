"""Resource witnesses and their extension to the system-plus-ancilla space."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import qcore, resources
from .errors import DegenerateInputError, DimensionError, KDError, NotDetectedError, ValidationError

GEOMETRIC = "geometric"
PPT = "ppt"
USER = "user"

ZERO_EIGENVALUE_TOL = 1e-12

ANCILLA0 = qcore.ketbra(qcore.KET0)
ANCILLA1 = qcore.ketbra(qcore.KET1)


@dataclass(frozen=True, eq=False)
class Witness:
    w: np.ndarray
    model: object = USER
    source: str = USER

    def __post_init__(self):
        object.__setattr__(self, "w", qcore.check_hermitian(self.w))

    @property
    def dim(self) -> int:
        return self.w.shape[0]

    def expectation(self, rho) -> float:
        return float(np.trace(self.w @ np.asarray(rho)).real)

    def spectrum(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.w)


@dataclass(frozen=True, eq=False)
class ExtendedWitness:
    """``wprime = scale * (w tensor |0><0|)`` with spectrum inside [-1/4, 1/4]."""

    wprime: np.ndarray
    scale: float
    base: Witness

    @property
    def dim(self) -> int:
        return self.wprime.shape[0]

    def expectation(self, rho) -> float:
        """``Tr[wprime (rho tensor |0><0|)]`` for a state on the original space."""
        return float(np.trace(self.wprime @ extend_state(rho)).real)


def user_witness(w) -> Witness:
    return Witness(w, USER, USER)


def extend_state(rho) -> np.ndarray:
    """``rho tensor |0><0|``."""
    return qcore.tensor(rho, ANCILLA0)


def geometric_witness(rho, model: resources.ClassicalSetModel, tol: float = 1e-9) -> Witness:
    """Witness whose expectation on ``rho`` is minus its distance to the classical set.

    ``W = (sigma0 - rho - Tr[sigma0 (sigma0 - rho)] I) / ||rho - sigma0||_F``
    with ``sigma0`` the Frobenius-closest classical state.
    """
    rho = qcore.density_matrix(rho)
    sigma0, dist = resources.closest_classical(rho, model)
    if dist <= tol:
        raise DegenerateInputError(
            f"state is classical (distance {dist:.3g}): geometric witness undefined")
    delta = sigma0 - rho
    offset = np.trace(sigma0 @ delta).real
    w = (delta - offset * np.eye(rho.shape[0])) / dist
    return Witness((w + qcore.dagger(w)) / 2, model, GEOMETRIC)


def ppt_entanglement_witness(rho) -> Witness:
    """Two-qubit witness ``(|eta><eta|)^Gamma``, eta the most negative eigenvector of ``rho^Gamma``."""
    rho = qcore.density_matrix(rho)
    if rho.shape != (4, 4):
        raise DimensionError("PPT witness is defined for two-qubit states")
    vals, vecs = qcore.eig_hermitian(qcore.partial_transpose(rho))
    if vals[0] >= -1e-12:
        raise NotDetectedError(
            f"state has positive partial transpose (min eigenvalue {vals[0]:.3g}); not detected")
    w = qcore.partial_transpose(qcore.ketbra(vecs[0]))
    return Witness(w, resources.separable_two_qubit(), PPT)


def scale_for(w: Witness) -> float:
    lam_max = float(np.max(np.abs(w.spectrum())))
    if lam_max <= ZERO_EIGENVALUE_TOL:
        raise ValidationError("nonzero", lam_max, "witness is zero")
    return min(1.0, 1.0 / (4.0 * lam_max))


def extend_and_scale(w: Witness) -> ExtendedWitness:
    """Embed ``w`` as ``s * (w tensor |0><0|)`` with ``s = min(1, 1/(4 lambda_max))``."""
    if not isinstance(w, Witness):
        w = user_witness(w)
    s = scale_for(w)
    return ExtendedWitness(s * qcore.tensor(w.w, ANCILLA0), s, w)


def witness_for(rho, model: resources.ClassicalSetModel) -> Witness:
    """Pick the witness source appropriate to ``model``."""
    if model.kind == resources.SEPARABLE_2Q:
        return ppt_entanglement_witness(rho)
    if model.has_exact_solver:
        return geometric_witness(rho, model)
    raise KDError(f"no witness source for model {model.kind}")
