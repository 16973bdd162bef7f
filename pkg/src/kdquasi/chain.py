"""Factorization of an extended witness into an ordered product of projectors.

Each eigenpair of the base witness gets its own block acting on
``span{|k>|0>, |k>|1>}``.  A positive eigenvalue ``a`` is realised as
``P0 Pphi P0`` and a negative eigenvalue ``-b`` as ``P0 P3 P2 P1 P0``.  Since
blocks belonging to different eigenvectors live on orthogonal subspaces,
their projectors can be summed slot by slot into a single five-slot chain
``Pi0 Pi3 Pi2 Pi1 Pi0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import qcore
from .errors import FactorizationError, ValidationError
from .witness import ZERO_EIGENVALUE_TOL, ExtendedWitness

QUARTER = 0.25
_RANGE_SLACK = 1e-12

SLOT_ORDER = ("Pi0", "Pi3", "Pi2", "Pi1", "Pi0")


@dataclass(frozen=True, eq=False)
class ProjectorChain:
    """Ordered projectors whose product reproduces ``wprime``.

    ``projectors`` is in evaluation order, i.e. the product is
    ``projectors[0] @ projectors[1] @ ... @ projectors[-1]``.
    """

    projectors: tuple
    dim: int
    scale: float = 1.0
    blocks: list = field(default_factory=list, repr=False)

    @property
    def labels(self) -> list[str]:
        return [p.label for p in self.projectors]

    def __len__(self):
        return len(self.projectors)

    def product(self) -> np.ndarray:
        out = np.eye(self.dim, dtype=complex)
        for p in self.projectors:
            out = out @ p.mat
        return out


def _check_range(x: float, name: str):
    if not (0.0 < x <= QUARTER + _RANGE_SLACK):
        raise FactorizationError(f"{name} = {x!r} outside (0, 1/4]")


def _split(k0):
    """Given ``|k>|0>`` on the extended space return ``(|k>|0>, |k>|1>)``."""
    k0 = qcore.as_ket(k0)
    if len(k0) % 2:
        raise FactorizationError("block ket must live on the system-plus-ancilla space")
    pairs = k0.reshape(-1, 2)
    if np.linalg.norm(pairs[:, 1]) > 1e-10:
        raise FactorizationError("block ket must have the form |k>|0>")
    return k0, np.kron(pairs[:, 0], qcore.KET1)


def positive_block(a: float, k):
    """Projectors ``(|k0><k0|, |phi><phi|)`` with ``P0 Pphi P0 = a |k0><k0|``.

    ``k`` is the extended ket ``|k+>|0>``.
    """
    _check_range(a, "a")
    a = min(a, QUARTER)
    k0, k1 = _split(k)
    phi = np.sqrt(a) * k0 + np.sqrt(1.0 - a) * k1
    return qcore.Projector.from_ket(k0, "P+0"), qcore.Projector.from_ket(phi, "P+1")


def negative_lambda(b: float) -> float:
    """Root of ``lam (1 - lam) = b`` in (0, 1/2]."""
    return (1.0 - np.sqrt(max(0.0, 1.0 - 4.0 * b))) / 2.0


def negative_block(b: float, k):
    """Projectors ``(P0, P1, P2, P3)`` with ``P0 P3 P2 P1 P0 = -b |k0><k0|``.

    ``psi1 = sqrt(1-lam)|k1> - sqrt(lam)|k0>``, ``psi2 = |k1>``,
    ``psi3 = sqrt(1-lam)|k1> + sqrt(lam)|k0>``.
    """
    _check_range(b, "b")
    b = min(b, QUARTER)
    lam = negative_lambda(b)
    k0, k1 = _split(k)
    psi1 = np.sqrt(1.0 - lam) * k1 - np.sqrt(lam) * k0
    psi2 = k1
    psi3 = np.sqrt(1.0 - lam) * k1 + np.sqrt(lam) * k0
    return (
        qcore.Projector.from_ket(k0, "P-0"),
        qcore.Projector.from_ket(psi1, "P-1"),
        qcore.Projector.from_ket(psi2, "P-2"),
        qcore.Projector.from_ket(psi3, "P-3"),
    )


@dataclass(frozen=True)
class Block:
    """One eigenpair's contribution: ``value`` is the scaled eigenvalue."""

    value: float
    ket: np.ndarray
    slots: tuple  # (P0, P1, P2, P3) matrices


def witness_blocks(ew: ExtendedWitness) -> list[Block]:
    """Per-eigenvector blocks of ``ew``; eigenvalues below 1e-12 are skipped."""
    vals, vecs = qcore.eig_hermitian(ew.base.w)
    blocks = []
    for lam, k in zip(vals, vecs):
        x = ew.scale * lam
        if abs(x) <= ZERO_EIGENVALUE_TOL:
            continue
        if x > 0:
            p0, p1 = positive_block(x, np.kron(k, qcore.KET0))
            # Pphi repeated in slots 1-3 is harmless by idempotence
            slots = (p0.mat, p1.mat, p1.mat, p1.mat)
        else:
            p0, p1, p2, p3 = negative_block(-x, np.kron(k, qcore.KET0))
            slots = (p0.mat, p1.mat, p2.mat, p3.mat)
        blocks.append(Block(float(x), k, slots))
    return blocks


def assemble_chain(ew: ExtendedWitness, tol: float = 1e-9) -> ProjectorChain:
    """Five-slot chain ``(Pi0, Pi3, Pi2, Pi1, Pi0)`` with product ``ew.wprime``."""
    blocks = witness_blocks(ew)
    if not blocks:
        raise FactorizationError("witness has an all-zero spectrum")
    d = ew.dim
    slot = [np.zeros((d, d), dtype=complex) for _ in range(4)]
    for blk in blocks:
        for m in range(4):
            slot[m] += blk.slots[m]
    pis = [qcore.Projector(slot[m], f"Pi{m}") for m in range(4)]
    chain = ProjectorChain((pis[0], pis[3], pis[2], pis[1], pis[0]), d, ew.scale, blocks)
    residual = float(np.linalg.norm(chain.product() - ew.wprime))
    if residual > tol:
        raise FactorizationError(f"chain product residual {residual:.3e} exceeds {tol:.0e}")
    return chain


def verify_chain(chain: ProjectorChain, ew: ExtendedWitness, tol: float = 1e-9) -> float:
    """Frobenius residual ``||Pi0 Pi3 Pi2 Pi1 Pi0 - wprime||``.

    Every projector's idempotence is re-checked at ``tol``.
    """
    if chain.dim != ew.dim:
        raise ValueError(f"chain dim {chain.dim} does not match witness dim {ew.dim}")
    for p in chain.projectors:
        err = p.idempotence_error()
        if err > tol:
            raise ValidationError("idempotence", err, f"slot {p.label}: idempotence error {err:.3e}")
    return float(np.linalg.norm(chain.product() - ew.wprime))


def user_chain(mats, labels=None, dim: int | None = None, scale: float = 1.0) -> ProjectorChain:
    """Wrap an arbitrary ordered list of projector matrices as a chain."""
    labels = labels or [f"S{i}" for i in range(len(mats))]
    projs = tuple(p if isinstance(p, qcore.Projector) else qcore.Projector(p, lab)
                  for p, lab in zip(mats, labels))
    return ProjectorChain(projs, dim or projs[0].dim, scale)
