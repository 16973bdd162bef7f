"""Kirkwood-Dirac type quasiprobabilities over binary projector chains.

For an ordered chain ``(P_0, ..., P_{L-1})`` every slot has two outcomes,
``pi^0 = P`` and ``pi^1 = I - P``, and

    P(x_0, ..., x_{L-1} | rho) = Re Tr[pi^{x_0} ... pi^{x_{L-1}} rho].

Summing over any slot replaces its factor by the identity, which is why the
distribution is normalized and why leftmost single-slot marginals are Born
probabilities.
"""
from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field

import numpy as np

from . import qcore, resources
from .chain import ProjectorChain, assemble_chain, user_chain
from .errors import DimensionError, ReconstructionError
from .witness import ExtendedWitness, Witness, extend_and_scale, extend_state, witness_for

RECONSTRUCTION_TOL = 1e-6


@dataclass(frozen=True)
class QuasiDistribution:
    """Real quasiprobabilities keyed by outcome bitstring (``"0100..."``)."""

    num_slots: int
    values: dict
    scale: float = 1.0
    labels: tuple = ()
    imag: dict = field(default_factory=dict, repr=False)

    def __getitem__(self, outcome) -> float:
        if not isinstance(outcome, str):
            outcome = "".join(str(int(b)) for b in outcome)
        return self.values[outcome]

    def __iter__(self):
        return iter(self.values.items())

    def __len__(self):
        return len(self.values)

    @property
    def all_zeros(self) -> float:
        return self.values["0" * self.num_slots]

    def total(self) -> float:
        return float(sum(self.values.values()))

    def max_imag(self) -> float:
        return max((abs(v) for v in self.imag.values()), default=0.0)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["outcome", "value"])
        for k, v in self.values.items():
            w.writerow([k, f"{v:.16e}"])
        return buf.getvalue()

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            fh.write(self.to_csv())


@dataclass(frozen=True)
class Event:
    """A union of outcome strings."""

    members: frozenset

    def __init__(self, members):
        object.__setattr__(self, "members", frozenset(members))

    def probability(self, dist: QuasiDistribution) -> float:
        return float(sum(dist.values[m] for m in self.members))

    def complement(self, num_slots: int) -> "Event":
        everything = {"".join(b) for b in itertools.product("01", repeat=num_slots)}
        return Event(everything - self.members)


def _outcome_products(mats: list[np.ndarray]) -> np.ndarray:
    """Stack of ``2**L`` ordered products, lexicographic in the outcome string."""
    d = mats[0].shape[0]
    eye = np.eye(d, dtype=complex)
    prods = eye[None, :, :]
    for p in mats:
        both = np.stack([p, eye - p])  # (2, d, d)
        prods = np.einsum("aij,bjk->abik", prods, both).reshape(-1, d, d)
    return prods


def evaluate_distribution(chain: ProjectorChain, rho_ext) -> QuasiDistribution:
    """Enumerate all ``2**L`` outcomes of ``chain`` against ``rho_ext``.

    Values are real parts of the (generally complex) traces.
    """
    rho_ext = qcore.as_cmatrix(rho_ext)
    if rho_ext.shape[0] != chain.dim:
        raise DimensionError(f"state dim {rho_ext.shape[0]} does not match chain dim {chain.dim}")
    mats = [p.mat for p in chain.projectors]
    L = len(mats)
    traces = np.einsum("nij,ji->n", _outcome_products(mats), rho_ext)
    keys = ["".join(bits) for bits in itertools.product("01", repeat=L)]
    values = {k: float(t.real) for k, t in zip(keys, traces)}
    imag = {k: float(t.imag) for k, t in zip(keys, traces)}
    return QuasiDistribution(L, values, chain.scale, tuple(chain.labels), imag)


def total_negativity(dist) -> float:
    """Sum of ``|min(P, 0)|`` over outcomes.

    Accepts a :class:`QuasiDistribution`, a mapping, or a plain sequence of
    values (e.g. an aggregated two-event distribution).
    """
    if isinstance(dist, QuasiDistribution):
        vals = dist.values.values()
    elif isinstance(dist, dict):
        vals = dist.values()
    else:
        vals = dist
    return float(sum(-v for v in vals if v < 0))


def two_event_split(dist: QuasiDistribution) -> tuple[float, float]:
    """``(P0, P1)``: the all-zeros event and its complement."""
    p0 = dist.all_zeros
    return p0, dist.total() - p0


def marginal(dist: QuasiDistribution, assignment: dict) -> float:
    """Sum of all outcomes consistent with a partial ``{slot: bit}`` assignment."""
    for slot, bit in assignment.items():
        if not 0 <= slot < dist.num_slots or bit not in (0, 1):
            raise ValueError(f"invalid assignment {slot}->{bit} for {dist.num_slots} slots")
    fixed = [(s, str(b)) for s, b in assignment.items()]
    return float(sum(v for k, v in dist.values.items() if all(k[s] == b for s, b in fixed)))


def witness_distribution(rho, ew: ExtendedWitness) -> tuple[ProjectorChain, QuasiDistribution]:
    chain = assemble_chain(ew)
    return chain, evaluate_distribution(chain, extend_state(rho))


# --- informationally complete distribution ---------------------------------

def sic_frame() -> np.ndarray:
    """Rows ``vec(Q_k)^dagger`` so that ``frame @ vec(rho) = (Tr[Q_k rho])_k``."""
    return np.array([p.mat.conj().reshape(-1) for p in qcore.sic_qubit()])


def sic_marginals(rho) -> np.ndarray:
    rho = qcore.as_cmatrix(rho)
    return np.array([np.trace(p.mat @ rho).real for p in qcore.sic_qubit()])


def reconstruct_state(marginals, tol: float = RECONSTRUCTION_TOL) -> np.ndarray:
    """Linear inversion of the four SIC probabilities ``Tr[Q_k rho]``.

    The SIC operators span the qubit operator space, so the 4x4 frame system
    has a unique solution.  Raises :class:`ReconstructionError` when that
    solution is not a state within ``tol``.
    """
    p = np.asarray(marginals, dtype=float).reshape(-1)
    if p.shape != (4,):
        raise ReconstructionError(f"expected 4 SIC marginals, got {p.shape[0]}")
    rho = np.linalg.solve(sic_frame(), p.astype(complex)).reshape(2, 2)
    rho = (rho + qcore.dagger(rho)) / 2
    tr_dev = abs(np.trace(rho).real - 1.0)
    if tr_dev > tol:
        raise ReconstructionError(f"marginals inconsistent with a state: trace off by {tr_dev:.3e}")
    min_eig = float(np.linalg.eigvalsh(rho)[0])
    if min_eig < -tol:
        raise ReconstructionError(f"reconstruction not positive: min eigenvalue {min_eig:.3e}")
    return rho


@dataclass(frozen=True, eq=False)
class InfoComplete:
    py: list
    marginals: list
    dist: QuasiDistribution
    chain: ProjectorChain
    ew: ExtendedWitness

    @property
    def witness_event(self) -> float:
        return self.py[len(self.marginals)]


def build_infocomplete(rho, model: resources.ClassicalSetModel | None = None,
                       witness: Witness | None = None) -> InfoComplete:
    """SIC slots ``Q_k tensor I`` followed by the witness chain.

    ``py[0..3]`` are SIC marginals, ``py[4]`` the witness event (all witness
    slots 0) and ``py[5]`` the remainder ``1 - sum``.  Pass ``witness`` to
    use a fixed reference witness, e.g. for classical inputs where the
    geometric witness is undefined.
    """
    rho = qcore.density_matrix(rho)
    if rho.shape != (2, 2):
        raise DimensionError("the SIC-based distribution is implemented for qubits")
    if witness is None:
        if model is None:
            raise ValueError("need a model or an explicit witness")
        witness = witness_for(rho, model)
    ew = extend_and_scale(witness)
    wchain = assemble_chain(ew)
    sic = [qcore.Projector(qcore.tensor(q.mat, qcore.I2), f"{q.label}xI") for q in qcore.sic_qubit()]
    chain = user_chain(list(sic) + list(wchain.projectors), dim=ew.dim, scale=ew.scale,
                       labels=[p.label for p in sic] + wchain.labels)
    dist = evaluate_distribution(chain, extend_state(rho))
    nsic = len(sic)
    marg = [marginal(dist, {k: 0}) for k in range(nsic)]
    wev = marginal(dist, {k: 0 for k in range(nsic, dist.num_slots)})
    py = marg + [wev]
    py.append(1.0 - sum(py))
    return InfoComplete(py, marg, dist, chain, ew)


def infocomplete_distribution(rho, model: resources.ClassicalSetModel | None = None,
                              witness: Witness | None = None):
    ic = build_infocomplete(rho, model, witness)
    return ic.py, ic.marginals
