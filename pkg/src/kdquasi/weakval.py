"""Weak values and the conical weak-value decomposition of a witness expectation."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import qcore
from .errors import UndefinedWeakValueError
from .witness import ZERO_EIGENVALUE_TOL, ExtendedWitness, extend_state

DEFAULT_P = 0.75
POSTSELECTION_TOL = 1e-12

# sqrt(1/2) (|0> - |1>)
ANCILLA_PRE = np.array([1, -1], dtype=complex) / np.sqrt(2)


def weak_value(pre, obs, rho_ext) -> complex:
    """Post-selected weak value ``Tr[pre obs rho] / Tr[pre rho]``."""
    pre = pre.mat if isinstance(pre, qcore.Projector) else qcore.as_cmatrix(pre)
    obs = obs.mat if isinstance(obs, qcore.Projector) else qcore.as_cmatrix(obs)
    rho_ext = qcore.as_cmatrix(rho_ext)
    denom = np.trace(pre @ rho_ext)
    if abs(denom) <= POSTSELECTION_TOL:
        raise UndefinedWeakValueError(f"post-selection probability {abs(denom):.3e} vanishes")
    return complex(np.trace(pre @ obs @ rho_ext) / denom)


def ancilla_post(p: float) -> np.ndarray:
    """``sqrt(1-p)|0> + sqrt(p)|1>``."""
    return np.array([np.sqrt(1 - p), np.sqrt(p)], dtype=complex)


def sandwich_coefficient(p: float) -> float:
    """``<0|psi1><psi1|psi2><psi2|0>`` evaluated as a matrix product."""
    proj0 = qcore.ketbra(qcore.KET0)
    m = proj0 @ qcore.ketbra(ANCILLA_PRE) @ qcore.ketbra(ancilla_post(p)) @ proj0
    return float(m[0, 0].real)


def normalization_constant(p: float) -> float:
    """``c = 2 / (sqrt(p (1-p)) - 1 + p)``, positive for 1/2 < p < 1."""
    return 2.0 / (np.sqrt(p * (1 - p)) - 1 + p)


def _check_p(p: float):
    if not 0.5 < p < 1.0:
        raise ValueError(f"p = {p!r} must lie strictly between 1/2 and 1")


@dataclass
class WeakValueTerm:
    coefficient: float
    pre_selection: qcore.Projector
    observable: qcore.Projector
    value: complex | None
    p_param: float | None = None
    eigenvalue: float = 0.0
    label: str = ""

    @property
    def defined(self) -> bool:
        return self.value is not None

    @property
    def contribution(self) -> float:
        return 0.0 if self.value is None else self.coefficient * self.value.real


@dataclass
class Decomposition:
    terms: list
    target: float
    partial: bool = False

    @property
    def total(self) -> float:
        return float(sum(t.contribution for t in self.terms))

    @property
    def residual(self) -> float:
        # undefined terms carry coefficients proportional to their vanishing
        # post-selection probability, so the identity stays checkable
        return abs(self.total - self.target)

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, i):
        return self.terms[i]


def conical_decomposition(ew: ExtendedWitness, rho, p: float = DEFAULT_P) -> Decomposition:
    """Write ``Tr[wprime (rho x |0><0|)]`` as ``sum_j k_j Re(weak value_j)``.

    Positive eigenvalue ``a`` with eigenvector ``k``: pre = obs = ``|k0><k0|``,
    coefficient ``a <k|rho|k>``, weak value 1.  Negative eigenvalue ``-b``:
    pre = ``|k><k| x |psi1><psi1|``, obs = ``|k><k| x |psi2><psi2|`` and
    coefficient ``b c Tr[pre rho_ext]``; this weak value equals
    ``1 - p - sqrt(p(1-p)) < 0``, so every defined negative term is anomalous.

    A term whose post-selection probability vanishes keeps ``value=None``
    (contributing zero) and marks the decomposition partial.
    """
    _check_p(p)
    rho = qcore.density_matrix(rho)
    rho_ext = extend_state(rho)
    c = normalization_constant(p)
    pre_anc = qcore.ketbra(ANCILLA_PRE)
    post_anc = qcore.ketbra(ancilla_post(p))
    vals, vecs = qcore.eig_hermitian(ew.base.w)
    scaled = [(ew.scale * lam, k) for lam, k in zip(vals, vecs)]
    # positive contributions first, as j = 0, 1, ...; negative ones follow
    ordered = [t for t in scaled if t[0] > ZERO_EIGENVALUE_TOL]
    ordered += [t for t in scaled if t[0] < -ZERO_EIGENVALUE_TOL]
    terms = []
    partial = False
    for j, (x, k) in enumerate(ordered):
        kk = qcore.ketbra(k)
        if x > 0:
            pre = obs = qcore.Projector(qcore.tensor(kk, qcore.ketbra(qcore.KET0)), f"k{j}x0")
            coeff = x * float(np.trace(kk @ rho).real)
            pp = None
        else:
            pre = qcore.Projector(qcore.tensor(kk, pre_anc), f"k{j}xpsi1")
            obs = qcore.Projector(qcore.tensor(kk, post_anc), f"k{j}xpsi2")
            coeff = -x * c * float(np.trace(pre.mat @ rho_ext).real)
            pp = p
        try:
            value = weak_value(pre, obs, rho_ext)
        except UndefinedWeakValueError:
            value, partial, coeff = None, True, 0.0
        terms.append(WeakValueTerm(max(coeff, 0.0), pre, obs, value, pp, float(x), f"j={j}"))
    return Decomposition(terms, ew.expectation(rho), partial)


@dataclass
class AnomalyReport:
    flags: list = field(default_factory=list)  # indices of anomalous terms
    min_real: float | None = None
    undefined: list = field(default_factory=list)

    @property
    def any(self) -> bool:
        return bool(self.flags)


def detect_anomalous(terms, tol: float = 1e-9) -> AnomalyReport:
    """Flag projector weak values whose real part leaves [0, 1] by more than ``tol``."""
    rep = AnomalyReport()
    reals = []
    for i, t in enumerate(terms):
        if t.value is None:
            rep.undefined.append(i)
            continue
        re = t.value.real
        reals.append(re)
        if re < -tol or re > 1 + tol:
            rep.flags.append(i)
    rep.min_real = min(reals) if reals else None
    return rep
