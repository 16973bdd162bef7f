"""Worked examples: single-qubit coherence and two-qubit entanglement."""
from __future__ import annotations

import numpy as np

from . import chain as chainmod
from . import qcore, quasiprob, resources, weakval, witness

QUOTED_WEAK_VALUE = (1 - np.sqrt(3)) / (2 * np.sqrt(2))


def _mat(m, indent="    ") -> str:
    m = np.asarray(m)
    if np.allclose(m.imag, 0):
        m = m.real
    body = np.array2string(m, precision=4, suppress_small=True, max_line_width=120)
    return "\n".join(indent + line for line in body.splitlines())


class _Writer:
    def __init__(self):
        self.lines = []

    def kv(self, key, value):
        if isinstance(value, (float, np.floating)):
            value = f"{float(value):.12g}"
        elif isinstance(value, complex):
            value = f"{value.real:.12g}{value.imag:+.12g}j"
        self.lines.append(f"{key}: {value}")

    def matrix(self, key, m):
        self.lines.append(f"{key} =")
        self.lines.append(_mat(m))

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _weak_value_section(out: _Writer, ew, rho, p):
    dec = weakval.conical_decomposition(ew, rho, p)
    rep = weakval.detect_anomalous(dec.terms)
    out.kv("weak_values.p", p)
    for i, t in enumerate(dec.terms):
        val = "undefined" if t.value is None else t.value
        flag = " ANOMALOUS" if i in rep.flags else ""
        out.kv(f"weak_values.{t.label}", f"k={t.coefficient:.12g} value={val}{flag}")
    out.kv("weak_values.sum", dec.total)
    out.kv("weak_values.target", dec.target)
    out.kv("weak_values.partial", str(dec.partial).lower())
    out.kv("weak_values.anomalous", [dec.terms[i].label for i in rep.flags])
    return dec, rep


def qubit_demo(p: float = weakval.DEFAULT_P):
    """Coherence of ``|+>`` relative to the z-axis of the Bloch sphere."""
    out = _Writer()
    model = resources.qubit_z_axis()
    rho = qcore.ketbra(qcore.bloch_state(np.pi / 2, 0.0))
    sigma0, dist = resources.closest_classical(rho, model)
    out.kv("state", "|+><+|  (theta = pi/2, phi = 0)")
    out.matrix("sigma0", sigma0)
    out.kv("distance", dist)

    w = witness.geometric_witness(rho, model)
    out.matrix("W (closest-state formula) = -sigma_x/sqrt(2)", w.w)
    out.kv("W (rescaled reading) ", "-sigma_x; same chain after rescaling")
    ew = witness.extend_and_scale(w)
    ew_unit = witness.extend_and_scale(witness.user_witness(-qcore.SX))
    out.kv("scale", ew.scale)
    out.kv("scale (W = -sigma_x)", ew_unit.scale)
    out.kv("|W'(formula) - W'(-sigma_x)|_F", qcore.frobenius_distance(ew.wprime, ew_unit.wprime))
    out.matrix("W' = -1/4 sigma_x (x) |0><0|", ew.wprime)

    anc0 = qcore.ketbra(qcore.KET0)
    wplus = 0.25 * qcore.tensor(qcore.ketbra(qcore.KET_MINUS), anc0)
    wminus = -0.25 * qcore.tensor(qcore.ketbra(qcore.KET_PLUS), anc0)
    out.kv("|W' - (W'+ + W'-)|_F", qcore.frobenius_distance(ew.wprime, wplus + wminus))

    k_plus0 = np.kron(qcore.KET_MINUS, qcore.KET0)
    k_minus0 = np.kron(qcore.KET_PLUS, qcore.KET0)
    pp0, pp1 = chainmod.positive_block(0.25, k_plus0)
    pm = chainmod.negative_block(0.25, k_minus0)
    for name, pr in [("Pi+,0", pp0), ("Pi+,1", pp1), ("Pi-,0", pm[0]),
                     ("Pi-,1", pm[1]), ("Pi-,2", pm[2]), ("Pi-,3", pm[3])]:
        out.matrix(name, pr.mat)
    # the worked example lists Pi-,1 and Pi-,3 with swapped signs; both orders give -b
    swapped = pm[0].mat @ pm[1].mat @ pm[2].mat @ pm[3].mat @ pm[0].mat
    out.kv("swapped-sign negative block product vs -1/4|+0><+0|",
           qcore.frobenius_distance(swapped, wminus))

    ch = chainmod.assemble_chain(ew)
    for m, name in [(0, "Pi0"), (3, "Pi1"), (2, "Pi2"), (1, "Pi3")]:
        out.matrix(name, ch.projectors[m].mat)
    out.kv("|Pi0 - I (x) |0><0||_F", qcore.frobenius_distance(ch.projectors[0].mat, qcore.tensor(qcore.I2, anc0)))
    out.kv("chain.residual", chainmod.verify_chain(ch, ew))

    dist_q = quasiprob.evaluate_distribution(ch, witness.extend_state(rho))
    out.kv("P(0,0,0,0,0)", dist_q.all_zeros)
    out.kv("distribution.sum", dist_q.total())
    out.kv("total_negativity", quasiprob.total_negativity(dist_q))
    p0, p1 = quasiprob.two_event_split(dist_q)
    out.kv("two_event.P0", p0)
    out.kv("two_event.P1", p1)
    out.kv("scale*distance", ew.scale * dist)

    dec, rep = _weak_value_section(out, ew, rho, p)
    neg = [t for t in dec.terms if t.p_param is not None and t.value is not None]
    out.kv("weak_value.quoted", QUOTED_WEAK_VALUE)
    out.kv("weak_value.oracle (psi2 at p)", neg[0].value.real if neg else float("nan"))
    out.kv("weak_value.note", "both negative, both anomalous; they differ by the unstated post-selected ket")
    return out.text(), dist_q


def bell_state() -> np.ndarray:
    phi = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    return qcore.ketbra(phi)


def werner_state(p: float) -> np.ndarray:
    return p * bell_state() + (1 - p) * np.eye(4) / 4


def bell_demo(p: float = weakval.DEFAULT_P, n_separable: int = 200, seed: int = 0):
    """Entanglement of the Bell state via a partial-transpose witness."""
    out = _Writer()
    rho = bell_state()
    out.kv("state", "Phi+ = (|00> + |11>)/sqrt(2)")
    out.kv("partial_transpose.min_eigenvalue", float(np.linalg.eigvalsh(qcore.partial_transpose(rho))[0]))
    w = witness.ppt_entanglement_witness(rho)
    out.matrix("W", w.w)
    out.kv("Tr[W rho]", w.expectation(rho))
    ew = witness.extend_and_scale(w)
    out.kv("scale", ew.scale)
    ch, dist = quasiprob.witness_distribution(rho, ew)
    out.kv("chain.slots", len(ch))
    out.kv("chain.residual", chainmod.verify_chain(ch, ew))
    out.kv("P(0,0,0,0,0)", dist.all_zeros)
    out.kv("expected scale*Tr[W rho]", ew.scale * w.expectation(rho))
    out.kv("distribution.sum", dist.total())
    out.kv("total_negativity", quasiprob.total_negativity(dist))
    _weak_value_section(out, ew, rho, p)

    seps = resources.sample_classical(resources.separable_two_qubit(), n_separable, seed)
    events = [quasiprob.evaluate_distribution(ch, witness.extend_state(s)).all_zeros for s in seps]
    out.kv("separable.samples", n_separable)
    out.kv("separable.min_witness_event", min(events))
    return out.text(), dist
