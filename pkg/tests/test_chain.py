import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kdquasi import chain, qcore, witness
from kdquasi.errors import FactorizationError

from oracles import random_hermitian, random_state

ANC0 = qcore.ketbra(qcore.KET0)
ANC1 = qcore.ketbra(qcore.KET1)
KM0 = np.kron(qcore.KET_MINUS, qcore.KET0)
KP0 = np.kron(qcore.KET_PLUS, qcore.KET0)


def test_positive_block_quarter():
    p0, p1 = chain.positive_block(0.25, KM0)
    phi = 0.5 * KM0 + np.sqrt(3) / 2 * np.kron(qcore.KET_MINUS, qcore.KET1)
    assert np.allclose(p1.mat, np.outer(phi, phi.conj()))
    prod = p0.mat @ p1.mat @ p0.mat
    assert np.linalg.norm(prod - 0.25 * np.outer(KM0, KM0)) <= 1e-10
    assert np.trace(prod).real == pytest.approx(0.25)


def test_positive_block_sixteenth():
    k0 = np.kron(qcore.KET0, qcore.KET0)
    p0, p1 = chain.positive_block(1 / 16, k0)
    phi = 0.25 * k0 + np.sqrt(15) / 4 * np.kron(qcore.KET0, qcore.KET1)
    assert np.allclose(p1.mat, np.outer(phi, phi))
    assert np.linalg.norm(p0.mat @ p1.mat @ p0.mat - np.outer(k0, k0) / 16) <= 1e-10


@pytest.mark.parametrize("bad", [0.0, -0.1, 0.3])
def test_block_range_checks(bad):
    with pytest.raises(FactorizationError):
        chain.positive_block(bad, KM0)
    with pytest.raises(FactorizationError):
        chain.negative_block(bad, KP0)


def test_block_requires_ancilla_zero_ket():
    with pytest.raises(FactorizationError):
        chain.positive_block(0.25, np.kron(qcore.KET0, qcore.KET1))


def test_negative_lambda():
    assert chain.negative_lambda(0.25) == pytest.approx(0.5)
    assert chain.negative_lambda(3 / 16) == pytest.approx(0.25)


def test_negative_block_quarter_plus():
    p0, p1, p2, p3 = chain.negative_block(0.25, KP0)
    assert np.allclose(p2.mat, np.kron(qcore.ketbra(qcore.KET_PLUS), ANC1))
    prod = p0.mat @ p3.mat @ p2.mat @ p1.mat @ p0.mat
    assert np.linalg.norm(prod + 0.25 * np.outer(KP0, KP0)) <= 1e-10
    # the swapped sign convention gives the same product
    swapped = p0.mat @ p1.mat @ p2.mat @ p3.mat @ p0.mat
    assert np.linalg.norm(swapped - prod) <= 1e-12


@pytest.mark.parametrize("b", [1e-6, 0.01, 0.1, 3 / 16, 0.25])
def test_negative_block_product(b):
    k0 = np.kron(qcore.KET1, qcore.KET0)
    p0, p1, p2, p3 = chain.negative_block(b, k0)
    prod = p0.mat @ p3.mat @ p2.mat @ p1.mat @ p0.mat
    assert np.linalg.norm(prod + b * np.outer(k0, k0)) <= 1e-10


def test_assemble_qubit_example():
    ew = witness.extend_and_scale(witness.user_witness(-qcore.SX))
    ch = chain.assemble_chain(ew)
    assert len(ch) == 5
    assert ch.labels == ["Pi0", "Pi3", "Pi2", "Pi1", "Pi0"]
    assert np.allclose(ch.projectors[0].mat, np.kron(np.eye(2), ANC0))
    assert chain.verify_chain(ch, ew) <= 1e-12


def test_assemble_purely_positive():
    ew = witness.extend_and_scale(witness.user_witness(0.25 * qcore.ketbra(qcore.KET0)))
    ch = chain.assemble_chain(ew)
    pi3, pi2, pi1 = (ch.projectors[i].mat for i in (1, 2, 3))
    assert np.allclose(pi1, pi2) and np.allclose(pi2, pi3)
    assert chain.verify_chain(ch, ew) <= 1e-12


def test_assemble_zero_spectrum():
    w = witness.user_witness(np.diag([1e-14, -1e-14]))
    ew = witness.ExtendedWitness(np.kron(w.w, ANC0), 1.0, w)
    with pytest.raises(FactorizationError):
        chain.assemble_chain(ew)


def test_verify_detects_perturbation():
    ew = witness.extend_and_scale(witness.user_witness(-qcore.SX))
    ch = chain.assemble_chain(ew)
    # rotate one slot by a small unitary: still a projector, but a different one
    eps = 1e-3
    gen = qcore.random_hermitian(4, np.random.default_rng(0))
    vals, vecs = np.linalg.eigh(gen)
    u = vecs @ np.diag(np.exp(1j * eps * vals / np.max(np.abs(vals)))) @ vecs.conj().T
    rotated = qcore.Projector(u @ ch.projectors[2].mat @ u.conj().T, "Pi2'")
    bad = chain.ProjectorChain(ch.projectors[:2] + (rotated,) + ch.projectors[3:], ch.dim, ch.scale)
    assert chain.verify_chain(bad, ew) > 1e-4


def test_assemble_with_zero_eigenvalues_skips_kernel():
    w = witness.user_witness(np.diag([0.2, 0.0, -0.1]))
    ew = witness.extend_and_scale(w)
    ch = chain.assemble_chain(ew)
    assert len(ch.blocks) == 2
    assert chain.verify_chain(ch, ew) <= 1e-12


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 6), st.integers(0, 2**32 - 1))
def test_assemble_random_witness(dim, seed):
    rng = np.random.default_rng(seed)
    w = witness.user_witness(random_hermitian(dim, rng))
    ew = witness.extend_and_scale(w)
    ch = chain.assemble_chain(ew)
    # independent oracle: explicit product of the listed slots vs s * W (x) |0><0|
    prod = ch.projectors[0].mat @ ch.projectors[1].mat @ ch.projectors[2].mat @ ch.projectors[3].mat @ ch.projectors[4].mat
    assert np.linalg.norm(prod - ew.scale * np.kron(w.w, ANC0)) <= 1e-9
    for p in ch.projectors:
        assert p.idempotence_error() <= 1e-10
        assert np.linalg.norm(p.mat - p.mat.conj().T) <= 1e-10
    # blocks from distinct eigenvectors are orthogonal
    for i, a in enumerate(ch.blocks):
        for b in ch.blocks[i + 1:]:
            for ma in a.slots:
                for mb in b.slots:
                    assert np.linalg.norm(ma @ mb) <= 1e-10
    rho = random_state(dim, rng)
    rho_ext = np.kron(rho, ANC0)
    assert np.trace(prod @ rho_ext).real == pytest.approx(ew.scale * w.expectation(rho), abs=1e-9)


def test_degenerate_spectrum_chain():
    w = witness.user_witness(np.diag([0.5, 0.5, -0.5, -0.5]))
    ew = witness.extend_and_scale(w)
    ch = chain.assemble_chain(ew)
    assert chain.verify_chain(ch, ew) <= 1e-12
