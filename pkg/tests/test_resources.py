import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kdquasi import qcore, resources
from kdquasi.errors import DimensionError, UnsupportedModelError

from oracles import closest_z_axis_grid, offdiag_norm, random_state

PLUS = qcore.ketbra(qcore.KET_PLUS)
ZAXIS = resources.qubit_z_axis()


def test_model_invariants():
    with pytest.raises(DimensionError):
        resources.ClassicalSetModel(resources.QUBIT_Z, 3)
    with pytest.raises(Exception):
        resources.incoherent(2, [qcore.KET0])
    m = resources.incoherent(2, [qcore.KET_PLUS, qcore.KET_MINUS])
    assert m.basis is not None


def test_closest_z_axis_plus():
    sigma0, dist = resources.closest_classical(PLUS, ZAXIS)
    assert np.allclose(sigma0, np.eye(2) / 2)
    assert dist == pytest.approx(1 / np.sqrt(2), abs=1e-12)


def test_closest_z_axis_already_classical():
    rho = (np.eye(2) + 0.4 * qcore.SZ) / 2
    sigma0, dist = resources.closest_classical(rho, ZAXIS)
    assert np.allclose(sigma0, rho)
    assert dist == pytest.approx(0, abs=1e-15)


def test_closest_z_axis_matches_grid_search():
    rng = np.random.default_rng(11)
    for _ in range(10):
        rho = random_state(2, rng)
        grid_dist, _ = closest_z_axis_grid(rho)
        _, dist = resources.closest_classical(rho, ZAXIS)
        assert dist <= grid_dist + 1e-12
        assert dist == pytest.approx(grid_dist, abs=1e-4)


@pytest.mark.parametrize("dim", [2, 3, 4])
def test_closest_incoherent_is_diagonal_part(dim):
    rho = random_state(dim, np.random.default_rng(dim))
    sigma0, dist = resources.closest_classical(rho, resources.incoherent(dim))
    assert np.allclose(sigma0, np.diag(np.diag(rho)))
    assert dist == pytest.approx(offdiag_norm(rho), abs=1e-12)


def test_separable_has_no_closest_solver():
    with pytest.raises(UnsupportedModelError):
        resources.closest_classical(np.eye(4) / 4, resources.separable_two_qubit())


def test_is_classical_examples():
    assert resources.is_classical(np.eye(2) / 2, ZAXIS)
    assert not resources.is_classical(PLUS, ZAXIS)
    phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    bell = np.outer(phi, phi)
    assert not resources.is_classical(bell, resources.separable_two_qubit())
    assert np.linalg.eigvalsh(qcore.partial_transpose(bell))[0] == pytest.approx(-0.5)
    assert resources.is_classical(np.eye(4) / 4, resources.separable_two_qubit())


def test_sample_classical_examples():
    zs = resources.sample_classical(ZAXIS, 3, seed=7)
    assert len(zs) == 3
    for s in zs:
        r = qcore.bloch_vector(s)
        assert abs(r[0]) < 1e-15 and abs(r[1]) < 1e-15 and abs(r[2]) <= 1
    inc = resources.sample_classical(resources.incoherent(3), 5, seed=1)
    assert all(np.allclose(s, np.diag(np.diag(s))) for s in inc)
    seps = resources.sample_classical(resources.separable_two_qubit(), 4, seed=2)
    assert len(seps) == 4
    assert all(resources.is_classical(s, resources.separable_two_qubit()) for s in seps)


def test_sample_classical_deterministic():
    a = resources.sample_classical(resources.separable_two_qubit(), 3, seed=5)
    b = resources.sample_classical(resources.separable_two_qubit(), 3, seed=5)
    assert all(np.array_equal(x, y) for x, y in zip(a, b))


MODELS = [ZAXIS, resources.incoherent(2), resources.incoherent(3),
          resources.incoherent(2, [qcore.KET_PLUS, qcore.KET_MINUS])]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(MODELS), st.integers(0, 2**32 - 1))
def test_projection_is_minimal_and_supporting(model, seed):
    rng = np.random.default_rng(seed)
    rho = random_state(model.dim, rng)
    sigma0, dist = resources.closest_classical(rho, model)
    assert resources.is_classical(sigma0, model, 1e-9)
    for s in resources.sample_classical(model, 30, seed):
        assert dist <= np.linalg.norm(rho - s) + 1e-12
        assert np.trace((sigma0 - rho) @ (s - sigma0)).real >= -1e-9
