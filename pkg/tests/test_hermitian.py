import numpy as np
import pytest

from loxpairs.errors import WrongField
from loxpairs.hermitian import HermitianSpace, form_matrix
from loxpairs.qmatrix import QArray
from loxpairs.quat import Quaternion


def test_form_matrix_signature():
    H = form_matrix(3)
    eig = np.linalg.eigvalsh(H)
    assert np.sum(eig > 0) == 3 and np.sum(eig < 0) == 1


def test_rejects_unknown_field():
    with pytest.raises(WrongField):
        HermitianSpace(3, "octonion")


def test_inner_hermitian_symmetry(qspace, rng):
    z = qspace._random_qarray(rng, 4)
    w = qspace._random_qarray(rng, 4)
    g = qspace.inner(z, w)
    assert qspace.inner(w, z).isclose(g.conjugate(), tol=1e-12)


def test_inner_right_linearity(qspace, rng):
    # <z lam, w mu> = conj(mu) <z, w> lam
    z = qspace._random_qarray(rng, 4)
    w = qspace._random_qarray(rng, 4)
    lam = Quaternion.from_array(rng.standard_normal(4))
    mu = Quaternion.from_array(rng.standard_normal(4))
    lhs = qspace.inner(z.rmul(lam), w.rmul(mu))
    rhs = mu.conjugate() * qspace.inner(z, w) * lam
    assert lhs.isclose(rhs, tol=1e-10)


def test_norm_sq_is_real(qspace, rng):
    z = qspace._random_qarray(rng, 4)
    g = qspace.inner(z, z)
    assert g.imag_norm() < 1e-12
    assert np.isclose(qspace.norm_sq(z), g.real)


def test_random_negative_vector(space, rng):
    for _ in range(20):
        z = space.random_negative_vector(rng)
        assert space.norm_sq(z) < 0
        if space.field == "complex":
            assert np.max(np.abs(z.b)) == 0


def test_standard_lift(qspace, rng):
    z = qspace.random_negative_vector(rng)
    s = qspace.standard_lift(z)
    assert s.entry(qspace.n).isclose(Quaternion(1, 0, 0, 0), tol=1e-12)


def test_random_isometry_preserves_form(space, rng):
    for _ in range(10):
        U = space.random_isometry(rng)
        assert space.is_isometry(U)
        z = space._random_qarray(rng, space.dim)
        w = space._random_qarray(rng, space.dim)
        assert space.inner(U @ z, U @ w).isclose(space.inner(z, w), tol=1e-8)
        if space.field == "complex":
            assert np.max(np.abs(U.b)) == 0


def test_is_isometry_rejects_generic_matrix(qspace, rng):
    M = qspace._random_qarray(rng, (4, 4))
    assert not qspace.is_isometry(M)


def test_bergman_distance_positive(qspace, rng):
    z = qspace.random_negative_vector(rng)
    w = qspace.random_negative_vector(rng)
    assert qspace.bergman_distance(z, w) > 0
    assert np.isclose(qspace.bergman_distance(z, z), 0, atol=1e-6)


def test_isometries_preserve_bergman_distance(qspace, rng):
    z = qspace.random_negative_vector(rng)
    w = qspace.random_negative_vector(rng)
    U = qspace.random_isometry(rng)
    d0 = qspace.bergman_distance(z, w)
    d1 = qspace.bergman_distance(U @ z, U @ w)
    assert np.isclose(d0, d1, rtol=1e-8)
