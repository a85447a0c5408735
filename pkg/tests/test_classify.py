import numpy as np
import pytest

from loxpairs.classify import (boundary_quadruple_congruence,
                               congruence_from_tuples, conjugacy_test,
                               invariant_map_rank)
from loxpairs.errors import NotNonsingular
from loxpairs.generate import generate_pair
from loxpairs.hermitian import HermitianSpace
from loxpairs.qmatrix import QArray, conjugate_by, quaternionic_rank
from loxpairs.quat import Quaternion


def _null_lift(space, rng):
    z = space._random_qarray(rng, space.dim)
    z.a[-1], z.b[-1] = 1.0, 0.0
    mid = float(np.sum(np.abs(z.a[1:-1]) ** 2 + np.abs(z.b[1:-1]) ** 2))
    z.a[0] = -mid / 2.0 + 1j * z.a[0].imag
    if space.field == "complex":
        z.b[:] = 0.0
    return z


def test_round_trip(space, rng):
    A, B = generate_pair(space, seed=31, mode="strong")
    C = space.random_isometry(rng)
    A2, B2 = conjugate_by(C, A), conjugate_by(C, B)
    res = conjugacy_test(space, A, B, A2, B2)
    assert res.conjugate and res.stage == "verified"
    D = res.conjugator
    assert (conjugate_by(D, A) - A2).max_abs() < 1e-7
    assert (conjugate_by(D, B) - B2).max_abs() < 1e-7


def test_strong_mode_round_trip(space, rng):
    A, B = generate_pair(space, seed=33, mode="strong")
    C = space.random_isometry(rng)
    res = conjugacy_test(space, A, B, conjugate_by(C, A),
                         conjugate_by(C, B), mode="strong")
    assert res.conjugate


def test_different_spectra_detected_by_trace(space):
    A, B = generate_pair(space, seed=1, mode="strong")
    A2, B2 = generate_pair(space, seed=2, mode="strong")
    res = conjugacy_test(space, A, B, A2, B2)
    assert not res.conjugate
    assert res.stage in ("real-trace", "tuple")
    assert res.conjugator is None


def test_same_spectra_different_pair_detected(qspace, rng):
    # same diagonal models, independently conjugated generators: the
    # traces agree element-wise but the pair invariants do not
    A, B = generate_pair(qspace, seed=8, mode="strong")
    Q1 = qspace.random_isometry(rng)
    Q2 = qspace.random_isometry(rng)
    A2, B2 = conjugate_by(Q1, A), conjugate_by(Q2, B)
    res = conjugacy_test(qspace, A, B, A2, B2)
    if res.conjugate:
        # a coincidence is possible in principle; the conjugator must
        # then be genuine
        D = res.conjugator
        assert (conjugate_by(D, A) - A2).max_abs() < 1e-6
    else:
        assert res.stage in ("real-trace", "tuple", "projective-points")


def test_strong_mode_requires_nonsingular(qspace, rng):
    A, B = generate_pair(qspace, seed=3, mode="weak")
    from loxpairs.genericity import genericity_report
    from loxpairs.spectral import eigen_frame
    rep = genericity_report(qspace, eigen_frame(qspace, A),
                            eigen_frame(qspace, B))
    if rep.nonsingular:
        pytest.skip("weak seed happened to be non-singular")
    with pytest.raises(NotNonsingular):
        conjugacy_test(qspace, A, B, A, B, mode="strong")


def test_quadruple_congruence(space, rng):
    for _ in range(5):
        zs = [_null_lift(space, rng) for _ in range(4)]
        if quaternionic_rank(zs) < min(4, space.dim):
            continue
        U = space.random_isometry(rng)
        ws = [U @ z for z in zs]
        h = boundary_quadruple_congruence(space, zs, ws)
        assert h is not None
        assert space.is_isometry(h, tol=1e-6 * (1 + h.max_abs()) ** 2)
        for z, w in zip(zs, ws):
            assert quaternionic_rank([h @ z, w], tol=1e-6) == 1


def test_quadruple_congruence_rescaled_lifts(qspace, rng):
    zs = [_null_lift(qspace, rng) for _ in range(4)]
    U = qspace.random_isometry(rng)
    ws = []
    for z in zs:
        u = Quaternion.from_array(rng.standard_normal(4))
        ws.append((U @ z).rmul(u * Quaternion(abs(u), 0, 0, 0).inverse()))
    h = boundary_quadruple_congruence(qspace, zs, ws)
    assert h is not None
    for z, w in zip(zs, ws):
        assert quaternionic_rank([h @ z, w], tol=1e-6) == 1


def test_quadruple_congruence_rejects_perturbed(space, rng):
    zs = [_null_lift(space, rng) for _ in range(4)]
    U = space.random_isometry(rng)
    ws = [U @ z for z in zs]
    bad = _null_lift(space, rng)
    assert boundary_quadruple_congruence(space, zs, ws[:3] + [bad]) is None


def test_quadruple_congruence_higher_dimension(rng):
    # n = 4 exercises the orthogonal-complement extension of the map
    space = HermitianSpace(4, "quaternion")
    zs = [_null_lift(space, rng) for _ in range(4)]
    U = space.random_isometry(rng)
    ws = [U @ z for z in zs]
    h = boundary_quadruple_congruence(space, zs, ws)
    assert h is not None
    for z, w in zip(zs, ws):
        assert quaternionic_rank([h @ z, w], tol=1e-6) == 1


def test_congruence_from_tuples_identity(qspace):
    from loxpairs.genericity import genericity_report
    from loxpairs.gram import normalize_lifts
    from loxpairs.spectral import eigen_frame
    A, B = generate_pair(qspace, seed=12, mode="strong")
    fa, fb = eigen_frame(qspace, A), eigen_frame(qspace, B)
    rep = genericity_report(qspace, fa, fb)
    t = normalize_lifts(qspace, fa, fb, rep)
    C = congruence_from_tuples(t, t)
    assert C is not None
    assert (C - QArray.eye(qspace.dim)).max_abs() < 1e-7
