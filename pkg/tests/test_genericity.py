import numpy as np
import pytest

from loxpairs.generate import generate_pair, random_loxodromic
from loxpairs.genericity import (canonical_flags, genericity_report,
                                 on_line_boundary)
from loxpairs.spectral import eigen_frame


def test_generated_weak_pair_report(space):
    A, B = generate_pair(space, seed=11, mode="weak")
    rep = genericity_report(space, eigen_frame(space, A),
                            eigen_frame(space, B))
    assert rep.weakly_nonsingular
    assert len(rep.matching_A) == space.n - 2
    assert len(rep.matching_B) == space.n - 2
    assert rep.omitted_A is not None and rep.omitted_B is not None


def test_generated_strong_pair_report(space):
    A, B = generate_pair(space, seed=11, mode="strong")
    rep = genericity_report(space, eigen_frame(space, A),
                            eigen_frame(space, B))
    assert rep.nonsingular
    assert not rep.failing_conditions


def test_power_pair_shares_fixed_points(qspace, rng):
    # (A, A^2) has common fixed points, hence fails genericity outright
    A = random_loxodromic(qspace, rng)
    fa = eigen_frame(qspace, A)
    fb = eigen_frame(qspace, A @ A)
    rep = genericity_report(qspace, fa, fb)
    assert not rep.weakly_nonsingular
    assert rep.failing_conditions


def test_canonical_flags(qframes):
    fa, _ = qframes
    flags = canonical_flags(fa)
    assert len(flags) == len(fa.positives)
    for fl in flags:
        assert (fl.point - fa.attracting).max_abs() == 0
        assert on_line_boundary(fa.space, fa.repelling, fl.line)


def test_flag_pair_matrix_shape(qspace, qframes):
    fa, fb = qframes
    rep = genericity_report(qspace, fa, fb)
    m = qspace.n - 1
    assert rep.flag_pair_matrix.shape == (m, m)
