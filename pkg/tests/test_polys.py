import numpy as np
import pytest

from loxpairs.polys import (aberth_roots, cluster_roots, discriminant,
                            faddeev_leverrier, polyval_with_derivatives,
                            resultant, roots_with_multiplicity)


def test_faddeev_leverrier_matches_numpy(rng):
    for _ in range(20):
        M = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        got = faddeev_leverrier(M)
        expect = np.poly(M)
        assert np.allclose(got, expect, rtol=1e-9, atol=1e-9)


def test_polyval_with_derivatives(rng):
    coeffs = rng.standard_normal(7)
    x = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    p, dp, ddp = polyval_with_derivatives(coeffs, x)
    assert np.allclose(p, np.polyval(coeffs, x))
    assert np.allclose(dp, np.polyval(np.polyder(coeffs), x))
    assert np.allclose(ddp, np.polyval(np.polyder(coeffs, 2), x))


def test_aberth_recovers_prescribed_roots(rng):
    roots = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    coeffs = np.poly(roots)
    got = np.sort_complex(aberth_roots(coeffs))
    assert np.allclose(got, np.sort_complex(roots), atol=1e-9)


def test_aberth_wide_modulus_range():
    # moduli spanning four orders: the residual criterion is relative
    roots = np.array([1e-2, 1e2, 1 + 1j, 1 - 1j, -3.0, 0.5j])
    coeffs = np.poly(roots)
    got = np.sort_complex(aberth_roots(coeffs))
    assert np.allclose(got, np.sort_complex(roots), rtol=1e-8, atol=1e-10)


def test_cluster_roots_merges_double_root():
    roots = np.array([2.0, 2.0, -1.0, 1j])
    coeffs = np.poly(roots)
    centers, mults = roots_with_multiplicity(coeffs)
    pairs = sorted(zip(mults, centers), key=lambda t: -t[0])
    assert pairs[0][0] == 2
    assert abs(pairs[0][1] - 2.0) < 1e-6
    assert sorted(mults) == [1, 1, 2]


def test_resultant_vanishes_on_shared_root():
    p = np.poly([1.0, 2.0])
    q = np.poly([2.0, 5.0])
    r = np.poly([3.0, 5.0])
    assert abs(resultant(p, q)) < 1e-10
    assert abs(resultant(p, r)) > 1e-6


def test_discriminant_sign():
    # distinct real roots vs a genuinely repeated root
    assert abs(discriminant(np.poly([1.0, 1.0]))) < 1e-12
    assert abs(discriminant(np.poly([1.0, 2.0, 3.0]))) > 1e-9
