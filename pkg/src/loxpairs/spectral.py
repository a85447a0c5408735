"""Spectral data of isometries: real trace coefficients, loxodromic
classification, and attracting/repelling eigen-frames.

All eigen-computations go through the complex embedding of the matrix.
Eigenvalue classes of a quaternionic matrix are labelled by their unique
complex representative with non-negative imaginary part.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
import scipy.linalg

from .errors import (DegenerateSpectrum, NotIsometry, NotLoxodromic,
                     PalindromeViolation, RealEigenvalueClass)
from .hermitian import HermitianSpace
from .polys import (aberth_roots, cluster_roots, dickson_reduction,
                    discriminant, faddeev_leverrier)
from .qmatrix import QArray
from .quat import Quaternion

PALINDROME_TOL = 1e-8
RESIDUAL_TOL = 1e-8
NULLSPACE_TOL = 1e-9
RADIUS_GUARD = 1e-7


def real_char_poly(space: HermitianSpace, A: QArray,
                   tol: float = PALINDROME_TOL) -> np.ndarray:
    """Real palindromic characteristic coefficients of the embedding.

    For an isometry the embedded characteristic polynomial is
    self-reciprocal with real coefficients; returns the full list
    [1, a1, ..., a_{n+1}, ..., a1, 1] of degree 2(n+1).
    """
    if not space.is_isometry(A, tol=PALINDROME_TOL * (1.0 + A.max_abs() ** 2)):
        raise NotIsometry("matrix does not preserve the form")
    if space.field == "complex":
        # embed as A + conj(A) so both modes share one code path
        chi = faddeev_leverrier(A.a)
        coeffs = np.polymul(chi, np.conj(chi))
    else:
        coeffs = faddeev_leverrier(A.embed())
    dev = max(float(np.max(np.abs(coeffs.imag))),
              float(np.max(np.abs(coeffs - coeffs[::-1]))))
    if dev > tol * float(np.max(np.abs(coeffs))):
        raise PalindromeViolation(f"coefficient symmetry violated by {dev:.3e}")
    coeffs = 0.5 * (coeffs.real + coeffs.real[::-1])
    return coeffs


def real_trace(space: HermitianSpace, A: QArray) -> np.ndarray:
    """The conjugation invariants (a_1, ..., a_{n+1})."""
    return real_char_poly(space, A)[1:space.n + 2]


@dataclass
class ElementClass:
    is_loxodromic: bool
    delta: Optional[float]
    real_trace: np.ndarray
    reason: str = ""


def classify_element(space: HermitianSpace, A: QArray,
                     tol: float = PALINDROME_TOL) -> ElementClass:
    """Decide whether A is loxodromic.

    Quaternionic mode uses the sign of -disc(g) for the reduced real
    polynomial g with chi(x) = x^{n+1} g(x + 1/x), together with
    g(2) != 0 != g(-2).  Complex mode inspects moduli of the actual
    eigenvalues, since distinct unit eigenvalue pairs e^{+-i phi} of a
    complex matrix collapse to a double root of g.
    """
    chi = real_char_poly(space, A, tol=tol)
    tr = chi[1:space.n + 2]
    if space.field == "quaternion":
        g = dickson_reduction(chi)
        delta = -discriminant(g)
        g2 = float(np.polyval(g, 2.0))
        gm2 = float(np.polyval(g, -2.0))
        scale = float(np.max(np.abs(g)))
        # disc is homogeneous of degree 2n in the coefficients of g
        delta_floor = tol * max(1.0, scale) ** (2 * space.n)
        if delta <= delta_floor:
            return ElementClass(False, delta, tr, "delta <= 0")
        if min(abs(g2), abs(gm2)) <= tol * scale:
            return ElementClass(False, delta, tr, "real eigenvalue on the unit circle")
        return ElementClass(True, delta, tr)
    roots = aberth_roots(faddeev_leverrier(A.a))
    radii = np.sort(np.abs(roots))
    if radii[-1] <= 1.0 + RADIUS_GUARD:
        return ElementClass(False, None, tr, "no expanding eigenvalue")
    centers, _ = cluster_roots(faddeev_leverrier(A.a), roots)
    if centers.size < space.n + 1:
        return ElementClass(False, None, tr, "repeated eigenvalues")
    return ElementClass(True, None, tr)


def _nullspace_vector(M: np.ndarray, tol: float = NULLSPACE_TOL) -> np.ndarray:
    """One kernel vector of M by Gaussian elimination with full pivoting."""
    M = M.copy()
    m = M.shape[0]
    scale = float(np.max(np.abs(M))) or 1.0
    col_perm = np.arange(m)
    rank = 0
    for k in range(m):
        sub = np.abs(M[k:, k:])
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        if sub[i, j] <= tol * scale:
            break
        M[[k, k + i]] = M[[k + i, k]]
        M[:, [k, k + j]] = M[:, [k + j, k]]
        col_perm[[k, k + j]] = col_perm[[k + j, k]]
        M[k + 1:, k:] -= np.outer(M[k + 1:, k] / M[k, k], M[k, k:])
        rank += 1
    if rank == m:
        raise DegenerateSpectrum("matrix has no kernel at this tolerance")
    # back-substitute with the first free column set to 1
    v = np.zeros(m, dtype=complex)
    v[rank] = 1.0
    for k in range(rank - 1, -1, -1):
        v[k] = -(M[k, k + 1:] @ v[k + 1:]) / M[k, k]
    out = np.zeros(m, dtype=complex)
    out[col_perm] = v
    return out / np.linalg.norm(out)


def _approx_kernel(M: np.ndarray) -> np.ndarray:
    """Near-kernel vector: elimination when the shift is sharp, smallest
    singular direction otherwise (inverse iteration polishes either)."""
    try:
        return _nullspace_vector(M)
    except DegenerateSpectrum:
        return np.linalg.svd(M)[2][-1].conj()


def _refine_eigenpair(M: np.ndarray, v: np.ndarray, lam: complex):
    """Sharpen an approximate eigenpair by inverse iteration with
    Rayleigh-quotient updates; the characteristic-polynomial roots are
    only as accurate as the coefficient recursion allows."""
    eye = np.eye(M.shape[0])
    for _ in range(4):
        try:
            w = np.linalg.solve(M - lam * eye, v)
        except np.linalg.LinAlgError:
            break
        nw = np.linalg.norm(w)
        if not np.isfinite(nw) or nw == 0.0:
            break
        v = w / nw
        lam = complex(np.vdot(v, M @ v))
    return v, lam


def _balance_scaling(A: QArray) -> np.ndarray:
    """Diagonal scaling d with D^-1 A D of roughly balanced row/column
    norms; the eigenvector error floor is eps * ||A||, so conjugates
    with large entries need this before inverse iteration."""
    mag = np.abs(A.a) + np.abs(A.b)
    if mag.max() <= 100.0:
        # moderate entries gain nothing, and rescaling perturbs the
        # accuracy profile of well-scaled frames
        return np.ones(mag.shape[0])
    _, (d, _) = scipy.linalg.matrix_balance(mag, permute=False,
                                            separate=True)
    return d


def _solve_xp(J: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Gaussian elimination with partial pivoting in extended precision
    (LAPACK has no clongdouble kernels; the systems here are tiny)."""
    n = J.shape[0]
    T = np.concatenate([J, rhs[:, None]], axis=1)
    for c in range(n):
        p = c + int(np.argmax(np.abs(T[c:, c])))
        if T[p, c] == 0:
            raise np.linalg.LinAlgError("singular bordered system")
        if p != c:
            T[[c, p]] = T[[p, c]]
        T[c + 1:] -= (T[c + 1:, c:c + 1] / T[c, c]) * T[c:c + 1]
    x = np.zeros(n, dtype=T.dtype)
    for c in range(n - 1, -1, -1):
        x[c] = (T[c, n] - T[c, c + 1:n] @ x[c + 1:]) / T[c, c]
    return x


def _polish_eigenpair(M: np.ndarray, v: np.ndarray, lam: complex,
                      steps: int = 3):
    """Bordered-Newton correction of (v, lam) in extended precision;
    pushes the eigenvector error below the eps * ||M|| floor that plain
    inverse iteration hits on conjugates with large entries."""
    n = M.shape[0]
    Ml = M.astype(np.clongdouble)
    vl = v.astype(np.clongdouble)
    laml = np.clongdouble(lam)
    eye = np.eye(n, dtype=np.clongdouble)
    for _ in range(steps):
        r = Ml @ vl - laml * vl
        J = np.empty((n + 1, n + 1), dtype=np.clongdouble)
        J[:n, :n] = Ml - laml * eye
        J[:n, n] = -vl
        J[n, :n] = np.conj(vl)
        J[n, n] = 0.0
        try:
            delta = _solve_xp(J, np.concatenate([-r, [np.clongdouble(0)]]))
        except np.linalg.LinAlgError:
            break
        vl = vl + delta[:n]
        vl /= np.sqrt(np.real(np.vdot(vl, vl)))
        laml = laml + delta[n]
    return np.asarray(vl, dtype=complex), complex(laml)


def _eigenpair(space: HermitianSpace, A: QArray, lam: complex):
    """Quaternionic eigenvector and polished eigenvalue for one class."""
    d = _balance_scaling(A)
    Ab = QArray(A.a * d[None, :] / d[:, None],
                A.b * d[None, :] / d[:, None])
    if space.field == "complex":
        M = Ab.a
        v = _approx_kernel(M - lam * np.eye(space.dim))
        v, lam = _refine_eigenpair(M, v, lam)
        v, lam = _polish_eigenpair(M, v, lam)
        v = v * d
        v /= np.linalg.norm(v)
        resid = np.linalg.norm(A.a @ v - lam * v)
        if resid > RESIDUAL_TOL * (1.0 + A.max_abs()):
            raise DegenerateSpectrum(f"eigenvector residual {resid:.3e}")
        return QArray(v), lam
    M = Ab.embed()
    w = _approx_kernel(M - lam * np.eye(2 * space.dim))
    w, lam = _refine_eigenpair(M, w, lam)
    w, lam = _polish_eigenpair(M, w, lam)
    w = w * np.concatenate([d, d])
    w /= np.linalg.norm(w)
    v = QArray(w[:space.dim], w[space.dim:])
    resid = (A @ v - v.rmul(Quaternion.from_complex(lam))).norm()
    if resid > RESIDUAL_TOL * (1.0 + A.max_abs()):
        raise DegenerateSpectrum(f"eigenvector residual {resid:.3e}")
    return v, lam


@dataclass
class LoxodromicFrame:
    """Attracting/repelling fixed-point lifts and positive eigenvectors.

    attracting and repelling are null lifts normalized so
    <attracting, repelling> = 1; positives are unit positive vectors
    ordered by increasing eigenvalue angle.  frame_matrix has columns
    (attracting, positives..., repelling) and preserves the form;
    A = frame_matrix @ diag(r e^{i theta}, e^{i phi_k}, e^{i theta}/r)
    @ frame_matrix^{-1}.
    """
    radius: float
    theta: float
    phis: np.ndarray
    attracting: QArray
    repelling: QArray
    positives: List[QArray]
    space: HermitianSpace = field(repr=False)

    @property
    def eigenvalues(self) -> np.ndarray:
        lam = self.radius * np.exp(1j * self.theta)
        return np.concatenate([[lam], np.exp(1j * self.phis),
                               [np.exp(1j * self.theta) / self.radius]])

    def frame_matrix(self) -> QArray:
        return QArray.from_columns([self.attracting, *self.positives,
                                    self.repelling])

    def diagonal(self) -> QArray:
        return QArray.diag(self.eigenvalues)

    def conjugated(self, S: QArray) -> "LoxodromicFrame":
        """The frame of S A S^-1, for an isometry S (same spectrum)."""
        return LoxodromicFrame(self.radius, self.theta, self.phis.copy(),
                               S @ self.attracting, S @ self.repelling,
                               [S @ p for p in self.positives], self.space)

    def rebuild(self) -> QArray:
        C = self.frame_matrix()
        return C @ self.diagonal() @ C.inverse()


def real_trace_from_frame(frame: LoxodromicFrame) -> np.ndarray:
    """(a_1, ..., a_{n+1}) from the known eigenvalue classes: the
    embedded characteristic polynomial is the product over classes of
    (x - lam)(x - conj(lam))."""
    lams = frame.eigenvalues
    chi = np.real(np.poly(np.concatenate([lams, np.conj(lams)])))
    return chi[1:lams.size + 1]


def _class_representatives(space: HermitianSpace, A: QArray):
    """Eigenvalue class representatives with multiplicities."""
    if space.field == "complex":
        coeffs = faddeev_leverrier(A.a)
    else:
        coeffs = faddeev_leverrier(A.embed())
    roots = aberth_roots(coeffs)
    if space.field == "quaternion":
        # classes come in conjugate pairs; keep Im >= 0 representatives
        roots = roots[roots.imag >= -1e-12]
    centers, mults = cluster_roots(coeffs, roots)
    return centers, mults


def eigen_frame(space: HermitianSpace, A: QArray,
                tol: float = RADIUS_GUARD) -> LoxodromicFrame:
    """Spectral frame of a loxodromic isometry."""
    centers, mults = _class_representatives(space, A)
    if np.any(mults > 1) or centers.size != space.dim:
        raise DegenerateSpectrum("eigenvalue classes are not simple")
    pairs = [_eigenpair(space, A, lam) for lam in centers]
    centers = np.array([lam for _, lam in pairs])
    if space.field == "quaternion" and np.any(centers.imag < -1e-9):
        raise DegenerateSpectrum("class representative left the upper half plane")
    radii = np.abs(centers)
    # attracting fixed point carries the eigenvalue class of modulus r < 1
    i_att = int(np.argmin(radii))
    i_rep = int(np.argmax(radii))
    if radii[i_rep] <= 1.0 + tol or radii[i_att] >= 1.0 - tol:
        raise NotLoxodromic("no attracting/repelling eigenvalue pair")
    lam_att = centers[i_att]
    lam_rep = centers[i_rep]
    if space.field == "quaternion":
        if min(abs(lam_att.imag), abs(lam_rep.imag)) <= tol * abs(lam_att):
            raise RealEigenvalueClass("attracting class meets the real axis")
        if abs(lam_rep / abs(lam_rep) - lam_att / abs(lam_att)) > 1e-6:
            raise DegenerateSpectrum("attracting/repelling angles disagree")
    unit_idx = [i for i in range(centers.size) if i not in (i_att, i_rep)]
    if np.any(np.abs(radii[unit_idx] - 1.0) > tol):
        raise DegenerateSpectrum("non-unit intermediate eigenvalue")
    unit_idx.sort(key=lambda i: np.angle(centers[i]))
    theta = float(np.angle(lam_att))
    r = float(radii[i_att])

    a = pairs[i_att][0]
    rv = pairs[i_rep][0]
    positives = [pairs[i][0] for i in unit_idx]
    phis = np.array([float(np.angle(centers[i])) for i in unit_idx])

    # only complex rescalings keep the eigenvalue representatives intact
    g = space.inner(a, rv).to_complex(tol=1e-7)
    rv = rv.rmul(Quaternion.from_complex(1.0 / np.conj(g)))
    for x in positives:
        if space.norm_sq(x) <= 0:
            raise DegenerateSpectrum("intermediate eigenvector is not positive")
    positives = [x.scale(1.0 / np.sqrt(space.norm_sq(x))) for x in positives]
    frame = LoxodromicFrame(r, theta, phis, a, rv, positives, space)
    resid = (frame.rebuild() - A).max_abs()
    # evaluation noise of F D F^-1 grows like eps * cond(F), so the gate
    # must not outpace what double precision can certify
    kappa = np.linalg.cond(frame.frame_matrix().embed())
    gate = (1.0 + A.max_abs()) * max(RESIDUAL_TOL,
                                     20 * np.finfo(float).eps * kappa)
    if resid > gate:
        raise DegenerateSpectrum(f"frame reconstruction residual {resid:.3e}")
    return frame


def projective_point(v: QArray, tol: float = 1e-12) -> np.ndarray:
    """Point of the complex projective line attached to an eigenvector.

    v determines (a_i : b_i) at its largest entry, which is invariant
    under the complex rescalings that preserve eigenvalue
    representatives.  Returned as a unit 2-vector whose largest
    component is positive real.
    """
    mags = np.abs(v.a) ** 2 + np.abs(v.b) ** 2
    i = int(np.argmax(mags))
    p = np.array([v.a[i], v.b[i]])
    p = p / np.linalg.norm(p)
    j = int(np.argmax(np.abs(p)))
    ph = p[j] / abs(p[j])
    return p / ph


def projective_points_equal(p: np.ndarray, q: np.ndarray,
                            tol: float = 1e-7) -> bool:
    return float(np.linalg.norm(p - q)) <= tol


def apply_j(p: np.ndarray) -> np.ndarray:
    """Left j-action on the projective line: (c1:c2) -> (-conj(c2):conj(c1))."""
    q = np.array([-np.conj(p[1]), np.conj(p[0])])
    j = int(np.argmax(np.abs(q)))
    return q / (q[j] / abs(q[j]))


def element_conjugator(space: HermitianSpace, X: QArray, Y: QArray,
                       tol: float = 1e-7) -> QArray:
    """A form-preserving S with S X S^{-1} = Y for loxodromics with the
    same eigenvalue data."""
    fx = eigen_frame(space, X)
    fy = eigen_frame(space, Y)
    if (abs(fx.radius - fy.radius) > tol or abs(fx.theta - fy.theta) > tol
            or np.max(np.abs(fx.phis - fy.phis), initial=0.0) > tol):
        raise DegenerateSpectrum("eigenvalue data of the two elements differ")
    S = fy.frame_matrix() @ fx.frame_matrix().inverse()
    resid = (S @ X @ S.inverse() - Y).max_abs()
    if resid > tol * (1.0 + Y.max_abs()):
        raise DegenerateSpectrum(f"conjugation residual {resid:.3e}")
    return S
