"""The Hermitian form of signature (n,1) and the hyperbolic space it defines.

Coordinates are chosen so that the form is

    <z, w> = w^* H z,      H = antidiag(1, 1) on the first/last slots,
                               identity on the middle block,

i.e. <z,w> = conj(w_{n+1}) z_1 + conj(w_1) z_{n+1} + sum_j conj(w_j) z_j.
Negative vectors project to points of the ball model; null vectors to its
boundary.
"""

from __future__ import annotations

import numpy as np

from .errors import (GramSchmidtBreakdown, NotNegativeVector, WrongField,
                     ZeroVector)
from .qmatrix import QArray
from .quat import Quaternion

ERROR_THRESHOLD = 1e-10


def form_matrix(n: int) -> np.ndarray:
    H = np.eye(n + 1, dtype=complex)
    H[0, 0] = H[n, n] = 0.0
    H[0, n] = H[n, 0] = 1.0
    return H


class HermitianSpace:
    """Ambient vector space F^{n,1} with F complex or quaternionic."""

    def __init__(self, n: int, field: str = "quaternion"):
        if field not in ("complex", "quaternion"):
            raise WrongField(f"unknown field {field!r}")
        if n < 2:
            raise ValueError("need n >= 2")
        self.n = n
        self.field = field
        self.H = form_matrix(n)
        self._HQ = QArray(self.H)

    @property
    def dim(self) -> int:
        return self.n + 1

    def inner(self, z: QArray, w: QArray) -> Quaternion:
        """<z, w> = w^* H z.  Linear in z, conjugate-linear in w."""
        Hz_a = self.H @ z.a
        Hz_b = self.H @ z.b
        # w^* u with w = w1 + j w2, u = u1 + j u2:
        #   sum conj(w1) u1 + conj(w2) u2  +  j (w2 u1... ) worked out below
        a = np.sum(np.conj(w.a) * Hz_a) + np.sum(np.conj(w.b) * Hz_b)
        b = np.sum(w.a * Hz_b) - np.sum(w.b * Hz_a)
        return Quaternion.from_complex_pair(complex(a), complex(b))

    def norm_sq(self, z: QArray) -> float:
        return self.inner(z, z).w

    def classify_point(self, z: QArray, tol: float = ERROR_THRESHOLD):
        """'negative' / 'null' / 'positive' with a dead band of tol*|z|^2."""
        nz = z.norm() ** 2
        if nz == 0.0:
            raise ZeroVector("cannot classify the zero vector")
        q = self.norm_sq(z)
        if abs(q) <= tol * nz:
            return "null"
        return "negative" if q < 0 else "positive"

    def is_isometry(self, A: QArray, tol: float = 1e-8) -> bool:
        D = A.adjoint() @ self._HQ @ A - self._HQ
        return D.max_abs() <= tol

    def check_vector(self, z: QArray):
        if z.shape != (self.dim,):
            raise ValueError(f"expected vector of length {self.dim}")

    def standard_lift(self, z: QArray) -> QArray:
        """Rescale a lift so its last coordinate is 1 (Siegel-domain chart)."""
        qn = z.entry(self.n)
        if abs(qn) <= ERROR_THRESHOLD * z.norm():
            raise ZeroVector("last coordinate vanishes; point at infinity")
        return z.rmul(qn.inverse())

    def bergman_distance(self, z: QArray, w: QArray) -> float:
        """Distance between the points of hyperbolic space below z and w."""
        zz = self.norm_sq(z)
        ww = self.norm_sq(w)
        if zz >= 0 or ww >= 0:
            raise NotNegativeVector("distance needs negative vectors")
        zw = self.inner(z, w)
        c = abs(zw) ** 2 / (zz * ww)
        c = max(c, 1.0)
        return 2.0 * np.arccosh(np.sqrt(c))

    # -- random isometries ---------------------------------------------

    def _random_qarray(self, rng, shape) -> QArray:
        a = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        if self.field == "complex":
            return QArray(a)
        b = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        return QArray(a, b)

    def random_negative_vector(self, rng) -> QArray:
        # (w1, w2..wn, 1) is negative iff 2 Re(w1) + sum |w_i|^2 < 0, so
        # pick the interior part and push Re(w1) below the barrier.
        z = self._random_qarray(rng, self.dim)
        z.a[-1], z.b[-1] = 1.0, 0.0
        mid = float(np.sum(np.abs(z.a[1:-1]) ** 2
                           + np.abs(z.b[1:-1]) ** 2))
        depth = rng.uniform(0.1, 2.0)
        z.a[0] = -(mid / 2.0 + depth) + 1j * z.a[0].imag
        if self.field == "quaternion":
            z.b[0] = rng.standard_normal() + 1j * rng.standard_normal()
        else:
            z.b[0] = 0.0
        # the j-part of w1 only shifts the imaginary part of <z,z>
        if self.norm_sq(z) >= -1e-6:
            raise GramSchmidtBreakdown("negative-vector construction failed")
        return z

    def _diagonalizing_basis(self, rng) -> list:
        """Random H-orthogonal basis u_1..u_{n+1} with |<u_i,u_i>| = 1,
        the last vector negative, the rest positive."""
        basis = []
        un = self.random_negative_vector(rng)
        un = un.scale(1.0 / np.sqrt(-self.norm_sq(un)))
        for _ in range(self.n):
            for _attempt in range(64):
                v = self._random_qarray(rng, self.dim)
                # project away from the span collected so far
                v = v + un.rmul(self.inner(v, un))  # <un,un> = -1
                for u in basis:
                    v = v - u.rmul(self.inner(v, u))
                s = self.norm_sq(v)
                if s > 1e-6 * v.norm() ** 2:
                    basis.append(v.scale(1.0 / np.sqrt(s)))
                    break
            else:
                raise GramSchmidtBreakdown("orthogonalization stalled")
        basis.append(un)
        return basis

    def random_isometry(self, rng) -> QArray:
        """Haar-ish random element of the isometry group of the form."""
        basis = self._diagonalizing_basis(rng)
        U = QArray.from_columns(basis)
        # U^* H U = D = diag(1..1,-1); convert through the null basis
        # b_1 = (e_1 + e_{n+1})/sqrt2, b_{n+1} = (e_1 - e_{n+1})/sqrt2
        # whose matrix P satisfies P^* H P = D as well; then A = U P^{-1}.
        P = np.eye(self.dim, dtype=complex)
        s = 1.0 / np.sqrt(2.0)
        P[0, 0] = P[0, self.dim - 1] = s
        P[self.dim - 1, 0] = s
        P[self.dim - 1, self.dim - 1] = -s
        A = U @ QArray(np.linalg.inv(P))
        if not self.is_isometry(A, tol=1e-8):
            raise GramSchmidtBreakdown("isometry construction lost precision")
        return A
