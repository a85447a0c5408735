"""Constructive conjugacy testing.

Two weakly non-singular pairs are conjugate exactly when their real
traces agree, the Sp(1) orbits of their normalized Gram matrices agree,
and the conjugator reconstructed from the matched Gram data carries the
first pair onto the second.  The reconstruction C = P' P^{-1} uses a
spanning sub-collection of the associated lifts; its correctness is
always verified directly rather than assumed.

Also provides the congruence test for quadruples of boundary points and
a numerical rank probe of the invariant map.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .errors import (NotNonsingular, SingularBasis, VerificationFailed)
from .genericity import genericity_report
from .gram import (AssociatedTuple, gram_matrix, gram_offdiagonal_entries,
                   normalize_lifts)
from .hermitian import HermitianSpace
from .invariants import InvariantTuple, pair_invariants, sp1_orbit_equal
from .qmatrix import QArray, conjugate_by, quaternionic_rank
from .quat import ONE, Quaternion, align_sp1
from .spectral import (LoxodromicFrame, eigen_frame, projective_point,
                       projective_points_equal, real_trace_from_frame)

ORBIT_TOL = 1e-8


def _gram_orbit_scalar(t: AssociatedTuple, t2: AssociatedTuple,
                       tol: float) -> Optional[Quaternion]:
    """Unit mu with mu*G*conj(mu) = G' entrywise, or None."""
    e1 = gram_offdiagonal_entries(gram_matrix(t))
    e2 = gram_offdiagonal_entries(gram_matrix(t2))
    if t.space.field == "complex":
        scale = max(1.0, max(abs(q) for q in e1))
        ok = all(abs(a - b) <= tol * scale for a, b in zip(e1, e2))
        return ONE if ok else None
    return align_sp1(list(zip(e1, e2)), tol=tol)


def _spanning_subset(lifts: List[QArray], size: int) -> List[int]:
    """Greedy prefix-priority choice of `size` H-independent lifts."""
    sel: List[int] = []
    basis: List[QArray] = []
    for i, p in enumerate(lifts):
        if len(sel) == size:
            break
        if quaternionic_rank([*basis, p]) > len(sel):
            sel.append(i)
            basis.append(p)
    if len(sel) < size:
        raise SingularBasis("associated lifts do not span the space")
    return sel


def congruence_from_tuples(t: AssociatedTuple, t2: AssociatedTuple,
                           tol: float = ORBIT_TOL) -> Optional[QArray]:
    """Form-preserving C with C(p_i) = p_i' (mu-adjusted) for every lift.

    Returns None when the Sp(1) orbits of the two normalized Gram
    matrices differ.  When they match, C is reconstructed on a spanning
    sub-collection, then checked as an isometry, on every lift, and
    projectively on the two omitted vectors.
    """
    space = t.space
    mu = _gram_orbit_scalar(t, t2, tol)
    if mu is None:
        return None
    targets = [p.rmul(mu) for p in t2.lifts]
    sel = _spanning_subset(t.lifts, space.n + 1)
    P = QArray.from_columns([t.lifts[i] for i in sel])
    Pp = QArray.from_columns([targets[i] for i in sel])
    C = Pp @ P.inverse()

    scale = 1.0 + C.max_abs()
    if not space.is_isometry(C, tol=100 * tol * scale ** 2):
        raise VerificationFailed("reconstructed map is not an isometry")
    for p, q in zip(t.lifts, targets):
        if (C @ p - q).max_abs() > 100 * tol * scale * (1.0 + p.max_abs()):
            raise VerificationFailed("reconstructed map misses a lift")
    for om, om2 in zip((t.omitted_A, t.omitted_B),
                       (t2.omitted_A, t2.omitted_B)):
        if quaternionic_rank([C @ om, om2], tol=100 * tol) != 1:
            raise VerificationFailed(
                "reconstructed map misses an omitted lift projectively")
    return C


def _refine_conjugator(space: HermitianSpace, C: QArray, pairs,
                       sweeps: int = 3) -> QArray:
    """Newton polish of C X C^-1 = X' over the given element pairs.

    Each sweep solves the linearization (I + D) C: D X' - X' D = E with
    E = X' - C X C^-1, jointly over all pairs, by real least squares.
    """
    m = space.dim
    quat = space.field == "quaternion"
    mm = m * m
    nreal = (4 if quat else 2) * mm

    def make_delta(x):
        da = (x[:mm] + 1j * x[mm:2 * mm]).reshape(m, m)
        if not quat:
            return QArray(da)
        db = (x[2 * mm:3 * mm] + 1j * x[3 * mm:]).reshape(m, m)
        return QArray(da, db)

    def flat(R):
        return np.concatenate([R.a.ravel().real, R.a.ravel().imag,
                               R.b.ravel().real, R.b.ravel().imag])

    basis = [make_delta(col) for col in np.eye(nreal)]
    for _ in range(sweeps):
        Cinv = C.inverse()
        blocks, rhs = [], []
        for X, Xp in pairs:
            E = Xp - C @ X @ Cinv
            rhs.append(flat(E))
            blocks.append(np.stack([flat(D @ Xp - Xp @ D) for D in basis],
                                   axis=1))
        x, *_ = np.linalg.lstsq(np.concatenate(blocks),
                                np.concatenate(rhs), rcond=None)
        step = make_delta(x)
        C2 = (QArray.eye(m) + step) @ C
        old = max((Xp - C @ X @ C.inverse()).max_abs() for X, Xp in pairs)
        new = max((Xp - C2 @ X @ C2.inverse()).max_abs() for X, Xp in pairs)
        if new >= old:
            break
        C = C2
    return C


@dataclass
class ConjugacyResult:
    conjugate: bool
    conjugator: Optional[QArray]
    stage: str
    residual: float


def _frame_points(f: LoxodromicFrame) -> List[np.ndarray]:
    return [projective_point(f.attracting)] + \
        [projective_point(x) for x in f.positives]


def _points_match(f: LoxodromicFrame, g: LoxodromicFrame,
                  tol: float) -> bool:
    return all(projective_points_equal(p, q, tol=tol)
               for p, q in zip(_frame_points(f), _frame_points(g)))


def _reduced_match(i1: InvariantTuple, i2: InvariantTuple,
                   tol: float) -> bool:
    """Complex strong mode: the short list X1, X2, A, alpha, beta."""
    if abs(i1.angular[0] - i2.angular[0]) > tol:
        return False
    e1, e2 = i1.reduced_entries(), i2.reduced_entries()
    return all(a.isclose(b, tol=tol * max(1.0, abs(a)))
               for a, b in zip(e1, e2))


def conjugacy_test(space: HermitianSpace, A: QArray, B: QArray,
                   A2: QArray, B2: QArray, mode: str = "weak",
                   tol: float = 1e-7) -> ConjugacyResult:
    """Decide whether (A, B) and (A2, B2) are conjugate in the isometry
    group, producing the conjugator when they are.

    Detection order: real traces, then the invariant-tuple orbit, then
    reconstruction plus projective points.  Matching invariants with a
    failed direct conjugation check raise VerificationFailed rather
    than passing silently.
    """
    fa, fb = eigen_frame(space, A), eigen_frame(space, B)
    fa2, fb2 = eigen_frame(space, A2), eigen_frame(space, B2)

    tr_resid = max(
        float(np.max(np.abs(real_trace_from_frame(fa)
                            - real_trace_from_frame(fa2)))),
        float(np.max(np.abs(real_trace_from_frame(fb)
                            - real_trace_from_frame(fb2)))))
    tr_scale = 1.0 + float(np.max(np.abs(real_trace_from_frame(fa))))
    if tr_resid > tol * tr_scale:
        return ConjugacyResult(False, None, "real-trace", tr_resid)

    rep1 = genericity_report(space, fa, fb)
    rep2 = genericity_report(space, fa2, fb2)
    if mode == "strong":
        if not (rep1.nonsingular and rep2.nonsingular):
            raise NotNonsingular("strong mode requires non-singular pairs")
    t1 = normalize_lifts(space, fa, fb, report=rep1)
    t2 = normalize_lifts(space, fa2, fb2, report=rep2)
    i1 = pair_invariants(space, fa, fb, report=rep1, tuple_=t1)
    i2 = pair_invariants(space, fa2, fb2, report=rep2, tuple_=t2)

    if mode == "strong" and space.field == "complex":
        matched = _reduced_match(i1, i2, tol)
    else:
        matched = sp1_orbit_equal(i1, i2, tol=tol) is not None \
            and float(np.max(np.abs(i1.angular - i2.angular))) <= tol
    if not matched:
        return ConjugacyResult(False, None, "tuple", float("nan"))

    C = congruence_from_tuples(t1, t2, tol=min(tol, ORBIT_TOL))
    if C is None:
        return ConjugacyResult(False, None, "tuple", float("nan"))

    C = _refine_conjugator(space, C, [(A, A2), (B, B2)])
    Ac, Bc = conjugate_by(C, A), conjugate_by(C, B)
    ptol = max(tol, 1e-7) * (1.0 + C.max_abs() ** 2)
    # fa.conjugated(C) is the frame of C A C^-1 exactly, so the point
    # comparison never depends on re-running the spectral machinery
    if not (_points_match(fa.conjugated(C), fa2, ptol)
            and _points_match(fb.conjugated(C), fb2, ptol)):
        return ConjugacyResult(False, None, "projective-points",
                               float("nan"))

    resid = max((Ac - A2).max_abs(), (Bc - B2).max_abs())
    scale = 1.0 + max(A2.max_abs(), B2.max_abs())
    if resid > tol * scale:
        raise VerificationFailed(
            f"invariants matched but conjugation residual {resid:.3e} "
            f"exceeds {tol * scale:.3e}")
    return ConjugacyResult(True, C, "verified", resid)


# -- quadruples of boundary points -----------------------------------------

def _normalize_quadruple(space: HermitianSpace,
                         zs: List[QArray]) -> List[QArray]:
    """Rescale null lifts so <z1,z2> = <z1,z3> = <z1,z4> = 1 = |<z2,z3>|,
    with z1 anchored at its standard lift."""
    s = space.standard_lift(zs[0])
    g12 = space.inner(s, zs[1])
    g13 = space.inner(s, zs[2])
    g23 = space.inner(zs[2], zs[1])
    t = float(np.sqrt(abs(g23) / (abs(g12) * abs(g13))))
    z1 = s.scale(t)
    out = [z1]
    for z in zs[1:]:
        g = space.inner(z1, z)
        out.append(z.rmul(g.inverse().conjugate()))
    return out


def _orthogonal_complement(space: HermitianSpace,
                           vectors: List[QArray]) -> List[QArray]:
    """H-orthonormal basis of the complement of span(vectors); the
    complement must be positive definite."""
    k = len(vectors)
    M = QArray.from_quaternions(
        [[space.inner(vectors[j], vectors[i]) for j in range(k)]
         for i in range(k)])
    Minv = M.inverse()
    S = QArray.from_columns(vectors)
    out: List[QArray] = []
    have = list(vectors)
    for i in range(space.n + 1):
        e = QArray.zeros(space.n + 1)
        e.a[i] = 1.0
        b = QArray.from_quaternions(
            [space.inner(e, v) for v in vectors])
        v = e - S @ (Minv @ b)
        for u in out:
            v = v - u.rmul(space.inner(v, u))
        nrm = space.norm_sq(v)
        if nrm <= 1e-8:
            continue
        out.append(v.scale(1.0 / np.sqrt(nrm)))
        have.append(out[-1])
        if len(out) == space.n + 1 - k:
            break
    if len(out) < space.n + 1 - k:
        raise SingularBasis("could not extend to a full basis")
    return out


def boundary_quadruple_congruence(space: HermitianSpace, zs: List[QArray],
                                  ws: List[QArray],
                                  tol: float = 1e-7) -> Optional[QArray]:
    """Isometry h with h(z_i) = w_i projectively, for two quadruples of
    pairwise distinct boundary points, or None when their normalized
    pairings lie in different Sp(1) orbits."""
    zn = _normalize_quadruple(space, zs)
    wn = _normalize_quadruple(space, ws)
    ez = [space.inner(zn[j], zn[i]) for i in range(4) for j in range(i + 1, 4)]
    ew = [space.inner(wn[j], wn[i]) for i in range(4) for j in range(i + 1, 4)]
    if space.field == "complex":
        ok = all(abs(a - b) <= tol for a, b in zip(ez, ew))
        mu: Optional[Quaternion] = ONE if ok else None
    else:
        mu = align_sp1(list(zip(ez, ew)), tol=tol)
    if mu is None:
        return None
    wt = [w.rmul(mu) for w in wn]

    if quaternionic_rank(zn) != min(4, space.n + 1) \
            or quaternionic_rank(wt) != min(4, space.n + 1):
        raise SingularBasis("quadruple does not span a rank-4 subspace")
    zb, wb = list(zn), list(wt)
    if space.n + 1 > 4:
        zb += _orthogonal_complement(space, zn)
        wb += _orthogonal_complement(space, wt)
    C = QArray.from_columns(wb) @ QArray.from_columns(zb).inverse()

    scale = 1.0 + C.max_abs()
    if not space.is_isometry(C, tol=100 * tol * scale ** 2):
        raise VerificationFailed("quadruple map is not an isometry")
    for z, w in zip(zn, wt):
        if (C @ z - w).max_abs() > 100 * tol * scale * (1.0 + z.max_abs()):
            raise VerificationFailed("quadruple map misses a point")
    return C


# -- numerical rank of the invariant map -----------------------------------

def _isometry_algebra_basis(space: HermitianSpace) -> List[QArray]:
    """Real basis of {X : X* H + H X = 0} as quaternionic matrices."""
    from .hermitian import form_matrix
    m = space.n + 1
    H = QArray.from_real(form_matrix(space.n))
    units = [Quaternion(1, 0, 0, 0), Quaternion(0, 1, 0, 0),
             Quaternion(0, 0, 1, 0), Quaternion(0, 0, 0, 1)]
    nunits = 4 if space.field == "quaternion" else 2
    cols = []
    elems = []
    for i in range(m):
        for j in range(m):
            for u in units[:nunits]:
                E = QArray.zeros((m, m))
                c, d = u.complex_pair()
                E.a[i, j] = c
                E.b[i, j] = d
                elems.append(E)
                R = E.adjoint() @ H + H @ E
                cols.append(np.concatenate([R.a.ravel().view(float),
                                            R.b.ravel().view(float)]))
    Mr = np.stack(cols, axis=1)
    _, sv, Vt = np.linalg.svd(Mr)
    null = Vt[np.sum(sv > 1e-10 * sv[0]):]
    basis = []
    for row in null:
        X = QArray.zeros((m, m))
        for coef, E in zip(row, elems):
            X = X + QArray(E.a * coef, E.b * coef)
        basis.append(X)
    if space.field == "complex":
        # su(n,1): additionally remove the trace direction i*I
        tr = np.array([np.imag(np.trace(X.a)) for X in basis])
        keep = []
        for X, t in zip(basis, tr):
            keep.append(X - QArray(1j * np.eye(m) * (t / m)))
        Mk = np.stack([np.concatenate([X.a.ravel().view(float),
                                       X.b.ravel().view(float)])
                       for X in keep], axis=1)
        _, sv, Vt = np.linalg.svd(Mk, full_matrices=False)
        r = int(np.sum(sv > 1e-10 * sv[0]))
        basis = []
        for row in Vt[:r]:
            X = QArray.zeros((m, m))
            for coef, K in zip(row, keep):
                X = X + QArray(K.a * coef, K.b * coef)
            basis.append(X)
    return basis


def _mat_exp(space: HermitianSpace, X: QArray) -> QArray:
    from scipy.linalg import expm
    return QArray.from_embed(expm(X.embed()))


def _invariant_vector(space: HermitianSpace, A: QArray, B: QArray,
                      report=None) -> np.ndarray:
    fa, fb = eigen_frame(space, A), eigen_frame(space, B)
    iv = pair_invariants(space, fa, fb, report=report)
    parts = [iv.real_trace_A, iv.real_trace_B, iv.angular]
    parts += [q.to_array() for q in iv.quaternion_entries()]
    for p in iv.projective_A + iv.projective_B:
        parts.append(np.concatenate([p.real, p.imag]))
    return np.concatenate(parts)


def invariant_map_rank(space: HermitianSpace, A: QArray, B: QArray,
                       h: float = 1e-5) -> Tuple[int, float]:
    """Numerical rank of the invariant map at (A, B), restricted to a
    complement of the conjugation directions, plus the singular-value
    gap at the cut.  Central differences over the Lie-algebra chart
    (A e^(sX), B e^(uY))."""
    basis = _isometry_algebra_basis(space)
    d = len(basis)
    fa, fb = eigen_frame(space, A), eigen_frame(space, B)
    rep = genericity_report(space, fa, fb)

    cols = []
    for slot in range(2):
        for X in basis:
            Ep = _mat_exp(space, QArray(X.a * h, X.b * h))
            Em = _mat_exp(space, QArray(-X.a * h, -X.b * h))
            if slot == 0:
                vp = _invariant_vector(space, A @ Ep, B, report=rep)
                vm = _invariant_vector(space, A @ Em, B, report=rep)
            else:
                vp = _invariant_vector(space, A, B @ Ep, report=rep)
                vm = _invariant_vector(space, A, B @ Em, report=rep)
            cols.append((vp - vm) / (2 * h))
    J = np.stack(cols, axis=1)

    # conjugation directions in the same chart
    flat = np.stack([np.concatenate([X.a.ravel().view(float),
                                     X.b.ravel().view(float)])
                     for X in basis], axis=1)
    K = []
    for X in basis:
        dA = conjugate_by(A.inverse(), X) - X
        dB = conjugate_by(B.inverse(), X) - X
        ca = np.linalg.lstsq(flat, np.concatenate(
            [dA.a.ravel().view(float), dA.b.ravel().view(float)]),
            rcond=None)[0]
        cb = np.linalg.lstsq(flat, np.concatenate(
            [dB.a.ravel().view(float), dB.b.ravel().view(float)]),
            rcond=None)[0]
        K.append(np.concatenate([ca, cb]))
    Kb = np.stack(K, axis=1)
    Q, _ = np.linalg.qr(Kb)
    P = np.eye(2 * d) - Q @ Q.T
    sv = np.linalg.svd(J @ P, compute_uv=False)
    sv = sv[sv > 0]
    ratios = sv[:-1] / sv[1:]
    cut = int(np.argmax(ratios))
    return cut + 1, float(ratios[cut])
