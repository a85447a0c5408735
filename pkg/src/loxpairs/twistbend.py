"""Twist-bend deformations and gluing of (0,3) groups.

A twist-bend for a loxodromic A = Q E(r, theta, phi1, phi2) Q^{-1} is
K = Q E(t, psi, xi1, xi2) Q^{-1}, sharing A's eigenvectors and hence
commuting with A.  Its ten real parameters are (t, psi, xi1, xi2)
together with three projective points, which for a twist-bend are
pinned to those of A and are therefore validated, not free.

Gluing attaches two (0,3) groups along compatible boundary components
(peripheral of one = inverse peripheral of the other), conjugating the
far side by the twist-bend of the shared curve; assembly repeats this
over a pants graph and closes the handles.  Only n = 3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import (CompatibilityFailed, DegenerateConfiguration,
                     DegenerateSpectrum, GraphInvalid, IncompatibleBoundary,
                     InconsistentProjectivePoints, NotLoxodromic,
                     NotNonsingular, WrongDimension)
from .genericity import genericity_report
from .hermitian import HermitianSpace
from .invariants import angular_invariant, cross_ratio
from .qmatrix import QArray, conjugate_by, quaternionic_rank
from .quat import Quaternion
from .spectral import (LoxodromicFrame, classify_element, eigen_frame,
                       element_conjugator, projective_point,
                       projective_points_equal, real_trace_from_frame)

COMMUTE_TOL = 1e-9
POINT_TOL = 1e-7
COMPAT_TOL = 1e-9


@dataclass
class TwistBendParams:
    """kappa = (t, psi, xi1, xi2, k1, k2, k3); t > 0, angles in [-pi, pi],
    k_i points on the eigensphere CP^1."""
    t: float
    psi: float
    xi1: float
    xi2: float
    k1: np.ndarray
    k2: np.ndarray
    k3: np.ndarray

    def diagonal(self) -> QArray:
        return QArray.diag([self.t * np.exp(1j * self.psi),
                            np.exp(1j * self.xi1), np.exp(1j * self.xi2),
                            np.exp(1j * self.psi) / self.t])


def identity_params(frame: LoxodromicFrame) -> TwistBendParams:
    """The trivial twist-bend of A's gluing curve (K = identity)."""
    return TwistBendParams(1.0, 0.0, 0.0, 0.0,
                           projective_point(frame.attracting),
                           *[projective_point(x) for x in frame.positives])


def twist_bend_element(kappa: TwistBendParams,
                       frame: LoxodromicFrame) -> QArray:
    """K oriented consistently with the framed loxodromic A."""
    space = frame.space
    if space.n != 3:
        raise WrongDimension("twist-bends are defined for n = 3 only")
    if kappa.t <= 0:
        raise DegenerateConfiguration("twist-bend needs t > 0")
    pts = [projective_point(frame.attracting),
           *[projective_point(x) for x in frame.positives]]
    for k, p in zip((kappa.k1, kappa.k2, kappa.k3), pts):
        if not projective_points_equal(np.asarray(k, dtype=complex), p,
                                       tol=POINT_TOL):
            raise InconsistentProjectivePoints(
                "twist-bend projective points do not agree with the frame")
    Q = frame.frame_matrix()
    K = Q @ kappa.diagonal() @ Q.inverse()
    A = frame.rebuild()
    resid = (K @ A - A @ K).max_abs()
    if resid > COMMUTE_TOL * (1.0 + A.max_abs()) * (1.0 + K.max_abs()):
        raise DegenerateConfiguration(
            f"twist-bend fails to commute: residual {resid:.3e}")
    return K


def tilde_invariants(space: HermitianSpace, kappa: TwistBendParams,
                     fa: LoxodromicFrame, fb: LoxodromicFrame,
                     fc: LoxodromicFrame) -> Tuple[Quaternion, Quaternion,
                                                   Quaternion, float, float]:
    """(X~1, X~2, X~3, A~1, A~3) of a twist-bend relative to <A, B, C>.

    Requires that a_B and r_C stay off the proper totally geodesic
    subspace through a_A and r_A (rank-3 condition on lifts).
    """
    aA, rA = fa.attracting, fa.repelling
    aB, rC = fb.attracting, fc.repelling
    for x in (aB, rC):
        if quaternionic_rank([aA, rA, x]) < 3:
            raise DegenerateConfiguration(
                "configuration lies on a proper totally geodesic subspace")
    K = twist_bend_element(kappa, fa)
    # gauge-fix the quadruple so the angular invariants are well defined
    # (residual freedom is one global unit, a similarity on everything)
    from .classify import _normalize_quadruple
    aA, rA, aB, KrC = _normalize_quadruple(space, [aA, rA, aB, K @ rC])
    return (cross_ratio(space, aA, rA, aB, KrC),
            cross_ratio(space, aA, KrC, aB, rA),
            cross_ratio(space, rA, KrC, aB, aA),
            angular_invariant(space, aA, rA, KrC),
            angular_invariant(space, rA, KrC, aB))


# -- pants groups and gluing -----------------------------------------------

@dataclass
class PantsGroup:
    """A (0,3) group <A, B> with loxodromic peripherals A, B, (AB)^-1."""
    space: HermitianSpace
    A: QArray
    B: QArray
    frames: List[LoxodromicFrame] = field(default_factory=list, repr=False)

    def __post_init__(self):
        if not self.frames:
            for P in self.peripherals():
                if not classify_element(self.space, P).is_loxodromic:
                    raise NotLoxodromic("peripheral element is not loxodromic")
                self.frames.append(eigen_frame(self.space, P))

    def peripherals(self) -> List[QArray]:
        return [self.A, self.B, (self.A @ self.B).inverse()]

    def conjugated(self, S: QArray) -> "PantsGroup":
        # carrying the frames over keeps large-norm conjugates away from
        # the spectral routines (conjugation does not move the spectrum)
        return PantsGroup(self.space, conjugate_by(S, self.A),
                          conjugate_by(S, self.B),
                          [f.conjugated(S) for f in self.frames])

    def require_nonsingular(self):
        rep = genericity_report(self.space, self.frames[0], self.frames[1])
        if not rep.nonsingular:
            raise NotNonsingular("(A, B) is not a non-singular pair")


def _check_compatible(space: HermitianSpace, P: QArray, D: QArray,
                      tol: float = COMPAT_TOL):
    resid = (P - D.inverse()).max_abs()
    if resid > tol * (1.0 + P.max_abs()):
        raise IncompatibleBoundary(
            f"boundary mismatch {resid:.3e} exceeds {tol:.0e}")


def glue(g1: PantsGroup, g2: PantsGroup, kappa: TwistBendParams,
         slot1: int = 0, slot2: int = 1) -> List[QArray]:
    """Attach g2 to g1 along compatible boundary components.

    Case 1 (distinct pants): peripheral slot1 of g1 must equal the
    inverse of peripheral slot2 of g2; returns the (0,4) generators
    [A, B, K C K^-1] with C the other generator of g2 and K the
    twist-bend of the shared curve.  Case 2 (g1 is g2): closes the
    handle between slots slot1 and slot2 of the same pants, returning
    the (1,1) generators [P, K S] with S conjugating P to the inverse
    of the other peripheral.
    """
    space = g1.space
    P = g1.peripherals()[slot1]
    fP = g1.frames[slot1]
    K = twist_bend_element(kappa, fP)
    if g1 is g2:
        target = g1.peripherals()[slot2].inverse()
        S = element_conjugator(space, P, target)
        return [P, K @ S]
    D = g2.peripherals()[slot2]
    _check_compatible(space, P, D)
    C = g2.B if slot2 == 0 else g2.A
    return [g1.A, g1.B, conjugate_by(K, C)]


# -- surface assembly ------------------------------------------------------

@dataclass
class SurfaceRepresentation:
    genus: int
    generators: Dict[str, QArray]
    relation_residual: float
    parameter_count: int


def parameter_count(space: HermitianSpace, genus: int) -> int:
    """Real parameters of a genus-g assembly: each of the 2g-2 pants
    carries a full conjugacy datum, the g handle closings each remove
    and the g twist-bends each restore ten (quaternionic) or five
    (complex) parameters."""
    per_curve = 10 if space.field == "quaternion" else 5
    dim = 36 if space.field == "quaternion" else 15
    return dim * (2 * genus - 2) - per_curve * genus + per_curve * genus


def assemble_surface_representation(
        space: HermitianSpace, pants: Sequence[PantsGroup],
        edges: Sequence[Tuple[int, int, int, int]],
        kappas: Sequence[TwistBendParams]) -> SurfaceRepresentation:
    """Glue 2g-2 pants along 3g-3 curves into a genus-g representation.

    edges are (pants_i, slot_i, pants_j, slot_j); every slot is used
    exactly once and each edge carries one twist-bend.  A spanning tree
    of the pants graph aligns all pants in one frame; the g non-tree
    edges close handles, contributing generator pairs (a, b) whose
    commutator product is the reported relation residual.
    """
    np_, ne = len(pants), len(edges)
    if np_ < 2 or np_ % 2 or ne != (3 * np_ // 2) or len(kappas) != ne:
        raise GraphInvalid("need 2g-2 pants, 3g-3 edges, one twist per edge")
    genus = np_ // 2 + 1
    used = set()
    for (i, si, j, sj) in edges:
        for key in ((i, si), (j, sj)):
            if key[0] >= np_ or not 0 <= key[1] < 3 or key in used:
                raise GraphInvalid(f"bad or reused slot {key}")
            used.add(key)

    # spanning tree walk, conjugating every pants into pants 0's frame
    adj: Dict[int, List[int]] = {i: [] for i in range(np_)}
    for e, (i, _, j, _) in enumerate(edges):
        adj[i].append(e)
        adj[j].append(e)
    aligned: List[Optional[PantsGroup]] = [None] * np_
    aligned[0] = pants[0]
    tree = set()
    stack = [0]
    while stack:
        i = stack.pop()
        for e in adj[i]:
            a, sa, b, sb = edges[e]
            if a != i:
                a, sa, b, sb = b, sb, a, sa
            if aligned[b] is not None:
                continue
            P = aligned[a].peripherals()[sa]
            D = pants[b].peripherals()[sb]
            try:
                S = element_conjugator(space, D.inverse(), P)
            except DegenerateSpectrum as exc:
                raise CompatibilityFailed(str(exc))
            K = twist_bend_element(kappas[e], aligned[a].frames[sa])
            aligned[b] = pants[b].conjugated(K @ S)
            _check_compatible(space, P, conjugate_by(K @ S, D),
                              tol=max(COMPAT_TOL, 1e-7))
            tree.add(e)
            stack.append(b)
    if any(g is None for g in aligned):
        raise GraphInvalid("gluing graph is not connected")

    # non-tree edges close the g handles: stable letters t with
    # t X t^-1 = Y^-1 across the curve; eliminating the far-side
    # generators turns the glued amalgam relation into the standard
    # commutator product, with handle orientations alternating
    generators: Dict[str, QArray] = {}
    rel = QArray.eye(space.n + 1)
    h = 0
    for e, (i, si, j, sj) in enumerate(edges):
        if e in tree:
            continue
        h += 1
        X = aligned[i].peripherals()[si]
        Y = aligned[j].peripherals()[sj]
        try:
            S = element_conjugator(space, X, Y.inverse())
        except DegenerateSpectrum as exc:
            raise CompatibilityFailed(str(exc))
        # K commutes with X, so t X t^-1 = S X S^-1 = Y^-1 exactly and
        # the twist deforms only the transversal holonomy
        K = twist_bend_element(kappas[e], aligned[i].frames[si])
        t = S @ K
        a, b = (X.inverse(), t) if h % 2 else (t, X)
        generators[f"a{h}"] = a
        generators[f"b{h}"] = b
        rel = rel @ a @ b @ a.inverse() @ b.inverse()
    if h != genus:
        raise GraphInvalid(f"expected {genus} handles, found {h}")
    residual = (rel - QArray.eye(space.n + 1)).max_abs()
    return SurfaceRepresentation(genus, generators, residual,
                                 parameter_count(space, genus))
