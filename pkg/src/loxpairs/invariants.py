"""Numerical conjugacy invariants of a weakly non-singular pair:
angular invariants, usual and generalized cross-ratios, eta invariants,
and the Sp(1)-orbit comparison of invariant tuples.

Quaternion-valued invariants are computed on the normalized lifts, so
they are well-defined numbers; conjugating the pair moves them all by a
single unit-quaternion similarity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .errors import DegenerateConfiguration
from .gram import AssociatedTuple, normalize_lifts
from .genericity import PairGenericityReport, genericity_report
from .hermitian import HermitianSpace
from .qmatrix import QArray
from .quat import Quaternion, align_sp1
from .spectral import LoxodromicFrame, projective_point, real_trace_from_frame

DEGENERATE_TOL = 1e-10


def _inner(space, z, w) -> Quaternion:
    q = space.inner(z, w)
    if abs(q) <= DEGENERATE_TOL * z.norm() * w.norm():
        raise DegenerateConfiguration("vanishing inner product")
    return q


def cross_ratio(space: HermitianSpace, z1: QArray, z2: QArray,
                z3: QArray, z4: QArray) -> Quaternion:
    """<z3,z1><z3,z2>^-1 <z4,z2><z4,z1>^-1, exactly in this order."""
    return (_inner(space, z3, z1) * _inner(space, z3, z2).inverse()
            * _inner(space, z4, z2) * _inner(space, z4, z1).inverse())


def triple_product(space: HermitianSpace, z1, z2, z3) -> Quaternion:
    return (_inner(space, z1, z2) * _inner(space, z2, z3)
            * _inner(space, z3, z1))


def angular_invariant(space: HermitianSpace, z1, z2, z3) -> float:
    """arccos(Re(-<z1,z2,z3>)/|<z1,z2,z3>|), in [0, pi]; lift-independent."""
    t = triple_product(space, z1, z2, z3)
    return float(np.arccos(np.clip(-t.w / abs(t), -1.0, 1.0)))


@dataclass
class InvariantTuple:
    field_tag: str
    real_trace_A: np.ndarray
    real_trace_B: np.ndarray
    angular: np.ndarray                 # A1, A2, A3
    X1: Quaternion
    X2: Quaternion
    X3: Quaternion
    alpha: List[Quaternion]             # X_{2k}, one per matched B-positive
    beta: List[Quaternion]              # X_{4j}, one per matched A-positive
    mixed: List[List[Quaternion]]       # X_{jk} grid, (n-2) x (n-2)
    eta_A: List[Quaternion]             # eta_j over A-positives
    eta_B: List[Quaternion]             # eta_k over B-positives
    projective_A: List[np.ndarray]
    projective_B: List[np.ndarray]
    matching_A: List[int] = field(default_factory=list)
    matching_B: List[int] = field(default_factory=list)

    def quaternion_entries(self) -> List[Quaternion]:
        out = [self.X1, self.X2, self.X3, *self.alpha, *self.beta]
        for row in self.mixed:
            out.extend(row)
        out.extend(self.eta_A)
        out.extend(self.eta_B)
        return out

    def reduced_entries(self) -> List[Quaternion]:
        """The short list sufficient for non-singular pairs: X1, X2,
        alpha, beta (angular and traces are compared separately)."""
        return [self.X1, self.X2, *self.alpha, *self.beta]


def pair_invariants(space: HermitianSpace, fa: LoxodromicFrame,
                    fb: LoxodromicFrame,
                    report: Optional[PairGenericityReport] = None,
                    tuple_: Optional[AssociatedTuple] = None) -> InvariantTuple:
    if report is None:
        report = genericity_report(space, fa, fb)
    if tuple_ is None:
        tuple_ = normalize_lifts(space, fa, fb, report=report)
    p = tuple_.lifts
    n = space.n
    ang = np.array([angular_invariant(space, p[0], p[1], p[2]),
                    angular_invariant(space, p[0], p[1], p[3]),
                    angular_invariant(space, p[1], p[2], p[3])])
    X1 = cross_ratio(space, p[0], p[1], p[2], p[3])
    X2 = cross_ratio(space, p[0], p[2], p[1], p[3])
    X3 = cross_ratio(space, p[1], p[3], p[2], p[0])
    apos = p[4:n + 2]
    bpos = p[n + 2:2 * n]
    alpha = [cross_ratio(space, p[0], p[1], p[2], x) for x in bpos]
    beta = [cross_ratio(space, p[2], p[3], p[0], x) for x in apos]
    mixed = [[cross_ratio(space, p[2], xk, p[1], xj) for xk in bpos]
             for xj in apos]
    eta_A = [(_inner(space, p[2], xj) * _inner(space, p[2], p[3]).inverse()
              * _inner(space, xj, p[3]) * _inner(space, xj, xj).inverse())
             for xj in apos]
    eta_B = [(_inner(space, p[0], xk) * _inner(space, p[0], p[1]).inverse()
              * _inner(space, xk, p[1]) * _inner(space, xk, xk).inverse())
             for xk in bpos]
    proj_a = [projective_point(fa.attracting)] + \
        [projective_point(x) for x in fa.positives]
    proj_b = [projective_point(fb.attracting)] + \
        [projective_point(x) for x in fb.positives]
    return InvariantTuple(
        field_tag=space.field,
        real_trace_A=real_trace_from_frame(fa),
        real_trace_B=real_trace_from_frame(fb),
        angular=ang, X1=X1, X2=X2, X3=X3,
        alpha=alpha, beta=beta, mixed=mixed, eta_A=eta_A, eta_B=eta_B,
        projective_A=proj_a, projective_B=proj_b,
        matching_A=list(tuple_.matching_A),
        matching_B=list(tuple_.matching_B))


def sp1_orbit_equal(t1: InvariantTuple, t2: InvariantTuple,
                    tol: float = 1e-8) -> Optional[Quaternion]:
    """Unit mu conjugating every quaternion entry of t1 onto t2, or None.

    In complex mode the Sp(1) action is trivial on the stored scalars,
    so the comparison is entrywise equality with mu = 1.
    """
    e1, e2 = t1.quaternion_entries(), t2.quaternion_entries()
    if len(e1) != len(e2):
        return None
    if t1.field_tag == "complex":
        ok = all(a.isclose(b, tol=tol * max(1.0, abs(a)))
                 for a, b in zip(e1, e2))
        return Quaternion(1, 0, 0, 0) if ok else None
    return align_sp1(list(zip(e1, e2)), tol=tol)
