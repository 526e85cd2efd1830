"""Dimension-2 specialization and its Poincare-sphere geometry.

A strict absolutely compatible pair in dimension 2 is exactly

    A = (1-lam) P + lam Q,   B = (1-lam) P + lam Q'

for rank-one projections P, Q with P not in {Q, Q'}, Q' = 1 - Q, and
lam in (0, 1).  Under the affine chart [[a, al], [conj(al), 1-a]] ->
(a, Re al, Im al) rank-one projections form the sphere of radius 1/2
centred at (1/2, 0, 0), trace-one effects with 0 < det < 1/4 fill its
open interior, and the pairs above live on the pivotal sphere of index
lam with pivot at P.
"""

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import (
    DegenerateSpec,
    DetOutOfRange,
    DimensionMismatch,
    EmptyInput,
    NotAbsolutelyCompatible,
    NotOnSphere,
    NotProjection,
    NotStrict,
    OutsideBall,
    PostconditionFailure,
    SpectralAmbiguity,
    TraceNotOne,
)
from .hermitian import (
    absolute_value,
    as_matrix,
    eig_hermitian,
    hermitize,
    is_strict,
    op_norm,
    require_effect,
    require_hermitian,
    require_projection,
)
from . import compat

BALL_CENTER = np.array([0.5, 0.0, 0.0])
BALL_RADIUS = 0.5


def _point(pt) -> np.ndarray:
    pt = np.asarray(pt, dtype=float).reshape(-1)
    if pt.shape != (3,):
        raise DimensionMismatch("a point needs exactly three coordinates")
    return pt


def bloch_point(x, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Chart a trace-one 2x2 effect to (x[0,0], Re x[0,1], Im x[0,1])."""
    x = require_hermitian(x, tol)
    if x.shape != (2, 2):
        raise DimensionMismatch("the chart is for 2x2 matrices")
    tr = float(np.real(np.trace(x)))
    if abs(tr - 1.0) > tol.geo:
        raise TraceNotOne("trace %.12f is not 1" % tr)
    det = float(np.real(np.linalg.det(x)))
    if det < -tol.geo or det > 0.25 + tol.geo:
        raise DetOutOfRange("det %.3e outside [0, 1/4]" % det)
    return np.array([float(np.real(x[0, 0])), float(np.real(x[0, 1])), float(np.imag(x[0, 1]))])


def bloch_matrix(pt, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    pt = _point(pt)
    if float(np.sum((pt - BALL_CENTER) ** 2)) > BALL_RADIUS**2 + tol.geo:
        raise OutsideBall("point %r lies outside the chart ball" % (pt.tolist(),))
    al = pt[1] + 1j * pt[2]
    return np.array([[pt[0], al], [np.conj(al), 1.0 - pt[0]]], dtype=complex)


def in_punctured_ball(x, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Trace-one positive 2x2 with 0 < det < 1/4, both bounds strict with
    margin; the centre (1/2)I has det exactly 1/4 and is excluded."""
    try:
        x = require_hermitian(x, tol)
    except Exception:
        return False
    if x.shape != (2, 2):
        return False
    if abs(float(np.real(np.trace(x))) - 1.0) > tol.geo:
        return False
    vals = np.linalg.eigvalsh(x)
    if vals[0] < -tol.geo:
        return False
    det = float(vals[0] * vals[1])
    return tol.geo < det < 0.25 - tol.geo


def _rank_one(p, tol: Tolerances) -> np.ndarray:
    p = require_projection(p, tol)
    if p.shape != (2, 2):
        raise DimensionMismatch("expected a 2x2 projection")
    if abs(float(np.real(np.trace(p))) - 1.0) > tol.proj:
        raise NotProjection("expected a rank-one projection")
    return p


@dataclass(frozen=True)
class PairSpec:
    """Rank-one projections and the mixing index of a dimension-2 pair."""

    pivot: np.ndarray
    target: np.ndarray
    index: float


def _validate_spec(pivot, target, index, tol: Tolerances):
    pivot = _rank_one(pivot, tol)
    target = _rank_one(target, tol)
    index = float(index)
    if not 0.0 < index < 1.0:
        raise DegenerateSpec("index %r outside (0, 1)" % index)
    one = np.eye(2, dtype=complex)
    if op_norm(pivot - target) <= tol.proj:
        raise DegenerateSpec("pivot equals the target projection")
    if op_norm(pivot - (one - target)) <= tol.proj:
        raise DegenerateSpec("pivot equals the complement of the target")
    return pivot, target, index


def pair_from_projections(pivot, target, index, tol: Tolerances = DEFAULT_TOL):
    """A = (1-index) pivot + index target, B the same with 1 - target."""
    pivot, target, index = _validate_spec(pivot, target, index, tol)
    one = np.eye(2, dtype=complex)
    a = hermitize((1.0 - index) * pivot + index * target)
    b = hermitize((1.0 - index) * pivot + index * (one - target))
    if not is_strict(a, tol) or not is_strict(b, tol):
        raise DegenerateSpec("projections too close to degeneracy at this tolerance")
    report = compat.is_abs_compatible(a, b, tol)
    if not report:
        raise PostconditionFailure("constructed pair residual %.3e" % report.residual)
    return a, b


def decompose_pair_m2(a, b, tol: Tolerances = DEFAULT_TOL) -> PairSpec:
    """Closed-form inverse of pair_from_projections.

    The index is the doubled eigenvalue of |a-b|; the pivot spans the top
    eigenvector of a+b (eigenvalue 2 - index); the target is read off from
    a by affine inversion.
    """
    a = require_effect(a, tol)
    b = require_effect(b, tol)
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise DimensionMismatch("decomposition is for 2x2 effects")
    if not is_strict(a, tol):
        raise NotStrict("first effect is not strict")
    if not is_strict(b, tol):
        raise NotStrict("second effect is not strict")
    report = compat.is_abs_compatible(a, b, tol)
    if not report:
        raise NotAbsolutelyCompatible("residual %.3e > %.3e" % (report.residual, tol.compat))

    dvals = np.linalg.eigvalsh(absolute_value(a - b, tol))
    if float(dvals[1] - dvals[0]) > tol.cluster * max(1.0, float(dvals[1])):
        raise SpectralAmbiguity("|a - b| does not have a doubled eigenvalue")
    index = float(0.5 * (dvals[0] + dvals[1]))

    sdec = eig_hermitian(a + b, tol)
    if abs(float(sdec.eigenvalues[1]) - (2.0 - index)) > 10.0 * tol.cluster:
        raise PostconditionFailure("a + b has no eigenvalue at 2 - index")
    v = sdec.eigenvectors[:, 1]
    pivot = hermitize(np.outer(v, np.conj(v)))
    target = hermitize((a - (1.0 - index) * pivot) / index)

    ra, rb = pair_from_projections(pivot, target, index, tol)
    err = max(op_norm(ra - a), op_norm(rb - b))
    if err > tol.geo:
        raise PostconditionFailure("round-trip residual %.3e > %.3e" % (err, tol.geo))
    return PairSpec(pivot=pivot, target=target, index=index)


@dataclass(frozen=True)
class PivotalSphere:
    """Sphere with diameter from the pivot point to (1-index) pivot +
    index antipode; internally tangent to the chart ball at the pivot."""

    pivot: np.ndarray
    index: float
    center: np.ndarray
    radius: float


def pivotal_sphere(pivot, index, tol: Tolerances = DEFAULT_TOL) -> PivotalSphere:
    index = float(index)
    if not 0.0 < index < 1.0:
        raise DegenerateSpec("index %r outside (0, 1)" % index)
    p = bloch_point(_rank_one(pivot, tol), tol)
    antipode = 2.0 * BALL_CENTER - p
    far = (1.0 - index) * p + index * antipode
    return PivotalSphere(pivot=p, index=index, center=0.5 * (p + far), radius=0.5 * index)


def sphere_to_ball(sphere: PivotalSphere, point, tol: Tolerances = DEFAULT_TOL):
    """Point C on the pivotal sphere -> the unique R on the chart ball with
    C = (1-index) pivot + index R, plus the antipode of R."""
    point = _point(point)
    if abs(float(np.linalg.norm(point - sphere.center)) - sphere.radius) > tol.geo:
        raise NotOnSphere("point is not on the pivotal sphere")
    r = sphere.pivot + (point - sphere.pivot) / sphere.index
    return r, 2.0 * BALL_CENTER - r


def ball_to_sphere(sphere: PivotalSphere, point, tol: Tolerances = DEFAULT_TOL):
    """Point R on the chart ball boundary -> (C, D) antipodal on the
    pivotal sphere, C = (1-index) pivot + index R."""
    point = _point(point)
    if abs(float(np.linalg.norm(point - BALL_CENTER)) - BALL_RADIUS) > tol.geo:
        raise NotOnSphere("point is not on the chart ball")
    c = (1.0 - sphere.index) * sphere.pivot + sphere.index * point
    return c, 2.0 * sphere.center - c


@dataclass(frozen=True)
class GeometryReport:
    sphere: PivotalSphere
    points: dict
    residuals: dict

    def to_json(self) -> dict:
        return {
            "ball": {"center": BALL_CENTER.tolist(), "radius": BALL_RADIUS},
            "pivotal": {
                "pivot": self.sphere.pivot.tolist(),
                "index": self.sphere.index,
                "center": self.sphere.center.tolist(),
                "radius": self.sphere.radius,
            },
            "points": {k: v.tolist() for k, v in self.points.items()},
            "residuals": dict(self.residuals),
        }


def geometry_report(pivot, target, index, tol: Tolerances = DEFAULT_TOL) -> GeometryReport:
    """Residuals of the five geometric facts about a dimension-2 pair:
    tangency of the pivotal sphere, coplanarity of the six points,
    parallelism of AB and QQ', the right angle at the pivot, and
    antipodality of A and B on the pivotal sphere."""
    pivot, target, index = _validate_spec(pivot, target, index, tol)
    sphere = pivotal_sphere(pivot, index, tol)

    p = sphere.pivot
    q = bloch_point(target, tol)
    pp = 2.0 * BALL_CENTER - p
    qp = 2.0 * BALL_CENTER - q
    a = (1.0 - index) * p + index * q
    b = (1.0 - index) * p + index * qp
    points = {"P": p, "Pp": pp, "Q": q, "Qp": qp, "A": a, "B": b}

    tangency = abs(
        float(np.linalg.norm(BALL_CENTER - sphere.center)) - (BALL_RADIUS - sphere.radius)
    )
    rows = np.vstack([pp - p, q - p, qp - p, a - p, b - p])
    sv = np.linalg.svd(rows, compute_uv=False)
    coplanarity = float(sv[2] / sv[0])

    u = a - b
    v = q - qp
    parallelism = float(
        np.linalg.norm(np.cross(u / np.linalg.norm(u), v / np.linalg.norm(v)))
    )
    right_angle = abs(
        float(np.dot(a - p, b - p)) / (np.linalg.norm(a - p) * np.linalg.norm(b - p))
    )
    antipodality = float(np.linalg.norm(0.5 * (a + b) - sphere.center))

    residuals = {
        "tangency": tangency,
        "coplanarity": coplanarity,
        "parallelism": parallelism,
        "right_angle": right_angle,
        "antipodality": antipodality,
    }
    return GeometryReport(sphere=sphere, points=points, residuals=residuals)


@dataclass(frozen=True)
class SpheroidStats:
    count: int
    mean: float
    spread: float
    relative_spread: float


def spheroid_residual(a, partners, tol: Tolerances = DEFAULT_TOL) -> SpheroidStats:
    """Constancy of |X - A| + |X - A'| over chart points X of effects
    absolutely compatible with A, where A' is the reflection of A through
    the ball centre (the image of 1 - A)."""
    partners = list(partners)
    if not partners:
        raise EmptyInput("no partner effects supplied")
    a = as_matrix(a)
    if not in_punctured_ball(a, tol):
        raise DegenerateSpec("reference effect must lie in the open punctured ball")
    focus = bloch_point(a, tol)
    mirror = 2.0 * BALL_CENTER - focus

    sums = []
    for x in partners:
        report = compat.is_abs_compatible(a, x, tol)
        if not report:
            raise NotAbsolutelyCompatible(
                "partner residual %.3e > %.3e" % (report.residual, tol.compat)
            )
        pt = bloch_point(x, tol)
        sums.append(float(np.linalg.norm(pt - focus) + np.linalg.norm(pt - mirror)))
    sums = np.asarray(sums)
    mean = float(np.mean(sums))
    spread = float(np.max(sums) - np.min(sums))
    return SpheroidStats(
        count=len(sums), mean=mean, spread=spread,
        relative_spread=spread / mean if mean > 0 else 0.0,
    )
