"""Conic fitting and the equiaffine curvature / arc-length / signature layer.

A point's curvature data comes from the unique conic through its
two-neighborhood (five points, no three collinear):

    A x^2 + 2B xy + C y^2 + 2D x + 2E y + F0 = 0

with the quadratic invariant S = AC - B^2 and the cubic invariant F the
determinant of [[A,B,D],[B,C,E],[D,E,F0]]. The curvature S / cbrt(F)^2 is
unchanged by coefficient rescaling and by unimodular maps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateConfiguration,
    DegenerateStencil,
    IndexOutOfRange,
    MeshTooShort,
    NonRealMu,
    NotConvex,
    NotOrdinary,
    ParabolicConic,
    SchemeSpacingMismatch,
    WrongCurvatureSign,
    ZeroDenominator,
    ZeroF,
)
from .geometry import (
    Mesh,
    NeighborhoodSpec,
    Point2,
    SigDirection,
    cross2,
    is_convex,
    is_equally_spaced,
    is_ordinary,
    orient,
)
from .signatures import Scheme, Signature, SignaturePoint

# |S| below this (unit-norm coefficients) marks the conic parabolic.
PARABOLIC_TOL = 1e-10
# |F| below this (unit-norm coefficients) marks a degenerate conic (line pair).
ZERO_F_TOL = 1e-12
# Residual bound for the five fitted points, at unit design-row scale.
RESIDUAL_TOL = 1e-8
# Relative spread tolerated between consecutive arc lengths for EQ5/EQ6.
AFFINE_SPACING_REL_TOL = 1e-6

# Conic fit window: the two-neighborhood on each side of the center point.
FIT_HALF_WIDTH = 2
# Arc lengths at a point are only defined inside its five-neighborhood.
ARC_HALF_WIDTH = 5


@dataclass(frozen=True)
class ConicCoeffs:
    """Coefficients of A x^2 + 2B xy + C y^2 + 2D x + 2E y + F0 = 0.

    Stored at unit Euclidean norm with the first non-negligible entry of
    (A, B, C) positive, so repeated fits are bitwise reproducible.
    """

    A: float
    B: float
    C: float
    D: float
    E: float
    F0: float

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.A, self.B, self.C, self.D, self.E, self.F0])

    @property
    def matrix3(self) -> np.ndarray:
        return np.array(
            [
                [self.A, self.B, self.D],
                [self.B, self.C, self.E],
                [self.D, self.E, self.F0],
            ]
        )

    def evaluate(self, point) -> float:
        x, y = float(point[0]), float(point[1])
        return (
            self.A * x * x
            + 2.0 * self.B * x * y
            + self.C * y * y
            + 2.0 * self.D * x
            + 2.0 * self.E * y
            + self.F0
        )

    @classmethod
    def from_vector(cls, vec) -> "ConicCoeffs":
        a, b, c, d, e, f0 = (float(v) for v in np.asarray(vec, dtype=float))
        return cls(a, b, c, d, e, f0)

    def scaled(self, factor: float) -> "ConicCoeffs":
        return ConicCoeffs.from_vector(self.vector * factor)


@dataclass(frozen=True)
class AffineInvariants:
    S: float
    F: float


@dataclass(frozen=True)
class ArcLengthSet:
    """Arc lengths L[at-2], L[at-1], L[at], L[at+1], all from the conic at `at`."""

    at: int
    values: tuple[float, float, float, float]


def fit_conic(points) -> ConicCoeffs:
    """Unique conic through five points via null-space extraction.

    Parameters
    ----------
    points : array-like (5, 2)
        Five distinct points, no three collinear.

    Returns
    -------
    ConicCoeffs
        Unit-norm, sign-normalized coefficients; every input point has
        residual below ``RESIDUAL_TOL`` at unit design-row scale.

    Raises
    ------
    DegenerateConfiguration
        Coincident points, a collinear triple, or a design matrix of
        rank < 5.
    """
    pts = np.asarray(points, dtype=float)
    if pts.shape != (5, 2):
        raise DegenerateConfiguration(f"conic fit needs exactly 5 points, got {pts.shape}")
    scale = max(float(np.abs(pts).max()), 1e-300)
    for i in range(5):
        for j in range(i + 1, 5):
            if np.linalg.norm(pts[i] - pts[j]) <= 1e-12 * scale:
                raise DegenerateConfiguration(f"fit points {i} and {j} coincide")
            for k in range(j + 1, 5):
                if abs(orient(pts[i], pts[j], pts[k])) <= 1e-12 * scale ** 2:
                    raise DegenerateConfiguration(f"fit points {i}, {j}, {k} are collinear")
    # fit in a centered, isotropically scaled frame for conditioning, then
    # transport the coefficient matrix back through the frame change exactly
    centroid = pts.mean(axis=0)
    spread = float(np.sqrt(((pts - centroid) ** 2).sum(axis=1).mean()))
    u = (pts - centroid) / spread
    x, y = u[:, 0], u[:, 1]
    design = np.stack([x * x, 2.0 * x * y, y * y, 2.0 * x, 2.0 * y, np.ones_like(x)], axis=1)
    _, sv, vt = np.linalg.svd(design)
    if sv[4] <= 1e-13 * sv[0]:
        raise DegenerateConfiguration("conic through the five points is not unique (rank < 5)")
    nvec = vt[-1]
    frame = np.array(
        [
            [1.0 / spread, 0.0, -centroid[0] / spread],
            [0.0, 1.0 / spread, -centroid[1] / spread],
            [0.0, 0.0, 1.0],
        ]
    )
    mat = frame.T @ ConicCoeffs.from_vector(nvec).matrix3 @ frame
    vec = np.array([mat[0, 0], mat[0, 1], mat[1, 1], mat[0, 2], mat[1, 2], mat[2, 2]])
    vec = vec / np.linalg.norm(vec)
    lead = vec[:3][np.abs(vec[:3]) > 1e-12]
    pivot = lead[0] if len(lead) else vec[np.abs(vec) > 1e-12][0]
    if pivot < 0:
        vec = -vec
    coeffs = ConicCoeffs.from_vector(vec)
    row_scale = max(1.0, float(np.abs(pts).max()) ** 2)
    worst = max(abs(coeffs.evaluate(p)) for p in pts)
    if worst > RESIDUAL_TOL * row_scale:
        raise DegenerateConfiguration(f"conic fit residual {worst:.3e} exceeds tolerance")
    return coeffs


def invariants(c: ConicCoeffs) -> AffineInvariants:
    """Quadratic invariant S = AC - B^2 and cubic invariant F = det(3x3)."""
    s = c.A * c.C - c.B * c.B
    f = float(np.linalg.det(c.matrix3))
    return AffineInvariants(S=float(s), F=f)


def kappa_from_invariants(inv: AffineInvariants) -> float:
    """S / (real cube root of F)^2; well-defined for either sign of F."""
    if abs(inv.F) <= ZERO_F_TOL:
        raise ZeroF(f"cubic invariant {inv.F!r} too small: degenerate conic")
    return float(inv.S / np.cbrt(inv.F) ** 2)


def _fit_window(mesh: Mesh, i: int) -> np.ndarray:
    return np.array([mesh.p(i, off) for off in range(-FIT_HALF_WIDTH, FIT_HALF_WIDTH + 1)])


def conic_at(mesh: Mesh, i: int) -> ConicCoeffs:
    """Conic through the two-neighborhood of p[i], cached per mesh."""
    i = mesh.resolve(i)
    cached = mesh._conic_cache.get(i)
    if cached is None:
        cached = fit_conic(_fit_window(mesh, i))
        mesh._conic_cache[i] = cached
    return cached


def affine_curvature(mesh: Mesh, i: int) -> float:
    """Equiaffine curvature at p[i] from its two-neighborhood conic."""
    return kappa_from_invariants(invariants(conic_at(mesh, i)))


def conic_center(c: ConicCoeffs, tol: float = PARABOLIC_TOL) -> Point2:
    """Center ((BE-CD)/S, -(AE-BD)/S) of a central conic."""
    inv = invariants(c)
    if abs(inv.S) <= tol:
        raise ParabolicConic(f"quadratic invariant {inv.S!r} ~ 0: no center")
    return Point2(
        (c.B * c.E - c.C * c.D) / inv.S,
        -(c.A * c.E - c.B * c.D) / inv.S,
    )


def _arc_length_on_conic(c: ConicCoeffs, pk: np.ndarray, pl: np.ndarray) -> float:
    inv = invariants(c)
    if abs(inv.S) > PARABOLIC_TOL:
        kappa = kappa_from_invariants(inv)
        center = np.array(conic_center(c))
        return abs(kappa * cross2(pk - pl, pk - center))
    # zero-curvature branch (parabolic conic): signed length element
    denom = c.A * c.E - c.B * c.D
    norm = float(np.linalg.norm(c.vector))
    if abs(c.A) <= 1e-12 * norm or abs(denom) <= 1e-12 * norm * norm:
        raise ZeroDenominator("parabolic arc length: A or AE - BD vanishes")
    return float(
        np.cbrt(c.A * c.A / denom) * ((pk[0] - pl[0]) + (c.B / c.A) * (pk[1] - pl[1]))
    )


def _check_arc_offset(mesh: Mesh, at: int, j: int) -> None:
    off = j - at
    if mesh.closed:
        off = (off + mesh.n // 2) % mesh.n - mesh.n // 2  # shortest cyclic offset
    if abs(off) > ARC_HALF_WIDTH:
        raise IndexOutOfRange(
            f"point {j} outside the five-neighborhood of {at} (offset {off})"
        )


def affine_arc_length(mesh: Mesh, at: int, k: int, l: int) -> float:
    """Arc length between p[k] and p[l] measured by the conic fitted at `at`.

    Nonzero-curvature conics use the center parallelogram area; parabolic
    conics use the signed linear element (consumers take abs when a length
    is required). Both endpoints must lie in the five-neighborhood of `at`.
    """
    _check_arc_offset(mesh, at, k)
    _check_arc_offset(mesh, at, l)
    c = conic_at(mesh, at)
    return _arc_length_on_conic(c, mesh.p(k), mesh.p(l))


def arc_length_set(mesh: Mesh, i: int) -> ArcLengthSet:
    """The four consecutive arc lengths of the two-neighborhood of p[i]."""
    c = conic_at(mesh, i)
    values = tuple(
        _arc_length_on_conic(c, mesh.p(i, off), mesh.p(i, off + 1)) for off in (-2, -1, 0, 1)
    )
    return ArcLengthSet(at=mesh.resolve(i), values=values)


def sd_affine(mesh: Mesh, i: int) -> SigDirection:
    """Traversal orientation of the two-neighborhood on its fitted conic.

    All four consecutive turns must share a sign; a zero or mixed-sign turn
    means the window is not in convex position.
    """
    window = _fit_window(mesh, i)
    scale = mesh.diameter
    signs = set()
    for j in range(3):
        o = orient(window[j], window[j + 1], window[j + 2])
        if abs(o) <= 1e-12 * scale ** 2:
            raise DegenerateConfiguration(f"collinear turn in the two-neighborhood of {i}")
        signs.add(1 if o > 0 else -1)
    if len(signs) > 1:
        raise DegenerateConfiguration(f"two-neighborhood of {i} is not in convex position")
    return SigDirection.SD if signs.pop() > 0 else SigDirection.NOT_SD


def _ellipse_geometry(c: ConicCoeffs):
    """Center, circle-domain radius and the unimodular map to that circle."""
    inv = invariants(c)
    if inv.S <= PARABOLIC_TOL:
        raise WrongCurvatureSign("approximating conic is not an ellipse")
    center = np.array(conic_center(c))
    sgn = 1.0 if (c.A + c.C) > 0 else -1.0
    quad = sgn * np.array([[c.A, c.B], [c.B, c.C]])
    rho = sgn * (-inv.F / inv.S)
    if rho <= 0.0:
        raise DegenerateConfiguration("imaginary ellipse from conic fit")
    evals, evecs = np.linalg.eigh(quad)
    if np.linalg.det(evecs) < 0:  # keep the circle map orientation-preserving
        evecs = evecs[:, ::-1]
        evals = evals[::-1]
    radius = float(np.sqrt(rho / np.sqrt(inv.S)))
    scale = radius / np.sqrt(rho)

    def to_circle(points: np.ndarray) -> np.ndarray:
        rel = (np.asarray(points, dtype=float) - center) @ evecs
        return scale * rel * np.sqrt(evals)

    return center, radius, to_circle


def ellipse_area(c: ConicCoeffs) -> float:
    """Area pi * |F| / S^(3/2) of an elliptic conic."""
    inv = invariants(c)
    if inv.S <= PARABOLIC_TOL:
        raise WrongCurvatureSign("area defined for elliptic conics only")
    return float(np.pi * abs(inv.F) / inv.S ** 1.5)


def _shoelace(points: np.ndarray) -> float:
    x, y = points[:, 0], points[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def has_fine_area(mesh: Mesh, i: int) -> bool:
    """Ellipse-side fineness: the fitted ellipse contains the swept sector.

    The sector is the shoelace area of (center, window points) plus the four
    circular-segment corrections computed exactly after the unimodular map
    of the ellipse onto an equal-area circle.
    """
    c = conic_at(mesh, i)
    inv = invariants(c)
    kappa = kappa_from_invariants(inv)
    if kappa <= PARABOLIC_TOL:
        raise WrongCurvatureSign(f"fine-area needs positive curvature, got {kappa!r}")
    center, radius, to_circle = _ellipse_geometry(c)
    window = _fit_window(mesh, i)
    polygon = np.vstack([center, window])
    sh = _shoelace(polygon)
    u = to_circle(window)
    theta = np.arctan2(u[:, 1], u[:, 0])
    segments = 0.0
    for j in range(4):
        delta = theta[j + 1] - theta[j] if sh >= 0 else theta[j] - theta[j + 1]
        delta = float(np.mod(delta, 2.0 * np.pi))
        segments += 0.5 * radius ** 2 * (delta - np.sin(delta))
    sector = abs(sh) + segments
    return ellipse_area(c) >= sector * (1.0 - 1e-9)


def _large_root(c: ConicCoeffs, inv: AffineInvariants) -> float:
    # larger-magnitude root of t^2 - (A+C) t + S = 0, ties toward the larger value
    tr = c.A + c.C
    disc = tr * tr - 4.0 * inv.S
    root = float(np.sqrt(max(disc, 0.0)))
    r1, r2 = (tr + root) / 2.0, (tr - root) / 2.0
    if abs(r1) > abs(r2):
        return r1
    if abs(r2) > abs(r1):
        return r2
    return max(r1, r2)


def hyperbola_gap_bound(mesh: Mesh, i: int) -> float:
    """Branch-separation bound 2*sqrt(-F / (lambda1^2 S)) at p[i].

    The quotient is not invariant under coefficient rescaling, so it is
    evaluated in the scale where the larger characteristic root has unit
    magnitude; there it is scale-free and equals twice the transverse
    semi-axis of the approximating hyperbola.
    """
    c = conic_at(mesh, i)
    inv = invariants(c)
    lam = _large_root(c, inv)
    unit = c.scaled(1.0 / abs(lam))
    inv_u = invariants(unit)
    radicand = -inv_u.F / inv_u.S
    if radicand < 0.0:
        raise NonRealMu(f"gap bound radicand {radicand!r} negative at index {i}")
    return 2.0 * float(np.sqrt(radicand))


def in_fine_position(mesh: Mesh, i: int) -> bool:
    """Hyperbola-side fineness: consecutive gaps stay under the branch bound."""
    kappa = affine_curvature(mesh, i)
    if kappa >= -PARABOLIC_TOL:
        raise WrongCurvatureSign(f"fine-position needs negative curvature, got {kappa!r}")
    mu = hyperbola_gap_bound(mesh, i)
    window = _fit_window(mesh, i)
    gaps = np.linalg.norm(np.diff(window, axis=0), axis=1)
    return bool((gaps < mu).all())


def affine_fine_interior(mesh: Mesh) -> range:
    """Indices whose two-neighborhood exists."""
    return mesh.interior(FIT_HALF_WIDTH, FIT_HALF_WIDTH)


def is_affine_fine(mesh: Mesh) -> bool:
    """Fine-area at every elliptic point, fine-position at every hyperbolic one.

    Parabolic points (curvature within the parabolic band) carry no
    condition. A non-real gap bound counts as not fine.
    """
    for i in affine_fine_interior(mesh):
        kappa = affine_curvature(mesh, i)
        if kappa > PARABOLIC_TOL:
            if not has_fine_area(mesh, i):
                return False
        elif kappa < -PARABOLIC_TOL:
            try:
                if not in_fine_position(mesh, i):
                    return False
            except NonRealMu:
                return False
    return True


def _sa_offsets(scheme: Scheme) -> tuple[int, int, tuple[int, int]]:
    """(min, max) window offsets and the arc-length endpoint offsets."""
    arc = {
        Scheme.EQ5: (0, 1),
        Scheme.EQ6: (-1, 1),
        Scheme.EQ7: (-2, 3),
        Scheme.EQ8: (-5, 5),
    }[scheme]
    kappa_centers = (-1, 0, 1) if scheme.centered else (0, 1)
    lo = min(min(c - FIT_HALF_WIDTH for c in kappa_centers), arc[0])
    hi = max(max(c + FIT_HALF_WIDTH for c in kappa_centers), arc[1])
    return lo, hi, arc


def sa_scheme_indices(mesh: Mesh, scheme: Scheme) -> range:
    if mesh.closed:
        return range(mesh.n)
    lo, hi, _ = _sa_offsets(scheme)
    return range(max(0, -lo), mesh.n - hi)


def consecutive_arc_lengths(mesh: Mesh, indices=None) -> np.ndarray:
    """L[i] = arc length from p[i] to p[i+1], each from the conic at p[i]."""
    if indices is None:
        indices = mesh.interior(FIT_HALF_WIDTH, FIT_HALF_WIDTH + 1)
    return np.array([affine_arc_length(mesh, i, i, mesh.resolve(i, 1)) for i in indices])


def sa_signature(
    mesh: Mesh,
    scheme: Scheme,
    spacing: str = "affine",
    spacing_tol: float = AFFINE_SPACING_REL_TOL,
) -> Signature:
    """The SA-signature of a convex ordinary mesh under one of schemes 5-8.

    EQ5/EQ6 require equal spacing, by consecutive arc lengths by default
    (`spacing="euclidean"` switches to Euclidean edge lengths). EQ7/EQ8
    measure their long arc lengths with the conic fitted at the row's
    center point; the signature metadata flags that extrapolation.
    """
    if scheme.value <= 4:
        raise ValueError(f"{scheme} is a Euclidean scheme; use se_signature")
    if not is_ordinary(mesh):
        raise NotOrdinary("signature of a mesh with a cusp")
    if not is_convex(mesh):
        raise NotConvex("equiaffine signature requires a convex mesh")
    if scheme.needs_equal_spacing:
        if spacing == "euclidean":
            if not is_equally_spaced(mesh):
                raise SchemeSpacingMismatch(f"{scheme.label}: mesh not equally spaced (euclidean)")
        else:
            arcs = consecutive_arc_lengths(mesh)
            if len(arcs) == 0:
                raise MeshTooShort(f"no arc lengths computable on a {mesh.n}-point mesh")
            spread = float(np.abs(arcs).max() - np.abs(arcs).min())
            if spread > spacing_tol * float(np.abs(arcs).max()):
                worst = int(np.argmax(np.abs(np.abs(arcs) - np.abs(arcs).mean())))
                raise SchemeSpacingMismatch(
                    f"{scheme.label} requires equal arc lengths; arc {worst} deviates"
                )
    indices = sa_scheme_indices(mesh, scheme)
    if len(indices) == 0:
        raise MeshTooShort(f"no valid {scheme.label} stencil on a {mesh.n}-point open mesh")

    kappa_cache: dict[int, float] = {}

    def kappa(j: int) -> float:
        j = mesh.resolve(j)
        if j not in kappa_cache:
            kappa_cache[j] = affine_curvature(mesh, j)
        return kappa_cache[j]

    _, _, (arc_lo, arc_hi) = _sa_offsets(scheme)
    rows = []
    for i in indices:
        num_lo = i - 1 if scheme.centered else i
        numerator = kappa(i + 1) - kappa(num_lo)
        denom = affine_arc_length(mesh, i, mesh.resolve(i, arc_lo), mesh.resolve(i, arc_hi))
        if abs(denom) <= 1e-15:
            raise DegenerateStencil(f"{scheme.label} arc length at index {i} vanishes")
        rows.append(SignaturePoint(i, kappa(i), scheme.factor * numerator / denom))
    meta = {}
    if scheme in (Scheme.EQ7, Scheme.EQ8):
        meta["arc_length_extrapolation"] = (
            "long-span arc lengths evaluated with the conic fitted at the row's center point"
        )
    return Signature(rows, scheme, NeighborhoodSpec(FIT_HALF_WIDTH, FIT_HALF_WIDTH), meta=meta)
