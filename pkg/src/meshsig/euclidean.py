"""Two-point Euclidean curvature and the four SE-signature schemes.

The curvature of a stencil triple is 1/R of its circumcircle, computed from
the three pairwise distances with the numerically stable sorted-operand
product formula, so needle triples stay accurate.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateStencil, DegenerateTriple, MeshTooShort, NotOrdinary, SchemeSpacingMismatch
from .geometry import SPEC11, Mesh, NeighborhoodSpec, is_equally_spaced, is_ordinary
from .signatures import Scheme, Signature, SignaturePoint

# Denominator chords smaller than this fraction of the diameter abort the quotient.
STENCIL_REL_TOL = 1e-12


def curvature_of_triple(p, q, r) -> float:
    """Reciprocal circumradius of three points; 0 for collinear triples."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    r = np.asarray(r, dtype=float)
    d = sorted(
        (
            float(np.linalg.norm(q - p)),
            float(np.linalg.norm(r - q)),
            float(np.linalg.norm(r - p)),
        ),
        reverse=True,
    )
    a, b, c = d
    if c <= 1e-15 * a:
        raise DegenerateTriple("two stencil points coincide")
    # Kahan's sorted-operand form: 4 * area = sqrt of this product
    t = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))
    if t <= 0.0:
        return 0.0
    return float(np.sqrt(t) / (a * b * c))


def euclidean_curvature(mesh: Mesh, i: int, spec: NeighborhoodSpec = SPEC11) -> float:
    """Curvature at p[i] from its (m1, m2)-neighborhood."""
    return curvature_of_triple(mesh.p(i, -spec.m1), mesh.p(i), mesh.p(i, spec.m2))


def chord(mesh: Mesh, i: int, j: int) -> float:
    """Euclidean distance between mesh points i and j."""
    return float(np.linalg.norm(mesh.p(i) - mesh.p(j)))


def _chord_offsets(scheme: Scheme) -> tuple[int, int]:
    # offsets of the quotient denominator chord relative to the center index
    return {
        Scheme.EQ1: (0, 1),
        Scheme.EQ2: (-1, 1),
        Scheme.EQ3: (-1, 2),
        Scheme.EQ4: (-3, 3),
    }[scheme]


def scheme_offsets(scheme: Scheme, spec: NeighborhoodSpec) -> tuple[int, int]:
    """(min, max) point offsets a signature row at center i touches."""
    lo_c, hi_c = _chord_offsets(scheme)
    kappa_centers = (-1, 0, 1) if scheme.centered else (0, 1)
    lo = min(min(c - spec.m1 for c in kappa_centers), lo_c)
    hi = max(max(c + spec.m2 for c in kappa_centers), hi_c)
    return lo, hi


def se_scheme_indices(mesh: Mesh, scheme: Scheme, spec: NeighborhoodSpec = SPEC11) -> range:
    """Center indices where the scheme's full stencil exists."""
    if mesh.closed:
        return range(mesh.n)
    lo, hi = scheme_offsets(scheme, spec)
    return range(max(0, -lo), mesh.n - hi)


def se_signature(
    mesh: Mesh,
    scheme: Scheme,
    spec: NeighborhoodSpec = SPEC11,
    spacing_tol: float | None = None,
) -> Signature:
    """The SE-signature of an ordinary mesh under one of schemes 1-4.

    Parameters
    ----------
    mesh : Mesh
        Ordinary planar mesh; closed meshes wrap, open meshes truncate to
        the valid stencil range.
    scheme : Scheme
        EQ1/EQ2 (forward/centered, equally spaced meshes only) or EQ3/EQ4
        (forward/centered with widened chords for unequal spacing).
    spec : NeighborhoodSpec
        Stencil for the per-point curvature.
    spacing_tol : float, optional
        Equal-spacing tolerance for EQ1/EQ2; library default when omitted.

    Returns
    -------
    Signature
        One (kappa, kappa_s) row per valid center index.
    """
    if scheme.value > 4:
        raise ValueError(f"{scheme} is an equiaffine scheme; use sa_signature")
    if not is_ordinary(mesh):
        raise NotOrdinary("signature of a mesh with a cusp")
    if scheme.needs_equal_spacing:
        ok = is_equally_spaced(mesh) if spacing_tol is None else is_equally_spaced(mesh, spacing_tol)
        if not ok:
            from .geometry import edge_lengths

            edges = edge_lengths(mesh)
            worst = int(np.argmax(np.abs(edges - edges.mean())))
            raise SchemeSpacingMismatch(
                f"{scheme.label} requires an equally spaced mesh; edge {worst} deviates"
            )
    indices = se_scheme_indices(mesh, scheme, spec)
    if len(indices) == 0:
        raise MeshTooShort(f"no valid {scheme.label} stencil on a {mesh.n}-point open mesh")

    kappa_cache: dict[int, float] = {}

    def kappa(j: int) -> float:
        j = mesh.resolve(j)
        if j not in kappa_cache:
            kappa_cache[j] = euclidean_curvature(mesh, j, spec)
        return kappa_cache[j]

    lo_c, hi_c = _chord_offsets(scheme)
    rows = []
    for i in indices:
        num_lo = i - 1 if scheme.centered else i
        numerator = kappa(i + 1) - kappa(num_lo)
        denom = float(np.linalg.norm(mesh.p(i, hi_c) - mesh.p(i, lo_c)))
        if denom <= STENCIL_REL_TOL * mesh.diameter:
            raise DegenerateStencil(
                f"{scheme.label} denominator chord ({i}{lo_c:+d}, {i}{hi_c:+d}) vanishes"
            )
        rows.append(SignaturePoint(i, kappa(i), scheme.factor * numerator / denom))
    return Signature(rows, scheme, spec)
