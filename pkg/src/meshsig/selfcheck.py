"""Randomized invariance audits, reusable by the CLI and the test suite.

Every suite takes an explicit seed, runs `trials` independent cases and
returns its failure count, so runs are reproducible and shardable by seed.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

from . import affine, congruence, euclidean, generators
from .geometry import Group, apply_motion, circumcircle, random_motion, signature_sign
from .signatures import Scheme, signature_max_error


class SuiteResult(NamedTuple):
    name: str
    trials: int
    failures: int


def _curvature_matches_circumradius(rng) -> bool:
    pts = rng.uniform(-10.0, 10.0, size=(3, 2))
    scale = np.abs(pts).max()
    from .geometry import orient

    if abs(orient(pts[0], pts[1], pts[2])) < 1e-3 * scale * scale:
        return True  # skip near-degenerate draws
    kappa = euclidean.curvature_of_triple(*pts)
    _, radius = circumcircle(*pts)
    return abs(kappa - 1.0 / radius) <= 1e-9 * kappa


def _curvature_euclidean_invariance(rng) -> bool:
    mesh = generators.random_ordinary_mesh(rng, n=8)
    g = random_motion(Group.E, rng)
    moved = apply_motion(g, mesh)
    for i in mesh.interior():
        k0 = euclidean.euclidean_curvature(mesh, i)
        k1 = euclidean.euclidean_curvature(moved, i)
        if abs(k0 - k1) > 1e-9 * max(k0, 1e-12):
            return False
    return True


def _se_signature_invariance(rng) -> bool:
    mesh = generators.random_equally_spaced_mesh(rng, n=12)
    for group in (Group.SE, Group.E):
        moved = apply_motion(random_motion(group, rng), mesh)
        for scheme in (Scheme.EQ1, Scheme.EQ2, Scheme.EQ3, Scheme.EQ4):
            s0 = euclidean.se_signature(mesh, scheme)
            s1 = euclidean.se_signature(moved, scheme)
            if signature_max_error(s0, s1) > 1e-9:
                return False
    return True


def _signature_sign_contract(rng) -> bool:
    mesh = generators.random_ordinary_mesh(rng, n=10)
    rot = random_motion(Group.SE, rng)
    refl_linear = rot.linear @ np.diag([1.0, -1.0])
    refl = apply_motion(
        congruence.GroupElement(refl_linear, rot.translation, Group.E), mesh
    )
    rotated = apply_motion(rot, mesh)
    for i in mesh.interior():
        ss = signature_sign(mesh, i)
        if signature_sign(rotated, i) != ss or signature_sign(refl, i) != -ss:
            return False
    return True


def _alignment_recovers_motions(rng) -> bool:
    for group in (Group.SE, Group.E, Group.SA, Group.ABAR):
        mesh = generators.random_ordinary_mesh(rng, n=10)
        g = random_motion(group, rng)
        verdict = congruence.align(mesh, apply_motion(g, mesh), group)
        if not verdict.congruent:
            return False
        recovered = apply_motion(verdict.witness, mesh).points
        target = apply_motion(g, mesh).points
        if np.abs(recovered - target).max() > 1e-9 * mesh.diameter * 10.0:
            return False
    return True


def _sa_signature_invariance(rng) -> bool:
    mesh = generators.random_ellipse_arc_mesh(rng, n=12)
    moved = apply_motion(random_motion(Group.SA, rng), mesh)
    for scheme in (Scheme.EQ5, Scheme.EQ6, Scheme.EQ7, Scheme.EQ8):
        s0 = affine.sa_signature(mesh, scheme)
        s1 = affine.sa_signature(moved, scheme)
        if signature_max_error(s0, s1) > 1e-8:
            return False
    return True


def _affine_normalization_independence(rng) -> bool:
    mesh = generators.random_ellipse_arc_mesh(rng, n=8)
    i = 3
    coeffs = affine.conic_at(mesh, i)
    kappa = affine.kappa_from_invariants(affine.invariants(coeffs))
    factor = float(rng.uniform(0.2, 5.0)) * float(np.sign(rng.uniform(-1.0, 1.0)) or 1.0)
    rescaled = affine.kappa_from_invariants(affine.invariants(coeffs.scaled(factor)))
    return abs(kappa - rescaled) <= 1e-12 * max(abs(kappa), 1e-12)


_SUITES: list[tuple[str, Callable]] = [
    ("curvature agrees with 1/circumradius", _curvature_matches_circumradius),
    ("curvature invariant under E(2)", _curvature_euclidean_invariance),
    ("se-signatures invariant under SE/E", _se_signature_invariance),
    ("signature-sign: rotations keep, reflections flip", _signature_sign_contract),
    ("alignment recovers random motions", _alignment_recovers_motions),
    ("sa-signatures invariant under SA", _sa_signature_invariance),
    ("affine curvature ignores coefficient scale", _affine_normalization_independence),
]


def run_all(seed: int = 0, trials: int = 50) -> list[SuiteResult]:
    """Run every audit suite; one RNG stream per (seed, suite) pair."""
    results = []
    for k, (name, check) in enumerate(_SUITES):
        rng = np.random.default_rng(np.random.SeedSequence([seed, k]))
        failures = sum(0 if check(rng) else 1 for _ in range(trials))
        results.append(SuiteResult(name, trials, failures))
    return results
