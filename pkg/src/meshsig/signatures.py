"""Signature containers shared by the Euclidean and equiaffine pipelines."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

import numpy as np

from .geometry import Group, NeighborhoodSpec

# Relative tolerance for declaring two signatures equal.
SIGNATURE_REL_TOL = 1e-6


class Scheme(Enum):
    """Difference-quotient schemes 1-4 (Euclidean) and 5-8 (equiaffine).

    Odd/even pairs are forward/centered quotients; the first pair of each
    group requires equal spacing, the second pair targets unequal spacing.
    """

    EQ1 = 1
    EQ2 = 2
    EQ3 = 3
    EQ4 = 4
    EQ5 = 5
    EQ6 = 6
    EQ7 = 7
    EQ8 = 8

    @property
    def group(self) -> Group:
        return Group.SE if self.value <= 4 else Group.SA

    @property
    def centered(self) -> bool:
        return self.value in (2, 4, 6, 8)

    @property
    def needs_equal_spacing(self) -> bool:
        return self.value in (1, 2, 5, 6)

    @property
    def factor(self) -> float:
        return {1: 1.0, 2: 1.0, 3: 3.0, 4: 3.0, 5: 1.0, 6: 1.0, 7: 5.0, 8: 5.0}[self.value]

    @property
    def label(self) -> str:
        return f"eq{self.value}"

    @classmethod
    def from_id(cls, value: int) -> "Scheme":
        try:
            return cls(int(value))
        except ValueError:
            raise ValueError(f"scheme must be 1..8, got {value!r}") from None


class SignaturePoint(NamedTuple):
    index: int
    kappa: float
    kappa_s: float


@dataclass
class Signature:
    """(kappa, kappa_s) pairs indexed by mesh point."""

    points: list[SignaturePoint]
    scheme: Scheme
    spec: NeighborhoodSpec
    meta: dict = field(default_factory=dict)

    @property
    def indices(self) -> np.ndarray:
        return np.array([p.index for p in self.points], dtype=int)

    @property
    def kappas(self) -> np.ndarray:
        return np.array([p.kappa for p in self.points], dtype=float)

    @property
    def kappa_s(self) -> np.ndarray:
        return np.array([p.kappa_s for p in self.points], dtype=float)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


# A column whose magnitude is below this fraction of the whole signature's
# magnitude is graded against that fraction instead of its own noise floor;
# otherwise a theoretically-zero column (constant curvature) would compare
# float noise against float noise and never be equal to anything. Differences
# masked by the floor are below rel_tol/100 of the signature magnitude.
COLUMN_FLOOR_FRACTION = 1e-2
# Signatures whose every entry is below this count as identically zero
# (a straight or parabolic source leaves only fit noise in both columns).
ZERO_SIGNATURE_ATOL = 1e-9


def signature_max_error(a: Signature, b: Signature) -> float:
    """Componentwise max relative error over aligned indices.

    Each column is normalized by its own magnitude, floored at
    ``COLUMN_FLOOR_FRACTION`` of the overall signature magnitude.
    """
    if a.scheme is not b.scheme or a.spec != b.spec:
        raise ValueError("signatures use different schemes or stencils")
    if not np.array_equal(a.indices, b.indices):
        raise ValueError("signatures cover different index sets")
    if len(a) == 0:
        return 0.0
    cols = ((a.kappas, b.kappas), (a.kappa_s, b.kappa_s))
    overall = max(float(np.abs(np.concatenate([u for pair in cols for u in pair])).max()), 1e-300)
    if overall <= ZERO_SIGNATURE_ATOL:
        return 0.0
    worst = 0.0
    for u, v in cols:
        scale = max(float(np.abs(u).max()), float(np.abs(v).max()), COLUMN_FLOOR_FRACTION * overall)
        worst = max(worst, float(np.abs(u - v).max()) / scale)
    return worst


def signatures_close(a: Signature, b: Signature, rel_tol: float = SIGNATURE_REL_TOL) -> bool:
    return signature_max_error(a, b) <= rel_tol
