"""The hull algebra: Lorenz product, Minkowski sum, identity, hull equality,
hull-preserving transforms, skeleton products, Lorenz curves and Gini.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import (
    DimensionMismatch,
    Exact2dOnPlaneOnly,
    InvalidTransform,
    NegativeAtom,
    TooManyAtoms,
    ZeroTotal,
)
from .hulls import (
    SkeletonPointSet,
    Zonotope,
    ZonogonSupport,
    area_2d,
    reach_many,
    skeleton_points,
    zonogon_vertices,
)
from .measures import VectorMeasure, coordinate_product
from .sampling import case_rng, sign_vectors, unit_directions

SKELETON_PRODUCT_ATOM_LIMIT = 20


# ---------------------------------------------------------------------------
# product, sum, identity


def lorenz_product(h1: Zonotope, h2: Zonotope) -> Zonotope:
    """Hull of the coordinate-wise product measure.

    Generators are all pairwise componentwise products of the factors'
    generators in (i, j) lexicographic order, zero products dropped.  The
    result depends only on the two hulls, not on which measures generated
    them.
    """
    if h1.dimension != h2.dimension:
        raise DimensionMismatch(
            f"product of dimensions {h1.dimension} and {h2.dimension}"
        )
    prod = (h1.generators[:, None, :] * h2.generators[None, :, :]).reshape(
        -1, h1.dimension
    )
    if prod.shape[0]:
        prod = prod[np.abs(prod).sum(axis=1) > 0.0]
    return Zonotope(h1.dimension, prod)


def minkowski_sum(h1: Zonotope, h2: Zonotope) -> Zonotope:
    """Minkowski sum: generator concatenation."""
    if h1.dimension != h2.dimension:
        raise DimensionMismatch(
            f"Minkowski sum of dimensions {h1.dimension} and {h2.dimension}"
        )
    return Zonotope(h1.dimension, np.vstack([h1.generators, h2.generators]))


def identity_hull(n: int) -> Zonotope:
    """Multiplicative identity: the segment from the origin to all-ones."""
    if n < 1:
        raise DimensionMismatch("dimension must be a positive integer")
    return Zonotope(n, np.ones((1, n)))


# ---------------------------------------------------------------------------
# hull equality


def _canonical_polygon(vertices: np.ndarray) -> np.ndarray:
    """Rotate a closed vertex cycle to start at its lexicographic minimum."""
    if vertices.shape[0] <= 1:
        return vertices
    start = int(np.lexsort((vertices[:, 1], vertices[:, 0]))[0])
    return np.roll(vertices, -start, axis=0)


def hull_equal(
    h1: Zonotope,
    h2: Zonotope,
    mode: str = "exact2d",
    *,
    dirs: int = 200,
    seed: int = 0,
    tol: float = 1e-9,
) -> bool:
    """Set equality of two hulls.

    exact2d compares the canonical vertex polygons coordinate-wise within
    ``tol``; sampled compares reach on all sign vectors plus ``dirs`` seeded
    directions within ``tol`` (absolute plus relative).
    """
    if h1.dimension != h2.dimension:
        raise DimensionMismatch(
            f"hull equality across dimensions {h1.dimension} and {h2.dimension}"
        )
    n = h1.dimension
    if mode == "exact2d":
        if n != 2:
            raise Exact2dOnPlaneOnly("exact2d hull equality needs dimension 2")
        v1 = _canonical_polygon(zonogon_vertices(h1))
        v2 = _canonical_polygon(zonogon_vertices(h2))
        if v1.shape != v2.shape:
            return False
        scale = max(1.0, float(np.abs(v1).max()), float(np.abs(v2).max()))
        return bool(np.abs(v1 - v2).max() <= tol * scale + tol)
    if mode == "sampled":
        rng = case_rng(seed, "hull_equal.sampled")
        directions = np.vstack([sign_vectors(n), unit_directions(rng, dirs, n)])
        r1 = reach_many(h1, directions)
        r2 = reach_many(h2, directions)
        return bool(
            np.all(np.abs(r1 - r2) <= tol + tol * np.maximum(np.abs(r1), np.abs(r2)))
        )
    raise ValueError(f"unknown hull equality mode {mode!r}")


# ---------------------------------------------------------------------------
# hull-preserving transforms


@dataclass(frozen=True)
class SplitAtom:
    """Replace atom ``index`` by the pair (fraction * a, (1-fraction) * a)."""

    index: int
    fraction: float


@dataclass(frozen=True)
class MergeColinear:
    """Replace two positively proportional atoms by their sum."""

    first: int
    second: int


@dataclass(frozen=True)
class Permute:
    order: tuple[int, ...]


@dataclass(frozen=True)
class InsertZeroAtom:
    position: int = 0


TransformStep = Union[SplitAtom, MergeColinear, Permute, InsertZeroAtom]
HullTransformSpec = Sequence[TransformStep]


def _apply_step(atoms: np.ndarray, step: TransformStep) -> np.ndarray:
    m = atoms.shape[0]
    if isinstance(step, SplitAtom):
        if not 0 <= step.index < m:
            raise InvalidTransform(f"split index {step.index} out of range")
        if not 0.0 < step.fraction < 1.0:
            raise InvalidTransform("split fraction must lie strictly inside (0, 1)")
        a = atoms[step.index]
        return np.vstack(
            [atoms[: step.index], [step.fraction * a, (1.0 - step.fraction) * a],
             atoms[step.index + 1 :]]
        )
    if isinstance(step, MergeColinear):
        i, j = step.first, step.second
        if i == j or not (0 <= i < m and 0 <= j < m):
            raise InvalidTransform(f"merge indices ({i}, {j}) out of range")
        a, b = atoms[i], atoms[j]
        na, nb = np.abs(a).sum(), np.abs(b).sum()
        if na == 0.0 or nb == 0.0:
            raise InvalidTransform("cannot merge a zero atom")
        if np.abs(a / na - b / nb).max() > 1e-9:
            raise InvalidTransform("atoms are not positively proportional")
        lo, hi = min(i, j), max(i, j)
        merged = a + b
        return np.vstack(
            [atoms[:lo], [merged], atoms[lo + 1 : hi], atoms[hi + 1 :]]
        )
    if isinstance(step, Permute):
        if sorted(step.order) != list(range(m)):
            raise InvalidTransform(f"order {step.order} is not a permutation of {m}")
        return atoms[list(step.order)]
    if isinstance(step, InsertZeroAtom):
        if not 0 <= step.position <= m:
            raise InvalidTransform(f"insert position {step.position} out of range")
        zero = np.zeros((1, atoms.shape[1]))
        return np.vstack([atoms[: step.position], zero, atoms[step.position :]])
    raise InvalidTransform(f"unknown transform step {step!r}")


def apply_transform(m: VectorMeasure, steps: HullTransformSpec) -> VectorMeasure:
    """Apply hull-preserving steps in order; the result has the same hull."""
    atoms = np.array(m.atoms)
    for step in steps:
        atoms = _apply_step(atoms, step)
    return VectorMeasure(m.dimension, atoms)


# ---------------------------------------------------------------------------
# skeleton product


def skeleton_product(m1: VectorMeasure, m2: VectorMeasure) -> SkeletonPointSet:
    """Skeleton of the coordinate-wise product (all product subset sums)."""
    if m1.dimension != m2.dimension:
        raise DimensionMismatch(
            f"skeleton product of dimensions {m1.dimension} and {m2.dimension}"
        )
    if m1.atom_count * m2.atom_count > SKELETON_PRODUCT_ATOM_LIMIT:
        raise TooManyAtoms(
            f"skeleton product capped at {SKELETON_PRODUCT_ATOM_LIMIT} product atoms, "
            f"got {m1.atom_count * m2.atom_count}"
        )
    return skeleton_points(coordinate_product(m1, m2))


def product_reach_many(
    factor_atoms: np.ndarray, other_support: ZonogonSupport, directions: np.ndarray
) -> np.ndarray:
    """Reach of a 2-D product hull evaluated through its factors.

    For direction u the product support is sum_i h_B(u * a_i) over the
    atoms a_i of the first factor (componentwise scaling), so the product's
    generators are never materialized.  Cost O(dirs * m_a * log m_b).
    """
    atoms = np.asarray(factor_atoms, dtype=np.float64).reshape(-1, 2)
    D = np.atleast_2d(np.asarray(directions, dtype=np.float64))
    out = np.empty(D.shape[0])
    step = max(1, 2_000_000 // max(atoms.shape[0], 1))
    for i in range(0, D.shape[0], step):
        block = D[i : i + step]
        queries = block[:, None, :] * atoms[None, :, :]
        vals = other_support.eval(queries.reshape(-1, 2))
        out[i : i + step] = vals.reshape(block.shape[0], -1).sum(axis=1)
    return out


# ---------------------------------------------------------------------------
# Lorenz curves and Gini


@dataclass(frozen=True)
class LorenzCurve:
    """Vertex polyline of the lower hull boundary, from (0,0) to (1,1)."""

    points: np.ndarray

    def slopes(self) -> np.ndarray:
        d = np.diff(self.points, axis=0)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(d[:, 0] > 0, d[:, 1] / d[:, 0], np.inf)


def _normalized_nonneg_atoms(m: VectorMeasure) -> np.ndarray:
    if m.dimension != 2:
        raise DimensionMismatch("Lorenz curves are defined for dimension 2")
    atoms = m.atoms
    if atoms.size and atoms.min() < 0:
        raise NegativeAtom("Lorenz curve atoms must be componentwise nonnegative")
    totals = atoms.sum(axis=0) if atoms.size else np.zeros(2)
    if not (totals > 0).all():
        raise ZeroTotal("both coordinate totals must be positive")
    return atoms / totals


def lorenz_curve(m: VectorMeasure) -> LorenzCurve:
    """Lower boundary of the normalized 2-D hull.

    Atoms are scaled so each coordinate totals one, sorted by ascending
    slope (zero-first-coordinate atoms last, ties by original index), and
    accumulated.  The polyline is convex and matches the lower chain of the
    zonogon vertex walk.
    """
    atoms = _normalized_nonneg_atoms(m)
    x, y = atoms[:, 0], atoms[:, 1]
    slope = np.where(x > 0, np.divide(y, np.where(x > 0, x, 1.0)), np.inf)
    order = np.argsort(slope, kind="stable")
    cum = np.vstack([np.zeros(2), np.cumsum(atoms[order], axis=0)])
    cum[-1] = (1.0, 1.0)
    return LorenzCurve(cum)


def gini(m: VectorMeasure) -> float:
    """Gini coefficient: the area of the normalized 2-D hull.

    Zero exactly when all atoms are colinear with the diagonal (the hull
    degenerates to the segment from (0,0) to (1,1)).
    """
    atoms = _normalized_nonneg_atoms(m)
    return area_2d(Zonotope(2, atoms))
