"""Finite signed vector measures on discrete and piecewise-density spaces.

A discrete measure is stored as the list of its atom values: one vector per
atom of a disjoint partition of the ground set.  All operations are pure; the
wrapped numpy arrays are marked read-only so values can be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    DuplicateLabel,
    NonFiniteValue,
    ParseError,
    ZeroAtom,
)


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.float64)
    a.flags.writeable = False
    return a


def _check_finite(a: np.ndarray, what: str) -> None:
    if a.size and not np.isfinite(a).all():
        raise NonFiniteValue(f"{what} contains a NaN or infinite coordinate")


def _check_labels(labels: Optional[Sequence[str]], count: int):
    if labels is None:
        return None
    labels = tuple(str(x) for x in labels)
    if not labels:
        return None
    if len(labels) != count:
        raise DimensionMismatch(
            f"got {len(labels)} labels for {count} atoms"
        )
    if len(set(labels)) != len(labels):
        raise DuplicateLabel("atom labels are not pairwise distinct")
    return labels


@dataclass(frozen=True)
class VectorMeasure:
    """A finite signed vector measure with finitely many atoms.

    ``atoms`` has shape ``(m, dimension)``; row ``i`` is the measure's value
    on the i-th atom of the partition.  An empty atom list is the zero
    measure.
    """

    dimension: int
    atoms: np.ndarray
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise DimensionMismatch("dimension must be a positive integer")
        atoms = np.asarray(self.atoms, dtype=np.float64)
        if atoms.size == 0:
            atoms = atoms.reshape(0, self.dimension)
        if atoms.ndim != 2 or atoms.shape[1] != self.dimension:
            raise DimensionMismatch(
                f"atom array of shape {atoms.shape} does not match dimension "
                f"{self.dimension}"
            )
        _check_finite(atoms, "atom list")
        object.__setattr__(self, "atoms", _freeze(atoms))
        object.__setattr__(
            self, "labels", _check_labels(self.labels, atoms.shape[0])
        )

    @property
    def atom_count(self) -> int:
        return self.atoms.shape[0]

    def total(self) -> np.ndarray:
        """Value on the whole ground set: the sum of all atoms."""
        return self.atoms.sum(axis=0) if self.atom_count else np.zeros(self.dimension)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorMeasure):
            return NotImplemented
        return (
            self.dimension == other.dimension
            and self.labels == other.labels
            and np.array_equal(self.atoms, other.atoms)
        )

    def __hash__(self):
        return hash((self.dimension, self.atoms.tobytes(), self.labels))


@dataclass(frozen=True)
class ComplexVectorMeasure:
    """A finite complex vector measure.

    Atoms are stored interleaved as real pairs, shape ``(m, 2 * dimension)``
    with columns ``re(z_1), im(z_1), ..., re(z_n), im(z_n)``, so the real
    embedding below is a plain reinterpretation of the same numbers.
    """

    dimension: int
    atoms: np.ndarray

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise DimensionMismatch("dimension must be a positive integer")
        atoms = np.asarray(self.atoms, dtype=np.float64)
        if atoms.size == 0:
            atoms = atoms.reshape(0, 2 * self.dimension)
        if atoms.ndim != 2 or atoms.shape[1] != 2 * self.dimension:
            raise DimensionMismatch(
                f"interleaved atom array of shape {atoms.shape} does not match "
                f"complex dimension {self.dimension}"
            )
        _check_finite(atoms, "atom list")
        object.__setattr__(self, "atoms", _freeze(atoms))

    @property
    def atom_count(self) -> int:
        return self.atoms.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexVectorMeasure):
            return NotImplemented
        return self.dimension == other.dimension and np.array_equal(
            self.atoms, other.atoms
        )

    def __hash__(self):
        return hash((self.dimension, self.atoms.tobytes()))


@dataclass(frozen=True)
class PiecewiseDensityMeasure:
    """A non-atomic measure given by a piecewise-constant vector density.

    The density is ``directions[i]`` on the i-th of consecutive real
    intervals of lengths ``lengths[i]``.
    """

    dimension: int
    lengths: np.ndarray
    directions: np.ndarray

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise DimensionMismatch("dimension must be a positive integer")
        lengths = np.asarray(self.lengths, dtype=np.float64).reshape(-1)
        directions = np.asarray(self.directions, dtype=np.float64)
        if directions.size == 0:
            directions = directions.reshape(0, self.dimension)
        if directions.ndim != 2 or directions.shape[1] != self.dimension:
            raise DimensionMismatch("piece directions do not match dimension")
        if lengths.shape[0] != directions.shape[0]:
            raise DimensionMismatch("piece lengths and directions differ in count")
        _check_finite(lengths, "piece lengths")
        _check_finite(directions, "piece directions")
        if lengths.size and not (lengths > 0).all():
            raise NonFiniteValue("piece lengths must be strictly positive")
        object.__setattr__(self, "lengths", _freeze(lengths))
        object.__setattr__(self, "directions", _freeze(directions))

    @property
    def piece_count(self) -> int:
        return self.lengths.shape[0]

    def total_length(self) -> float:
        return float(self.lengths.sum())


# ---------------------------------------------------------------------------
# construction and validation


def validate(raw) -> VectorMeasure:
    """Check a candidate measure description and return a VectorMeasure.

    Accepts an existing :class:`VectorMeasure` (returned unchanged) or a
    mapping in the measure file schema ``{"dim": n, "atoms": [[...], ...],
    "labels": [...]?}``.  Coordinates are preserved bit-exactly.
    """
    if isinstance(raw, VectorMeasure):
        return raw
    if not isinstance(raw, dict):
        raise ParseError(f"cannot interpret {type(raw).__name__} as a measure")
    if raw.get("complex", False):
        raise ParseError("complex measure description passed to validate(); "
                         "use validate_complex()")
    try:
        dim = int(raw["dim"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("measure description lacks a usable 'dim'") from exc
    atoms = raw.get("atoms", [])
    for i, atom in enumerate(atoms):
        if len(atom) != dim:
            raise DimensionMismatch(
                f"atom {i} has {len(atom)} coordinates, expected {dim}"
            )
    return VectorMeasure(dim, np.array(atoms, dtype=np.float64).reshape(len(atoms), dim),
                         labels=tuple(raw["labels"]) if raw.get("labels") else None)


def validate_complex(raw) -> ComplexVectorMeasure:
    """Check a candidate complex measure description (interleaved atoms)."""
    if isinstance(raw, ComplexVectorMeasure):
        return raw
    if not isinstance(raw, dict):
        raise ParseError(f"cannot interpret {type(raw).__name__} as a measure")
    try:
        dim = int(raw["dim"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("measure description lacks a usable 'dim'") from exc
    atoms = raw.get("atoms", [])
    for i, atom in enumerate(atoms):
        if len(atom) != 2 * dim:
            raise DimensionMismatch(
                f"complex atom {i} has {len(atom)} interleaved coordinates, "
                f"expected {2 * dim}"
            )
    return ComplexVectorMeasure(
        dim, np.array(atoms, dtype=np.float64).reshape(len(atoms), 2 * dim)
    )


def complex_measure_from_atoms(dim: int, atoms: Iterable[Sequence[complex]]) -> ComplexVectorMeasure:
    """Build a complex measure from rows of Python complex numbers."""
    rows = []
    for atom in atoms:
        if len(atom) != dim:
            raise DimensionMismatch(f"complex atom has arity {len(atom)}, expected {dim}")
        row = []
        for z in atom:
            z = complex(z)
            row.extend((z.real, z.imag))
        rows.append(row)
    return ComplexVectorMeasure(dim, np.array(rows, dtype=np.float64).reshape(len(rows), 2 * dim))


def canonicalize(m: VectorMeasure) -> VectorMeasure:
    """Drop exactly-zero atoms; they never affect hulls or skeletons."""
    if m.atom_count == 0:
        return m
    keep = np.abs(m.atoms).sum(axis=1) != 0.0
    if keep.all():
        return m
    labels = None
    if m.labels is not None:
        labels = tuple(l for l, k in zip(m.labels, keep) if k)
    return VectorMeasure(m.dimension, m.atoms[keep], labels=labels)


# ---------------------------------------------------------------------------
# measure algebra


def total_variation_mass(m: VectorMeasure) -> float:
    """Total mass of the 1-norm total variation: sum of atom 1-norms."""
    return float(np.abs(m.atoms).sum())


def rn_direction(m: VectorMeasure, i: int) -> np.ndarray:
    """Density direction of atom ``i``: the atom normalized to 1-norm one."""
    if not 0 <= i < m.atom_count:
        raise IndexError(f"atom index {i} out of range for {m.atom_count} atoms")
    atom = m.atoms[i]
    norm = float(np.abs(atom).sum())
    if norm == 0.0:
        raise ZeroAtom(f"atom {i} has 1-norm zero")
    return atom / norm


def rn_directions(m: VectorMeasure) -> tuple[np.ndarray, np.ndarray]:
    """Directions and 1-norm masses of all nonzero atoms, order preserved."""
    norms = np.abs(m.atoms).sum(axis=1)
    keep = norms > 0.0
    return m.atoms[keep] / norms[keep, None], norms[keep]


def direct_sum(a: VectorMeasure, b: VectorMeasure) -> VectorMeasure:
    """Measure on the disjoint union of ground sets: atom concatenation."""
    if a.dimension != b.dimension:
        raise DimensionMismatch(
            f"direct sum of dimensions {a.dimension} and {b.dimension}"
        )
    atoms = np.vstack([a.atoms, b.atoms]) if (a.atom_count or b.atom_count) \
        else a.atoms
    labels = None
    if a.labels is not None or b.labels is not None:
        left = a.labels or tuple(str(i) for i in range(a.atom_count))
        right = b.labels or tuple(str(i) for i in range(b.atom_count))
        labels = tuple(f"a.{l}" for l in left) + tuple(f"b.{l}" for l in right)
    return VectorMeasure(a.dimension, atoms, labels=labels)


def coordinate_product(a: VectorMeasure, b: VectorMeasure) -> VectorMeasure:
    """Coordinate-wise product measure on the product of the ground sets.

    The product-space atom (i, j) carries the componentwise product of atom
    i of ``a`` and atom j of ``b``.  Atoms are ordered lexicographically by
    (i, j); the result has ``a.atom_count * b.atom_count`` atoms.
    """
    if a.dimension != b.dimension:
        raise DimensionMismatch(
            f"product of dimensions {a.dimension} and {b.dimension}"
        )
    prod = (a.atoms[:, None, :] * b.atoms[None, :, :]).reshape(
        a.atom_count * b.atom_count, a.dimension
    )
    labels = None
    if a.labels is not None and b.labels is not None:
        labels = tuple(f"{la}*{lb}" for la in a.labels for lb in b.labels)
    return VectorMeasure(a.dimension, prod, labels=labels)


# ---------------------------------------------------------------------------
# complex operations


def complex_embed(c: ComplexVectorMeasure) -> VectorMeasure:
    """Real image of a complex measure under the interleaving bijection.

    Complex atom ``(z_1, ..., z_n)`` maps to the real ``2n``-vector
    ``(re z_1, im z_1, ..., re z_n, im z_n)``.  With the interleaved storage
    this is a reinterpretation of the same array.
    """
    return VectorMeasure(2 * c.dimension, c.atoms)


def interleaved_product(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Complex multiplication expressed on interleaved real pairs.

    For vectors of length 2n holding (re, im) pairs, returns the interleaved
    image of the componentwise complex product:
    ``(x1*y1 - x2*y2, x1*y2 + x2*y1, ...)``.  Broadcasts over leading axes.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape[-1] != y.shape[-1] or x.shape[-1] % 2:
        raise DimensionMismatch("interleaved vectors must share an even length")
    re_x, im_x = x[..., 0::2], x[..., 1::2]
    re_y, im_y = y[..., 0::2], y[..., 1::2]
    out = np.empty(np.broadcast(x, y).shape, dtype=np.float64)
    out[..., 0::2] = re_x * re_y - im_x * im_y
    out[..., 1::2] = re_x * im_y + im_x * re_y
    return out


def complex_coordinate_product(
    a: ComplexVectorMeasure, b: ComplexVectorMeasure
) -> ComplexVectorMeasure:
    """Pairwise complex coordinate-wise products, (i, j) lexicographic."""
    if a.dimension != b.dimension:
        raise DimensionMismatch(
            f"product of complex dimensions {a.dimension} and {b.dimension}"
        )
    prod = interleaved_product(a.atoms[:, None, :], b.atoms[None, :, :])
    return ComplexVectorMeasure(
        a.dimension, prod.reshape(a.atom_count * b.atom_count, 2 * a.dimension)
    )


# ---------------------------------------------------------------------------
# serialization (measure file schema)


def measure_to_json_dict(m) -> dict:
    """Measure file payload; floats survive a JSON round trip bit-exactly."""
    if isinstance(m, VectorMeasure):
        out = {"dim": m.dimension, "atoms": m.atoms.tolist(), "complex": False}
        if m.labels is not None:
            out["labels"] = list(m.labels)
        return out
    if isinstance(m, ComplexVectorMeasure):
        return {"dim": m.dimension, "atoms": m.atoms.tolist(), "complex": True}
    raise ParseError(f"cannot serialize {type(m).__name__}")


def measure_from_json_dict(d: dict):
    """Inverse of :func:`measure_to_json_dict`."""
    if not isinstance(d, dict):
        raise ParseError("measure payload is not a JSON object")
    if d.get("complex", False):
        return validate_complex(d)
    return validate(d)
