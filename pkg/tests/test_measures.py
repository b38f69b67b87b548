import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lorenz_hulls import (
    ComplexVectorMeasure,
    DimensionMismatch,
    DuplicateLabel,
    NonFiniteValue,
    VectorMeasure,
    ZeroAtom,
    canonicalize,
    complex_coordinate_product,
    complex_embed,
    complex_measure_from_atoms,
    coordinate_product,
    direct_sum,
    interleaved_product,
    measure_from_json_dict,
    measure_to_json_dict,
    rn_direction,
    total_variation_mass,
    validate,
)

finite_floats = st.floats(allow_nan=False, allow_infinity=False, width=64,
                          min_value=-1e12, max_value=1e12)


class TestValidate:
    def test_well_formed(self):
        m = validate({"dim": 2, "atoms": [[1, 0], [0, 1]]})
        assert m.dimension == 2
        assert m.atom_count == 2

    def test_arity_violation(self):
        with pytest.raises(DimensionMismatch):
            validate({"dim": 2, "atoms": [[1, 0], [0]]})

    def test_empty_is_zero_measure(self):
        m = validate({"dim": 3, "atoms": []})
        assert m.atom_count == 0
        assert np.array_equal(m.total(), np.zeros(3))

    def test_nonfinite_rejected(self):
        with pytest.raises(NonFiniteValue):
            VectorMeasure(2, [[np.nan, 0.0]])
        with pytest.raises(NonFiniteValue):
            VectorMeasure(2, [[np.inf, 0.0]])

    def test_duplicate_labels_rejected(self):
        with pytest.raises(DuplicateLabel):
            VectorMeasure(2, [[1, 0], [0, 1]], labels=("a", "a"))

    def test_atoms_preserved_bit_exactly(self):
        values = [[0.1, -1e-17], [3e300, 5e-320]]
        m = validate({"dim": 2, "atoms": values})
        assert m.atoms.tolist() == values


class TestTotalVariation:
    def test_unit_vectors(self):
        assert total_variation_mass(VectorMeasure(2, [[1, 0], [0, 1]])) == 2.0

    def test_zero_measure(self):
        assert total_variation_mass(VectorMeasure(2, [])) == 0.0

    def test_hand_summed(self):
        # |1| + |-2| + |3| + |4|
        assert total_variation_mass(VectorMeasure(2, [[1, -2], [3, 4]])) == 10.0


class TestDirections:
    def test_axis(self):
        m = VectorMeasure(2, [[2, 0]])
        assert rn_direction(m, 0).tolist() == [1.0, 0.0]

    def test_normalization(self):
        m = VectorMeasure(2, [[1, 1]])
        assert rn_direction(m, 0).tolist() == [0.5, 0.5]

    def test_zero_atom(self):
        with pytest.raises(ZeroAtom):
            rn_direction(VectorMeasure(2, [[0, 0]]), 0)

    @given(st.lists(finite_floats, min_size=2, max_size=5))
    def test_unit_1norm(self, coords):
        m = VectorMeasure(len(coords), [coords])
        if np.abs(m.atoms).sum() == 0:
            return
        assert abs(np.abs(rn_direction(m, 0)).sum() - 1.0) <= 1e-12


class TestDirectSum:
    def test_concatenation(self):
        s = direct_sum(VectorMeasure(2, [[1, 0]]), VectorMeasure(2, [[0, 1]]))
        assert s.atoms.tolist() == [[1, 0], [0, 1]]

    def test_zero_measure_neutral(self):
        a = VectorMeasure(2, [[1, 2], [3, 4]])
        assert direct_sum(VectorMeasure(2, []), a).atoms.tolist() == a.atoms.tolist()

    def test_cardinality_and_mass(self):
        a = VectorMeasure(3, np.arange(9.0).reshape(3, 3))
        b = VectorMeasure(3, np.ones((2, 3)))
        s = direct_sum(a, b)
        assert s.atom_count == 5
        assert total_variation_mass(s) == pytest.approx(
            total_variation_mass(a) + total_variation_mass(b), rel=1e-12
        )

    def test_labels_disjointified(self):
        a = VectorMeasure(2, [[1, 0]], labels=("x",))
        b = VectorMeasure(2, [[0, 1]], labels=("x",))
        assert direct_sum(a, b).labels == ("a.x", "b.x")

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            direct_sum(VectorMeasure(2, []), VectorMeasure(3, []))


class TestCoordinateProduct:
    def test_single_pair(self):
        p = coordinate_product(VectorMeasure(2, [[2, 3]]), VectorMeasure(2, [[5, 7]]))
        assert p.atoms.tolist() == [[10, 21]]

    def test_all_ones_factor(self):
        p = coordinate_product(
            VectorMeasure(2, [[1, 0], [0, 1]]), VectorMeasure(2, [[1, 1]])
        )
        assert p.atoms.tolist() == [[1, 0], [0, 1]]

    def test_lexicographic_order_and_size(self):
        a = VectorMeasure(1, [[1], [2], [3]])
        b = VectorMeasure(1, [[10], [20], [30], [40]])
        p = coordinate_product(a, b)
        assert p.atom_count == 12
        assert p.atoms[:, 0].tolist() == [
            10, 20, 30, 40, 20, 40, 60, 80, 30, 60, 90, 120
        ]

    def test_mass_bound(self):
        a = VectorMeasure(2, [[1, -2], [0.5, 3]])
        b = VectorMeasure(2, [[-1, 1], [2, 0]])
        assert total_variation_mass(coordinate_product(a, b)) <= (
            total_variation_mass(a) * total_variation_mass(b) * (1 + 1e-9)
        )


class TestCanonicalize:
    def test_drops_zero_atoms(self):
        m = VectorMeasure(2, [[1, 0], [0, 0], [0, 1]], labels=("a", "b", "c"))
        c = canonicalize(m)
        assert c.atoms.tolist() == [[1, 0], [0, 1]]
        assert c.labels == ("a", "c")

    def test_noop_when_clean(self):
        m = VectorMeasure(2, [[1, 0]])
        assert canonicalize(m) is m


class TestComplex:
    def test_embedding_interleaves(self):
        c = complex_measure_from_atoms(2, [[3 - 4j, 1j]])
        assert complex_embed(c).atoms.tolist() == [[3, -4, 0, 1]]

    def test_embedding_single(self):
        c = complex_measure_from_atoms(1, [[1 + 2j]])
        assert complex_embed(c).atoms.tolist() == [[1, 2]]
        assert complex_embed(c).dimension == 2

    def test_zero_atom(self):
        c = complex_measure_from_atoms(3, [[0j, 0j, 0j]])
        assert complex_embed(c).atoms.tolist() == [[0.0] * 6]

    def test_product_matches_complex_multiplication(self):
        a = complex_measure_from_atoms(1, [[1 + 2j]])
        b = complex_measure_from_atoms(1, [[3 + 4j]])
        assert complex_coordinate_product(a, b).atoms.tolist() == [[-5, 10]]

    def test_unit_identity(self):
        a = complex_measure_from_atoms(2, [[2 + 3j, -1j]])
        one = complex_measure_from_atoms(2, [[1 + 0j, 1 + 0j]])
        assert complex_coordinate_product(a, one).atoms.tolist() == a.atoms.tolist()

    def test_i_squared(self):
        i = complex_measure_from_atoms(1, [[1j]])
        assert complex_coordinate_product(i, i).atoms.tolist() == [[-1, 0]]
        assert interleaved_product([0.0, 1.0], [0.0, 1.0]).tolist() == [-1, 0]

    def test_embed_of_product_is_interleaved_product_of_embeds(self):
        rng = np.random.default_rng(3)
        a = ComplexVectorMeasure(2, rng.normal(size=(3, 4)))
        b = ComplexVectorMeasure(2, rng.normal(size=(2, 4)))
        left = complex_embed(complex_coordinate_product(a, b)).atoms
        ea, eb = complex_embed(a).atoms, complex_embed(b).atoms
        right = interleaved_product(ea[:, None, :], eb[None, :, :]).reshape(6, 4)
        assert np.array_equal(np.sort(left, axis=0), np.sort(right, axis=0))


class TestSerialization:
    def test_fixture_round_trip(self):
        m = VectorMeasure(2, [[0.1, -2.5e-12]], labels=("only",))
        back = measure_from_json_dict(json.loads(json.dumps(measure_to_json_dict(m))))
        assert back == m

    def test_complex_round_trip(self):
        c = complex_measure_from_atoms(1, [[0.1 + 0.3j]])
        back = measure_from_json_dict(json.loads(json.dumps(measure_to_json_dict(c))))
        assert back == c

    @settings(deadline=None, max_examples=60)
    @given(st.lists(st.lists(finite_floats, min_size=3, max_size=3), max_size=5))
    def test_round_trip_is_bit_exact(self, atoms):
        m = VectorMeasure(3, np.array(atoms).reshape(len(atoms), 3))
        back = measure_from_json_dict(json.loads(json.dumps(measure_to_json_dict(m))))
        assert back == m
