"""
Unit tests for the data models.
"""
import json

import numpy as np
import pytest

from mu_lab.analysis.group import parse_group_spec
from mu_lab.core.exceptions import ConfigError, GroupSpecError
from mu_lab.models.models import (
    GroupSpec, Subset, DenseFunction, Spectrum, MuResult, MaximizeResult,
    ExperimentConfig, ExperimentRecord
)


class TestGroupSpec:
    """Tests for the GroupSpec class."""

    def test_group_creation(self):
        """Test creating a GroupSpec."""
        # Act
        g = GroupSpec((3, 4))

        # Assert
        assert g.order == 12
        assert g.rank == 2
        assert not g.is_boolean
        assert str(g) == "Z(3)xZ(4)"

    def test_boolean_spec_string(self):
        """Test the canonical Z2^n form."""
        assert GroupSpec((2, 2, 2, 2)).spec_string() == "Z2^4"

    def test_invalid_factors(self):
        """Test that empty factor lists and small moduli are rejected."""
        with pytest.raises(GroupSpecError):
            GroupSpec(())
        with pytest.raises(GroupSpecError):
            GroupSpec((2, 1))

    def test_to_dict(self):
        """Test converting a GroupSpec to a dictionary."""
        data = GroupSpec((2, 4)).to_dict()
        assert data == {'group': "Z(2)xZ(4)", 'factors': [2, 4], 'order': 8, 'is_boolean': False}


class TestSubset:
    """Tests for the Subset class."""

    def test_subset_creation(self, z12):
        """Test creating a set."""
        A = Subset(z12, (1, 5, 7))
        assert A.size == 3
        assert len(A) == 3
        assert not A.is_multiset
        assert 5 in A
        assert 6 not in A

    def test_elements_must_increase(self, z12):
        """Test that unsorted or repeated elements are rejected."""
        with pytest.raises(GroupSpecError):
            Subset(z12, (5, 1))
        with pytest.raises(GroupSpecError):
            Subset(z12, (1, 1))

    def test_elements_in_range(self, z12):
        """Test that elements must lie in [0, N)."""
        with pytest.raises(GroupSpecError):
            Subset(z12, (3, 12))

    def test_from_elements_sorts(self, z12):
        """Test building a set from unordered indices."""
        assert Subset.from_elements(z12, [9, 2, 4]).elements == (2, 4, 9)

    def test_from_elements_duplicates(self, z12):
        """Test that duplicates are an error unless multisets are allowed."""
        with pytest.raises(GroupSpecError):
            Subset.from_elements(z12, [3, 3, 4])
        multiset = Subset.from_elements(z12, [3, 3, 4], allow_duplicates=True)
        assert multiset.elements == (3, 4)
        assert multiset.multiplicities == (2, 1)
        assert multiset.size == 3

    def test_multiplicities_validated(self, z12):
        """Test multiplicity alignment and positivity."""
        with pytest.raises(GroupSpecError):
            Subset(z12, (1, 2), (1,))
        with pytest.raises(GroupSpecError):
            Subset(z12, (1, 2), (1, 0))

    def test_weights(self, z12):
        """Test the weight arrays in both modes."""
        assert Subset(z12, (1, 2)).weights.tolist() == [1, 1]
        assert Subset(z12, (1, 2), (4, 1)).weights.tolist() == [4, 1]

    def test_full_and_empty(self, z2x4):
        """Test the full group and the empty set."""
        assert Subset.full(z2x4).elements == tuple(range(8))
        assert Subset.empty(z2x4).size == 0

    def test_to_dict(self, z12):
        """Test converting a Subset to a dictionary."""
        assert Subset(z12, (1, 2), (3, 1)).to_dict() == {
            'group': "Z(12)", 'size': 4, 'elements': [1, 2], 'multiplicities': [3, 1]
        }


class TestDenseTypes:
    """Tests for DenseFunction and Spectrum."""

    def test_length_checked(self, z12):
        """Test that vectors must have length N."""
        with pytest.raises(ValueError):
            DenseFunction(z12, np.zeros(11))
        with pytest.raises(ValueError):
            Spectrum(z12, np.zeros(13, dtype=np.complex128))


class TestResults:
    """Tests for MuResult and MaximizeResult."""

    def test_mu_result_route_checked(self):
        """Test that unknown route tags are rejected."""
        with pytest.raises(ValueError):
            MuResult(count=1, route="guess")

    def test_maximize_result_to_dict(self, z12):
        """Test the lower-bound labelling of heuristic results."""
        result = MaximizeResult(B=Subset(z12, (0, 1)), C=Subset(z12, (2, 3)), count=1, exact=False)
        data = result.to_dict()
        assert data['lower_bound_only']
        assert data['k'] == 2
        assert data['B'] == [0, 1]
        assert data['C'] == [2, 3]


class TestExperimentConfig:
    """Tests for the ExperimentConfig class."""

    def test_size_from_alpha(self):
        """Test m = round(N^alpha)."""
        experiment = ExperimentConfig(group=parse_group_spec("Z2^16"), alpha=0.5)
        assert experiment.size == 256
        assert experiment.shore_size == 256

    def test_shore_size_override(self):
        """Test that k replaces m as the shore size."""
        experiment = ExperimentConfig(group=parse_group_spec("Z2^10"), m=32, k=8)
        assert experiment.shore_size == 8

    @pytest.mark.parametrize("kwargs", [
        {},
        {'m': 4, 'alpha': 0.5},
        {'m': 4, 'trials': 0},
        {'m': 0},
        {'m': 2000},
        {'m': 4, 'k': 0},
        {'m': 4, 'master_seed': -1},
        {'m': 4, 'master_seed': 2 ** 64},
        {'m': 4, 'restarts': 0},
        {'m': 4, 'max_iters': 0},
        {'m': 4, 'epsilon': 0.0},
        {'m': 4, 'output_format': 'xml'},
        {'m': 4, 'workers': 0},
    ])
    def test_invalid_configs(self, kwargs):
        """Test ExperimentConfig validation."""
        with pytest.raises(ConfigError):
            ExperimentConfig(group=parse_group_spec("Z2^10"), **kwargs)

    def test_dict_round_trip(self):
        """Test that to_dict/from_dict recover the config through JSON."""
        # Arrange
        g = parse_group_spec("Z(2)xZ(4)")
        experiment = ExperimentConfig(group=g, m=3, trials=5, master_seed=2 ** 63, replacement=True,
                                      output_path="out.json", output_format="json", workers=2)

        # Act
        data = json.loads(json.dumps(experiment.to_dict()))
        restored = ExperimentConfig.from_dict(data, parse_group_spec(data['group']))

        # Assert
        assert restored == experiment

    def test_from_dict_rejects_unknown_keys(self, z12):
        """Test that misspelt fields are reported."""
        with pytest.raises(ConfigError, match="trails"):
            ExperimentConfig.from_dict({'m': 3, 'trails': 4}, z12)

    def test_from_dict_output_as_string(self, z12):
        """Test the short form of the output entry."""
        experiment = ExperimentConfig.from_dict({'m': 3, 'output': 'report.csv'}, z12)
        assert experiment.output_path == 'report.csv'
        assert experiment.output_format == 'csv'


class TestExperimentRecord:
    """Tests for the ExperimentRecord class."""

    def test_field_order(self):
        """Test the report column order."""
        assert ExperimentRecord.field_names() == [
            'trial_index', 'trial_seed', 'N', 'm', 'max_nonprincipal', 'hayes_bound',
            'bizu_violation', 'mu_heuristic', 'main_bound', 'bbb_violation', 'kiltz_bound',
            'conjecture_curve', 'alon_bound', 'elapsed_ms_sample', 'elapsed_ms_spectrum',
            'elapsed_ms_maximize'
        ]

    def test_to_dict_keeps_order(self):
        """Test that to_dict follows field_names."""
        record = ExperimentRecord(0, 1, 16, 4, 0.1, 0.2, False, 5, 6.0, False, 7.0, 8.0, None)
        assert list(record.to_dict()) == ExperimentRecord.field_names()
        assert record.elapsed_ms_sample == 0.0
