"""
Unit tests for the three mu counting routes.
"""
import numpy as np
import pytest

from mu_lab.analysis.counting import (
    mu_direct, mu_convolution, mu_fourier, mu_all_routes, inner_product,
    fourier_terms, proof_chain_bound, cayley_edge_count
)
from mu_lab.analysis.fourier import indicator
from mu_lab.analysis.group import parse_group_spec, add
from mu_lab.core.exceptions import GroupMismatchError, ResidualError
from mu_lab.models.models import DenseFunction, MuResult, Subset


def brute_force_mu(A, B, C):
    g = A.group
    weight_a = dict(zip(A.elements, A.weights.tolist()))
    total = 0
    for b, wb in zip(B.elements, B.weights.tolist()):
        for c, wc in zip(C.elements, C.weights.tolist()):
            total += weight_a.get(add(g, b, c), 0) * wb * wc
    return total


class TestRoutes:
    """Tests for mu_direct, mu_convolution and mu_fourier."""

    @pytest.mark.parametrize("route", [mu_direct, mu_convolution, mu_fourier])
    def test_coset_example(self, route, coset_z2_2):
        """Test A = B = C = {0,1} in Z2^2 -> 4."""
        result = route(coset_z2_2, coset_z2_2, coset_z2_2)
        assert result.count == 4

    @pytest.mark.parametrize("route", [mu_direct, mu_convolution, mu_fourier])
    def test_empty_target(self, route, z12):
        """Test that an empty A gives zero."""
        B = Subset(z12, (1, 2, 3))
        assert route(Subset.empty(z12), B, B).count == 0

    @pytest.mark.parametrize("route", [mu_direct, mu_convolution, mu_fourier])
    def test_full_group(self, route, z2x4):
        """Test A = B = C = G -> N^2."""
        G = Subset.full(z2x4)
        assert route(G, G, G).count == 64

    def test_route_tags(self, coset_z2_2):
        """Test that each route labels its result."""
        A = coset_z2_2
        assert mu_direct(A, A, A).route == "direct"
        assert mu_convolution(A, A, A).route == "convolution"
        assert mu_fourier(A, A, A).route == "fourier"

    @pytest.mark.parametrize("text,size", [("Z(12)", 4), ("Z(2)xZ(4)", 3), ("Z2^5", 9), ("Z(3)xZ(5)", 6)])
    def test_random_instances_agree(self, text, size, rng, random_subset):
        """Test exact agreement of all routes with brute force."""
        g = parse_group_spec(text)
        for _ in range(10):
            A, B, C = (random_subset(g, size, rng) for _ in range(3))
            expected = brute_force_mu(A, B, C)
            assert mu_direct(A, B, C).count == expected
            assert mu_convolution(A, B, C).count == expected
            fourier = mu_fourier(A, B, C)
            assert fourier.count == expected
            assert fourier.residual <= 1e-6 * max(1, expected)

    def test_symmetry_in_shores(self, rng, random_subset):
        """Test mu(A, B, C) = mu(A, C, B)."""
        g = parse_group_spec("Z(9)")
        A, B, C = (random_subset(g, 4, rng) for _ in range(3))
        assert mu_direct(A, B, C).count == mu_direct(A, C, B).count

    def test_counting_upper_bound(self, rng, random_subset):
        """Test count <= min(|A||B|, |A||C|, |B||C|)."""
        g = parse_group_spec("Z(2)xZ(6)")
        for _ in range(20):
            A = random_subset(g, 3, rng)
            B = random_subset(g, 5, rng)
            C = random_subset(g, 7, rng)
            count = mu_direct(A, B, C).count
            assert count <= min(3 * 5, 3 * 7, 5 * 7)

    def test_multiset_weights(self, z2_2):
        """Test that each triple is weighted by the product of multiplicities."""
        # Arrange
        A = Subset(z2_2, (0, 1), (2, 1))
        B = Subset(z2_2, (0, 1), (1, 3))
        C = Subset(z2_2, (0,), (2,))

        # Act
        results = mu_all_routes(A, B, C)

        # Assert: b=0 -> a=0 (2*1*2), b=1 -> a=1 (1*3*2)
        assert {r.count for r in results.values()} == {10}

    def test_group_mismatch(self, z2x4, z2_3):
        """Test that operands on different groups are rejected."""
        with pytest.raises(GroupMismatchError):
            mu_direct(Subset(z2x4, (0,)), Subset(z2_3, (0,)), Subset(z2_3, (0,)))


class TestAllRoutes:
    """Tests for mu_all_routes."""

    def test_returns_every_route(self, coset_z2_2):
        """Test that the three routes are returned by name."""
        results = mu_all_routes(coset_z2_2, coset_z2_2, coset_z2_2)
        assert set(results) == {"direct", "convolution", "fourier"}

    def test_disagreement_raises(self, coset_z2_2, mocker):
        """Test that a disagreeing route is an error."""
        # Arrange
        mock_fourier = mocker.patch('mu_lab.analysis.counting.mu_fourier',
                                    return_value=MuResult(count=5, route="fourier"))
        A = coset_z2_2

        # Act / Assert
        with pytest.raises(ResidualError):
            mu_all_routes(A, A, A)
        mock_fourier.assert_called_once()


class TestHelpers:
    """Tests for inner_product, fourier_terms and the Cayley edge count."""

    def test_inner_product(self, rng, random_subset, z12):
        """Test <1_A, 1_A> = <1_A, 1_G> = |A| and <f, 0> = 0."""
        A = random_subset(z12, 5, rng)
        f = indicator(A)
        assert inner_product(f, f) == 5.0
        assert inner_product(f, indicator(Subset.full(z12))) == 5.0
        assert inner_product(f, DenseFunction(z12, np.zeros(12))) == 0.0

    def test_trivial_character_split(self, rng, random_subset):
        """Test that the principal term is |A||B||C|/N and the split sums to mu."""
        g = parse_group_spec("Z(4)xZ(4)")
        A, B, C = (random_subset(g, 6, rng) for _ in range(3))
        principal, remainder = fourier_terms(A, B, C)
        assert principal.real == pytest.approx(6 * 6 * 6 / 16)
        assert abs(principal + remainder - mu_direct(A, B, C).count) <= 1e-6

    def test_full_group_is_all_principal(self, z2x4):
        """Test that 1_G puts the whole count on the trivial character."""
        G = Subset.full(z2x4)
        principal, remainder = fourier_terms(G, G, G)
        assert principal.real == pytest.approx(64.0)
        assert abs(remainder) <= 1e-9

    def test_proof_chain_bound_holds(self, rng, random_subset):
        """Test count <= |A||B||C|/N + N max_coeff(A) sqrt(|B||C|)."""
        g = parse_group_spec("Z2^6")
        for _ in range(20):
            A = random_subset(g, 10, rng)
            B = random_subset(g, 12, rng)
            C = random_subset(g, 9, rng)
            assert mu_direct(A, B, C).count <= proof_chain_bound(A, B, C) + 1e-6

    def test_cayley_edge_count_matches(self, rng, random_subset):
        """Test that the Cayley graph edge scan equals mu."""
        for text in ["Z(10)", "Z(2)xZ(3)xZ(2)", "Z2^4"]:
            g = parse_group_spec(text)
            A, B, C = (random_subset(g, 5, rng) for _ in range(3))
            assert cayley_edge_count(A, B, C) == mu_direct(A, B, C).count

    def test_cayley_edge_count_empty(self, z12):
        """Test that an empty A has no edges."""
        B = Subset(z12, (0, 1))
        assert cayley_edge_count(Subset.empty(z12), B, B) == 0
