"""Tests for the discrete-time criteria."""

import math

import numpy as np
import pytest

from persidskii_aes.builtin_examples import (
    EXAMPLE2_LAMBDA_MAX,
    EXAMPLE2_XI,
    discrete_example,
    example2_checks,
)
from persidskii_aes.criteria import (
    DiscreteCertifier,
    check_thm4,
    check_thm5,
    find_certificate_cor5,
    find_certificate_thm5,
    lambda_max_profile,
)
from persidskii_aes.errors import SystemSpecError
from persidskii_aes.models import (
    Criterion,
    DiscreteCertificate,
    DiscreteSystem,
    EvidenceMode,
    InfeasibilityReason,
    SectorBounds,
)
from persidskii_aes.positive import verify_schur_witness

A_BOUND = np.array([[1.0, 2.0], [3.0, 1.0]])
B_BOUND = np.array([[1 / 2, 1 / 3], [1 / 2, 1 / 4]])
SECTOR = SectorBounds.positive_up_to([1 / 8, 1 / 14])


def positive_root(b: float, c: float) -> float:
    return (b + math.sqrt(b * b + 4 * c)) / 2


class TestExample2:
    """Test cases for the bounded time-varying discrete example."""

    def test_lambda_profile(self):
        """Test the per-row rates for xi = (1, 1) against their closed forms."""
        profile = lambda_max_profile(A_BOUND, [(1, B_BOUND)], SECTOR, EXAMPLE2_XI)

        assert profile.lambda_max == pytest.approx(EXAMPLE2_LAMBDA_MAX, abs=1e-9)
        assert profile.lambdas[0] == pytest.approx(positive_root(15 / 56, 29 / 336), abs=1e-9)
        assert profile.lambdas[1] == pytest.approx(positive_root(25 / 56, 9 / 112), abs=1e-9)
        assert profile.binding_index == 1
        assert not profile.degenerate

    def test_schur_margins(self):
        """Test xi - (A + B) D_beta xi for xi = (1, 1)."""
        m = (A_BOUND + B_BOUND) @ SECTOR.d_beta
        margins = np.ones(2) - m @ np.ones(2)

        np.testing.assert_allclose(margins, [0.64583, 0.47321], atol=1e-5)
        assert verify_schur_witness(m, [1.0, 1.0]).margin == pytest.approx(margins.min())

    def test_builtin_checks_pass(self):
        """Test that every golden value of the example is reproduced."""
        checks = example2_checks()

        assert all(check.passed for check in checks), [c.describe() for c in checks if not c.passed]

    def test_cor5_with_supplied_xi(self):
        """Test the constant-bound certificate with xi = (1, 1)."""
        certificate = find_certificate_cor5(A_BOUND, [(1, B_BOUND)], SECTOR, xi=EXAMPLE2_XI)

        assert isinstance(certificate, DiscreteCertificate)
        assert certificate.criterion == Criterion.COR5
        assert certificate.lam == pytest.approx(EXAMPLE2_LAMBDA_MAX, abs=1e-9)
        np.testing.assert_allclose(certificate.xi, [0.5, 0.5])

    def test_check_with_user_bounds(self):
        """Test the condition on the time-varying system through its bounds."""
        system, sector = discrete_example()

        holds = check_thm4(system, sector, [1.0, 1.0], 0.585)
        assert holds.holds
        assert holds.evidence == EvidenceMode.USER_BOUNDS

        fails = check_thm4(system, sector, [1.0, 1.0], 0.55)
        assert not fails.holds

    def test_searched_certificate(self):
        """Test that the certifier finds a Cor5 certificate from the bounds."""
        system, sector = discrete_example()
        certificate = DiscreteCertifier().certify(system, sector)

        assert certificate.criterion == Criterion.COR5
        assert certificate.evidence == EvidenceMode.USER_BOUNDS
        assert 0 < certificate.lam < 1
        assert check_thm4(system, sector, certificate.xi, certificate.lam).holds

    def test_lambda_profile_service(self):
        """Test the certifier's per-row rates for a supplied xi."""
        system, sector = discrete_example()
        profile = DiscreteCertifier().lambda_profile(system, sector, xi=[1.0, 1.0])

        assert profile.lambda_max == pytest.approx(EXAMPLE2_LAMBDA_MAX, abs=1e-9)


class TestLambdaProfile:
    """Test cases for lambda_max_profile."""

    def test_delay_only_cube_root(self):
        """Test x(k+1) = 0.25 f(x(k - 2)), whose rate solves lam^3 = 0.25."""
        profile = lambda_max_profile(np.zeros((1, 1)), [(2, np.array([[0.25]]))],
                                     SectorBounds.positive_up_to([1.0]), [1.0])

        assert profile.lambda_max == pytest.approx(0.25 ** (1 / 3), abs=1e-9)

    def test_nondelay_rows_are_exact(self):
        """Test that rows without delayed terms are solved in closed form."""
        profile = lambda_max_profile(np.array([[0.5]]), [], SectorBounds.positive_up_to([1.0]), [1.0])

        assert profile.lambda_max == 0.5

    def test_degenerate_zero_system(self):
        """Test that the zero system reports a degenerate profile and a floored rate."""
        certificate = find_certificate_cor5(np.zeros((2, 2)), [], SectorBounds.positive_up_to([1.0, 1.0]))

        assert certificate.profile.degenerate
        assert certificate.profile.lambda_max == 0.0
        assert certificate.lam == pytest.approx(1e-9)

    def test_precondition_violated(self):
        """Test that a witness failing the Schur inequality is reported."""
        result = lambda_max_profile(np.array([[0.9]]), [(1, np.array([[0.2]]))],
                                    SectorBounds.positive_up_to([1.0]), [1.0])

        assert result.reason == InfeasibilityReason.PRECONDITION_VIOLATED

    def test_rejects_negative_bounds(self):
        """Test that bounds must be nonnegative."""
        with pytest.raises(SystemSpecError):
            lambda_max_profile(np.array([[-0.5]]), [], SectorBounds.positive_up_to([1.0]), [1.0])


class TestDiscreteCertificates:
    """Test cases for the discrete certificate search and checks."""

    def test_not_schur(self):
        """Test that an unstable bound is infeasible."""
        result = find_certificate_cor5([[2.0]], [], SectorBounds.positive_up_to([1.0]))

        assert not result
        assert result.reason == InfeasibilityReason.NOT_SCHUR

    def test_thm5_equals_thm4_for_one_delay(self):
        """Test that the multi-delay check is identical for one delay."""
        system, sector = discrete_example()
        single = check_thm4(system, sector, [1.0, 2.0], 0.7)
        multi = check_thm5(system, sector, [1.0, 2.0], 0.7)

        assert single.margin == multi.margin
        assert single.holds == multi.holds

    def test_thm4_rejects_two_delays(self):
        """Test that the single-delay check refuses two delays."""
        system = DiscreteSystem(a=[[0.1]], delays=[(1, [[0.1]]), (2, [[0.1]])])

        with pytest.raises(SystemSpecError):
            check_thm4(system, SectorBounds.positive_up_to([1.0]), [1.0], 0.5)

    def test_multi_delay_certificate(self):
        """Test a constant two-delay system."""
        system = DiscreteSystem(a=[[0.2]], delays=[(1, [[0.1]]), (3, [[0.1]])])
        certificate = find_certificate_thm5(system, SectorBounds.positive_up_to([1.0]))

        assert certificate.criterion == Criterion.COR5
        assert check_thm5(system, SectorBounds.positive_up_to([1.0]), certificate.xi, certificate.lam).holds

    def test_grid_evidence_label(self):
        """Test that a time-varying system without bounds gets a Thm4 grid certificate."""
        system = DiscreteSystem(a=[["0.5*cos(t)"]], delays=[(1, [["0.25*sin(t)"]])])
        certificate = find_certificate_thm5(system, SectorBounds.positive_up_to([1.0]))

        assert certificate.criterion == Criterion.THM4
        assert certificate.evidence == EvidenceMode.GRID_EVIDENCE

    def test_wrong_sector_kind(self):
        """Test that difference systems need K(0, beta]."""
        system = DiscreteSystem(a=[[0.5]])

        with pytest.raises(SystemSpecError):
            check_thm4(system, SectorBounds.bounded([0.5], [1.0]), [1.0], 0.9)

    def test_lambda_out_of_range(self):
        """Test that lambda must lie in (0, 1)."""
        system = DiscreteSystem(a=[[0.5]])

        with pytest.raises(SystemSpecError):
            check_thm4(system, SectorBounds.positive_up_to([1.0]), [1.0], 1.0)

    def test_supplied_rate_too_small(self):
        """Test that the certifier reports a failing supplied rate."""
        system, sector = discrete_example()
        result = DiscreteCertifier().certify(system, sector, xi=[1.0, 1.0], lam=0.3)

        assert result.reason == InfeasibilityReason.CONDITION_VIOLATED
