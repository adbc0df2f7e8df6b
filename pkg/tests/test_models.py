"""Tests for the domain models."""

import numpy as np
import pytest

from persidskii_aes.errors import SystemSpecError
from persidskii_aes.models import (
    ConstantBounds,
    ContinuousCertificate,
    ContinuousSystem,
    Criterion,
    DecayProfile,
    DelayTerm,
    DiscreteCertificate,
    DiscreteSystem,
    EvidenceMode,
    Infeasible,
    InfeasibilityReason,
    MatrixExpr,
    RateWindow,
    SectorBounds,
    SectorKind,
    certificate_from_dict,
    default_step_grid,
    default_time_grid,
    is_metzler,
    metzlerize,
    sup_on_grid,
)


class TestSectorBounds:
    """Test cases for SectorBounds."""

    def test_bounded_sector(self):
        """Test building K[delta, beta] and its diagonal matrices."""
        sector = SectorBounds.bounded([1 / 3, 0.5], [1.5, 2.0])

        assert sector.kind == SectorKind.BOUNDED
        assert sector.n == 2
        np.testing.assert_allclose(sector.d_delta, np.diag([1 / 3, 0.5]))
        np.testing.assert_allclose(sector.d_beta, np.diag([1.5, 2.0]))

    def test_delta_above_beta_rejected(self):
        """Test that delta_i > beta_i is rejected."""
        with pytest.raises(SystemSpecError):
            SectorBounds.bounded([2.0], [1.0])

    def test_nonpositive_slopes_rejected(self):
        """Test that zero or negative slopes are rejected."""
        with pytest.raises(SystemSpecError):
            SectorBounds.bounded([0.0], [1.0])
        with pytest.raises(SystemSpecError):
            SectorBounds.positive_up_to([-1.0])

    def test_length_mismatch_rejected(self):
        """Test that delta and beta must have the same length."""
        with pytest.raises(SystemSpecError):
            SectorBounds.bounded([1.0, 1.0], [2.0])

    def test_missing_slope_access(self):
        """Test that a one-sided sector has no matrix for its missing slope."""
        with pytest.raises(SystemSpecError):
            SectorBounds.positive_up_to([1.0]).d_delta
        with pytest.raises(SystemSpecError):
            SectorBounds.bounded_below([1.0]).d_beta

    def test_require(self):
        """Test that require() rejects other sector kinds."""
        sector = SectorBounds.positive_up_to([1.0])
        sector.require(SectorKind.POSITIVE_UP_TO)

        with pytest.raises(SystemSpecError):
            sector.require(SectorKind.BOUNDED)

    def test_contains(self):
        """Test sector membership of sampled values."""
        sector = SectorBounds.bounded([0.5], [2.0])
        x = np.array([[-2.0], [-1.0], [0.0], [1.0], [3.0]])

        assert sector.contains(x, 1.5 * x)
        assert not sector.contains(x, 3.0 * x)
        assert not sector.contains(x, 0.25 * x)
        assert not sector.contains(x, 1.5 * x + 0.1)

    def test_contains_positive_up_to(self):
        """Test that K(0, beta] excludes zero slopes away from the origin."""
        sector = SectorBounds.positive_up_to([1.0])
        x = np.array([[-1.0], [2.0]])

        assert sector.contains(x, 1e-6 * x)
        assert not sector.contains(x, 0.0 * x)

    def test_to_dict(self):
        """Test the dictionary form used in reports."""
        assert SectorBounds.positive_up_to([0.125]).to_dict() == {"beta": [0.125]}
        assert SectorBounds.bounded_below([1.0]).to_dict() == {"delta": [1.0]}


class TestMatrices:
    """Test cases for matrix helpers."""

    def test_matrix_expr_from_rows(self):
        """Test mixing numbers and expression strings."""
        matrix = MatrixExpr.from_rows([["-4*t-12", 0], ["t", "-2*t-5"]])

        assert matrix.n == 2
        assert not matrix.is_constant
        np.testing.assert_allclose(matrix.evaluate(1.0), [[-16.0, 0.0], [1.0, -7.0]])

    def test_constant_expressions_fold(self):
        """Test that expressions without t fold to floats."""
        matrix = MatrixExpr.from_rows([["1/3", "e"], [0, 1]])

        assert matrix.is_constant
        assert matrix.entries[0][1] == pytest.approx(np.e)

    def test_evaluate_grid(self):
        """Test stacked evaluation on a time grid."""
        matrix = MatrixExpr.from_rows([["t", 1], [0, "-t"]])
        values = matrix.evaluate_grid([0.0, 1.0, 2.0])

        assert values.shape == (3, 2, 2)
        np.testing.assert_allclose(values[2], [[2.0, 1.0], [0.0, -2.0]])

    def test_non_square_rejected(self):
        """Test that ragged rows are rejected."""
        with pytest.raises(SystemSpecError):
            MatrixExpr.from_rows([[1, 2], [3]])

    def test_bad_entry_rejected(self):
        """Test that entries other than numbers and expressions are rejected."""
        with pytest.raises(SystemSpecError):
            MatrixExpr.from_rows([[None]])
        with pytest.raises(SystemSpecError):
            MatrixExpr.from_rows([[True]])

    def test_metzlerize(self):
        """Test that the diagonal is kept and off-diagonal entries become absolute values."""
        m = np.array([[-3.0, -1.0], [2.0, -4.0]])

        np.testing.assert_array_equal(metzlerize(m), [[-3.0, 1.0], [2.0, -4.0]])
        assert is_metzler(metzlerize(m))
        assert not is_metzler(m)

    def test_sup_on_grid(self):
        """Test entrywise grid suprema for A (Metzlerized) and B (absolute)."""
        matrix = MatrixExpr.from_rows([["-4*t-12", 0], ["t", "-2*t-5"]])
        grid = np.linspace(0.0, 10.0, 101)

        np.testing.assert_allclose(sup_on_grid(matrix, grid, metzler=True), [[-12.0, 0.0], [10.0, -5.0]])
        np.testing.assert_allclose(sup_on_grid(matrix, grid), [[52.0, 0.0], [10.0, 25.0]])

    def test_default_time_grid(self):
        """Test the default continuous evidence grid."""
        grid = default_time_grid(1.0)

        assert grid[0] == 0.0
        assert grid[-1] == pytest.approx(10.0)
        assert grid.size == 1001

    def test_default_step_grid(self):
        """Test the default discrete evidence grid."""
        assert default_step_grid(0)[-1] == 100
        assert default_step_grid(3)[-1] == 300
        assert default_step_grid(2, k_max=5).tolist() == [0, 1, 2, 3, 4, 5]


class TestSystems:
    """Test cases for ContinuousSystem and DiscreteSystem."""

    def test_continuous_system(self):
        """Test building a constant continuous system."""
        system = ContinuousSystem(a=[[-2.0]], delays=[DelayTerm(1.0, [[1.0]])])

        assert system.n == 1
        assert system.h_max == 1.0
        assert system.is_constant
        assert system.is_positive
        np.testing.assert_array_equal(system.b_at(0, 5.0), [[1.0]])

    def test_delay_tuples_accepted(self):
        """Test that (h, B) pairs are converted to DelayTerm."""
        system = ContinuousSystem(a=[[-2.0]], delays=[(0.5, [[1.0]]), (2.0, [[0.5]])])

        assert system.delay_values == [0.5, 2.0]
        assert isinstance(system.delays[0], DelayTerm)

    def test_time_varying_system(self):
        """Test that expression entries make a system time-varying."""
        system = ContinuousSystem(a=[["-t-1"]], delays=[(1.0, [["sin(t)"]])])

        assert not system.is_constant
        assert not system.is_positive
        assert system.a_at(2.0)[0, 0] == pytest.approx(-3.0)

    def test_delays_must_increase(self):
        """Test that delays must be positive and strictly increasing."""
        with pytest.raises(SystemSpecError):
            ContinuousSystem(a=[[-1.0]], delays=[(2.0, [[0.1]]), (1.0, [[0.1]])])
        with pytest.raises(SystemSpecError):
            ContinuousSystem(a=[[-1.0]], delays=[(0.0, [[0.1]])])

    def test_dimension_mismatch(self):
        """Test that B_l must match the dimension of A."""
        with pytest.raises(SystemSpecError):
            ContinuousSystem(a=[[-1.0]], delays=[(1.0, np.eye(2))])

    def test_discrete_delays_must_be_integers(self):
        """Test that a fractional discrete delay is rejected."""
        with pytest.raises(SystemSpecError):
            DiscreteSystem(a=[[0.1]], delays=[(1.5, [[0.1]])])

        system = DiscreteSystem(a=[[0.1]], delays=[(2.0, [[0.1]])])
        assert system.h_max == 2
        assert isinstance(system.h_max, int)

    def test_bounds_validation(self):
        """Test that bounds must have the right shape and sign."""
        with pytest.raises(SystemSpecError):
            ContinuousSystem(a=[[-1.0]], delays=[(1.0, [[0.1]])], bounds=ConstantBounds(b=(np.array([[-1.0]]),)))
        with pytest.raises(SystemSpecError):
            DiscreteSystem(a=[[0.1]], bounds=ConstantBounds(a=np.array([[-0.5]])))
        with pytest.raises(SystemSpecError):
            ContinuousSystem(a=np.eye(2) * -1, bounds=ConstantBounds(a=np.array([[-1.0, -1.0], [0.0, -1.0]])))

    def test_verify_bounds(self):
        """Test spot-checking user bounds on a grid."""
        system = ContinuousSystem(
            a=[["-2"]],
            delays=[(1.0, [["0.5*sin(t)"]])],
            bounds=ConstantBounds(b=(np.array([[0.5]]),)),
        )
        system.verify_bounds(np.linspace(0.0, 10.0, 101))

        tight = ContinuousSystem(
            a=[["-2"]],
            delays=[(1.0, [["0.5*sin(t)"]])],
            bounds=ConstantBounds(b=(np.array([[0.4]]),)),
        )
        with pytest.raises(SystemSpecError, match="B_1"):
            tight.verify_bounds(np.linspace(0.0, 10.0, 101))


class TestCertificates:
    """Test cases for certificate and infeasibility results."""

    def test_infeasible_is_falsy(self):
        """Test that Infeasible evaluates false and serialises its reason."""
        result = Infeasible(InfeasibilityReason.NOT_HURWITZ, "spectral abscissa is 0.5", 0.5)

        assert not result
        assert result.to_dict() == {
            "status": "infeasible",
            "reason": "NotHurwitz",
            "message": "spectral abscissa is 0.5",
            "value": 0.5,
        }

    def test_continuous_certificate_normalises_xi(self):
        """Test that xi is l1-normalised and the margin rescaled."""
        certificate = ContinuousCertificate(
            xi=[2.0, 2.0], alpha=0.5, criterion=Criterion.THM1, margin=0.4,
            evidence=EvidenceMode.USER_BOUNDS,
        )

        np.testing.assert_allclose(certificate.xi, [0.5, 0.5])
        assert certificate.margin == pytest.approx(0.1)
        assert certificate.rate == 0.5

    def test_certificate_rejects_bad_values(self):
        """Test that nonpositive witnesses and rates are rejected."""
        with pytest.raises(SystemSpecError):
            ContinuousCertificate(xi=[1.0, 0.0], alpha=0.5, criterion=Criterion.THM1,
                                  margin=0.0, evidence=EvidenceMode.USER_BOUNDS)
        with pytest.raises(SystemSpecError):
            ContinuousCertificate(xi=[1.0], alpha=0.0, criterion=Criterion.THM1,
                                  margin=0.0, evidence=EvidenceMode.USER_BOUNDS)
        with pytest.raises(SystemSpecError):
            DiscreteCertificate(xi=[1.0], lam=1.0, criterion=Criterion.THM4,
                                margin=0.0, evidence=EvidenceMode.USER_BOUNDS)

    def test_certificate_dict_round_trip(self):
        """Test rebuilding certificates from report dictionaries."""
        continuous = ContinuousCertificate(
            xi=[0.7, 0.3], alpha=0.78, criterion=Criterion.THM1, margin=1e-3,
            evidence=EvidenceMode.GRID_EVIDENCE, worst_t=0.0,
            profile=DecayProfile(np.array([0.78, 0.9]), 0.78, 0),
        )
        payload = continuous.to_dict()

        assert payload["status"] == "certified"
        assert payload["profile"]["binding_row"] == 1
        rebuilt = certificate_from_dict(payload)
        assert isinstance(rebuilt, ContinuousCertificate)
        assert rebuilt.evidence == EvidenceMode.GRID_EVIDENCE
        np.testing.assert_allclose(rebuilt.xi, continuous.xi)

        discrete = DiscreteCertificate(
            xi=[1.0, 1.0], lam=0.59, criterion=Criterion.COR5, margin=0.0,
            evidence=EvidenceMode.USER_BOUNDS, worst_k=3,
        )
        rebuilt = certificate_from_dict(discrete.to_dict())
        assert isinstance(rebuilt, DiscreteCertificate)
        assert rebuilt.lam == 0.59
        assert rebuilt.worst_k == 3

    def test_certificate_from_dict_requires_rate(self):
        """Test that a dictionary without a rate is rejected."""
        with pytest.raises(SystemSpecError):
            certificate_from_dict({"xi": [1.0]})

    def test_rate_window_default_alpha(self):
        """Test that a rate window exports 0.9 of its supremum by default."""
        window = RateWindow(gamma=-1.0, delta0=0.5, d2=1.0, alpha_sup=0.5, xi=[1.0],
                            evidence=EvidenceMode.USER_BOUNDS)

        assert window.alpha == pytest.approx(0.45)
        with pytest.raises(SystemSpecError):
            RateWindow(gamma=0.5, delta0=0.5, d2=1.0, alpha_sup=0.5, xi=[1.0],
                       evidence=EvidenceMode.USER_BOUNDS)
