import math

import numpy as np
import pytest

from momdeform import oracle, susy
from momdeform.oracle import (BlowUpError, BoundaryKind, BoundarySpec,
                              CheckResult, VerificationReport)
from momdeform.susy import Family, GridFunction, PotentialKind, ZeroMode


class TestBoundarySpec:
    def test_validation(self):
        BoundarySpec(BoundaryKind.DIRICHLET)
        BoundarySpec(BoundaryKind.ROBIN, -0.5)
        with pytest.raises(ValueError):
            BoundarySpec(BoundaryKind.ROBIN)
        with pytest.raises(ValueError):
            BoundarySpec(BoundaryKind.NEUMANN, 1.0)

    def test_coefficient(self):
        assert BoundarySpec(BoundaryKind.NEUMANN).coefficient == 0.0
        assert BoundarySpec(BoundaryKind.ROBIN, -2.0).coefficient == -2.0
        with pytest.raises(ValueError):
            BoundarySpec(BoundaryKind.DIRICHLET).coefficient


class TestReport:
    def test_pass_fail(self):
        r = VerificationReport()
        r.add("a", 1e-9, 1e-8)
        assert r.passed
        r.add("b", 2e-8, 1e-8)
        assert not r.passed
        assert [c.passed for c in r.checks] == [True, False]
        assert isinstance(r.checks[0], CheckResult)


class TestRiccatiODE:
    @pytest.mark.parametrize("family,gamma", [
        (Family.FAMILY1, 1.0), (Family.FAMILY2, -1.0),
    ])
    def test_agrees_with_closed_form(self, family, gamma):
        gf = oracle.riccati_ode(family, gamma, 0.01, 10.0, 1e-12, n_points=300)
        closed = susy.w_deformed(family, gamma, gf.grid)
        assert np.max(np.abs(gf.values - closed)) <= 1e-7

    def test_blow_up_detected(self):
        # family-2 gamma > 0 hits the denominator zero near p ~ 0.4
        with pytest.raises(BlowUpError):
            oracle.riccati_ode(Family.FAMILY2, 0.5, 0.01, 1.0, 1e-10)

    def test_large_gamma(self):
        gf = oracle.riccati_ode(Family.FAMILY1, 1e4, 0.05, 5.0, 1e-12,
                                n_points=200)
        assert np.max(np.abs(gf.values - np.sqrt(gf.grid))) <= 1e-3

    def test_domain(self):
        with pytest.raises(ValueError):
            oracle.riccati_ode(Family.FAMILY1, 1.0, 0.0, 1.0, 1e-10)
        with pytest.raises(ValueError):
            oracle.riccati_ode(Family.FAMILY1, 1.0, 2.0, 1.0, 1e-10)


class TestApplyHamiltonian:
    def test_free_particle_sine(self):
        # -(sin p)'' = sin p
        grid = np.linspace(1.0, 4.0, 3001)
        V = GridFunction(grid, np.zeros_like(grid))
        psi = GridFunction(grid, np.sin(grid))
        out = oracle.apply_hamiltonian(V, psi)
        assert out.grid[0] == grid[1]
        assert np.max(np.abs(out.values - np.sin(out.grid))) <= 1e-6

    def test_constant_potential(self):
        grid = np.linspace(0.5, 2.5, 501)
        V = GridFunction(grid, np.full_like(grid, 3.0))
        psi = GridFunction(grid, np.exp(grid))
        out = oracle.apply_hamiltonian(V, psi)
        # (-d^2 + 3) e^p = 2 e^p; truncation ~ h^2 e^p / 12
        assert np.max(np.abs(out.values - 2.0 * np.exp(out.grid))) <= 1e-4

    def test_neumann_ghost_row(self):
        h = 1e-3
        grid = h * np.arange(0, 2001)
        V = GridFunction(grid, np.zeros_like(grid))
        psi = GridFunction(grid, np.cos(grid))
        bc = BoundarySpec(BoundaryKind.NEUMANN)
        out = oracle.apply_hamiltonian(V, psi, bc)
        assert out.grid[0] == 0.0
        assert out.values[0] == pytest.approx(np.cos(0.0), abs=1e-5)

    def test_robin_ghost_row(self):
        c = 0.7
        h = 1e-4
        grid = h * np.arange(0, 1001)
        V = GridFunction(grid, np.zeros_like(grid))
        psi = GridFunction(grid, np.exp(c * grid))
        out = oracle.apply_hamiltonian(V, psi,
                                       BoundarySpec(BoundaryKind.ROBIN, c))
        # (-d^2) e^{cp} = -c^2 e^{cp}; the one-sided closure is O(h)
        assert out.values[0] == pytest.approx(-c**2, abs=1e-2)

    def test_grid_mismatch(self):
        a = np.linspace(0.0, 1.0, 11)
        b = np.linspace(0.0, 2.0, 11)
        with pytest.raises(ValueError):
            oracle.apply_hamiltonian(GridFunction(a, np.zeros(11)),
                                     GridFunction(b, np.zeros(11)))


class TestZeroModeResidual:
    @pytest.mark.parametrize("family,gamma", [
        (Family.FAMILY1, 2.0), (Family.FAMILY2, -2.0),
    ])
    def test_second_order_convergence(self, family, gamma):
        r1 = oracle.zero_mode_residual(family, gamma, 1e-3, 15.0, p_min=0.1)
        r2 = oracle.zero_mode_residual(family, gamma, 5e-4, 15.0, p_min=0.1)
        assert r1 <= 1e-4
        assert r1 / r2 == pytest.approx(4.0, abs=0.5)

    def test_undeformed_mode_exact_check(self):
        # sqrt(mu2) is the exact zero mode of V1: residual is pure h^2 error
        h = 1e-3
        grid = 0.1 + h * np.arange(0, int(round(14.9 / h)) + 1)
        V = GridFunction(grid, susy.potential(PotentialKind.V1, grid))
        psi = GridFunction(grid, susy.zeromode(ZeroMode(Family.FAMILY1), grid))
        out = oracle.apply_hamiltonian(V, psi)
        assert np.max(np.abs(out.values)) / np.max(np.abs(psi.values)) <= 1e-4


class TestIntertwine:
    @pytest.mark.parametrize("family,gamma", [
        (Family.FAMILY1, 0.5), (Family.FAMILY1, 5.0),
        (Family.FAMILY2, -0.5), (Family.FAMILY2, -5.0),
    ])
    def test_residual_small(self, family, gamma):
        grid = np.arange(1.0, 9.0, 1e-3)
        res = oracle.intertwine_residual(
            family, gamma, lambda p: np.exp(-((p - 5.0) ** 2)), grid)
        assert res <= 1e-3

    def test_second_order(self):
        f = lambda p: np.exp(-((p - 5.0) ** 2))
        r8 = oracle.intertwine_residual(Family.FAMILY1, 1.0, f,
                                        np.arange(1.0, 9.0, 8e-3))
        r4 = oracle.intertwine_residual(Family.FAMILY1, 1.0, f,
                                        np.arange(1.0, 9.0, 4e-3))
        assert r8 / r4 == pytest.approx(4.0, abs=0.5)

    def test_large_gamma_reduces_to_undeformed_pair(self):
        # at huge gamma the deformed operators coincide with the undeformed
        # ones, whose intertwining defect on the same stencil is tiny too
        grid = np.arange(1.0, 9.0, 2e-3)
        f = lambda p: np.exp(-((p - 5.0) ** 2))
        res = oracle.intertwine_residual(Family.FAMILY1, 1e8, f, grid)
        assert res <= 1e-3


def _dense_lowest(d, e):
    """Dense eigensolve oracle for the same tridiagonal matrix."""
    n = d.size
    M = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    return float(np.linalg.eigvalsh(M)[0])


class TestLowestEigenvalue:
    def test_harmonic_dirichlet(self):
        # half-line harmonic oscillator with Dirichlet at 0: lowest level 3
        h = 0.01
        grid = h * np.arange(0, int(round(12.0 / h)) + 1)
        V = GridFunction(grid, grid**2)
        lam = oracle.lowest_eigenvalue(V, BoundarySpec(BoundaryKind.DIRICHLET))
        assert lam == pytest.approx(3.0, abs=5e-3)

    def test_matches_dense_oracle(self):
        h = 0.02
        grid = h * np.arange(0, int(round(10.0 / h)) + 1)
        V = GridFunction(grid, grid**2)
        lam = oracle.lowest_eigenvalue(V, BoundarySpec(BoundaryKind.DIRICHLET))
        vals = grid[1:]**2
        d = 2.0 / h**2 + vals[:-1]
        e = np.full(d.size - 1, -1.0 / h**2)
        assert lam == pytest.approx(_dense_lowest(d, e), rel=1e-10)

    def test_neumann_undeformed_zero_mode(self):
        # V1 with psi'(0)=0 holds the exact zero mode sqrt(mu2)
        h = 1e-3
        grid = h * np.arange(0, int(round(20.0 / h)) + 1)
        V = GridFunction(grid, np.concatenate(
            [[0.0], susy.potential(PotentialKind.V1, grid[1:])]))
        lam = oracle.lowest_eigenvalue(V, BoundarySpec(BoundaryKind.NEUMANN),
                                       origin_singular_coeff=-0.5)
        assert abs(lam) <= 5e-3

    def test_robin_deformed_zero_mode(self):
        gamma = 2.0
        h = 1e-3
        grid = h * np.arange(1, int(round(20.0 / h)) + 1)
        V = GridFunction(grid, susy.potential_deformed(Family.FAMILY1, gamma,
                                                       grid))
        bc = BoundarySpec(BoundaryKind.ROBIN, -1.0 / gamma)
        lam = oracle.lowest_eigenvalue(V, bc, origin_singular_coeff=-0.5)
        assert abs(lam) <= 5e-3

    def test_bad_grid_for_robin(self):
        grid = np.linspace(0.5, 5.0, 100)
        V = GridFunction(grid, grid**2)
        with pytest.raises(ValueError):
            oracle.lowest_eigenvalue(V, BoundarySpec(BoundaryKind.NEUMANN))
