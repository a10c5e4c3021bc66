import numpy as np
import pytest

from ucmhd.cases import (CASES, H_ATM, RHO0, VORTEX_T_EXACT, diagnostics, make_case,
                         vortex_primitives)
from ucmhd.ctm import divergence_main
from ucmhd.physics import BX, BY, GasModel, conserved_from_primitive, primitive_from_conserved


def cell_state(case, x, y):
    g = case.grid
    i = int(np.argmin(np.abs(g.x - x)))
    j = int(np.argmin(np.abs(g.y - y)))
    return primitive_from_conserved(case.U0[:, i, j], case.gas)


@pytest.mark.parametrize("name", CASES)
def test_every_case_builds(name):
    case = make_case(name, nx=12, ny=8)
    assert case.U0.shape == (8,) + case.grid.shape
    assert np.isfinite(case.U0).all()


def test_unknown_case():
    with pytest.raises(ValueError, match="brio-wu"):
        make_case("orszag-tang")


class TestBrioWu:
    def test_states(self):
        case = make_case("brio-wu", nx=16, ny=4)
        np.testing.assert_array_equal(cell_state(case, -0.5, 0.0), [1, 0, 0, 0, 1, 0.75, 1, 0])
        np.testing.assert_allclose(cell_state(case, 0.5, 0.0), [0.125, 0, 0, 0, 0.1, 0.75, -1, 0],
                                   rtol=1e-15)

    def test_gamma_two(self):
        assert make_case("brio-wu", nx=8, ny=4).gas.gamma == 2.0

    def test_initial_divergence_vanishes(self):
        # B1 uniform and B2 = B2(x): both centred difference terms are zero
        case = make_case("brio-wu", nx=16, ny=6)
        assert not divergence_main(case.U0[BX], case.U0[BY], case.grid.dx, case.grid.dy).any()


class TestFourState:
    @pytest.mark.parametrize("x,y,expected", [(0.5, 0.5, (1, 0.75, 0.5)),
                                              (-0.5, 0.5, (2, 0.75, 0.5)),
                                              (-0.5, -0.5, (1, -0.75, 0.5)),
                                              (0.5, -0.5, (3, -0.75, -0.5))])
    def test_quadrants(self, x, y, expected):
        w = cell_state(make_case("four-state", nx=8, ny=8), x, y)
        np.testing.assert_allclose(w[:3], expected, rtol=1e-15)
        np.testing.assert_allclose(w[4:], [1, 2, 0, 1], rtol=1e-14)


class TestVortex:
    def test_divergence_free_and_positive(self):
        X, Y = np.meshgrid(np.linspace(-5, 5, 101), np.linspace(-5, 5, 101), indexing="ij")
        w = vortex_primitives(X, Y)
        assert w[4].min() == pytest.approx(0.5, abs=1e-3)
        h = 1e-5
        div = ((vortex_primitives(X + h, Y)[BX] - vortex_primitives(X - h, Y)[BX])
               + (vortex_primitives(X, Y + h)[BY] - vortex_primitives(X, Y - h)[BY])) / (2 * h)
        assert np.max(np.abs(div)) < 1e-9

    def test_radial_balance(self):
        # dp/dr = rho u_phi^2 / r - B_phi^2 / r - B_phi dB_phi/dr
        r = np.linspace(0.1, 4, 400)
        w = vortex_primitives(r, np.zeros_like(r))
        uphi, bphi, p = w[2], w[BY], w[4]
        lhs = np.gradient(p, r)
        rhs = uphi ** 2 / r - bphi ** 2 / r - bphi * np.gradient(bphi, r)
        np.testing.assert_allclose(lhs[5:-5], rhs[5:-5], atol=2e-4)

    def test_moves_with_background(self):
        X, Y = np.meshgrid(np.linspace(-1, 1, 5), np.linspace(-1, 1, 5), indexing="ij")
        a = vortex_primitives(X, Y, t=2.0, u0=1.0, v0=-0.5)
        b = vortex_primitives(X - 2.0, Y + 1.0)
        np.testing.assert_allclose(a[[0, 4, 5, 6]], b[[0, 4, 5, 6]], atol=1e-15)

    def test_exact_period(self):
        case = make_case("vortex", nx=8, ny=8, t_final_exact=True)
        assert case.config.t_final == pytest.approx(VORTEX_T_EXACT)
        assert VORTEX_T_EXACT == pytest.approx(381.09, abs=0.01)

    def test_reference_kinds(self):
        assert not make_case("vortex", nx=8, ny=8).delta0.any()
        uniform = make_case("vortex", nx=8, ny=8, reference="uniform")
        assert uniform.config.bc.left == "periodic"
        with pytest.raises(ValueError):
            make_case("vortex", reference="zero")


class TestAtmospheres:
    def test_base_density(self):
        assert RHO0 == pytest.approx(1.13 / (2.74 * 0.158), rel=1e-15)
        assert RHO0 == pytest.approx(2.6102, abs=1e-4)

    def test_scale_height(self):
        case = make_case("hydro-atmosphere", nx=4, ny=200)
        w = primitive_from_conserved(case.U0, case.gas)
        j = int(np.argmin(np.abs(case.grid.y - H_ATM)))
        assert w[0, 4, j] == pytest.approx(RHO0 / np.e * np.exp(-(case.grid.y[j] - H_ATM) / H_ATM))

    def test_mhd_field(self):
        case = make_case("mhd-atmosphere", mu=1.0, nx=8, ny=6)
        assert np.all(case.U0[BY] == 1.0)
        assert not divergence_main(case.U0[BX], case.U0[BY], 1, 1).any()

    def test_zero_mu_regularized(self):
        case = make_case("mhd-atmosphere", mu=0.0, nx=8, ny=6)
        assert 0 < case.config.params["mu"] < 1e-6

    def test_negative_mu(self):
        with pytest.raises(ValueError):
            make_case("mhd-atmosphere", mu=-1.0)


class TestDiagnostics:
    def _single(self, prim):
        case = make_case("brio-wu", nx=2, ny=2)
        full = np.broadcast_to(np.asarray(prim, float)[:, None, None], (8,) + case.grid.shape)
        U = conserved_from_primitive(full.copy(), GasModel(2.0))
        return diagnostics(U, case.grid, case.gas)

    def test_aligned_flow(self):
        d = self._single([1, 0, 1, 0, 1.5, 0, 2, 0])
        np.testing.assert_allclose(d["uB"], 1.0)
        np.testing.assert_allclose(d["uperpB"], 0.0)
        np.testing.assert_allclose(d["beta"], 2 * 1.5 / 4)

    def test_zero_field_is_nan(self):
        d = self._single([1, 0.3, 0.1, 0, 1, 0, 0, 0])
        assert np.isnan(d["uB"]).all() and np.isnan(d["beta"]).all()
