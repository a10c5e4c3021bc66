import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ucmhd.errors import InvalidState
from ucmhd.physics import GasModel, conserved_from_primitive
from ucmhd.wavespeed import cfl_dt, max_abs_eigen, speeds_x, speeds_y

G2 = GasModel(2.0)
G53 = GasModel(5 / 3)


def prim(rho=1.0, u=(0.0, 0.0, 0.0), p=1.0, B=(0.0, 0.0, 0.0)):
    return np.array([rho, *u, p, *B], dtype=float)


def test_no_field_is_sound_speed():
    ws = speeds_x(prim(), G2)
    assert ws.cf == pytest.approx(np.sqrt(2.0), abs=1e-15)
    assert ws.cs == 0.0


@pytest.mark.parametrize("b1", [0.3, 1.0, 2.5])
def test_normal_field_factorizes(b1):
    ws = speeds_x(prim(B=(b1, 0, 0)), G2)
    a = np.sqrt(2.0)
    assert ws.cf == pytest.approx(max(a, b1), abs=1e-14)
    assert ws.cs == pytest.approx(min(a, b1), abs=1e-14)


def test_isotropic_without_field():
    w = prim(u=(0.2, -0.1, 0.3))
    assert speeds_x(w, G53) == speeds_y(w, G53)


def test_vertical_field_y_speeds():
    ws = speeds_y(prim(B=(0, 1, 0)), G53)
    a = np.sqrt(5 / 3)
    assert ws.cs == pytest.approx(min(a, 1.0), abs=1e-14)
    assert ws.cf == pytest.approx(max(a, 1.0), abs=1e-14)


def test_max_eigen_no_field():
    a = np.sqrt(5 / 3)
    lx, ly = max_abs_eigen(prim(u=(0.75, 0.5, 0)), G53)
    assert lx == pytest.approx(0.75 + a)
    assert ly == pytest.approx(0.5 + a)


def test_invalid_state():
    with pytest.raises(InvalidState):
        speeds_x(prim(p=-1.0), G53)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.01, 10), st.floats(0.01, 10),
       st.lists(st.floats(-5, 5), min_size=3, max_size=3))
def test_speed_ordering(rho, p, B):
    w = prim(rho=rho, p=p, B=B)
    for ws in (speeds_x(w, G53), speeds_y(w, G53)):
        ca = abs(ws.b1) if ws is not None else 0
        assert 0.0 <= ws.cs <= ws.cf
        assert ws.cf ** 2 >= ws.a ** 2 * (1 - 1e-12)
        assert ws.cf ** 2 + ws.cs ** 2 == pytest.approx(ws.a ** 2 + ws.b1 ** 2 + ws.b2 ** 2
                                                       + ws.b3 ** 2, rel=1e-12)
        del ca


def test_cfl_quiet_state():
    U = conserved_from_primitive(np.broadcast_to(prim()[:, None, None], (8, 4, 4)).copy(), G2)
    dt = cfl_dt(U, G2, 0.485, 0.01, 0.01)
    assert dt == pytest.approx(0.485 * 0.01 / np.sqrt(2.0), rel=1e-15)


def test_cfl_clips_to_final_time():
    U = conserved_from_primitive(prim()[:, None, None], G2)
    assert cfl_dt(U, G2, 0.485, 1.0, 1.0, t=0.9, t_final=1.0) == pytest.approx(0.1)


@pytest.mark.parametrize("cfl", [0.0, -0.1, 0.51, 0.9])
def test_cfl_out_of_range(cfl):
    U = conserved_from_primitive(prim()[:, None, None], G2)
    with pytest.raises(ValueError):
        cfl_dt(U, G2, cfl, 1.0, 1.0)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.01, 0.5))
def test_cfl_linear_in_courant_number(cfl):
    U = conserved_from_primitive(prim(u=(0.3, 0.1, 0), B=(0.5, 1, 0))[:, None, None], G53)
    assert cfl_dt(U, G53, cfl, 0.1, 0.2) == pytest.approx(
        cfl / 0.5 * cfl_dt(U, G53, 0.5, 0.1, 0.2), rel=1e-14)
