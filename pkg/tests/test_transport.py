"""Path transport, monodromy, series consistency."""

import numpy as np
import pytest

from kummer_pf.pfaffian import rank5_system
from kummer_pf.transport import (
    CircleSegment,
    ClearanceError,
    CompiledConnection,
    LineSegment,
    Path,
    check_clearance,
    initial_state,
    monodromy,
    series_vs_transport,
    trace_integral,
    transport,
)

GENERIC_A = (1e-3, 0.6e-3, 0.4e-3)
GENERIC_B = (0.5e-3, 1e-3, 0.8e-3)


@pytest.fixture(scope="module")
def sys5():
    return rank5_system()


@pytest.fixture(scope="module")
def conn(sys5):
    return CompiledConnection(sys5)


class TestPaths:
    def test_chaining_validated(self):
        with pytest.raises(ValueError):
            Path((LineSegment((0j, 0j, 1j), (1j, 0j, 1j)),
                  LineSegment((0j, 0j, 0j), (1j, 1j, 1j))))

    def test_json_roundtrip(self):
        circle = CircleSegment(coordinate="r", center=0j, radius=0.01, turns=1.0,
                               fixed={"p": 0.5 + 0j, "q": 1 / 3 + 0j})
        path = Path((circle,), samples_hint=32)
        back = Path.from_json(path.to_json())
        assert back.is_closed()
        assert back.samples_hint == 32
        a, b = back.segments[0].endpoints()
        assert abs(a[2] - 0.01) < 1e-15 and abs(b[2] - 0.01) < 1e-15

    def test_clearance_rejects_divisor_touch(self):
        path = Path((LineSegment((1e-3, 0j, 0j), (0j, 1e-3, 0j)),))
        with pytest.raises(ClearanceError):
            check_clearance(path, 1e-4)

    def test_clearance_accepts_generic(self):
        path = Path((LineSegment(GENERIC_A, GENERIC_B),))
        assert check_clearance(path, 1e-3) > 1e-3


class TestInitialState:
    def test_formal_origin_limit(self, sys5):
        # at the origin every theta image vanishes and u = 1
        state = initial_state(sys5, (0j, 0j, 0j), cap=8)
        assert state[0] == 1
        assert np.all(state[1:] == 0)

    def test_small_p_point(self, sys5):
        state = initial_state(sys5, (1e-3, 0j, 0j), cap=12)
        # u = 1 + p/4 + 9 p^2/64 + ...
        assert abs(state[0] - (1 + 2.5e-4)) < 1e-6
        assert abs(state[0] - (1 + 2.5e-4 + 9 / 64 * 1e-6)) < 1e-9
        # theta_q image vanishes identically on the q = 0 slice
        assert state[2] == 0

    def test_tail_tolerance_enforced(self, sys5):
        with pytest.raises(ValueError):
            initial_state(sys5, (0.5, 0.5, 0.5), cap=6, tail_tol=1e-12)


class TestTransport:
    def test_zero_length_path(self, conn):
        path = Path((LineSegment(GENERIC_A, GENERIC_A),))
        res = transport(conn, path, tol=1e-10, min_clearance=1e-4)
        assert np.allclose(res.fundamental_matrix, np.eye(5), atol=1e-12)

    def test_forward_backward_is_identity(self, conn):
        tol = 1e-10
        path = Path((LineSegment((0.3, 0.2, 0.1), (0.35, 0.25, 0.12)),))
        fwd = transport(conn, path, tol=tol).fundamental_matrix
        back = transport(conn, path.reversed(), tol=tol).fundamental_matrix
        assert np.max(np.abs(back @ fwd - np.eye(5))) < 10 * tol

    def test_contractible_loop_identity(self, conn):
        tol = 1e-10
        base = (0.3, 0.2, 0.1)
        corners = [(0.35, 0.2, 0.1), (0.35, 0.25, 0.1), (0.3, 0.25, 0.1)]
        loop = Path((
            LineSegment(base, corners[0]),
            LineSegment(corners[0], corners[1]),
            LineSegment(corners[1], corners[2]),
            LineSegment(corners[2], base),
        ))
        res = transport(conn, loop, tol=tol)
        assert np.max(np.abs(res.fundamental_matrix - np.eye(5))) < 1e2 * tol

    def test_homotopic_rectangles_agree(self, conn):
        tol = 1e-10
        a, b = (0.3, 0.2, 0.1), (0.4, 0.2, 0.1)
        via_top = Path((LineSegment(a, (0.3, 0.27, 0.1)),
                        LineSegment((0.3, 0.27, 0.1), (0.4, 0.27, 0.1)),
                        LineSegment((0.4, 0.27, 0.1), b)))
        direct = Path((LineSegment(a, b),))
        m1 = transport(conn, via_top, tol=tol).fundamental_matrix
        m2 = transport(conn, direct, tol=tol).fundamental_matrix
        assert np.max(np.abs(m1 - m2)) < 1e2 * tol

    def test_tolerance_refinement_improves_identity_defect(self, conn):
        base = (0.3, 0.2, 0.1)
        corners = [(0.36, 0.2, 0.1), (0.36, 0.26, 0.1), (0.3, 0.26, 0.1)]
        loop = Path((
            LineSegment(base, corners[0]),
            LineSegment(corners[0], corners[1]),
            LineSegment(corners[1], corners[2]),
            LineSegment(corners[2], base),
        ))
        defects = []
        for tol in (1e-6, 1e-8):
            m = transport(conn, loop, tol=tol).fundamental_matrix
            defects.append(np.max(np.abs(m - np.eye(5))))
        assert defects[1] < defects[0] / 10


class TestMonodromy:
    def test_r_loop_unit_determinant(self, conn):
        loop = Path((CircleSegment(coordinate="r", center=0j, radius=0.01, turns=1.0,
                                   fixed={"p": 0.5 + 0j, "q": 1 / 3 + 0j}),))
        result = monodromy(conn, loop, tol=1e-10)
        assert abs(abs(result.determinant) - 1) < 1e-6
        assert result.det_consistency < 1e-6

    def test_inverse_loop_gives_inverse(self, conn):
        loop = Path((CircleSegment(coordinate="r", center=0j, radius=0.01, turns=1.0,
                                   fixed={"p": 0.5 + 0j, "q": 1 / 3 + 0j}),))
        fwd = monodromy(conn, loop, tol=1e-10)
        back = monodromy(conn, loop.reversed(), tol=1e-10)
        assert np.max(np.abs(back.matrix @ fwd.matrix - np.eye(5))) < 1e-7

    def test_open_path_rejected(self, conn):
        path = Path((LineSegment(GENERIC_A, GENERIC_B),))
        with pytest.raises(ValueError):
            monodromy(conn, path, tol=1e-8)

    def test_liouville_on_open_path(self, conn, sys5):
        # det of the fundamental matrix matches exp of the trace integral on
        # open paths as well
        path = Path((LineSegment((0.3, 0.2, 0.1), (0.35, 0.22, 0.13)),))
        m = transport(conn, path, tol=1e-11).fundamental_matrix
        expected = np.exp(trace_integral(conn, path))
        assert abs(np.linalg.det(m) - expected) / abs(expected) < 1e-6


class TestSeriesConsistency:
    def test_same_point_zero(self, sys5):
        assert series_vs_transport(sys5, GENERIC_A, GENERIC_A, cap=12) == 0

    def test_generic_small_points(self, sys5):
        d = series_vs_transport(sys5, GENERIC_A, GENERIC_B, cap=16, tol=1e-10)
        assert d < 1e-8

    def test_r_direction_stress(self, sys5):
        a = (0.7e-3, 0.9e-3, 1e-3)
        b = (0.9e-3, 0.7e-3, 1.2e-3)
        d = series_vs_transport(sys5, a, b, cap=20, tol=1e-10)
        assert d < 1e-6
