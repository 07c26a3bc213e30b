"""Numerical parallel transport of the connection along paths in C^3.

The connection d(phi) = (M_p dp + M_q dq + M_r dr) phi is integrated as a
non-autonomous linear ODE along piecewise paths (straight segments and
coordinate circles), with an embedded Dormand-Prince 5(4) stepper and a PI
step-size controller.  The exact rational-function entries are compiled
once into term lists and evaluated per step with cached power tables.

Initial data near the origin comes from the period series: the local
solution vector is (basis_j u) evaluated from the truncated series, with
truncation tails checked against the requested tolerance.  Loop transport
yields monodromy matrices; det(M) is cross-checked against the
Liouville/Abel identity det M = exp(contour integral of tr Omega), the
trace integral being computed independently by Gauss-Legendre quadrature.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .geometry import divisor_clearance
from .pfaffian import PfaffianSystem
from .polynomials import RatFunc
from .series import TruncatedSeries, evaluate_series, period_series

Point = tuple[complex, complex, complex]

VAR_INDEX = {"p": 0, "q": 1, "r": 2}


class TransportError(RuntimeError):
    pass


class ClearanceError(TransportError):
    pass


# -- paths ---------------------------------------------------------------------


@dataclass(frozen=True)
class LineSegment:
    start: Point
    end: Point

    def at(self, s: float) -> Point:
        return tuple(a + (b - a) * s for a, b in zip(self.start, self.end))

    def velocity(self, s: float) -> Point:
        return tuple(b - a for a, b in zip(self.start, self.end))

    def endpoints(self) -> tuple[Point, Point]:
        return self.start, self.end

    def to_json(self) -> dict:
        return {
            "type": "segment",
            "from": [_cjson(x) for x in self.start],
            "to": [_cjson(x) for x in self.end],
        }


@dataclass(frozen=True)
class CircleSegment:
    """One coordinate runs around a circle; the other two stay fixed."""

    coordinate: str
    center: complex
    radius: float
    turns: float
    fixed: dict[str, complex]
    start_angle: float = 0.0

    def _coord(self, s: float) -> complex:
        angle = self.start_angle + 2 * math.pi * self.turns * s
        return self.center + self.radius * cmath.exp(1j * angle)

    def _coord_velocity(self, s: float) -> complex:
        angle = self.start_angle + 2 * math.pi * self.turns * s
        return self.radius * 2j * math.pi * self.turns * cmath.exp(1j * angle)

    def at(self, s: float) -> Point:
        values = dict(self.fixed)
        values[self.coordinate] = self._coord(s)
        return (values["p"], values["q"], values["r"])

    def velocity(self, s: float) -> Point:
        out = [0j, 0j, 0j]
        out[VAR_INDEX[self.coordinate]] = self._coord_velocity(s)
        return tuple(out)

    def endpoints(self) -> tuple[Point, Point]:
        return self.at(0.0), self.at(1.0)

    def to_json(self) -> dict:
        return {
            "type": "circle",
            "coordinate": self.coordinate,
            "center": _cjson(self.center),
            "radius": self.radius,
            "turns": self.turns,
            "start_angle": self.start_angle,
            "fixed": {k: _cjson(v) for k, v in self.fixed.items()},
        }


Segment = LineSegment | CircleSegment


def _cjson(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _cparse(v) -> complex:
    if isinstance(v, (list, tuple)):
        return complex(v[0], v[1])
    return complex(v)


@dataclass(frozen=True)
class Path:
    segments: tuple[Segment, ...]
    samples_hint: int = 64

    def __post_init__(self):
        for a, b in zip(self.segments, self.segments[1:]):
            end = a.endpoints()[1]
            start = b.endpoints()[0]
            gap = max(abs(x - y) for x, y in zip(end, start))
            if gap > 1e-12:
                raise ValueError(f"segments do not chain: gap {gap:.3e}")

    @property
    def start(self) -> Point:
        return self.segments[0].endpoints()[0]

    @property
    def end(self) -> Point:
        return self.segments[-1].endpoints()[1]

    def is_closed(self, tol: float = 1e-12) -> bool:
        return max(abs(x - y) for x, y in zip(self.start, self.end)) <= tol

    def reversed(self) -> Path:
        out = []
        for seg in reversed(self.segments):
            if isinstance(seg, LineSegment):
                out.append(LineSegment(seg.end, seg.start))
            else:
                out.append(CircleSegment(
                    coordinate=seg.coordinate, center=seg.center,
                    radius=seg.radius, turns=-seg.turns, fixed=seg.fixed,
                    start_angle=seg.start_angle + 2 * math.pi * seg.turns))
        return Path(tuple(out), samples_hint=self.samples_hint)

    def to_json(self) -> dict:
        return {"samples_hint": self.samples_hint,
                "segments": [seg.to_json() for seg in self.segments]}

    @classmethod
    def from_json(cls, data: dict | list) -> Path:
        if isinstance(data, dict):
            raw = data.get("segments", [])
            hint = data.get("samples_hint", 64)
        else:
            raw, hint = data, 64
        segs: list[Segment] = []
        for item in raw:
            if item["type"] == "segment":
                segs.append(LineSegment(
                    tuple(_cparse(v) for v in item["from"]),
                    tuple(_cparse(v) for v in item["to"])))
            elif item["type"] == "circle":
                segs.append(CircleSegment(
                    coordinate=item["coordinate"],
                    center=_cparse(item["center"]),
                    radius=float(item["radius"]),
                    turns=float(item["turns"]),
                    start_angle=float(item.get("start_angle", 0.0)),
                    fixed={k: _cparse(v) for k, v in item["fixed"].items()}))
            else:
                raise ValueError(f"unknown segment type {item['type']!r}")
        return cls(tuple(segs), samples_hint=hint)


def check_clearance(path: Path, min_clearance: float = 1e-3) -> float:
    """Sample the path and require every point to keep the relative divisor
    clearance; returns the worst clearance seen."""
    worst = float("inf")
    for seg in path.segments:
        for i in range(path.samples_hint + 1):
            s = i / path.samples_hint
            c = divisor_clearance(seg.at(s))
            worst = min(worst, c)
    if worst < min_clearance:
        raise ClearanceError(
            f"path clearance {worst:.3e} below the configured minimum {min_clearance:.3e}")
    return worst


# -- compiled connection ---------------------------------------------------------


class CompiledConnection:
    """Term-list compilation of the three connection matrices."""

    def __init__(self, system: PfaffianSystem):
        self.system = system
        self.size = system.size
        self.compiled = {
            var: [[_compile_ratfunc(e) for e in row] for row in system.matrix(var)]
            for var in "pqr"
        }
        self.max_exp = 0
        for var in "pqr":
            for row in self.compiled[var]:
                for num_terms, den_terms in row:
                    for terms in (num_terms, den_terms):
                        for a, b, c, _ in terms:
                            self.max_exp = max(self.max_exp, a, b, c)

    def _powers(self, point: Point) -> tuple[list[complex], ...]:
        tables = []
        for z in point:
            row = [1.0 + 0j]
            for _ in range(self.max_exp):
                row.append(row[-1] * z)
            tables.append(row)
        return tuple(tables)

    def matrix(self, var: str, point: Point) -> np.ndarray:
        pw = self._powers(point)
        n = self.size
        out = np.zeros((n, n), dtype=complex)
        for i in range(n):
            for j in range(n):
                num_terms, den_terms = self.compiled[var][i][j]
                if not num_terms:
                    continue
                num = sum(c * pw[0][a] * pw[1][b] * pw[2][cc] for a, b, cc, c in num_terms)
                den = sum(c * pw[0][a] * pw[1][b] * pw[2][cc] for a, b, cc, c in den_terms)
                if den == 0:
                    raise TransportError(f"connection pole hit at {point}")
                out[i, j] = num / den
        return out

    def directional(self, point: Point, velocity: Point) -> np.ndarray:
        """A = sum over x of M_x(point) * dx/ds."""
        n = self.size
        out = np.zeros((n, n), dtype=complex)
        for var, v in zip("pqr", velocity):
            if v != 0:
                out += self.matrix(var, point) * v
        return out

    def trace_directional(self, point: Point, velocity: Point) -> complex:
        total = 0j
        for var, v in zip("pqr", velocity):
            if v == 0:
                continue
            pw = self._powers(point)
            for i in range(self.size):
                num_terms, den_terms = self.compiled[var][i][i]
                if not num_terms:
                    continue
                num = sum(c * pw[0][a] * pw[1][b] * pw[2][cc] for a, b, cc, c in num_terms)
                den = sum(c * pw[0][a] * pw[1][b] * pw[2][cc] for a, b, cc, c in den_terms)
                total += v * num / den
        return total


def _compile_ratfunc(f: RatFunc):
    if f.is_zero:
        return ([], [(0, 0, 0, 1.0 + 0j)])
    num = [(a, b, c, complex(v)) for (a, b, c), v in f.num.terms()]
    den = [(a, b, c, complex(v)) for (a, b, c), v in f.den.terms()]
    return (num, den)


# -- Dormand-Prince 5(4) ----------------------------------------------------------

_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_DP_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40)
_DP_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)


def _rk45_segment(f: Callable[[float, np.ndarray], np.ndarray], y0: np.ndarray,
                  tol: float, stats: dict) -> np.ndarray:
    """Integrate y' = f(s, y) from s=0 to s=1 with PI-controlled steps."""
    atol = rtol = tol
    s = 0.0
    y = y0
    h = 0.05
    err_prev = 1.0
    k1 = f(s, y)
    min_h = 1e-13
    while s < 1.0:
        h = min(h, 1.0 - s)
        if h < min_h:
            raise TransportError(f"step size collapse at s={s:.6f}")
        ks = [k1]
        for stage in range(1, 6):
            yi = y + h * sum(a * k for a, k in zip(_DP_A[stage], ks))
            ks.append(f(s + _DP_C[stage] * h, yi))
        y5 = y + h * sum(b * k for b, k in zip(_DP_B5[:6], ks))
        k7 = f(s + h, y5)
        ks.append(k7)
        err_vec = h * sum((b5 - b4) * k for b5, b4, k in zip(_DP_B5, _DP_B4, ks))
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y5))
        err = float(np.sqrt(np.mean((np.abs(err_vec) / scale) ** 2)))
        if err <= 1.0:
            s += h
            y = y5
            k1 = k7  # first-same-as-last
            stats["steps"] = stats.get("steps", 0) + 1
            stats["max_local_error"] = max(
                stats.get("max_local_error", 0.0), float(np.max(np.abs(err_vec))))
            factor = 0.9 * (err + 1e-16) ** -0.12 * err_prev ** 0.06
            err_prev = err + 1e-16
        else:
            stats["rejects"] = stats.get("rejects", 0) + 1
            factor = max(0.2, 0.9 * err ** -0.2)
        h *= min(5.0, max(0.2, factor))
    return y


@dataclass
class TransportResult:
    final_state: np.ndarray | None
    fundamental_matrix: np.ndarray | None
    step_count: int
    max_local_error: float
    clearance: float

    def condition_number(self) -> float | None:
        if self.fundamental_matrix is None:
            return None
        return float(np.linalg.cond(self.fundamental_matrix))


def transport(system: PfaffianSystem | CompiledConnection, path: Path,
              y0: np.ndarray | None = None, tol: float = 1e-10,
              min_clearance: float = 1e-3) -> TransportResult:
    """Transport a state vector (or the identity, giving the fundamental
    matrix) along the path."""
    conn = system if isinstance(system, CompiledConnection) else CompiledConnection(system)
    clearance = check_clearance(path, min_clearance)
    n = conn.size
    matrix_mode = y0 is None
    state = np.eye(n, dtype=complex) if matrix_mode else np.asarray(y0, dtype=complex)
    stats: dict = {}
    for seg in path.segments:
        def rhs(s: float, y: np.ndarray, seg=seg) -> np.ndarray:
            a = conn.directional(seg.at(s), seg.velocity(s))
            return a @ y
        state = _rk45_segment(rhs, state, tol, stats)
    return TransportResult(
        final_state=None if matrix_mode else state,
        fundamental_matrix=state if matrix_mode else None,
        step_count=stats.get("steps", 0),
        max_local_error=stats.get("max_local_error", 0.0),
        clearance=clearance,
    )


def trace_integral(system: PfaffianSystem | CompiledConnection, path: Path,
                   order: int = 48, levels: int = 3) -> complex:
    """Contour integral of tr Omega by composite Gauss-Legendre quadrature,
    refined until stable (independent of the ODE stepper)."""
    conn = system if isinstance(system, CompiledConnection) else CompiledConnection(system)
    previous = None
    pieces = 1
    for _ in range(levels + 1):
        total = 0j
        nodes, weights = np.polynomial.legendre.leggauss(order)
        for seg in path.segments:
            for k in range(pieces):
                lo = k / pieces
                hi = (k + 1) / pieces
                mid = (lo + hi) / 2
                half = (hi - lo) / 2
                for x, w in zip(nodes, weights):
                    s = mid + half * x
                    total += w * half * conn.trace_directional(seg.at(s), seg.velocity(s))
        if previous is not None and abs(total - previous) < 1e-12 * max(1.0, abs(total)):
            return total
        previous = total
        pieces *= 2
    return previous


@dataclass
class MonodromyResult:
    matrix: np.ndarray
    eigenvalues: np.ndarray
    determinant: complex
    trace_integral_det: complex
    step_count: int
    max_local_error: float

    @property
    def det_consistency(self) -> float:
        """Relative departure of det M from exp(contour tr Omega)."""
        expected = self.trace_integral_det
        return abs(self.determinant - expected) / max(abs(expected), 1e-300)


def monodromy(system: PfaffianSystem | CompiledConnection, loop: Path,
              tol: float = 1e-10, min_clearance: float = 1e-3) -> MonodromyResult:
    if not loop.is_closed(1e-9):
        raise ValueError("monodromy needs a closed loop")
    conn = system if isinstance(system, CompiledConnection) else CompiledConnection(system)
    result = transport(conn, loop, y0=None, tol=tol, min_clearance=min_clearance)
    m = result.fundamental_matrix
    det = complex(np.linalg.det(m))
    tr = trace_integral(conn, loop)
    return MonodromyResult(
        matrix=m,
        eigenvalues=np.linalg.eigvals(m),
        determinant=det,
        trace_integral_det=cmath.exp(tr),
        step_count=result.step_count,
        max_local_error=result.max_local_error,
    )


# -- series initial data -----------------------------------------------------------


def initial_state(system: PfaffianSystem, point: Point, cap: int = 16,
                  tail_tol: float = 1e-20,
                  u: TruncatedSeries | None = None) -> np.ndarray:
    """The local solution vector (basis_j u) at a small point, from the
    truncated period series; truncation tails must clear tail_tol."""
    u = u or period_series(cap)
    values = []
    for w in system.basis:
        image = u.theta_scale(w)
        val, tail = evaluate_series(image, point)
        if tail > tail_tol:
            raise ValueError(
                f"series tail {tail:.3e} above tolerance {tail_tol:.3e} for basis {w}")
        values.append(val)
    return np.array(values, dtype=complex)


def series_vs_transport(system: PfaffianSystem, point_a: Point, point_b: Point,
                        cap: int = 16, tol: float = 1e-10,
                        min_clearance: float = 1e-4) -> float:
    """Transport the series-built state from A to B along the straight
    segment and compare with the series built directly at B (max norm)."""
    u = period_series(cap)
    state_a = initial_state(system, point_a, cap=cap, u=u)
    state_b = initial_state(system, point_b, cap=cap, u=u)
    path = Path((LineSegment(point_a, point_b),))
    moved = transport(system, path, y0=state_a, tol=tol, min_clearance=min_clearance)
    return float(np.max(np.abs(moved.final_state - state_b)))
