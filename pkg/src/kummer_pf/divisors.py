"""The named divisor polynomials of the parameter space.

d2 and d3 are (up to sign) the discriminants of the two cubics

    R2(t) = t^3 + (p-1) t^2 + q t + r,      R3(t) = t^3 + p t^2 + q t + r,

whose vanishing collapses fibre singularities; together with the three
coordinate hyperplanes they cut out the singular locus of the rank-5
connection.  d1 is the extra factor that shows up in the denominators of
the theta_p^2-basis connection but moves away under a change of basis, so
it is an apparent singularity only.
"""

from __future__ import annotations

from .polynomials import MultiPoly

_P = MultiPoly.variable("p")
_Q = MultiPoly.variable("q")
_R = MultiPoly.variable("r")

D1 = (
    -(_Q**4) + 2 * _P * _Q**4 - 4 * _Q**2 * _R + 15 * _P * _Q**2 * _R
    - 15 * _P**2 * _Q**2 * _R + 6 * _Q**3 * _R + 12 * _P * _R**2
    - 36 * _P**2 * _R**2 + 24 * _P**3 * _R**2 - 81 * _R**3
)

D2 = (
    -(_Q**2) + 2 * _P * _Q**2 - _P**2 * _Q**2 + 4 * _Q**3 - 4 * _R
    + 12 * _P * _R - 12 * _P**2 * _R + 4 * _P**3 * _R + 18 * _Q * _R
    - 18 * _P * _Q * _R + 27 * _R**2
)

D3 = -(_P**2) * _Q**2 + 4 * _Q**3 + 4 * _P**3 * _R - 18 * _P * _Q * _R + 27 * _R**2

CANDIDATE_DIVISORS: dict[str, MultiPoly] = {
    "p": _P,
    "q": _Q,
    "r": _R,
    "d1": D1,
    "d2": D2,
    "d3": D3,
}

# The true singular divisors (d1 excluded: apparent only).
SINGULAR_DIVISORS: dict[str, MultiPoly] = {
    "p": _P,
    "q": _Q,
    "r": _R,
    "d2": D2,
    "d3": D3,
}
