#!/usr/bin/env python3
"""Survey monodromy around each singular divisor.

No reference values exist for these matrices, so the output is exploratory:
for loops around {p=0}, {q=0}, {r=0} and small loops linking {d2=0} and
{d3=0} at a generic basepoint, print eigenvalues, |det|, and the
Liouville-identity defect.  Group-law sanity (inverse loop gives inverse
matrix) is checked per loop.
"""

import argparse
import pathlib
import sys

import numpy as np

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from kummer_pf.divisors import D2, D3
from kummer_pf.pfaffian import rank5_system
from kummer_pf.transport import CircleSegment, CompiledConnection, Path, monodromy


def coordinate_loop(var: str, radius: float, fixed: dict) -> Path:
    return Path((CircleSegment(coordinate=var, center=0j, radius=radius,
                               turns=1.0, fixed=fixed),))


def divisor_loop(divisor, var: str, fixed: dict, radius: float) -> Path:
    """Circle in one coordinate around the divisor's root nearest the reals."""
    import numpy.polynomial.polynomial as npoly

    # collect the divisor as a polynomial in the chosen coordinate
    others = {k: v for k, v in fixed.items()}
    coeffs = {}
    for (a, b, c), coeff in divisor.terms():
        e = {"p": a, "q": b, "r": c}[var]
        rest = complex(coeff)
        for name, exp in (("p", a), ("q", b), ("r", c)):
            if name != var:
                rest *= others[name] ** exp
        coeffs[e] = coeffs.get(e, 0j) + rest
    poly = [coeffs.get(i, 0j) for i in range(max(coeffs) + 1)]
    roots = npoly.polyroots(poly)
    root = min(roots, key=abs)
    return Path((CircleSegment(coordinate=var, center=complex(root), radius=radius,
                               turns=1.0, fixed=others),))


def describe(name: str, loop: Path, conn: CompiledConnection, tol: float) -> None:
    result = monodromy(conn, loop, tol=tol)
    eigs = np.sort_complex(result.eigenvalues)
    inverse = monodromy(conn, loop.reversed(), tol=tol)
    group_defect = float(np.max(np.abs(inverse.matrix @ result.matrix - np.eye(conn.size))))
    print(f"{name}:")
    print(f"  eigenvalues   {np.round(eigs, 8)}")
    print(f"  |det|         {abs(result.determinant):.12f}")
    print(f"  liouville     {result.det_consistency:.3e}")
    print(f"  group defect  {group_defect:.3e}")
    print(f"  steps         {result.step_count}")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tol", type=float, default=1e-10)
    args = parser.parse_args()
    conn = CompiledConnection(rank5_system())
    base = {"p": 0.5 + 0j, "q": 1 / 3 + 0j, "r": 0.01 + 0j}

    describe("loop around {r=0} (p=1/2, q=1/3)", coordinate_loop(
        "r", 0.01, {"p": base["p"], "q": base["q"]}), conn, args.tol)
    describe("loop around {q=0} (p=1/2, r=1/100)", coordinate_loop(
        "q", 0.05, {"p": base["p"], "r": base["r"]}), conn, args.tol)
    describe("loop around {p=0} (q=1/3, r=1/100)", coordinate_loop(
        "p", 0.05, {"q": base["q"], "r": base["r"]}), conn, args.tol)
    describe("loop linking {d3=0} in r (p=1/2, q=1/3)", divisor_loop(
        D3, "r", {"p": base["p"], "q": base["q"]}, 0.004), conn, args.tol)
    describe("loop linking {d2=0} in r (p=1/2, q=1/3)", divisor_loop(
        D2, "r", {"p": base["p"], "q": base["q"]}, 0.004), conn, args.tol)
    return 0


if __name__ == "__main__":
    sys.exit(main())
