"""First-order closure of the canonical system: the Pfaffian connection.

Given the second-order annihilators, every theta monomial of order <= 3 is
reduced, modulo the left ideal they generate, to a rational-function
combination of a chosen basis of theta monomials.  The reduction pool is
the relations themselves plus every composition theta_g . R_i; a single
fraction-free elimination over Q[p,q,r] then determines all reductions at
once.  When the chosen basis closes, the theta actions assemble into
matrices N_x with

    theta_x (basis_j u) = sum_k N_x[j][k] (basis_k u),

and M_x = N_x / x gives the connection d(phi) = (M_p dp + M_q dq + M_r dr) phi
on phi = (basis_j u).  A rank witness is constructive: the five-element
basis {1, tp, tq, tr, tp^2} closes for the full system but not for the
four toric relations alone, while the six-element basis {1, tp, tq, tr,
tp^2, tq^2} closes for the toric relations.

Integrability (d Omega = Omega ^ Omega) is certified as three exact
polynomial matrix identities after clearing common denominators, with no
floating point and no rational-function gcds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .divisors import CANDIDATE_DIVISORS
from .linalg import solve_poly_rows
from .operators import CanonicalSystem, ThetaOperator, build_canonical_system
from .polynomials import MultiPoly, RatFunc, poly_lcm
from .series import TruncatedSeries, period_series

ThetaExps = tuple[int, int, int]

GENERATORS: tuple[ThetaExps, ...] = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
VAR_OF_GENERATOR = {(1, 0, 0): "p", (0, 1, 0): "q", (0, 0, 1): "r"}

ORDER2: tuple[ThetaExps, ...] = (
    (2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1),
)

BASIS_P2: tuple[ThetaExps, ...] = ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (2, 0, 0))
BASIS_Q2: tuple[ThetaExps, ...] = ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 2, 0))
BASIS_RANK6: tuple[ThetaExps, ...] = (
    (0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (2, 0, 0), (0, 2, 0),
)

BASIS_BY_NAME = {"p2": BASIS_P2, "q2": BASIS_Q2, "p2q2": BASIS_RANK6}


class BasisClosureError(Exception):
    """The requested basis does not close to a first-order system."""

    def __init__(self, basis: Sequence[ThetaExps], undetermined: set[ThetaExps]):
        self.basis = tuple(basis)
        self.undetermined = undetermined
        super().__init__(
            f"basis {list(basis)} does not close; "
            f"undetermined monomials: {sorted(undetermined)}")


class SingularEliminationError(Exception):
    """The order-2 elimination matrix is singular over the function field."""


@dataclass(frozen=True)
class PfaffianSystem:
    """Connection matrices in the d/dx convention: rows expand d/dx of the
    basis entries, so theta_x action is x * M_x."""

    basis: tuple[ThetaExps, ...]
    mp: tuple[tuple[RatFunc, ...], ...]
    mq: tuple[tuple[RatFunc, ...], ...]
    mr: tuple[tuple[RatFunc, ...], ...]

    def matrix(self, var: str) -> tuple[tuple[RatFunc, ...], ...]:
        return {"p": self.mp, "q": self.mq, "r": self.mr}[var]

    @property
    def size(self) -> int:
        return len(self.basis)

    def theta_matrix(self, var: str) -> list[list[RatFunc]]:
        """N_x = x * M_x: the theta_x action on the basis."""
        x = RatFunc.from_poly(MultiPoly.variable(var))
        return [[x * entry for entry in row] for row in self.matrix(var)]

    def cleared(self, var: str) -> tuple[list[list[MultiPoly]], MultiPoly]:
        """(N, D) with M_x = N / D entrywise, D the lcm of the denominators."""
        m = self.matrix(var)
        den = MultiPoly.one()
        for row in m:
            for entry in row:
                den = poly_lcm(den, entry.den)
        cleared = [
            [entry.num * den.exact_div(entry.den) for entry in row]
            for row in m
        ]
        return cleared, den

    def to_json(self) -> dict:
        return {
            "basis": [list(b) for b in self.basis],
            "Mp": [e.to_text() for row in self.mp for e in row],
            "Mq": [e.to_text() for row in self.mq for e in row],
            "Mr": [e.to_text() for row in self.mr for e in row],
        }

    @classmethod
    def from_json(cls, data: dict) -> PfaffianSystem:
        basis = tuple(tuple(b) for b in data["basis"])
        n = len(basis)

        def grid(flat: list[str]) -> tuple[tuple[RatFunc, ...], ...]:
            entries = [RatFunc.from_text(t) for t in flat]
            return tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(n))

        return cls(basis=basis, mp=grid(data["Mp"]), mq=grid(data["Mq"]),
                   mr=grid(data["Mr"]))

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=1)

    @classmethod
    def load(cls, path: str) -> PfaffianSystem:
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def _theta_monomial_op(exps: ThetaExps) -> ThetaOperator:
    return ThetaOperator.monomial(exps, 1)


def _operator_row(op: ThetaOperator, columns: Sequence[ThetaExps]) -> list[MultiPoly]:
    row = []
    covered = set()
    for exps in columns:
        row.append(op.coefficient(exps))
        covered.add(exps)
    missing = set(op.terms) - covered
    if missing:
        raise AssertionError(f"operator has monomials outside the column set: {missing}")
    return row


def reduction_pool(relations: Sequence[ThetaOperator]) -> list[ThetaOperator]:
    """The relations and all first-order compositions theta_g . R_i."""
    pool = list(relations)
    for g in GENERATORS:
        theta_g = _theta_monomial_op(g)
        for rel in relations:
            pool.append(theta_g.compose(rel))
    return pool


def reduce_monomials(relations: Sequence[ThetaOperator], basis: Sequence[ThetaExps]
                     ) -> tuple[dict[ThetaExps, dict[ThetaExps, RatFunc]], set[ThetaExps]]:
    """Reduce every non-basis theta monomial of order <= 3 modulo the ideal.

    Returns (reductions, undetermined): reductions[m][b] is the coefficient
    of basis monomial b in the reduction of m; undetermined collects the
    monomials the pool does not pin down (free or tainted).
    """
    pool = reduction_pool(relations)
    monomials: set[ThetaExps] = set()
    for op in pool:
        monomials.update(op.terms)
    basis_set = set(basis)
    unknown_cols = sorted(m for m in monomials if m not in basis_set)
    rhs_cols = list(basis)
    columns = unknown_cols + rhs_cols
    rows = [_operator_row(op, columns) for op in pool]
    solution = solve_poly_rows(rows, len(unknown_cols))
    if not solution.consistent:
        raise AssertionError("reduction system inconsistent: the relations are not an ideal?")
    reductions: dict[ThetaExps, dict[ThetaExps, RatFunc]] = {}
    undetermined: set[ThetaExps] = set()
    for idx, mono in enumerate(unknown_cols):
        if solution.is_determined(idx):
            expr = solution.determined[idx]
            reductions[mono] = {
                rhs_cols[k - len(unknown_cols)]: v for k, v in expr.items()
            }
        else:
            undetermined.add(mono)
    return reductions, undetermined


@dataclass(frozen=True)
class RewriteTable:
    """Order-2 rewrite rules: non-basis order-2 monomials as combinations of
    {1, tp, tq, tr} plus the kept order-2 monomial(s)."""

    kept: tuple[ThetaExps, ...]
    rules: dict[ThetaExps, dict[ThetaExps, RatFunc]]


def build_rewrite_table(system: CanonicalSystem | Sequence[ThetaOperator],
                        basis_choice: str = "p2") -> RewriteTable:
    """Solve the order-2 block alone.

    basis_choice 'p2' or 'q2' keeps one order-2 monomial and eliminates the
    other five using all five relations; 'p2q2' keeps two and eliminates
    four using only the four toric relations.
    """
    if isinstance(system, CanonicalSystem):
        relations = list(system.operators)
    else:
        relations = list(system)
    basis = BASIS_BY_NAME[basis_choice]
    if basis_choice == "p2q2":
        relations = relations[:4]
    kept = tuple(m for m in ORDER2 if m in basis)
    eliminate = [m for m in ORDER2 if m not in basis]
    if len(relations) != len(eliminate):
        raise SingularEliminationError(
            f"{len(relations)} relations cannot eliminate {len(eliminate)} monomials")
    columns = eliminate + [m for m in basis]
    rows = [_operator_row(op, columns) for op in relations]
    solution = solve_poly_rows(rows, len(eliminate))
    undet = [m for i, m in enumerate(eliminate) if not solution.is_determined(i)]
    if undet:
        raise SingularEliminationError(
            f"order-2 elimination matrix singular; undetermined: {undet}")
    rules = {}
    for i, mono in enumerate(eliminate):
        rules[mono] = {
            columns[k]: v for k, v in solution.determined[i].items()
        }
    return RewriteTable(kept=kept, rules=rules)


def reduce_operator_by_table(op: ThetaOperator, table: RewriteTable,
                             basis: Sequence[ThetaExps]) -> dict[ThetaExps, RatFunc]:
    """Reduce an order-<=2 operator to a basis vector using the table.
    The result must be interpreted modulo the ideal."""
    out: dict[ThetaExps, RatFunc] = {}
    for exps, coeff in op.terms.items():
        if exps in table.rules:
            for b, v in table.rules[exps].items():
                out[b] = out.get(b, RatFunc.zero()) + RatFunc.from_poly(coeff) * v
        elif exps in basis:
            out[exps] = out.get(exps, RatFunc.zero()) + RatFunc.from_poly(coeff)
        else:
            raise ValueError(f"monomial {exps} is neither rewritable nor basic")
    return {b: v for b, v in out.items() if not v.is_zero}


def derive_pfaffian(relations: Sequence[ThetaOperator] | CanonicalSystem,
                    basis: Sequence[ThetaExps] = BASIS_P2) -> PfaffianSystem:
    """Derive the connection on the given basis; raises BasisClosureError
    when the basis does not close (the constructive rank witness)."""
    if isinstance(relations, CanonicalSystem):
        relations = list(relations.operators)
    basis = tuple(basis)
    reductions, undetermined = reduce_monomials(relations, basis)
    needed: set[ThetaExps] = set()
    for g in GENERATORS:
        for w in basis:
            target = (w[0] + g[0], w[1] + g[1], w[2] + g[2])
            if target not in basis:
                needed.add(target)
    missing = {m for m in needed if m not in reductions}
    if missing:
        raise BasisClosureError(basis, missing | (undetermined & needed))
    matrices = {}
    for g in GENERATORS:
        var = VAR_OF_GENERATOR[g]
        x = RatFunc.from_poly(MultiPoly.variable(var))
        rows = []
        for w in basis:
            target = (w[0] + g[0], w[1] + g[1], w[2] + g[2])
            if target in basis:
                expr = {target: RatFunc.one()}
            else:
                expr = reductions[target]
            rows.append(tuple(expr.get(b, RatFunc.zero()) / x for b in basis))
        matrices[var] = tuple(rows)
    return PfaffianSystem(basis=basis, mp=matrices["p"], mq=matrices["q"],
                          mr=matrices["r"])


# -- integrability ------------------------------------------------------------


def _mat_mul(a: list[list[MultiPoly]], b: list[list[MultiPoly]]) -> list[list[MultiPoly]]:
    n = len(a)
    return [
        [sum((a[i][k] * b[k][j] for k in range(n)), MultiPoly.zero()) for j in range(n)]
        for i in range(n)
    ]


def _mat_scale(a: list[list[MultiPoly]], s: MultiPoly) -> list[list[MultiPoly]]:
    return [[e * s for e in row] for row in a]


def _mat_sub(a: list[list[MultiPoly]], b: list[list[MultiPoly]]) -> list[list[MultiPoly]]:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mat_derivative(a: list[list[MultiPoly]], var: str) -> list[list[MultiPoly]]:
    return [[e.derivative(var) for e in row] for row in a]


def check_integrability(system: PfaffianSystem) -> int:
    """Verify the three commutator identities exactly.

    Returns the residual: the number of nonzero polynomial entries across
    the three cleared matrix identities (0 means integrable).
    """
    cleared = {v: system.cleared(v) for v in "pqr"}
    residual = 0
    for x, y in (("p", "q"), ("q", "r"), ("r", "p")):
        nx, dx = cleared[x]
        ny, dy = cleared[y]
        # d/dx (Ny/Dy) - d/dy (Nx/Dx) = [Nx/Dx, Ny/Dy], cleared by Dx^2 Dy^2
        lhs_first = _mat_scale(
            _mat_sub(_mat_scale(_mat_derivative(ny, x), dy),
                     _mat_scale(ny, dy.derivative(x))),
            dx * dx)
        lhs_second = _mat_scale(
            _mat_sub(_mat_scale(_mat_derivative(nx, y), dx),
                     _mat_scale(nx, dx.derivative(y))),
            dy * dy)
        commutator = _mat_scale(
            _mat_sub(_mat_mul(nx, ny), _mat_mul(ny, nx)), dx * dy)
        diff = _mat_sub(_mat_sub(lhs_first, lhs_second), commutator)
        residual += sum(1 for row in diff for e in row if not e.is_zero)
    return residual


# -- singular locus ------------------------------------------------------------


@dataclass
class SingularReport:
    occurring: set[str]
    leftovers: list[tuple[str, int, int, MultiPoly]]

    @property
    def complete(self) -> bool:
        return not self.leftovers


def singular_factors(system: PfaffianSystem,
                     candidates: dict[str, MultiPoly] | None = None,
                     require_complete: bool = True) -> SingularReport:
    """Trial-divide every entry denominator by the candidate divisors.

    With require_complete, a cofactor that is not constant after removing
    all candidate powers is a hard failure; otherwise it is recorded in the
    report (used for alternate bases, where a new factor is expected)."""
    candidates = candidates or CANDIDATE_DIVISORS
    occurring: set[str] = set()
    leftovers: list[tuple[str, int, int, MultiPoly]] = []
    for var in "pqr":
        m = system.matrix(var)
        for i, row in enumerate(m):
            for j, entry in enumerate(row):
                den = entry.den
                if den.is_constant():
                    continue
                for name, poly in candidates.items():
                    while poly.divides(den):
                        den = den.exact_div(poly)
                        occurring.add(name)
                        if den.is_constant():
                            break
                    if den.is_constant():
                        break
                if not den.is_constant():
                    leftovers.append((var, i + 1, j + 1, den.primitive_part()))
    if require_complete and leftovers:
        sample = leftovers[0]
        raise AssertionError(
            f"unexpected denominator factor in M_{sample[0]}[{sample[1]},{sample[2]}]: "
            f"{sample[3].to_text()}")
    return SingularReport(occurring=occurring, leftovers=leftovers)


def divisor_occurrence(system: PfaffianSystem, poly: MultiPoly) -> bool:
    """True iff the polynomial divides at least one entry denominator."""
    for var in "pqr":
        for row in system.matrix(var):
            for entry in row:
                if poly.divides(entry.den):
                    return True
    return False


# -- series cross-check --------------------------------------------------------


def series_consistency_defects(system: PfaffianSystem, cap: int,
                               u: TruncatedSeries | None = None) -> list[tuple[str, ThetaExps]]:
    """Check theta_x(W u) = sum_j N_x[W][j] (basis_j u) on the truncated
    period series, as exact polynomial-coefficient identities (denominators
    cleared row by row).  Returns the failing (direction, W) pairs."""
    u = u or period_series(cap)
    basis_images = {
        w: u.theta_scale(w) for w in system.basis
    }
    defects = []
    for var in "pqr":
        g = {"p": (1, 0, 0), "q": (0, 1, 0), "r": (0, 0, 1)}[var]
        n = system.theta_matrix(var)
        for i, w in enumerate(system.basis):
            target = (w[0] + g[0], w[1] + g[1], w[2] + g[2])
            lhs_series = u.theta_scale(target)
            den = MultiPoly.one()
            for entry in n[i]:
                den = poly_lcm(den, entry.den)
            acc = lhs_series.multiply_poly(den)
            for j, entry in enumerate(n[i]):
                if entry.is_zero:
                    continue
                cleared = entry.num * den.exact_div(entry.den)
                acc = acc - basis_images[system.basis[j]].multiply_poly(cleared)
            if not acc.is_zero:
                defects.append((var, w))
    return defects


# -- fixture comparison ---------------------------------------------------------


@dataclass
class FixtureDiff:
    """Entry-by-entry comparison of a derived system against reference
    matrices given in the theta convention (N_x = x * M_x)."""

    entries: list[tuple[str, int, int, bool, str, str]]
    convention: str = "theta-scaled rows: fixture[x][i][j] vs x * M_x[i][j]"

    @property
    def mismatches(self) -> list[tuple[str, int, int, bool, str, str]]:
        return [e for e in self.entries if not e[3]]

    def mismatches_in_rows(self, rows: Iterable[int]) -> list:
        rowset = set(rows)
        return [e for e in self.mismatches if e[1] in rowset]

    def to_json(self) -> dict:
        return {
            "convention": self.convention,
            "mismatch_count": len(self.mismatches),
            "entries": [
                {"matrix": m, "row": i, "col": j, "match": ok,
                 **({} if ok else {"derived": d, "reference": f})}
                for (m, i, j, ok, d, f) in self.entries
            ],
        }


def compare_fixture(system: PfaffianSystem,
                    fixture: dict[str, list[list[RatFunc]]]) -> FixtureDiff:
    """Compare against reference matrices; never a hard failure."""
    entries = []
    for var in "pqr":
        derived = system.theta_matrix(var)
        ref = fixture[var]
        for i in range(len(derived)):
            for j in range(len(derived)):
                ok = derived[i][j] == ref[i][j]
                entries.append((
                    var, i + 1, j + 1, ok,
                    derived[i][j].to_text(), ref[i][j].to_text(),
                ))
    return FixtureDiff(entries=entries)


def rank5_system(basis_choice: str = "p2") -> PfaffianSystem:
    """The full five-relation system on the requested five-element basis."""
    return derive_pfaffian(build_canonical_system(), BASIS_BY_NAME[basis_choice])


def rank6_system() -> PfaffianSystem:
    """The four toric relations on the six-element basis."""
    return derive_pfaffian(build_canonical_system().gkz_part(), BASIS_RANK6)
