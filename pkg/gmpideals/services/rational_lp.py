"""
Factibilidad lineal exacta en los racionales.

Decide si existe λ >= 0 con A_eq·λ = b_eq y A_ub·λ <= b_ub mediante la
fase 1 del símplex con la regla de Bland (sin ciclos) y Fraction en todas
las operaciones.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from gmpideals.core.errors import InvalidArgumentError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    point: Optional[Tuple[Fraction, ...]] = None
    pivots: int = 0


class PhaseOneTableau:
    """Tabla de la fase 1: minimizar la suma de las variables artificiales."""

    def __init__(self, rows: List[List[Fraction]], rhs: List[Fraction], n_structural: int):
        self.m = len(rows)
        self.n_structural = n_structural
        self.n = len(rows[0]) if rows else n_structural
        # una artificial por fila, al final
        self.A = [row + [Fraction(int(k == i)) for k in range(self.m)] for i, row in enumerate(rows)]
        self.b = list(rhs)
        self.basis = [self.n + i for i in range(self.m)]
        total = self.n + self.m
        self.cost = [-sum((self.A[i][j] for i in range(self.m)), Fraction(0)) for j in range(self.n)]
        self.cost += [Fraction(0)] * self.m
        self.value = sum(self.b, Fraction(0))
        self.width = total
        self.pivots = 0

    def pivot(self, i: int, j: int) -> None:
        piv = self.A[i][j]
        self.A[i] = [v / piv for v in self.A[i]]
        self.b[i] /= piv
        for k in range(self.m):
            if k != i and self.A[k][j] != 0:
                f = self.A[k][j]
                self.A[k] = [a - f * p for a, p in zip(self.A[k], self.A[i])]
                self.b[k] -= f * self.b[i]
        f = self.cost[j]
        if f != 0:
            self.cost = [c - f * p for c, p in zip(self.cost, self.A[i])]
            self.value += f * self.b[i]
        self.basis[i] = j
        self.pivots += 1

    def entering(self) -> Optional[int]:
        return next((j for j in range(self.width) if self.cost[j] < 0), None)

    def leaving(self, j: int) -> Optional[int]:
        best = None
        for i in range(self.m):
            if self.A[i][j] > 0:
                ratio = self.b[i] / self.A[i][j]
                key = (ratio, self.basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        return None if best is None else best[1]

    def solve(self) -> None:
        while True:
            j = self.entering()
            if j is None:
                return
            i = self.leaving(j)
            if i is None:
                # la fase 1 está acotada inferiormente por 0; no debería ocurrir
                raise InvalidArgumentError("Fase 1 no acotada: tabla inconsistente")
            self.pivot(i, j)

    def structural_point(self) -> Tuple[Fraction, ...]:
        values = [Fraction(0)] * self.n_structural
        for i, var in enumerate(self.basis):
            if var < self.n_structural:
                values[var] = self.b[i]
        return tuple(values)


def _as_fractions(rows: Sequence[Sequence], width: int) -> List[List[Fraction]]:
    out = []
    for row in rows:
        if len(row) != width:
            raise InvalidArgumentError(f"Fila de longitud {len(row)}, se esperaban {width}")
        out.append([Fraction(v) for v in row])
    return out


def find_feasible_point(
    a_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    a_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    n: Optional[int] = None,
) -> FeasibilityResult:
    """Busca λ >= 0 (n componentes) con A_eq·λ = b_eq y A_ub·λ <= b_ub."""
    if n is None:
        first = next(iter(list(a_eq) + list(a_ub)), None)
        if first is None:
            raise InvalidArgumentError("Sin restricciones no se puede deducir la dimensión")
        n = len(first)
    if len(a_eq) != len(b_eq) or len(a_ub) != len(b_ub):
        raise InvalidArgumentError("Número de filas y de términos independientes distinto")
    eq = _as_fractions(a_eq, n)
    ub = _as_fractions(a_ub, n)
    n_slack = len(ub)

    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    for row, b in zip(eq, b_eq):
        rows.append(row + [Fraction(0)] * n_slack)
        rhs.append(Fraction(b))
    for s, (row, b) in enumerate(zip(ub, b_ub)):
        rows.append(row + [Fraction(int(k == s)) for k in range(n_slack)])
        rhs.append(Fraction(b))
    if not rows:
        return FeasibilityResult(True, tuple(Fraction(0) for _ in range(n)))
    for i, b in enumerate(rhs):
        if b < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -b

    tableau = PhaseOneTableau(rows, rhs, n)
    tableau.solve()
    feasible = tableau.value == 0
    logger.debug("find_feasible_point: %d pivotes, factible=%s", tableau.pivots, feasible)
    if not feasible:
        return FeasibilityResult(False, None, tableau.pivots)
    return FeasibilityResult(True, tableau.structural_point(), tableau.pivots)
