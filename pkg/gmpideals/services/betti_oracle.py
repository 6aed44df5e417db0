"""
Números de Betti graduados a partir de la homología de los complejos de
Koszul superiores, uno por cada multigrado del retículo de mcm del ideal.

β_{i,a}(I) = dim H̃_{i-1}(K^a(I)), donde K^a(I) tiene como caras los
subconjuntos b del soporte de a con x^{a-b} ∈ I. Los rangos se calculan en
los racionales con sympy, sin aritmética de punto flotante.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Mapping, Optional, Set, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from gmpideals.core.errors import InvalidArgumentError, ResourceBoundError, ZeroIdealError
from gmpideals.core.settings import get_settings
from gmpideals.services.ideal_algebra import MonomialIdeal, contains_monomial, is_equigenerated
from gmpideals.services.ring_core import Monomial

logger = logging.getLogger(__name__)

Face = Tuple[int, ...]


@dataclass(frozen=True)
class BettiTable:
    entries: Mapping[Tuple[int, int], int] = field(default_factory=dict)
    convention: str = "ideal"  # "ideal" | "quotient"

    @classmethod
    def from_entries(cls, entries: Mapping[Tuple[int, int], int], convention: str = "ideal") -> "BettiTable":
        if convention not in ("ideal", "quotient"):
            raise InvalidArgumentError(f"Convención desconocida '{convention}'")
        for key, rank in entries.items():
            if rank < 0:
                raise InvalidArgumentError(f"Rango negativo en β_{key}")
        clean = {key: rank for key, rank in sorted(entries.items()) if rank > 0}
        return cls(clean, convention)

    def rank(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    @property
    def is_empty(self) -> bool:
        return not self.entries

    @property
    def pd(self) -> int:
        if self.is_empty:
            raise InvalidArgumentError("La tabla de Betti está vacía")
        return max(i for i, _ in self.entries)

    @property
    def reg(self) -> int:
        if self.is_empty:
            raise InvalidArgumentError("La tabla de Betti está vacía")
        return max(j - i for i, j in self.entries)

    def total(self, i: int) -> int:
        return sum(rank for (k, _), rank in self.entries.items() if k == i)

    def to_quotient(self) -> "BettiTable":
        if self.convention == "quotient":
            return self
        shifted = {(i + 1, j): rank for (i, j), rank in self.entries.items()}
        shifted[(0, 0)] = 1
        return BettiTable.from_entries(shifted, "quotient")

    def as_rows(self) -> List[Dict[str, int]]:
        return [{"i": i, "j": j, "rank": rank} for (i, j), rank in self.entries.items()]

    def render_text(self) -> str:
        """Tabla triangular: columnas por índice homológico, filas por j - i."""
        if self.is_empty:
            return "(tabla vacía)"
        cols = range(0, self.pd + 1)
        rows = range(min(j - i for i, j in self.entries), self.reg + 1)
        cells = [["total:"] + [str(self.total(i)) for i in cols]]
        for r in rows:
            cells.append([f"{r}:"] + [str(self.rank(i, i + r) or ".") for i in cols])
        header = [""] + [str(i) for i in cols]
        widths = [max(len(row[c]) for row in [header] + cells) for c in range(len(header))]
        lines = []
        for row in [header] + cells:
            first = row[0].rjust(widths[0])
            rest = [cell.rjust(widths[c + 1]) for c, cell in enumerate(row[1:])]
            lines.append(" ".join([first] + rest).rstrip())
        return "\n".join(lines)


@dataclass(frozen=True)
class SimplicialComplexRepr:
    vertices: Tuple[int, ...]
    faces: FrozenSet[Face]

    @property
    def is_void(self) -> bool:
        return not self.faces

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.faces), default=0) - 1

    def faces_of_size(self, k: int) -> List[Face]:
        return sorted(f for f in self.faces if len(f) == k)


def lcm_lattice_degrees(I: MonomialIdeal, bound: Optional[int] = None) -> Set[Tuple[int, ...]]:
    if I.is_zero:
        raise ZeroIdealError("lcm_lattice_degrees: el ideal cero no tiene generadores")
    bound = bound if bound is not None else get_settings().LATTICE_BOUND
    atoms = [g.exponents for g in I.gens]
    lattice = set(atoms)
    frontier = set(atoms)
    while frontier:
        fresh = set()
        for a in frontier:
            for g in atoms:
                join = tuple(max(x, y) for x, y in zip(a, g))
                if join not in lattice:
                    fresh.add(join)
        lattice |= fresh
        if len(lattice) > bound:
            raise ResourceBoundError(
                f"El retículo de mcm supera la cota: más de {bound} multigrados (ya hay {len(lattice)})"
            )
        frontier = fresh
    logger.debug("lcm_lattice_degrees: %d multigrados", len(lattice))
    return lattice


def upper_koszul(I: MonomialIdeal, a: Tuple[int, ...]) -> SimplicialComplexRepr:
    if any(e < 0 for e in a):
        raise InvalidArgumentError("El multigrado debe tener componentes >= 0")
    vertices = tuple(k for k, e in enumerate(a) if e > 0)

    def is_face(face: Face) -> bool:
        exps = list(a)
        for k in face:
            exps[k] -= 1
        return contains_monomial(I, Monomial(I.context, tuple(exps)))

    faces: Set[Face] = set()
    level: List[Face] = [()] if is_face(()) else []
    while level:
        faces.update(level)
        nxt = []
        for face in level:
            start = face[-1] if face else -1
            for v in vertices:
                if v > start and is_face(face + (v,)):
                    nxt.append(face + (v,))
        level = nxt
    return SimplicialComplexRepr(vertices, frozenset(faces))


def _boundary_rank(rows: List[Face], cols: List[Face]) -> int:
    """Rango de ∂: C(cols) -> C(rows), con cols de tamaño k y rows de tamaño k-1."""
    if not rows or not cols:
        return 0
    index = {f: r for r, f in enumerate(rows)}
    matrix = [[QQ(0)] * len(cols) for _ in rows]
    for c, face in enumerate(cols):
        for pos in range(len(face)):
            sign = 1 if pos % 2 == 0 else -1
            matrix[index[face[:pos] + face[pos + 1:]]][c] = QQ(sign)
    return DomainMatrix(matrix, (len(rows), len(cols)), QQ).rank()


def reduced_homology_ranks(c: SimplicialComplexRepr) -> List[int]:
    """Posición d+1 = rango de H̃_d, para d = -1 .. dim(c). El complejo vacío da []."""
    if c.is_void:
        return []
    top = c.dimension + 1
    by_size = [c.faces_of_size(k) for k in range(top + 1)]
    # ranks[k] = rango del borde que sale de las caras de tamaño k
    ranks = [0] + [_boundary_rank(by_size[k - 1], by_size[k]) for k in range(1, top + 1)] + [0]
    return [len(by_size[k]) - ranks[k] - ranks[k + 1] for k in range(top + 1)]


def euler_characteristic(c: SimplicialComplexRepr) -> int:
    """Característica de Euler reducida: suma de (-1)^dim sobre todas las caras."""
    return sum((-1) ** (len(f) + 1) for f in c.faces)


def multigraded_betti(I: MonomialIdeal, lattice_bound: Optional[int] = None) -> Dict[Tuple[int, Tuple[int, ...]], int]:
    result: Dict[Tuple[int, Tuple[int, ...]], int] = {}
    for a in sorted(lcm_lattice_degrees(I, lattice_bound)):
        for d_plus_one, rank in enumerate(reduced_homology_ranks(upper_koszul(I, a))):
            if rank:
                result[(d_plus_one, a)] = rank
    return result


def betti_table(I: MonomialIdeal, lattice_bound: Optional[int] = None) -> BettiTable:
    if I.is_zero:
        raise ZeroIdealError("betti_table: el ideal cero no tiene resolución")
    entries: Dict[Tuple[int, int], int] = {}
    for (i, a), rank in multigraded_betti(I, lattice_bound).items():
        key = (i, sum(a))
        entries[key] = entries.get(key, 0) + rank
    table = BettiTable.from_entries(entries)
    logger.info("betti_table: pd(I)=%d reg(I)=%d", table.pd, table.reg)
    return table


def _quotient_table(I: MonomialIdeal, lattice_bound: Optional[int]) -> BettiTable:
    if I.is_unit:
        raise InvalidArgumentError("El cociente por el ideal unidad es el módulo cero")
    return betti_table(I, lattice_bound).to_quotient()


def pd_of_quotient(I: MonomialIdeal, lattice_bound: Optional[int] = None) -> int:
    return _quotient_table(I, lattice_bound).pd


def reg_of_quotient(I: MonomialIdeal, lattice_bound: Optional[int] = None) -> int:
    return _quotient_table(I, lattice_bound).reg


def pd_of_ideal(I: MonomialIdeal, lattice_bound: Optional[int] = None) -> int:
    return betti_table(I, lattice_bound).pd


def reg_of_ideal(I: MonomialIdeal, lattice_bound: Optional[int] = None) -> int:
    return betti_table(I, lattice_bound).reg


def has_linear_resolution(I: MonomialIdeal, lattice_bound: Optional[int] = None) -> bool:
    d = is_equigenerated(I)
    if d is None:
        return False
    return all(j == i + d for i, j in betti_table(I, lattice_bound).entries)
