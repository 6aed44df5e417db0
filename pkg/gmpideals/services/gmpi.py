"""
Construcción L(I; {L_ij}) de ideales de producto mixto generalizado.

Cada generador x_1^{a_1}...x_n^{a_n} del ideal base se reemplaza por el
producto L_{1,a_1}···L_{n,a_n} en el anillo destino, y L es la suma de esos
productos. Antes de construir se exige la condición de inclusión:
L_{i,d} ⊆ L_{i,e} siempre que d >= e.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from gmpideals.core.errors import (
    IncompleteFamilyError,
    InclusionViolationError,
    InvalidArgumentError,
)
from gmpideals.services.constructors import squarefree_veronese, veronese
from gmpideals.services.ideal_algebra import (
    MonomialIdeal,
    from_generators,
    ideal_sum,
    is_equigenerated,
    is_subideal,
    power,
    product,
    unit_ideal,
    zero_ideal,
)
from gmpideals.services.ring_core import VariableContext, monomial_from_powers

logger = logging.getLogger(__name__)

BUILTIN_KINDS = ("squarefree_veronese", "veronese", "principal_power")


@dataclass(frozen=True)
class BaseIdeal:
    ideal: MonomialIdeal

    def __post_init__(self):
        for name, size in self.ideal.context.blocks:
            if size != 1:
                raise InvalidArgumentError(
                    f"El ideal base necesita bloques de una sola variable ('{name}' tiene {size})"
                )

    @property
    def context(self) -> VariableContext:
        return self.ideal.context

    @property
    def n(self) -> int:
        return self.context.total_vars

    def column_exponents(self, i: int) -> List[int]:
        """Exponentes positivos que aparecen en la variable i, sin repetir y en orden."""
        return sorted({g.exponents[i] for g in self.ideal.gens if g.exponents[i] > 0})


@dataclass(frozen=True)
class SubstitutionFamily:
    target: VariableContext
    table: Mapping[Tuple[int, int], MonomialIdeal] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "table", dict(self.table))
        for (i, d), ideal in self.table.items():
            if d < 1:
                raise InvalidArgumentError(f"Entrada ({i}, {d}): el exponente debe ser >= 1")
            if not 0 <= i < len(self.target.blocks):
                raise InvalidArgumentError(f"Entrada ({i}, {d}): bloque fuera de rango")
            if ideal.context != self.target:
                raise InvalidArgumentError(f"Entrada ({i}, {d}): el ideal no vive en el anillo destino")
            if ideal.is_zero:
                raise InvalidArgumentError(f"Entrada ({i}, {d}): el ideal sustituto no puede ser cero")
            allowed = set(self.target.block_range(self.target.block_names[i]))
            for g in ideal.gens:
                if any(k not in allowed for k in g.support):
                    raise InvalidArgumentError(
                        f"Entrada ({i}, {d}): usa variables fuera del bloque '{self.target.block_names[i]}'"
                    )

    def get(self, i: int, d: int) -> MonomialIdeal:
        if d == 0:
            return unit_ideal(self.target)
        try:
            return self.table[(i, d)]
        except KeyError:
            raise IncompleteFamilyError(
                f"Falta la entrada L_({self.target.block_names[i]},{d}) en la familia"
            ) from None


@dataclass(frozen=True)
class InclusionCheck:
    block: int
    larger: int
    smaller: int
    holds: bool


@dataclass(frozen=True)
class EquigenerationCheck:
    block: int
    exponent: int
    degree: Optional[int]

    @property
    def holds(self) -> bool:
        return self.degree == self.exponent


@dataclass(frozen=True)
class FamilyReport:
    inclusions: Tuple[InclusionCheck, ...]
    equigeneration: Tuple[EquigenerationCheck, ...] = ()

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.inclusions)

    @property
    def first_failure(self) -> Optional[InclusionCheck]:
        return next((c for c in self.inclusions if not c.holds), None)


def target_context(base: BaseIdeal, sizes: Sequence[int]) -> VariableContext:
    names = base.context.block_names
    if len(sizes) != len(names):
        raise InvalidArgumentError(f"Se esperaban {len(names)} tamaños de bloque, llegaron {len(sizes)}")
    if any(s < 1 for s in sizes):
        raise InvalidArgumentError("Los tamaños de bloque deben ser >= 1")
    return VariableContext(tuple(zip(names, sizes)))


def validate_family(base: BaseIdeal, fam: SubstitutionFamily, check_equigenerated: bool = False) -> FamilyReport:
    if len(fam.target.blocks) != base.n:
        raise InvalidArgumentError(
            f"La familia tiene {len(fam.target.blocks)} bloques y el ideal base {base.n} variables"
        )
    inclusions = []
    equigeneration = []
    for i in range(base.n):
        exps = base.column_exponents(i)
        ideals = {d: fam.get(i, d) for d in exps}
        for a, d in enumerate(exps):
            for e in exps[:a]:
                inclusions.append(InclusionCheck(i, d, e, is_subideal(ideals[d], ideals[e])))
        if check_equigenerated:
            for d in exps:
                equigeneration.append(EquigenerationCheck(i, d, is_equigenerated(ideals[d])))
    report = FamilyReport(tuple(inclusions), tuple(equigeneration))
    logger.debug(
        "validate_family: %d inclusiones, %d fallan",
        len(report.inclusions), sum(not c.holds for c in report.inclusions),
    )
    return report


def build(base: BaseIdeal, fam: SubstitutionFamily) -> MonomialIdeal:
    report = validate_family(base, fam, check_equigenerated=True)
    failure = report.first_failure
    if failure is not None:
        name = fam.target.block_names[failure.block]
        raise InclusionViolationError(
            f"No se cumple L_({name},{failure.larger}) ⊆ L_({name},{failure.smaller})",
            failure.block, failure.larger, failure.smaller,
        )
    for check in report.equigeneration:
        if not check.holds:
            logger.warning(
                "L_(%s,%d) no está generado en grado %d (grado observado: %s)",
                fam.target.block_names[check.block], check.exponent, check.exponent, check.degree,
            )

    result = zero_ideal(fam.target)
    for g in base.ideal.gens:
        term = unit_ideal(fam.target)
        for i, d in enumerate(g.exponents):
            term = product(term, fam.get(i, d))
        result = ideal_sum(result, term)
    logger.info("gmpi: %d generadores base -> %d generadores", len(base.ideal), len(result))
    return result


def builtin_family(kind: str, base: BaseIdeal, sizes: Sequence[int]) -> SubstitutionFamily:
    if kind not in BUILTIN_KINDS:
        raise InvalidArgumentError(f"Familia desconocida '{kind}' (opciones: {', '.join(BUILTIN_KINDS)})")
    target = target_context(base, sizes)
    table: Dict[Tuple[int, int], MonomialIdeal] = {}
    for i, block in enumerate(target.block_names):
        for d in base.column_exponents(i):
            if kind == "squarefree_veronese":
                if d > sizes[i]:
                    raise InvalidArgumentError(
                        f"sqV({block}, {d}): el exponente excede el tamaño del bloque ({sizes[i]})"
                    )
                table[(i, d)] = squarefree_veronese(target, block, d)
            elif kind == "veronese":
                table[(i, d)] = veronese(target, block, d)
            else:
                first = target.variable_index(block, 1)
                table[(i, d)] = from_generators(target, [monomial_from_powers(target, {first: d})])
    return SubstitutionFamily(target, table)


def build_power(base: BaseIdeal, kind: str, sizes: Sequence[int], k: int) -> MonomialIdeal:
    """L(I^k) con una familia integrada; coincide con L(I)^k si la familia es cerrada por productos."""
    powered = BaseIdeal(power(base.ideal, k))
    return build(powered, builtin_family(kind, powered, sizes))
