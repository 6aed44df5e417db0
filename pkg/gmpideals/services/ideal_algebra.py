"""
Ideales monomiales en forma canónica: generadores minimales, sin repetidos,
ordenados lex-descendente. El ideal cero es la lista vacía y el ideal unidad
es el generador 1.
"""
import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Tuple

from gmpideals.core.errors import ContextMismatchError, InvalidArgumentError
from gmpideals.services.ring_core import (
    Monomial,
    VariableContext,
    format_monomial,
    lcm_mono,
    mul,
    one,
    power_mono,
    total_degree,
    is_squarefree_mono,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MonomialIdeal:
    context: VariableContext
    gens: Tuple[Monomial, ...]

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.gens)

    def __len__(self) -> int:
        return len(self.gens)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return len(self.gens) == 1 and total_degree(self.gens[0]) == 0

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return ideal_sum(self, other)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return product(self, other)

    def __pow__(self, k: int) -> "MonomialIdeal":
        return power(self, k)

    def __contains__(self, u: Monomial) -> bool:
        return contains_monomial(self, u)

    def __str__(self) -> str:
        return format_ideal(self)


def _minimalize(raw: Iterable[Monomial]) -> Tuple[Monomial, ...]:
    # De menor a mayor grado: un divisor siempre aparece antes que sus múltiplos
    candidates = sorted(set(raw), key=lambda m: (total_degree(m), tuple(-e for e in m.exponents)))
    kept = []
    for m in candidates:
        if not any(all(a <= b for a, b in zip(g.exponents, m.exponents)) for g in kept):
            kept.append(m)
    kept.sort(key=lambda m: m.exponents, reverse=True)
    return tuple(kept)


def from_generators(context: VariableContext, raw: Iterable[Monomial]) -> MonomialIdeal:
    raw = list(raw)
    for m in raw:
        if m.context != context:
            raise ContextMismatchError("Generador fuera del contexto del ideal")
    return MonomialIdeal(context, _minimalize(raw))


def zero_ideal(context: VariableContext) -> MonomialIdeal:
    return MonomialIdeal(context, ())


def unit_ideal(context: VariableContext) -> MonomialIdeal:
    return MonomialIdeal(context, (one(context),))


def _check_same(I: MonomialIdeal, J: MonomialIdeal) -> None:
    if I.context != J.context:
        raise ContextMismatchError("Los ideales pertenecen a contextos de variables distintos")


def contains_monomial(I: MonomialIdeal, u: Monomial) -> bool:
    if u.context != I.context:
        raise ContextMismatchError("El monomio no pertenece al contexto del ideal")
    exps = u.exponents
    return any(all(a <= b for a, b in zip(g.exponents, exps)) for g in I.gens)


def is_subideal(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    """I ⊆ J: cada generador de I es múltiplo de algún generador de J."""
    _check_same(I, J)
    return all(contains_monomial(J, g) for g in I.gens)


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_same(I, J)
    return from_generators(I.context, I.gens + J.gens)


def product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_same(I, J)
    return from_generators(I.context, (mul(u, v) for u in I.gens for v in J.gens))


def power(I: MonomialIdeal, k: int) -> MonomialIdeal:
    if k < 1:
        raise InvalidArgumentError(f"La potencia debe ser >= 1 (se recibió {k}); el ideal unidad se construye explícitamente")
    result = I
    for _ in range(k - 1):
        result = product(result, I)
    logger.debug("power: k=%d -> %d generadores", k, len(result))
    return result


def bracket_power(I: MonomialIdeal, k: int) -> MonomialIdeal:
    if k < 1:
        raise InvalidArgumentError(f"La potencia corchete debe ser >= 1 (se recibió {k})")
    return from_generators(I.context, (power_mono(g, k) for g in I.gens))


def intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_same(I, J)
    return from_generators(I.context, (lcm_mono(u, v) for u in I.gens for v in J.gens))


def colon_by_monomial(I: MonomialIdeal, u: Monomial) -> MonomialIdeal:
    if u.context != I.context:
        raise ContextMismatchError("El monomio no pertenece al contexto del ideal")
    quotients = (
        Monomial(I.context, tuple(max(a - b, 0) for a, b in zip(g.exponents, u.exponents)))
        for g in I.gens
    )
    return from_generators(I.context, quotients)


def equals(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    return I.context == J.context and I.gens == J.gens


def is_equigenerated(I: MonomialIdeal) -> Optional[int]:
    degrees = {total_degree(g) for g in I.gens}
    return degrees.pop() if len(degrees) == 1 else None


def is_squarefree_ideal(I: MonomialIdeal) -> bool:
    return all(is_squarefree_mono(g) for g in I.gens)


def degree_histogram(I: MonomialIdeal) -> dict:
    hist: dict = {}
    for g in I.gens:
        d = total_degree(g)
        hist[d] = hist.get(d, 0) + 1
    return hist


def generator_box(I: MonomialIdeal) -> Tuple[int, ...]:
    """Máximo componente a componente de los generadores."""
    if not I.gens:
        return (0,) * I.context.total_vars
    return tuple(max(col) for col in zip(*(g.exponents for g in I.gens)))


def format_ideal(I: MonomialIdeal) -> str:
    if I.is_zero:
        return "(0)"
    return "(" + ", ".join(format_monomial(g) for g in I.gens) + ")"
