"""
Clausura entera de ideales monomiales mediante el poliedro de Newton.

x^a está en la clausura de I si y solo si a está en conv(G(I)) + ortante
positivo, es decir, si existen λ_g >= 0 con Σλ_g = 1 y Σλ_g·g <= a. La
decisión es exacta (símplex en racionales) y cada respuesta positiva lleva
su vector λ como certificado.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from math import prod
from typing import Optional, Sequence, Tuple

from gmpideals.core.errors import InvalidArgumentError, ResourceBoundError, ZeroIdealError
from gmpideals.core.settings import get_settings
from gmpideals.services.ideal_algebra import (
    MonomialIdeal,
    contains_monomial,
    equals,
    from_generators,
    generator_box,
    power,
)
from gmpideals.services.rational_lp import find_feasible_point
from gmpideals.services.ring_core import Monomial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NewtonMembership:
    ideal: MonomialIdeal
    exponent: Tuple[int, ...]
    member: bool
    certificate: Optional[Tuple[Fraction, ...]] = None

    def verify(self) -> bool:
        """Vuelve a comprobar el certificado λ con aritmética exacta."""
        if not self.member:
            return self.certificate is None
        lam = self.certificate
        if lam is None or len(lam) != len(self.ideal.gens):
            return False
        if any(x < 0 for x in lam) or sum(lam) != 1:
            return False
        for k, bound in enumerate(self.exponent):
            if sum(x * g.exponents[k] for x, g in zip(lam, self.ideal.gens)) > bound:
                return False
        return True


@dataclass(frozen=True)
class NormalityReport:
    bound: int
    normal: bool
    failing_power: Optional[int] = None
    witness: Optional[Monomial] = None
    certificate: Optional[Tuple[Fraction, ...]] = None


DegreeFloors = Tuple[Tuple[Tuple[int, ...], int], ...]


def degree_floors(I: MonomialIdeal) -> DegreeFloors:
    """Grado mínimo de G(I) en todas las variables y en cada bloque.

    Todo punto del poliedro de Newton cumple Σ_S a >= mín_g Σ_S g para cada
    conjunto de variables S.
    """
    ctx = I.context
    groups = [tuple(range(ctx.total_vars))] + [tuple(ctx.block_range(b)) for b in ctx.block_names]
    return tuple((S, min(sum(g.exponents[k] for k in S) for g in I.gens)) for S in groups)


def in_newton_polyhedron(a: Sequence[int], I: MonomialIdeal, floors: Optional[DegreeFloors] = None) -> NewtonMembership:
    if I.is_zero:
        raise ZeroIdealError("in_newton_polyhedron: el ideal cero no tiene poliedro de Newton")
    a = tuple(a)
    if len(a) != I.context.total_vars:
        raise InvalidArgumentError(
            f"El exponente tiene {len(a)} componentes y el anillo {I.context.total_vars} variables"
        )
    floors = floors if floors is not None else degree_floors(I)
    if any(sum(a[k] for k in S) < low for S, low in floors):
        return NewtonMembership(I, a, False)
    gens = I.gens
    for idx, g in enumerate(gens):
        if all(x <= y for x, y in zip(g.exponents, a)):
            lam = tuple(Fraction(int(k == idx)) for k in range(len(gens)))
            return NewtonMembership(I, a, True, lam)

    a_eq = [[1] * len(gens)]
    a_ub = [[g.exponents[k] for g in gens] for k in range(len(a))]
    result = find_feasible_point(a_eq, [1], a_ub, list(a), n=len(gens))
    if not result.feasible:
        return NewtonMembership(I, a, False)
    return NewtonMembership(I, a, True, result.point)


def in_integral_closure(I: MonomialIdeal, u: Monomial) -> bool:
    return in_newton_polyhedron(u.exponents, I).member


def integral_closure(I: MonomialIdeal, box_bound: Optional[int] = None) -> MonomialIdeal:
    if I.is_zero:
        raise ZeroIdealError("integral_closure: el ideal cero no se admite")
    box = generator_box(I)
    bound = box_bound if box_bound is not None else get_settings().CLOSURE_BOX_BOUND
    size = prod(m + 1 for m in box)
    if size > bound:
        raise ResourceBoundError(
            f"La caja de candidatos tiene {size} exponentes y la cota es {bound}"
        )

    floors = degree_floors(I)
    found = list(I.gens)
    tested = 0
    for a in sorted(cartesian(*(range(m + 1) for m in box)), key=lambda e: (sum(e), e)):
        if any(sum(a[k] for k in S) < low for S, low in floors):
            continue
        if any(all(x <= y for x, y in zip(g.exponents, a)) for g in found):
            continue
        tested += 1
        if in_newton_polyhedron(a, I, floors).member:
            found.append(Monomial(I.context, a))
    closure = from_generators(I.context, found)
    logger.debug(
        "integral_closure: caja de %d, %d pruebas de factibilidad, %d generadores nuevos",
        size, tested, len(closure) - len(I),
    )
    return closure


def is_integrally_closed(I: MonomialIdeal, box_bound: Optional[int] = None) -> bool:
    return equals(integral_closure(I, box_bound), I)


def is_normal_up_to(I: MonomialIdeal, k: Optional[int] = None, box_bound: Optional[int] = None) -> NormalityReport:
    """Comprueba que I, I^2, ..., I^k sean íntegramente cerrados. No prueba la normalidad."""
    k = k if k is not None else get_settings().NORMALITY_POWER
    if k < 1:
        raise InvalidArgumentError(f"La cota de potencias debe ser >= 1 (se recibió {k})")
    for j in range(1, k + 1):
        P = power(I, j)
        closure = integral_closure(P, box_bound)
        if not equals(closure, P):
            witness = next(g for g in closure.gens if not contains_monomial(P, g))
            logger.info("is_normal_up_to: I^%d no es íntegramente cerrado (testigo %s)", j, witness)
            lam = in_newton_polyhedron(witness.exponents, P).certificate
            return NormalityReport(k, False, j, witness, lam)
    return NormalityReport(k, True)
