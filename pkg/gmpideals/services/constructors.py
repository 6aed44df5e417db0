"""
Familias con nombre: Veronese, Veronese libre de cuadrados, sumas mixtas,
escaleras e ideales de caminos del bipartito completo.
"""
import logging
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Sequence, Tuple

from gmpideals.core.errors import InvalidArgumentError
from gmpideals.services.ideal_algebra import (
    MonomialIdeal,
    from_generators,
    ideal_sum,
    product,
    unit_ideal,
    zero_ideal,
)
from gmpideals.services.ring_core import VariableContext, monomial_from_powers

logger = logging.getLogger(__name__)


def veronese(context: VariableContext, block: str, r: int) -> MonomialIdeal:
    if r < 0:
        raise InvalidArgumentError(f"Grado negativo para V({block}, {r})")
    if r == 0:
        return unit_ideal(context)
    indices = context.block_range(block)
    gens = []
    for combo in combinations_with_replacement(indices, r):
        powers: dict = {}
        for i in combo:
            powers[i] = powers.get(i, 0) + 1
        gens.append(monomial_from_powers(context, powers))
    return from_generators(context, gens)


def squarefree_veronese(context: VariableContext, block: str, r: int) -> MonomialIdeal:
    if r < 0:
        raise InvalidArgumentError(f"Grado negativo para sqV({block}, {r})")
    if r == 0:
        return unit_ideal(context)
    indices = context.block_range(block)
    if r > len(indices):
        logger.warning(
            "sqV(%s, %d): el grado excede el tamaño del bloque (%d); se devuelve el ideal cero",
            block, r, len(indices),
        )
        return zero_ideal(context)
    gens = [monomial_from_powers(context, {i: 1 for i in combo}) for combo in combinations(indices, r)]
    return from_generators(context, gens)


def _two_blocks(context: VariableContext) -> Tuple[str, str]:
    if len(context.blocks) != 2:
        raise InvalidArgumentError(
            f"Se necesitan exactamente dos bloques de variables (hay {len(context.blocks)})"
        )
    return context.block_names[0], context.block_names[1]


def mixed_sum(context: VariableContext, terms: Iterable[Sequence[int]], squarefree: bool) -> MonomialIdeal:
    """Suma de I_a·J_b sobre los términos (a, b); I y J viven en el primer y segundo bloque."""
    first, second = _two_blocks(context)
    factor = squarefree_veronese if squarefree else veronese
    result = zero_ideal(context)
    for a, b in terms:
        result = ideal_sum(result, product(factor(context, first, a), factor(context, second, b)))
    return result


def mixed_product(context: VariableContext, q: int, r: int, p: int, s: int) -> MonomialIdeal:
    """Ideal de producto mixto clásico I_qJ_r + I_pJ_s, con 0 < p < q <= n y 0 < r < s <= m."""
    first, second = _two_blocks(context)
    n, m = context.block_size(first), context.block_size(second)
    if not (0 < p < q <= n and 0 < r < s <= m):
        raise InvalidArgumentError(
            f"Producto mixto fuera de rango: se pide 0 < p < q <= {n} y 0 < r < s <= {m} "
            f"(q={q}, r={r}, p={p}, s={s})"
        )
    return mixed_sum(context, [(q, r), (p, s)], squarefree=True)


def staircase(context: VariableContext, z: int, squarefree: bool = True) -> MonomialIdeal:
    """Suma de I_j·J_{z-j} para j = 1..z-1; todos los generadores tienen grado z."""
    first, second = _two_blocks(context)
    m1, m2 = context.block_size(first), context.block_size(second)
    upper = m1 + m2 - 1 if squarefree else None
    if z < 2 or (upper is not None and z > upper):
        raise InvalidArgumentError(
            f"staircase({z}) fuera de rango: se pide 2 <= z" + (f" <= {upper}" if upper else "")
        )
    return mixed_sum(context, [(j, z - j) for j in range(1, z)], squarefree)


def path_ideal_bipartite(context: VariableContext, t: int) -> MonomialIdeal:
    """Ideal de caminos con t vértices del bipartito completo entre los dos bloques."""
    _two_blocks(context)
    if t < 1:
        raise InvalidArgumentError(f"pathideal({t}): t debe ser >= 1")
    q = t // 2
    if t % 2 == 0:
        return mixed_sum(context, [(q, q)], squarefree=True)
    return mixed_sum(context, [(q, q + 1), (q + 1, q)], squarefree=True)
