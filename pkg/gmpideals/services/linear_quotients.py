"""
Cocientes lineales: verificación de un orden, búsqueda (lex, revlex,
exhaustiva con poda) y los invariantes que se leen del certificado.
"""
import logging
from dataclasses import dataclass
from math import comb
from typing import List, Optional, Sequence, Tuple, Union

from gmpideals.core.errors import InvalidArgumentError, ResourceBoundError, ZeroIdealError
from gmpideals.core.settings import get_settings
from gmpideals.services.betti_oracle import BettiTable
from gmpideals.services.ideal_algebra import MonomialIdeal, is_equigenerated
from gmpideals.services.ring_core import Monomial, total_degree

logger = logging.getLogger(__name__)

STRATEGIES = ("lex", "revlex", "exhaustive", "auto")


@dataclass(frozen=True)
class LinearQuotientCertificate:
    ideal: MonomialIdeal
    order: Tuple[Monomial, ...]
    colon_vars: Tuple[Tuple[int, ...], ...]

    @property
    def r_values(self) -> Tuple[int, ...]:
        return tuple(len(vs) for vs in self.colon_vars)


@dataclass(frozen=True)
class LinearQuotientFailure:
    step: int
    colon_gens: Tuple[Monomial, ...]


@dataclass(frozen=True)
class LinearQuotientSearch:
    certificate: Optional[LinearQuotientCertificate]
    strategy_used: Optional[str]
    colon_checks: int
    incomplete: bool = False
    failure: Optional[LinearQuotientFailure] = None


def _colon_step(prefix: Sequence[Monomial], u: Monomial) -> Tuple[Monomial, ...]:
    """Generadores minimales de (prefix) : u."""
    raw = {tuple(max(a - b, 0) for a, b in zip(g.exponents, u.exponents)) for g in prefix}
    ordered = sorted(raw, key=sum)
    kept: List[Tuple[int, ...]] = []
    for q in ordered:
        if not any(all(a <= b for a, b in zip(k, q)) for k in kept):
            kept.append(q)
    kept.sort(reverse=True)
    return tuple(Monomial(u.context, q) for q in kept)


def _linear_vars(colon: Tuple[Monomial, ...]) -> Optional[Tuple[int, ...]]:
    if any(total_degree(g) != 1 for g in colon):
        return None
    return tuple(sorted(g.support[0] for g in colon))


def check_order(I: MonomialIdeal, order: Sequence[Monomial]) -> Union[LinearQuotientCertificate, LinearQuotientFailure]:
    order = tuple(order)
    if len(order) != len(I.gens) or set(order) != set(I.gens):
        raise InvalidArgumentError("El orden dado no es una permutación de G(I)")
    colon_vars = []
    for k in range(1, len(order)):
        colon = _colon_step(order[:k], order[k])
        vars_k = _linear_vars(colon)
        if vars_k is None:
            return LinearQuotientFailure(k, colon)
        colon_vars.append(vars_k)
    return LinearQuotientCertificate(I, order, tuple(colon_vars))


def lex_order(I: MonomialIdeal) -> Tuple[Monomial, ...]:
    return I.gens


def revlex_order(I: MonomialIdeal) -> Tuple[Monomial, ...]:
    # grado creciente; a igual grado, revlex descendente
    return tuple(
        sorted(I.gens, key=lambda g: (-total_degree(g), tuple(-e for e in reversed(g.exponents))), reverse=True)
    )


def _exhaustive(I: MonomialIdeal) -> Tuple[Optional[LinearQuotientCertificate], int]:
    gens = I.gens
    checks = 0
    order: List[Monomial] = []
    colon_vars: List[Tuple[int, ...]] = []
    used = [False] * len(gens)

    def extend() -> bool:
        nonlocal checks
        if len(order) == len(gens):
            return True
        for idx, g in enumerate(gens):
            if used[idx]:
                continue
            if order:
                checks += 1
                vars_k = _linear_vars(_colon_step(order, g))
                if vars_k is None:
                    continue
                colon_vars.append(vars_k)
            used[idx] = True
            order.append(g)
            if extend():
                return True
            order.pop()
            used[idx] = False
            if colon_vars and len(colon_vars) == len(order):
                colon_vars.pop()
        return False

    if extend():
        return LinearQuotientCertificate(I, tuple(order), tuple(colon_vars)), checks
    return None, checks


def find_linear_quotients(
    I: MonomialIdeal,
    strategy: str = "auto",
    exhaustive_threshold: Optional[int] = None,
) -> LinearQuotientSearch:
    if I.is_zero:
        raise ZeroIdealError("find_linear_quotients: el ideal cero no tiene generadores")
    if strategy not in STRATEGIES:
        raise InvalidArgumentError(f"Estrategia desconocida '{strategy}' (opciones: {', '.join(STRATEGIES)})")
    threshold = exhaustive_threshold if exhaustive_threshold is not None else get_settings().EXHAUSTIVE_THRESHOLD
    q = len(I.gens)
    checks = 0
    failure = None

    if strategy in ("lex", "revlex", "auto"):
        for name, order in (("lex", lex_order(I)), ("revlex", revlex_order(I))):
            if strategy not in (name, "auto"):
                continue
            result = check_order(I, order)
            checks += max(q - 1, 0)
            if isinstance(result, LinearQuotientCertificate):
                logger.debug("find_linear_quotients: certificado por %s", name)
                return LinearQuotientSearch(result, name, checks)
            failure = failure or result

    if strategy == "exhaustive" and q > threshold:
        raise ResourceBoundError(
            f"Búsqueda exhaustiva rechazada: {q} generadores superan el umbral de {threshold}"
        )
    if strategy in ("exhaustive", "auto") and q <= threshold:
        cert, extra = _exhaustive(I)
        checks += extra
        if cert is not None:
            return LinearQuotientSearch(cert, "exhaustive", checks)
        return LinearQuotientSearch(None, None, checks, incomplete=False, failure=failure)

    # lex/revlex sin éxito no prueba que no existan cocientes lineales
    return LinearQuotientSearch(None, None, checks, incomplete=True, failure=failure)


def r_value(cert: LinearQuotientCertificate) -> int:
    return max(cert.r_values, default=0)


def colon_support(cert: LinearQuotientCertificate) -> Tuple[int, ...]:
    """Unión de todas las variables que aparecen en algún cociente."""
    return tuple(sorted({v for vs in cert.colon_vars for v in vs}))


def pd_of_quotient_from_certificate(cert: LinearQuotientCertificate) -> int:
    return r_value(cert) + 1


def betti_from_certificate(cert: LinearQuotientCertificate) -> BettiTable:
    d = is_equigenerated(cert.ideal)
    if d is None:
        raise InvalidArgumentError(
            "betti_from_certificate: la fórmula solo vale para ideales generados en un solo grado"
        )
    steps = (0,) + cert.r_values
    entries = {}
    for i in range(max(steps) + 1):
        rank = sum(comb(r, i) for r in steps)
        if rank:
            entries[(i, d + i)] = rank
    return BettiTable.from_entries(entries)
