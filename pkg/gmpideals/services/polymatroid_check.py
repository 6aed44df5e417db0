"""
Propiedad polimatroidal / matroidal por la caracterización de intercambio.

I (generado en un solo grado) es polimatroidal si para todo par u, v de G(I)
con deg_i(u) > deg_i(v) existe j con deg_j(u) < deg_j(v) y x_j·u/x_i ∈ I.
Cuando falla se devuelve un testigo que se puede volver a verificar.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

from gmpideals.core.errors import ZeroIdealError
from gmpideals.services.gmpi import SubstitutionFamily
from gmpideals.services.ideal_algebra import MonomialIdeal, contains_monomial, is_equigenerated
from gmpideals.services.ring_core import Monomial, total_degree

logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]


@dataclass(frozen=True)
class Witness:
    kind: str  # "exchange" | "degree" | "squarefree"
    u: Monomial
    v: Optional[Monomial] = None
    index: Optional[int] = None

    def describe(self) -> str:
        names = self.u.context.variable_names
        if self.kind == "exchange":
            return f"u={self.u}, v={self.v}, i={names[self.index]}: ningún intercambio x_j·u/x_i cae en I"
        if self.kind == "degree":
            return f"u={self.u} y v={self.v} tienen grados distintos"
        return f"u={self.u} no es libre de cuadrados en {names[self.index]}"


@dataclass(frozen=True)
class ExchangeReport:
    verdict: bool
    witness: Optional[Witness] = None


def _swap(u: Exponents, out: int, into: int) -> Exponents:
    w = list(u)
    w[out] -= 1
    w[into] += 1
    return tuple(w)


def _exchange_fails(member: Callable[[Exponents], bool], u: Exponents, v: Exponents, i: int) -> bool:
    candidates = (j for j, (a, b) in enumerate(zip(u, v)) if a < b)
    return not any(member(_swap(u, i, j)) for j in candidates)


def _exchange_targets(member: Callable[[Exponents], bool], u: Exponents) -> Tuple[Tuple[int, ...], ...]:
    """Para cada i, las j con x_j·u/x_i ∈ I."""
    n = len(u)
    return tuple(
        tuple(j for j in range(n) if j != i and member(_swap(u, i, j))) if u[i] > 0 else ()
        for i in range(n)
    )


def is_polymatroidal(I: MonomialIdeal) -> ExchangeReport:
    """Recorre (u, v, i) en orden lex creciente: el testigo devuelto es el menor que falla."""
    if I.is_zero:
        raise ZeroIdealError("is_polymatroidal: el ideal cero no tiene generadores")
    if is_equigenerated(I) is None:
        low = min(I.gens, key=total_degree)
        high = max(I.gens, key=total_degree)
        return ExchangeReport(False, Witness("degree", low, high))
    # generado en un solo grado: un monomio de ese grado está en I sii es un generador
    rows = sorted(g.exponents for g in I.gens)
    gens = set(rows)
    for u in rows:
        reach = _exchange_targets(gens.__contains__, u)
        for v in rows:
            if u == v:
                continue
            for i, (a, b) in enumerate(zip(u, v)):
                if a > b and not any(u[j] < v[j] for j in reach[i]):
                    ctx = I.context
                    logger.debug("is_polymatroidal: falla el intercambio u=%s v=%s i=%d", u, v, i)
                    return ExchangeReport(False, Witness("exchange", Monomial(ctx, u), Monomial(ctx, v), i))
    return ExchangeReport(True)


def is_matroidal(I: MonomialIdeal) -> ExchangeReport:
    if I.is_zero:
        raise ZeroIdealError("is_matroidal: el ideal cero no tiene generadores")
    for g in sorted(I.gens, key=lambda m: m.exponents):
        for i, e in enumerate(g.exponents):
            if e > 1:
                return ExchangeReport(False, Witness("squarefree", g, index=i))
    return is_polymatroidal(I)


def replay_witness(I: MonomialIdeal, witness: Witness) -> bool:
    """True si el testigo sigue refutando la propiedad sobre I."""
    u, v = witness.u, witness.v
    if witness.kind == "squarefree":
        return u.exponents[witness.index] > 1
    if witness.kind == "degree":
        return total_degree(u) != total_degree(v)
    i = witness.index
    return (
        contains_monomial(I, u)
        and contains_monomial(I, v)
        and u.exponents[i] > v.exponents[i]
        and _exchange_fails(lambda w: contains_monomial(I, Monomial(I.context, w)), u.exponents, v.exponents, i)
    )


def is_mixed_polymatroidal_family(fam: SubstitutionFamily) -> bool:
    """Todos los ideales sustitutos de la familia son polimatroidales."""
    return all(is_polymatroidal(ideal).verdict for ideal in fam.table.values())
