"""
Contextos de variables por bloques y monomios como vectores de exponentes.

El orden de variables es fijo: bloque por bloque, y dentro de cada bloque por
índice. El bloque `x` de tamaño 3 aporta x1, x2, x3.
"""
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Optional, Tuple

from gmpideals.core.errors import ContextMismatchError, InvalidArgumentError, UnknownBlockError

_BLOCK_NAME = re.compile(r"^[A-Za-z]+$")


@dataclass(frozen=True)
class VariableContext:
    blocks: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple((str(n), int(s)) for n, s in self.blocks))
        if not self.blocks:
            raise InvalidArgumentError("El contexto necesita al menos un bloque")
        names = [n for n, _ in self.blocks]
        if len(set(names)) != len(names):
            raise InvalidArgumentError(f"Nombres de bloque repetidos: {names}")
        for name, size in self.blocks:
            if not _BLOCK_NAME.match(name):
                raise InvalidArgumentError(f"Nombre de bloque inválido: '{name}' (solo letras)")
            if size < 1:
                raise InvalidArgumentError(f"El bloque '{name}' debe tener tamaño >= 1")

    @classmethod
    def of(cls, *blocks: Tuple[str, int]) -> "VariableContext":
        return cls(tuple(blocks))

    @cached_property
    def total_vars(self) -> int:
        return sum(size for _, size in self.blocks)

    @cached_property
    def block_names(self) -> Tuple[str, ...]:
        return tuple(n for n, _ in self.blocks)

    @cached_property
    def variable_names(self) -> Tuple[str, ...]:
        return tuple(f"{name}{k}" for name, size in self.blocks for k in range(1, size + 1))

    @cached_property
    def _offsets(self) -> Dict[str, int]:
        offsets, pos = {}, 0
        for name, size in self.blocks:
            offsets[name] = pos
            pos += size
        return offsets

    def block_index(self, block: str) -> int:
        try:
            return self.block_names.index(block)
        except ValueError:
            raise UnknownBlockError(f"Bloque desconocido: '{block}'") from None

    def block_size(self, block: str) -> int:
        return self.blocks[self.block_index(block)][1]

    def block_range(self, block: str) -> range:
        size = self.block_size(block)
        start = self._offsets[block]
        return range(start, start + size)

    def block_of(self, index: int) -> str:
        for name, size in self.blocks:
            if index < self._offsets[name] + size:
                return name
        raise InvalidArgumentError(f"Índice de variable fuera de rango: {index}")

    def variable_index(self, block: str, index: int) -> int:
        """Posición global de la variable `block<index>` (índice 1-based)."""
        size = self.block_size(block)
        if not 1 <= index <= size:
            raise UnknownBlockError(f"La variable {block}{index} no existe (bloque de tamaño {size})")
        return self._offsets[block] + index - 1


@dataclass(frozen=True)
class Monomial:
    context: VariableContext
    exponents: Tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        if len(exps) != self.context.total_vars:
            raise InvalidArgumentError(
                f"Vector de exponentes de largo {len(exps)}, se esperaban {self.context.total_vars}"
            )
        if any(e < 0 for e in exps):
            raise InvalidArgumentError(f"Exponentes negativos: {exps}")
        object.__setattr__(self, "exponents", exps)

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.exponents) if e > 0)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return mul(self, other)

    def __str__(self) -> str:
        return format_monomial(self)


def _check_same(u: Monomial, v: Monomial) -> None:
    if u.context != v.context:
        raise ContextMismatchError("Los monomios pertenecen a contextos de variables distintos")


def one(context: VariableContext) -> Monomial:
    return Monomial(context, (0,) * context.total_vars)


def variable(context: VariableContext, index: int) -> Monomial:
    exps = [0] * context.total_vars
    exps[index] = 1
    return Monomial(context, tuple(exps))


def monomial_from_powers(context: VariableContext, powers: Dict[int, int]) -> Monomial:
    exps = [0] * context.total_vars
    for index, e in powers.items():
        exps[index] += e
    return Monomial(context, tuple(exps))


def mul(u: Monomial, v: Monomial) -> Monomial:
    _check_same(u, v)
    return Monomial(u.context, tuple(a + b for a, b in zip(u.exponents, v.exponents)))


def divides(v: Monomial, u: Monomial) -> bool:
    """True si v divide a u."""
    _check_same(u, v)
    return all(b <= a for a, b in zip(u.exponents, v.exponents))


def try_div(u: Monomial, v: Monomial) -> Optional[Monomial]:
    _check_same(u, v)
    diff = tuple(a - b for a, b in zip(u.exponents, v.exponents))
    if any(d < 0 for d in diff):
        return None
    return Monomial(u.context, diff)


def lcm_mono(u: Monomial, v: Monomial) -> Monomial:
    _check_same(u, v)
    return Monomial(u.context, tuple(max(a, b) for a, b in zip(u.exponents, v.exponents)))


def gcd_mono(u: Monomial, v: Monomial) -> Monomial:
    _check_same(u, v)
    return Monomial(u.context, tuple(min(a, b) for a, b in zip(u.exponents, v.exponents)))


def power_mono(u: Monomial, k: int) -> Monomial:
    return Monomial(u.context, tuple(k * e for e in u.exponents))


def total_degree(u: Monomial) -> int:
    return sum(u.exponents)


def block_degree(u: Monomial, block: str) -> int:
    return sum(u.exponents[i] for i in u.context.block_range(block))


def is_squarefree_mono(u: Monomial) -> bool:
    return all(e <= 1 for e in u.exponents)


def lex_compare(u: Monomial, v: Monomial) -> int:
    """-1, 0 o 1. Decide el primer exponente distinto; más grande en una variable anterior gana."""
    _check_same(u, v)
    if u.exponents == v.exponents:
        return 0
    return 1 if u.exponents > v.exponents else -1


def format_monomial(u: Monomial) -> str:
    names = u.context.variable_names
    parts = []
    for i, e in enumerate(u.exponents):
        if e == 1:
            parts.append(names[i])
        elif e > 1:
            parts.append(f"{names[i]}^{e}")
    return "*".join(parts) if parts else "1"
