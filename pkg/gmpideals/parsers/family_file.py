"""
Archivos de entrada del comando gmpi.

Archivo base: un programa sin comando; la última asignación es el ideal base.

    ring x[1], y[1];
    I := gens{x1*y1^3, x1^2*y1^2, x1^3*y1};

Archivo de familia: una entrada por línea, `bloque exponente expresión`,
sobre el anillo destino. `@sqV`, `@V` y `@principal` valen como expresión
(solo esa entrada) o solos en una línea (todas las entradas del ideal base;
las líneas explícitas tienen prioridad).

    @sqV
    x 2 gens{x1*x2, x1*x3}
"""
import logging
import re
from pathlib import Path
from typing import Dict, Optional, Sequence, Tuple

from gmpideals.core.errors import DslSemanticError, DslSyntaxError
from gmpideals.parsers.dsl import evaluate, parse, parse_ideal_text
from gmpideals.services.gmpi import BaseIdeal, SubstitutionFamily, builtin_family, target_context
from gmpideals.services.ideal_algebra import MonomialIdeal, from_generators
from gmpideals.services.ring_core import Monomial

logger = logging.getLogger(__name__)

SHORTHANDS = {"@sqV": "squarefree_veronese", "@V": "veronese", "@principal": "principal_power"}

_ENTRY_RE = re.compile(r"^\s*([A-Za-z]+)\s+([0-9]+)\s+(.+?)\s*$")


def parse_base_text(text: str) -> BaseIdeal:
    evaluated = evaluate(parse(text, require_command=False))
    return BaseIdeal(evaluated.last)


def load_base(path: Path) -> BaseIdeal:
    return parse_base_text(Path(path).read_text(encoding="utf-8"))


def parse_family_text(text: str, base: BaseIdeal, sizes: Sequence[int]) -> SubstitutionFamily:
    target = target_context(base, sizes)
    default_kind: Optional[str] = None
    table: Dict[Tuple[int, int], MonomialIdeal] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line in SHORTHANDS:
            if default_kind is not None:
                raise DslSyntaxError("Solo se admite una familia integrada por archivo", lineno, 1)
            default_kind = SHORTHANDS[line]
            continue
        match = _ENTRY_RE.match(line)
        if match is None:
            raise DslSyntaxError(
                "Entrada de familia inválida", lineno, 1, ["bloque exponente expresión", *SHORTHANDS]
            )
        block, exponent, expr = match.group(1), int(match.group(2)), match.group(3)
        if block not in target.block_names:
            raise DslSemanticError(f"línea {lineno}: bloque desconocido '{block}'")
        i = target.block_index(block)
        if (i, exponent) in table:
            raise DslSemanticError(f"línea {lineno}: entrada ({block}, {exponent}) repetida")
        try:
            if expr in SHORTHANDS:
                single = builtin_family(SHORTHANDS[expr], _single_exponent(base, i, exponent), sizes)
                table[(i, exponent)] = single.get(i, exponent)
            else:
                table[(i, exponent)] = parse_ideal_text(target, expr)
        except DslSyntaxError as exc:
            start = raw.find(expr) + 1
            raise DslSyntaxError(exc.reason, lineno, start + exc.column - 1, exc.expected) from None

    if default_kind is not None:
        builtin = builtin_family(default_kind, base, sizes)
        table = {**builtin.table, **table}
    logger.debug("parse_family_text: %d entradas", len(table))
    return SubstitutionFamily(target, table)


def _single_exponent(base: BaseIdeal, i: int, exponent: int) -> BaseIdeal:
    """Ideal base auxiliar x_i^exponent, para pedir una sola entrada integrada."""
    ctx = base.context
    exps = tuple(exponent if k == i else 0 for k in range(ctx.total_vars))
    return BaseIdeal(from_generators(ctx, [Monomial(ctx, exps)]))


def load_family(path: Path, base: BaseIdeal, sizes: Sequence[int]) -> SubstitutionFamily:
    return parse_family_text(Path(path).read_text(encoding="utf-8"), base, sizes)
