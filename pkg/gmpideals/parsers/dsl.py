"""
Lenguaje de programas: declaración del anillo, asignaciones de ideales y un
comando final.

    ring x[3], y[3];
    L := sqV(x,1)*sqV(y,3) + sqV(x,2)*sqV(y,2) + sqV(x,3)*sqV(y,1);
    mingens L;

Descenso recursivo sobre una lista de tokens con línea y columna. La
precedencia es potencia > producto > suma. El impresor pone paréntesis solo
donde hacen falta para que parse(print_program(p)) == p.
"""
import logging
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple, Union

from gmpideals.core.errors import DslSemanticError, DslSyntaxError, InvalidArgumentError
from gmpideals.services.constructors import (
    path_ideal_bipartite,
    squarefree_veronese,
    staircase,
    veronese,
)
from gmpideals.services.ideal_algebra import (
    MonomialIdeal,
    bracket_power,
    from_generators,
    ideal_sum,
    power,
    product,
    zero_ideal,
)
from gmpideals.services.ring_core import Monomial, VariableContext

logger = logging.getLogger(__name__)

KEYWORDS = ("ring", "sqV", "V", "staircase", "pathideal", "gens")

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<newline>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<var>[A-Za-z]+[0-9]+)
  | (?P<name>[A-Za-z](?:[A-Za-z]|-(?=[A-Za-z]))*)
  | (?P<int>[0-9]+)
  | (?P<op>:=|--|[;,\[\](){}+*^])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # NAME | VAR | INT | OP | EOF
    text: str
    line: int
    column: int

    def describe(self) -> str:
        return "fin de entrada" if self.kind == "EOF" else repr(self.text)


def tokenize(source: str) -> List[Token]:
    tokens: List[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(source):
        match = _TOKEN_RE.match(source, pos)
        if match is None:
            raise DslSyntaxError(f"Carácter inesperado {source[pos]!r}", line, pos - line_start + 1)
        kind = match.lastgroup
        if kind == "newline":
            line, line_start = line + 1, match.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind.upper(), match.group(), line, pos - line_start + 1))
        pos = match.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


# Árbol sintáctico
VarPower = Tuple[str, int, int]  # bloque, índice (1-based), exponente
MonomialExpr = Tuple[VarPower, ...]  # vacío = 1


@dataclass(frozen=True)
class SqV:
    block: str
    degree: int


@dataclass(frozen=True)
class Ver:
    block: str
    degree: int


@dataclass(frozen=True)
class Staircase:
    z: int


@dataclass(frozen=True)
class PathIdeal:
    t: int


@dataclass(frozen=True)
class Gens:
    monomials: Tuple[MonomialExpr, ...]


@dataclass(frozen=True)
class Literal:
    monomials: Tuple[MonomialExpr, ...]


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class Sum:
    terms: Tuple["IdealExpr", ...]


@dataclass(frozen=True)
class Product:
    factors: Tuple["IdealExpr", ...]


@dataclass(frozen=True)
class Power:
    base: "IdealExpr"
    k: int


@dataclass(frozen=True)
class BracketPower:
    base: "IdealExpr"
    k: int


IdealExpr = Union[SqV, Ver, Staircase, PathIdeal, Gens, Literal, Zero, Ref, Sum, Product, Power, BracketPower]
FlagValue = Union[str, int, None]


@dataclass(frozen=True)
class Command:
    name: str
    args: Tuple[IdealExpr, ...] = ()
    flags: Tuple[Tuple[str, FlagValue], ...] = ()

    def flag(self, name: str, default: FlagValue = None) -> FlagValue:
        for key, value in self.flags:
            if key == name:
                return value
        return default

    def has_flag(self, name: str) -> bool:
        return any(key == name for key, _ in self.flags)


@dataclass(frozen=True)
class Program:
    ring: Tuple[Tuple[str, int], ...]
    bindings: Tuple[Tuple[str, IdealExpr], ...]
    command: Optional[Command] = None


class Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.pos = 0

    # utilidades de lectura
    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def at(self, kind: str, text: Optional[str] = None) -> bool:
        tok = self.current
        return tok.kind == kind and (text is None or tok.text == text)

    def fail(self, message: str, expected: Iterable[str]) -> DslSyntaxError:
        tok = self.current
        return DslSyntaxError(f"{message}; se encontró {tok.describe()}", tok.line, tok.column, expected)

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        if not self.at(kind, text):
            raise self.fail("Token inesperado", [text or kind])
        tok = self.current
        self.pos += 1
        return tok

    def expect_int(self) -> int:
        return int(self.expect("INT").text)

    # programa
    def program(self, require_command: bool = True) -> Program:
        ring = self.ring_decl()
        bindings = []
        command = None
        while not self.at("EOF"):
            if self.at("NAME") and self.peek().kind == "OP" and self.peek().text == ":=":
                bindings.append(self.binding())
            else:
                command = self.command()
                break
        if command is None and require_command:
            raise self.fail("Falta el comando final", ["NAME"])
        self.expect("EOF")
        return Program(tuple(ring), tuple(bindings), command)

    def ring_decl(self) -> List[Tuple[str, int]]:
        self.expect("NAME", "ring")
        blocks = [self.block()]
        while self.at("OP", ","):
            self.pos += 1
            blocks.append(self.block())
        self.expect("OP", ";")
        return blocks

    def block(self) -> Tuple[str, int]:
        name = self.expect("NAME").text
        self.expect("OP", "[")
        size = self.expect_int()
        self.expect("OP", "]")
        return name, size

    def binding(self) -> Tuple[str, IdealExpr]:
        tok = self.expect("NAME")
        if tok.text in KEYWORDS or "-" in tok.text:
            raise DslSyntaxError(f"'{tok.text}' no puede usarse como nombre", tok.line, tok.column, ["NAME"])
        self.expect("OP", ":=")
        expr = self.ideal()
        self.expect("OP", ";")
        return tok.text, expr

    def command(self) -> Command:
        name = self.expect("NAME").text
        args = []
        while self.starts_ideal():
            args.append(self.ideal())
        flags = []
        while self.at("OP", "--"):
            self.pos += 1
            key = self.expect("NAME").text
            value: FlagValue = None
            if self.at("NAME"):
                value = self.current.text
                self.pos += 1
            elif self.at("INT"):
                value = int(self.current.text)
                self.pos += 1
            flags.append((key, value))
        if not self.at("OP", ";"):
            raise self.fail("Se esperaba el fin del comando", [";", "--", "ideal"])
        self.pos += 1
        return Command(name, tuple(args), tuple(flags))

    # expresiones
    def starts_ideal(self) -> bool:
        return self.at("NAME") or self.at("OP", "(")

    def ideal(self) -> IdealExpr:
        terms = [self.term()]
        while self.at("OP", "+"):
            self.pos += 1
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self) -> IdealExpr:
        factors = [self.factor()]
        while self.at("OP", "*"):
            self.pos += 1
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self) -> IdealExpr:
        base = self.atom()
        if self.at("OP", "^"):
            self.pos += 1
            if self.at("OP", "["):
                self.pos += 1
                k = self.expect_int()
                self.expect("OP", "]")
                return BracketPower(base, k)
            if not self.at("INT"):
                raise self.fail("Exponente inválido", ["INT", "["])
            return Power(base, self.expect_int())
        return base

    def atom(self) -> IdealExpr:
        tok = self.current
        if tok.kind == "OP" and tok.text == "(":
            return self.parenthesized()
        if tok.kind != "NAME":
            raise self.fail("Se esperaba un ideal", ["(", "NAME", "sqV", "V", "staircase", "pathideal", "gens"])
        nxt = self.peek()
        if tok.text in ("sqV", "V") and nxt.text == "(":
            self.pos += 2
            block = self.expect("NAME").text
            self.expect("OP", ",")
            degree = self.expect_int()
            self.expect("OP", ")")
            return SqV(block, degree) if tok.text == "sqV" else Ver(block, degree)
        if tok.text in ("staircase", "pathideal") and nxt.text == "(":
            self.pos += 2
            value = self.expect_int()
            self.expect("OP", ")")
            return Staircase(value) if tok.text == "staircase" else PathIdeal(value)
        if tok.text == "gens" and nxt.text == "{":
            self.pos += 2
            monomials = self.monomial_list()
            self.expect("OP", "}")
            return Gens(monomials)
        if tok.text in KEYWORDS:
            raise self.fail(f"'{tok.text}' es una palabra reservada", ["(" if tok.text != "gens" else "{"])
        self.pos += 1
        return Ref(tok.text)

    def parenthesized(self) -> IdealExpr:
        self.expect("OP", "(")
        nxt = self.current
        if nxt.kind == "INT" and nxt.text == "0":
            self.pos += 1
            self.expect("OP", ")")
            return Zero()
        if nxt.kind == "VAR" or (nxt.kind == "INT" and nxt.text == "1"):
            monomials = self.monomial_list()
            self.expect("OP", ")")
            return Literal(monomials)
        expr = self.ideal()
        self.expect("OP", ")")
        return expr

    def monomial_list(self) -> Tuple[MonomialExpr, ...]:
        monomials = [self.monomial()]
        while self.at("OP", ","):
            self.pos += 1
            monomials.append(self.monomial())
        return tuple(monomials)

    def monomial(self) -> MonomialExpr:
        if self.at("INT", "1"):
            self.pos += 1
            return ()
        parts = [self.var()]
        while self.at("OP", "*"):
            self.pos += 1
            parts.append(self.var())
        return tuple(parts)

    def var(self) -> VarPower:
        tok = self.current
        if tok.kind != "VAR":
            raise self.fail("Se esperaba una variable", ["VAR", "1"])
        self.pos += 1
        block, index = re.fullmatch(r"([A-Za-z]+)([0-9]+)", tok.text).groups()
        exponent = 1
        if self.at("OP", "^") and self.peek().kind == "INT":
            self.pos += 1
            exponent = self.expect_int()
        return block, int(index), exponent


def parse(source: str, require_command: bool = True) -> Program:
    program = Parser(source).program(require_command)
    logger.debug("parse: %d bloques, %d asignaciones", len(program.ring), len(program.bindings))
    return program


def parse_ideal_expr(text: str) -> IdealExpr:
    parser = Parser(text)
    expr = parser.ideal()
    parser.expect("EOF")
    return expr


# Impresión
_PREC = {Sum: 1, Product: 2, Power: 3, BracketPower: 3}


def _print_monomial(m: MonomialExpr) -> str:
    if not m:
        return "1"
    return "*".join(f"{b}{i}" if e == 1 else f"{b}{i}^{e}" for b, i, e in m)


def _child(node: IdealExpr, parent_prec: int) -> str:
    text = print_ideal_expr(node)
    # hijos del mismo nivel también llevan paréntesis: (A+B)+C no se aplana
    return f"({text})" if _PREC.get(type(node), 4) <= parent_prec else text


def print_ideal_expr(node: IdealExpr) -> str:
    if isinstance(node, SqV):
        return f"sqV({node.block}, {node.degree})"
    if isinstance(node, Ver):
        return f"V({node.block}, {node.degree})"
    if isinstance(node, Staircase):
        return f"staircase({node.z})"
    if isinstance(node, PathIdeal):
        return f"pathideal({node.t})"
    if isinstance(node, Gens):
        return "gens{" + ", ".join(_print_monomial(m) for m in node.monomials) + "}"
    if isinstance(node, Literal):
        return "(" + ", ".join(_print_monomial(m) for m in node.monomials) + ")"
    if isinstance(node, Zero):
        return "(0)"
    if isinstance(node, Ref):
        return node.name
    if isinstance(node, Sum):
        return " + ".join(_child(t, 1) for t in node.terms)
    if isinstance(node, Product):
        return "*".join(_child(f, 2) for f in node.factors)
    if isinstance(node, Power):
        return f"{_child(node.base, 3)}^{node.k}"
    if isinstance(node, BracketPower):
        return f"{_child(node.base, 3)}^[{node.k}]"
    raise InvalidArgumentError(f"Nodo desconocido: {node!r}")


def print_program(program: Program) -> str:
    lines = ["ring " + ", ".join(f"{name}[{size}]" for name, size in program.ring) + ";"]
    for name, expr in program.bindings:
        lines.append(f"{name} := {print_ideal_expr(expr)};")
    cmd = program.command
    if cmd is not None:
        parts = [cmd.name] + [print_ideal_expr(a) for a in cmd.args]
        for key, value in cmd.flags:
            parts.append(f"--{key}" if value is None else f"--{key} {value}")
        lines.append(" ".join(parts) + ";")
    return "\n".join(lines) + "\n"


# Evaluación
@dataclass(frozen=True)
class EvaluatedProgram:
    program: Program
    context: VariableContext
    bindings: Dict[str, MonomialIdeal]

    def resolve(self, expr: IdealExpr) -> MonomialIdeal:
        return evaluate_expr(expr, self.context, self.bindings)

    @property
    def last(self) -> MonomialIdeal:
        if not self.program.bindings:
            raise DslSemanticError("El programa no tiene asignaciones")
        return self.bindings[self.program.bindings[-1][0]]


def _monomial(m: MonomialExpr, context: VariableContext) -> Monomial:
    exps = [0] * context.total_vars
    for block, index, exponent in m:
        exps[context.variable_index(block, index)] += exponent
    return Monomial(context, tuple(exps))


def evaluate_expr(expr: IdealExpr, context: VariableContext, env: Dict[str, MonomialIdeal]) -> MonomialIdeal:
    if isinstance(expr, SqV):
        return squarefree_veronese(context, expr.block, expr.degree)
    if isinstance(expr, Ver):
        return veronese(context, expr.block, expr.degree)
    if isinstance(expr, Staircase):
        return staircase(context, expr.z)
    if isinstance(expr, PathIdeal):
        return path_ideal_bipartite(context, expr.t)
    if isinstance(expr, (Gens, Literal)):
        return from_generators(context, (_monomial(m, context) for m in expr.monomials))
    if isinstance(expr, Zero):
        return zero_ideal(context)
    if isinstance(expr, Ref):
        if expr.name not in env:
            raise DslSemanticError(f"Nombre no definido: '{expr.name}'")
        return env[expr.name]
    if isinstance(expr, Sum):
        result = evaluate_expr(expr.terms[0], context, env)
        for t in expr.terms[1:]:
            result = ideal_sum(result, evaluate_expr(t, context, env))
        return result
    if isinstance(expr, Product):
        result = evaluate_expr(expr.factors[0], context, env)
        for f in expr.factors[1:]:
            result = product(result, evaluate_expr(f, context, env))
        return result
    if isinstance(expr, Power):
        return power(evaluate_expr(expr.base, context, env), expr.k)
    if isinstance(expr, BracketPower):
        return bracket_power(evaluate_expr(expr.base, context, env), expr.k)
    raise InvalidArgumentError(f"Nodo desconocido: {expr!r}")


def evaluate(program: Program) -> EvaluatedProgram:
    context = VariableContext(program.ring)
    env: Dict[str, MonomialIdeal] = {}
    for name, expr in program.bindings:
        if name in env:
            raise DslSemanticError(f"'{name}' ya está definido")
        env[name] = evaluate_expr(expr, context, env)
        logger.debug("evaluate: %s con %d generadores", name, len(env[name]))
    return EvaluatedProgram(program, context, env)


def parse_ideal_text(context: VariableContext, text: str, env: Optional[Dict[str, MonomialIdeal]] = None) -> MonomialIdeal:
    """Evalúa una expresión suelta, p. ej. la salida de format_ideal."""
    return evaluate_expr(parse_ideal_expr(text), context, env or {})
