"""
Ejecuta el comando final de un programa y arma el Report que consumen la
CLI y la API.
"""
import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Dict, Optional, Sequence, Tuple

from gmpideals.core.errors import DslSemanticError, DslSyntaxError, GmpiError, InvalidArgumentError
from gmpideals.core.settings import get_settings
from gmpideals.parsers.dsl import Command, Program, evaluate, parse
from gmpideals.schemas.reports import (
    BettiEntryOut,
    BettiOut,
    ClosureCertificateOut,
    ErrorOut,
    LinearQuotientCertificateOut,
    NewtonCertificateOut,
    Report,
    WitnessOut,
)
from gmpideals.services import betti_oracle, integral_closure, linear_quotients, polymatroid_check
from gmpideals.services.gmpi import BaseIdeal, SubstitutionFamily, build, builtin_family, validate_family
from gmpideals.services.ideal_algebra import MonomialIdeal, contains_monomial, equals, format_ideal
from gmpideals.services.ring_core import Monomial, format_monomial

logger = logging.getLogger(__name__)

BUILTIN_ALIASES = {"sqV": "squarefree_veronese", "V": "veronese", "principal": "principal_power"}


@dataclass(frozen=True)
class RunOptions:
    strict: bool = False
    strategy: Optional[str] = None
    of: Optional[str] = None
    power: Optional[int] = None
    exhaustive_threshold: Optional[int] = None
    lattice_bound: Optional[int] = None
    closure_bound: Optional[int] = None

    def merged_with(self, command: Command) -> "RunOptions":
        """Los flags del programa completan lo que no vino de afuera."""
        values = {}
        for key, value in command.flags:
            field_name = key.replace("-", "_")
            if field_name == "strict":
                values["strict"] = True
            elif getattr(self, field_name) is None:
                values[field_name] = value
        return replace(self, **values)


# comando -> (cantidad de ideales, flags admitidos)
COMMANDS: Dict[str, Tuple[int, Tuple[str, ...]]] = {
    "mingens": (1, ()),
    "is-polymatroidal": (1, ()),
    "is-matroidal": (1, ()),
    "linquot": (1, ("strategy", "exhaustive-threshold")),
    "rvalue": (1, ("strategy", "exhaustive-threshold")),
    "betti": (1, ("of", "lattice-bound")),
    "pd": (1, ("of", "lattice-bound")),
    "reg": (1, ("of", "lattice-bound")),
    "closure": (1, ("closure-bound",)),
    "is-closed": (1, ("closure-bound",)),
    "is-normal": (1, ("power", "closure-bound")),
    "equal": (2, ()),
}
BOOLEAN_COMMANDS = ("is-polymatroidal", "is-matroidal", "linquot", "is-closed", "is-normal", "equal")
_INT_FLAGS = ("exhaustive-threshold", "lattice-bound", "closure-bound", "power")


def _witness_out(w: polymatroid_check.Witness) -> WitnessOut:
    names = w.u.context.variable_names
    return WitnessOut(
        kind=w.kind,
        u=format_monomial(w.u),
        v=format_monomial(w.v) if w.v is not None else None,
        variable=names[w.index] if w.index is not None else None,
        description=w.describe(),
    )


def _certificate_out(cert: linear_quotients.LinearQuotientCertificate, strategy: str) -> LinearQuotientCertificateOut:
    names = cert.ideal.context.variable_names
    return LinearQuotientCertificateOut(
        strategy=strategy,
        order=[format_monomial(g) for g in cert.order],
        colon_vars=[[names[v] for v in vs] for vs in cert.colon_vars],
        r_values=list(cert.r_values),
        r=linear_quotients.r_value(cert),
        pd=linear_quotients.pd_of_quotient_from_certificate(cert),
    )


def _newton_out(g: Monomial, lambdas: Sequence[Fraction], power: int = 1) -> ClosureCertificateOut:
    member = NewtonCertificateOut(monomial=format_monomial(g), lambdas=[str(x) for x in lambdas])
    return ClosureCertificateOut(power=power, members=[member])


def _betti_out(table: betti_oracle.BettiTable) -> BettiOut:
    return BettiOut(
        convention=table.convention,
        entries=[BettiEntryOut(**row) for row in table.as_rows()],
        pd=table.pd,
        reg=table.reg,
        text=table.render_text(),
    )


def error_report(command: str, exc: GmpiError) -> Report:
    error = ErrorOut(type=type(exc).__name__, message=exc.message)
    if isinstance(exc, DslSyntaxError):
        error = ErrorOut(
            type=type(exc).__name__, message=exc.reason, line=exc.line, column=exc.column,
            expected=list(exc.expected) or None,
        )
    return Report(command=command, status="error", error=error)


class ProgramRunner:
    def __init__(self, options: Optional[RunOptions] = None):
        self.options = options or RunOptions()
        self.settings = get_settings()
        self.effective_options = self.options

    def run_source(self, source: str) -> Report:
        return self.run(parse(source))

    def run(self, program: Program) -> Report:
        cmd = program.command
        if cmd is None:
            raise DslSemanticError("El programa no tiene comando")
        if cmd.name not in COMMANDS:
            raise DslSemanticError(
                f"Comando desconocido '{cmd.name}' (opciones: {', '.join(sorted(COMMANDS))})"
            )
        arity, allowed = COMMANDS[cmd.name]
        if len(cmd.args) != arity:
            raise DslSemanticError(f"'{cmd.name}' espera {arity} ideal(es), recibió {len(cmd.args)}")
        for key, value in cmd.flags:
            if key != "strict" and key not in allowed:
                raise DslSemanticError(f"Flag '--{key}' no válido para '{cmd.name}'")
            if key in _INT_FLAGS and not isinstance(value, int):
                raise DslSemanticError(f"'--{key}' necesita un entero")
        options = self.options.merged_with(cmd)
        self.effective_options = options
        evaluated = evaluate(program)
        args = [evaluated.resolve(a) for a in cmd.args]
        handler: Callable[..., Report] = getattr(self, "_" + cmd.name.replace("-", "_"))
        logger.info("run: %s", cmd.name)
        return handler(options, *args)

    # comandos
    def _mingens(self, options: RunOptions, I: MonomialIdeal) -> Report:
        return Report(
            command="mingens", value=len(I), ideal=format_ideal(I),
            generators=[format_monomial(g) for g in I.gens],
        )

    def _is_polymatroidal(self, options: RunOptions, I: MonomialIdeal) -> Report:
        result = polymatroid_check.is_polymatroidal(I)
        return Report(
            command="is-polymatroidal", value=result.verdict,
            witness=_witness_out(result.witness) if result.witness else None,
        )

    def _is_matroidal(self, options: RunOptions, I: MonomialIdeal) -> Report:
        result = polymatroid_check.is_matroidal(I)
        return Report(
            command="is-matroidal", value=result.verdict,
            witness=_witness_out(result.witness) if result.witness else None,
        )

    def _threshold(self, options: RunOptions) -> int:
        if options.exhaustive_threshold is None:
            return self.settings.EXHAUSTIVE_THRESHOLD
        return options.exhaustive_threshold

    def _search(self, options: RunOptions, I: MonomialIdeal) -> linear_quotients.LinearQuotientSearch:
        return linear_quotients.find_linear_quotients(I, options.strategy or "auto", self._threshold(options))

    def _linquot(self, options: RunOptions, I: MonomialIdeal) -> Report:
        search = self._search(options, I)
        report = Report(
            command="linquot", value=search.certificate is not None, incomplete=search.incomplete,
            bounds={"exhaustive_threshold": self._threshold(options)},
        )
        if search.certificate is not None:
            report.certificate = _certificate_out(search.certificate, search.strategy_used)
            report.notes.append(f"r(I) = {linear_quotients.r_value(search.certificate)}")
        elif search.incomplete:
            report.notes.append("búsqueda incompleta: no se probaron todos los órdenes")
        if search.failure is not None and search.certificate is None:
            failing = ", ".join(format_monomial(g) for g in search.failure.colon_gens)
            report.notes.append(f"primer fallo en el paso {search.failure.step}: cociente ({failing})")
        return report

    def _rvalue(self, options: RunOptions, I: MonomialIdeal) -> Report:
        search = self._search(options, I)
        if search.certificate is None:
            raise InvalidArgumentError("rvalue: no se encontró un orden con cocientes lineales")
        return Report(
            command="rvalue", value=linear_quotients.r_value(search.certificate),
            certificate=_certificate_out(search.certificate, search.strategy_used),
        )

    def _lattice_bound(self, options: RunOptions) -> int:
        return self.settings.LATTICE_BOUND if options.lattice_bound is None else options.lattice_bound

    def _table(self, options: RunOptions, I: MonomialIdeal, default_of: str) -> betti_oracle.BettiTable:
        of = options.of or default_of
        if of not in ("ideal", "quotient"):
            raise DslSemanticError(f"--of admite 'ideal' o 'quotient', no '{of}'")
        bound = self._lattice_bound(options)
        if of == "quotient" and I.is_unit:
            raise InvalidArgumentError("El cociente por el ideal unidad es el módulo cero")
        table = betti_oracle.betti_table(I, bound)
        return table.to_quotient() if of == "quotient" else table

    def _betti(self, options: RunOptions, I: MonomialIdeal) -> Report:
        table = self._table(options, I, "ideal")
        return Report(command="betti", betti=_betti_out(table), bounds={"lattice_bound": self._lattice_bound(options)})

    def _pd(self, options: RunOptions, I: MonomialIdeal) -> Report:
        table = self._table(options, I, "quotient")
        return Report(command="pd", value=table.pd, notes=[f"convención: {table.convention}"])

    def _reg(self, options: RunOptions, I: MonomialIdeal) -> Report:
        table = self._table(options, I, "quotient")
        return Report(command="reg", value=table.reg, notes=[f"convención: {table.convention}"])

    def _closure(self, options: RunOptions, I: MonomialIdeal) -> Report:
        closure = integral_closure.integral_closure(I, options.closure_bound)
        members = []
        for g in closure.gens:
            if contains_monomial(I, g):
                continue
            membership = integral_closure.in_newton_polyhedron(g.exponents, I)
            members.append(
                NewtonCertificateOut(monomial=format_monomial(g), lambdas=[str(x) for x in membership.certificate])
            )
        return Report(
            command="closure", value=len(closure), ideal=format_ideal(closure),
            generators=[format_monomial(g) for g in closure.gens],
            certificate=ClosureCertificateOut(members=members) if members else None,
        )

    def _is_closed(self, options: RunOptions, I: MonomialIdeal) -> Report:
        closure = integral_closure.integral_closure(I, options.closure_bound)
        report = Report(command="is-closed", value=equals(closure, I))
        extra = next((g for g in closure.gens if not contains_monomial(I, g)), None)
        if extra is not None:
            report.witness = WitnessOut(
                kind="closure", u=format_monomial(extra), power=1,
                description=f"{format_monomial(extra)} está en la clausura y no en el ideal",
            )
            report.certificate = _newton_out(extra, integral_closure.in_newton_polyhedron(extra.exponents, I).certificate)
        return report

    def _is_normal(self, options: RunOptions, I: MonomialIdeal) -> Report:
        k = self.settings.NORMALITY_POWER if options.power is None else options.power
        result = integral_closure.is_normal_up_to(I, k, options.closure_bound)
        report = Report(command="is-normal", value=result.normal, bounds={"power": result.bound})
        if result.normal:
            report.notes.append(f"íntegramente cerrado hasta la potencia {result.bound}; no prueba la normalidad")
        else:
            w = format_monomial(result.witness)
            report.witness = WitnessOut(
                kind="closure", u=w, power=result.failing_power,
                description=f"{w} está en la clausura de I^{result.failing_power} y no en I^{result.failing_power}",
            )
            report.certificate = _newton_out(result.witness, result.certificate, result.failing_power)
        return report

    def _equal(self, options: RunOptions, I: MonomialIdeal, J: MonomialIdeal) -> Report:
        return Report(command="equal", value=equals(I, J))

    # gmpi
    def build_gmpi(
        self,
        base: BaseIdeal,
        family: Optional[SubstitutionFamily] = None,
        builtin: Optional[str] = None,
        sizes: Optional[Tuple[int, ...]] = None,
    ) -> Report:
        if family is None:
            if builtin is None or sizes is None:
                raise InvalidArgumentError("gmpi necesita --family o --builtin junto con --sizes")
            family = builtin_family(BUILTIN_ALIASES.get(builtin, builtin), base, sizes)
        check = validate_family(base, family, check_equigenerated=True)
        L = build(base, family)
        report = Report(
            command="gmpi", value=len(L), ideal=format_ideal(L),
            generators=[format_monomial(g) for g in L.gens],
        )
        report.notes.append(f"inclusiones verificadas: {len(check.inclusions)}")
        for eq in check.equigeneration:
            if not eq.holds:
                name = family.target.block_names[eq.block]
                report.notes.append(f"L_({name},{eq.exponent}) no está generado en grado {eq.exponent}")
        return report


def exit_code(report: Report, strict: bool) -> int:
    if report.status == "error":
        return 2
    if strict and report.command in BOOLEAN_COMMANDS and report.value is False:
        return 1
    return 0


def render_text(report: Report) -> str:
    if report.status == "error":
        err = report.error
        where = f"{err.line}:{err.column}: " if err.line is not None else ""
        tail = f" (se esperaba: {', '.join(err.expected)})" if err.expected else ""
        return f"error [{err.type}]: {where}{err.message}{tail}"
    if report.betti is not None:
        return report.betti.text
    lines = []
    if report.ideal is not None:
        lines.append(report.ideal)
    elif isinstance(report.value, bool):
        lines.append("true" if report.value else "false")
    elif report.value is not None:
        lines.append(str(report.value))
    if report.witness is not None:
        lines.append(f"testigo: {report.witness.description}")
    if report.certificate is not None and report.command in ("linquot", "rvalue"):
        lines.append("orden: " + ", ".join(report.certificate.order))
        lines.append("r: " + " ".join(str(r) for r in report.certificate.r_values))
    if report.command not in ("mingens", "closure", "gmpi"):
        lines.extend(report.notes)
    return "\n".join(lines)
