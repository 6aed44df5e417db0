"""
Línea de comandos.

    gmpideals run PROGRAMA|- [--json] [--strict] [--strategy S] [--of ideal|quotient] ...
    gmpideals gmpi --base BASE (--family FAMILIA | --builtin sqV|V|principal) --sizes 3,3
    gmpideals schema

Códigos de salida: 0 calculado, 1 propiedad falsa con --strict, 2 error de
entrada, 3 cota de recursos superada. Los logs van a stderr.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from gmpideals.core.errors import GmpiError, InvalidArgumentError
from gmpideals.core.settings import get_settings
from gmpideals.parsers.family_file import load_base, load_family
from gmpideals.schemas.reports import Report
from gmpideals.services.program_runner import (
    BUILTIN_ALIASES,
    ProgramRunner,
    RunOptions,
    error_report,
    exit_code,
    render_text,
)

logger = logging.getLogger("gmpideals")


def _sizes(text: str) -> List[int]:
    try:
        sizes = [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"tamaños inválidos: '{text}' (ej: 3,3)") from None
    if any(s < 1 for s in sizes):
        raise argparse.ArgumentTypeError("los tamaños deben ser >= 1")
    return sizes


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = argparse.ArgumentParser(
        prog="gmpideals",
        description="Ideales de producto mixto generalizado: construcción y propiedades.",
    )
    parser.add_argument("--log-level", default=settings.LOG_LEVEL, help="Nivel de log (a stderr)")
    sub = parser.add_subparsers(dest="action", required=True)

    run = sub.add_parser("run", help="Ejecuta un programa (archivo o '-' para stdin)")
    run.add_argument("program", help="Ruta del programa o '-'")
    run.add_argument("--json", action="store_true", help="Salida JSON")
    run.add_argument("--strict", action="store_true", help="Veredicto falso -> código de salida 1")
    run.add_argument("--strategy", choices=("lex", "revlex", "exhaustive", "auto"))
    run.add_argument("--of", choices=("ideal", "quotient"))
    run.add_argument("--power", type=int, help=f"Cota de potencias para is-normal (def. {settings.NORMALITY_POWER})")
    run.add_argument("--exhaustive-threshold", type=int, help=f"def. {settings.EXHAUSTIVE_THRESHOLD}")
    run.add_argument("--lattice-bound", type=int, help=f"def. {settings.LATTICE_BOUND}")
    run.add_argument("--closure-bound", type=int, help=f"def. {settings.CLOSURE_BOX_BOUND}")

    gmpi = sub.add_parser("gmpi", help="Construye L(I; {L_ij}) desde archivos")
    gmpi.add_argument("--base", required=True, type=Path, help="Archivo base")
    source = gmpi.add_mutually_exclusive_group(required=True)
    source.add_argument("--family", type=Path, help="Archivo de familia")
    source.add_argument("--builtin", choices=tuple(BUILTIN_ALIASES))
    gmpi.add_argument("--sizes", required=True, type=_sizes, help="Tamaños m_1,..,m_n")
    gmpi.add_argument("--json", action="store_true", help="Salida JSON")

    sub.add_parser("schema", help="Imprime el JSON schema del reporte")
    return parser


def _emit(report: Report, as_json: bool) -> None:
    if as_json:
        print(report.model_dump_json(indent=2, exclude_none=True))
    else:
        print(render_text(report))


def _read_program(target: str) -> str:
    if target == "-":
        return sys.stdin.read()
    return Path(target).read_text(encoding="utf-8")


def _run(args: argparse.Namespace) -> int:
    options = RunOptions(
        strict=args.strict,
        strategy=args.strategy,
        of=args.of,
        power=args.power,
        exhaustive_threshold=args.exhaustive_threshold,
        lattice_bound=args.lattice_bound,
        closure_bound=args.closure_bound,
    )
    try:
        runner = ProgramRunner(options)
        report = runner.run_source(_read_program(args.program))
    except OSError as e:
        logger.error("No se pudo leer el programa: %s", e)
        _emit(error_report("run", InvalidArgumentError(f"No se pudo leer el programa: {e}")), args.json)
        return 2
    except GmpiError as e:
        logger.error("%s: %s", type(e).__name__, e.message)
        _emit(error_report("run", e), args.json)
        return e.exit_code
    _emit(report, args.json)
    return exit_code(report, runner.effective_options.strict)


def _gmpi(args: argparse.Namespace) -> int:
    try:
        base = load_base(args.base)
        family = load_family(args.family, base, args.sizes) if args.family else None
        report = ProgramRunner().build_gmpi(base, family, args.builtin, tuple(args.sizes))
    except OSError as e:
        logger.error("No se pudo leer un archivo: %s", e)
        _emit(error_report("gmpi", InvalidArgumentError(f"No se pudo leer un archivo: {e}")), args.json)
        return 2
    except GmpiError as e:
        logger.error("%s: %s", type(e).__name__, e.message)
        _emit(error_report("gmpi", e), args.json)
        return e.exit_code
    _emit(report, args.json)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.INFO),
        format="%(asctime)s | %(levelname)s | %(name)s | %(message)s",
        stream=sys.stderr,
    )
    if args.action == "schema":
        print(json.dumps(Report.model_json_schema(), indent=2, sort_keys=True))
        return 0
    if args.action == "gmpi":
        return _gmpi(args)
    return _run(args)


if __name__ == "__main__":
    sys.exit(main())
