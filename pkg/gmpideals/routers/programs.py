import logging
from fastapi import APIRouter, HTTPException
from gmpideals.core.errors import GmpiError
from gmpideals.schemas.reports import Report, RunProgramRequest
from gmpideals.services.program_runner import ProgramRunner, RunOptions, error_report

logger = logging.getLogger(__name__)
router = APIRouter(prefix="/programs", tags=["Programs"])


@router.post("/run", response_model=Report, response_model_exclude_none=True)
def run_program(payload: RunProgramRequest):
    """
    Ejecuta un programa completo y devuelve el mismo reporte que
    `gmpideals run --json`.
    - Errores de entrada -> 400 con el reporte de error en `detail`
    - Cotas de recursos superadas -> 422
    """
    options = RunOptions(
        strict=payload.strict,
        strategy=payload.strategy,
        of=payload.of,
        power=payload.power,
        exhaustive_threshold=payload.exhaustive_threshold,
        lattice_bound=payload.lattice_bound,
        closure_bound=payload.closure_bound,
    )
    logger.debug("Programa recibido | %d caracteres", len(payload.source))
    try:
        report = ProgramRunner(options).run_source(payload.source)
    except GmpiError as e:
        logger.warning("Programa rechazado | %s: %s", type(e).__name__, e.message)
        raise HTTPException(
            status_code=e.http_status,
            detail=error_report("run", e).model_dump(exclude_none=True),
        )
    return report
