import logging
from fastapi import APIRouter, HTTPException
from gmpideals.core.errors import GmpiError
from gmpideals.parsers.family_file import parse_base_text, parse_family_text
from gmpideals.schemas.reports import BuildGmpiRequest, Report
from gmpideals.services.program_runner import ProgramRunner, error_report

logger = logging.getLogger(__name__)
router = APIRouter(prefix="/gmpi", tags=["GMPI"])


@router.post("/build", response_model=Report, response_model_exclude_none=True)
def build_gmpi(payload: BuildGmpiRequest):
    """
    Construye L(I; {L_ij}):
    - `base`: texto de archivo base (bloques de tamaño 1)
    - `builtin` o `family_lines`: familia integrada o explícita
    - `sizes`: tamaños de los bloques destino
    """
    if (payload.builtin is None) == (payload.family_lines is None):
        raise HTTPException(status_code=400, detail="Indicá exactamente uno de 'builtin' o 'family_lines'")
    try:
        base = parse_base_text(payload.base)
        family = None
        if payload.family_lines is not None:
            family = parse_family_text(payload.family_lines, base, payload.sizes)
        report = ProgramRunner().build_gmpi(base, family, payload.builtin, tuple(payload.sizes))
    except GmpiError as e:
        logger.warning("gmpi rechazado | %s: %s", type(e).__name__, e.message)
        raise HTTPException(
            status_code=e.http_status,
            detail=error_report("gmpi", e).model_dump(exclude_none=True),
        )
    logger.info("gmpi construido | %s generadores", report.value)
    return report
