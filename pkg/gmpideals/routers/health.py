import logging
from fastapi import APIRouter
from gmpideals.services.betti_oracle import pd_of_quotient
from gmpideals.services.constructors import squarefree_veronese
from gmpideals.services.ring_core import VariableContext

router = APIRouter(prefix="/health", tags=["Health"])
logger = logging.getLogger(__name__)


@router.get("")
async def health():
    status = {"engine": False, "status": "fail"}

    # Cálculo mínimo: (x1, x2) tiene resolución de Koszul, pd del cociente = 2
    try:
        ctx = VariableContext.of(("x", 2))
        status["engine"] = pd_of_quotient(squarefree_veronese(ctx, "x", 1)) == 2
    except Exception as e:
        logger.error("Motor error: %s", e)

    status["status"] = "ok" if status["engine"] else "fail"
    return status
