from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field


class WitnessOut(BaseModel):
    kind: str = Field(..., description="exchange | degree | squarefree | closure")
    u: str
    v: Optional[str] = None
    variable: Optional[str] = None
    power: Optional[int] = None
    description: str


class LinearQuotientCertificateOut(BaseModel):
    kind: Literal["linear_quotients"] = "linear_quotients"
    strategy: str
    order: List[str]
    colon_vars: List[List[str]]
    r_values: List[int]
    r: int = Field(..., description="Máximo de r_values")
    pd: int = Field(..., description="pd(T/I) leído del certificado")


class NewtonCertificateOut(BaseModel):
    monomial: str
    lambdas: List[str] = Field(..., description="Coeficientes λ exactos, en el orden de G(I^power)")


class ClosureCertificateOut(BaseModel):
    kind: Literal["newton"] = "newton"
    power: int = Field(1, description="Potencia de I cuyos generadores indexan los λ")
    members: List[NewtonCertificateOut]


class BettiEntryOut(BaseModel):
    i: int
    j: int
    rank: int


class BettiOut(BaseModel):
    convention: Literal["ideal", "quotient"]
    entries: List[BettiEntryOut]
    pd: int
    reg: int
    text: str


class ErrorOut(BaseModel):
    type: str
    message: str
    line: Optional[int] = None
    column: Optional[int] = None
    expected: Optional[List[str]] = None


class Report(BaseModel):
    command: str
    status: Literal["ok", "error"] = "ok"
    value: Optional[Union[bool, int, str]] = None
    ideal: Optional[str] = None
    generators: Optional[List[str]] = None
    witness: Optional[WitnessOut] = None
    certificate: Optional[Union[LinearQuotientCertificateOut, ClosureCertificateOut]] = None
    betti: Optional[BettiOut] = None
    incomplete: Optional[bool] = None
    bounds: Dict[str, int] = Field(default_factory=dict)
    notes: List[str] = Field(default_factory=list)
    error: Optional[ErrorOut] = None


class RunProgramRequest(BaseModel):
    source: str = Field(..., description="Programa completo: ring, asignaciones y comando")
    strict: bool = False
    strategy: Optional[str] = None
    of: Optional[Literal["ideal", "quotient"]] = None
    power: Optional[int] = Field(None, ge=1)
    exhaustive_threshold: Optional[int] = Field(None, ge=0)
    lattice_bound: Optional[int] = Field(None, ge=1)
    closure_bound: Optional[int] = Field(None, ge=1)


class BuildGmpiRequest(BaseModel):
    base: str = Field(..., description="Archivo base: ring de bloques de tamaño 1 y asignaciones")
    sizes: List[int] = Field(..., description="Tamaños m_1..m_n de los bloques destino")
    builtin: Optional[Literal["sqV", "V", "principal"]] = None
    family_lines: Optional[str] = Field(None, description="Contenido de un archivo de familia")
