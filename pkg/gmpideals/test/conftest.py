import pytest
from hypothesis import strategies as st

from gmpideals.core.settings import get_settings
from gmpideals.parsers.dsl import parse_ideal_text
from gmpideals.services.ideal_algebra import MonomialIdeal, from_generators
from gmpideals.services.ring_core import Monomial, VariableContext


def ideal_of(context: VariableContext, text: str) -> MonomialIdeal:
    """Atajo de los tests: '(x1^2, x1*y1)' -> MonomialIdeal."""
    return parse_ideal_text(context, text)


def mono(context: VariableContext, text: str) -> Monomial:
    (g,) = ideal_of(context, f"({text})").gens
    return g


def monomials_in(context: VariableContext, max_exponent: int = 3):
    """Estrategia: monomios del contexto con exponentes acotados."""
    return st.tuples(*[st.integers(0, max_exponent)] * context.total_vars).map(lambda e: Monomial(context, e))


def ideals_in(context: VariableContext, max_exponent: int = 2, max_gens: int = 4):
    """Estrategia: ideales monomiales no nulos en el contexto dado."""
    exponents = st.tuples(*[st.integers(0, max_exponent)] * context.total_vars)
    return st.lists(exponents, min_size=1, max_size=max_gens).map(
        lambda rows: from_generators(context, [Monomial(context, e) for e in rows])
    )


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Cada test ve la configuración por defecto, sin .env ni variables heredadas."""
    for name in ("EXHAUSTIVE_THRESHOLD", "LATTICE_BOUND", "NORMALITY_POWER", "CLOSURE_BOX_BOUND"):
        monkeypatch.delenv(name, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def xy22() -> VariableContext:
    return VariableContext.of(("x", 2), ("y", 2))


@pytest.fixture
def xy33() -> VariableContext:
    return VariableContext.of(("x", 3), ("y", 3))
