import logging
from itertools import permutations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gmpideals.core.errors import InvalidArgumentError
from gmpideals.services.constructors import (
    mixed_product,
    mixed_sum,
    path_ideal_bipartite,
    squarefree_veronese,
    staircase,
    veronese,
)
from gmpideals.services.ideal_algebra import equals, format_ideal, from_generators, is_subideal, power, product
from gmpideals.services.ring_core import VariableContext, monomial_from_powers
from gmpideals.test.conftest import ideal_of
from gmpideals.test.property_settings import STANDARD_SETTINGS


def test_veronese():
    ctx = VariableContext.of(("x", 2))
    assert format_ideal(veronese(ctx, "x", 2)) == "(x1^2, x1*x2, x2^2)"
    assert veronese(ctx, "x", 0).is_unit
    with pytest.raises(InvalidArgumentError):
        veronese(ctx, "x", -1)


def test_squarefree_veronese():
    ctx = VariableContext.of(("x", 3), ("y", 1))
    assert format_ideal(squarefree_veronese(ctx, "x", 2)) == "(x1*x2, x1*x3, x2*x3)"
    assert squarefree_veronese(ctx, "y", 0).is_unit
    assert len(squarefree_veronese(ctx, "x", 3)) == 1


def test_squarefree_veronese_overflow_is_zero_with_warning(caplog):
    ctx = VariableContext.of(("x", 2))
    with caplog.at_level(logging.WARNING):
        I = squarefree_veronese(ctx, "x", 3)
    assert I.is_zero
    assert "excede" in caplog.text


def test_mixed_sum_and_mixed_product(xy33):
    expected = ideal_of(xy33, "sqV(x,2)*sqV(y,1) + sqV(x,1)*sqV(y,2)")
    assert equals(mixed_sum(xy33, [(2, 1), (1, 2)], squarefree=True), expected)
    assert equals(mixed_product(xy33, 2, 1, 1, 2), expected)
    with pytest.raises(InvalidArgumentError):
        mixed_product(xy33, 1, 1, 2, 2)  # p < q no se cumple
    with pytest.raises(InvalidArgumentError):
        mixed_product(xy33, 4, 1, 1, 2)


def test_mixed_sum_needs_two_blocks():
    with pytest.raises(InvalidArgumentError):
        mixed_sum(VariableContext.of(("x", 3)), [(1, 1)], squarefree=True)


def test_staircase_terms(xy22):
    L = staircase(xy22, 3)
    assert equals(L, ideal_of(xy22, "sqV(x,1)*sqV(y,2) + sqV(x,2)*sqV(y,1)"))
    assert {sum(g.exponents) for g in L.gens} == {3}
    with pytest.raises(InvalidArgumentError):
        staircase(xy22, 4)  # > m1 + m2 - 1
    with pytest.raises(InvalidArgumentError):
        staircase(xy22, 1)


def test_staircase_non_squarefree(xy22):
    L = staircase(xy22, 2, squarefree=False)
    assert equals(L, product(veronese(xy22, "x", 1), veronese(xy22, "y", 1)))


def _paths_bruteforce(ctx: VariableContext, t: int):
    xs = list(ctx.block_range("x"))
    ys = list(ctx.block_range("y"))
    gens = []
    for first, second in ((xs, ys), (ys, xs)):
        need_first = (t + 1) // 2
        need_second = t // 2
        for a in permutations(first, need_first):
            for b in permutations(second, need_second):
                vertices = set(a) | set(b)
                gens.append(monomial_from_powers(ctx, {v: 1 for v in vertices}))
    return from_generators(ctx, gens)


@pytest.mark.parametrize("t", [1, 2, 3, 4, 5])
def test_path_ideal_matches_enumerated_paths(xy33, t):
    assert equals(path_ideal_bipartite(xy33, t), _paths_bruteforce(xy33, t))


def test_path_ideal_rejects_t_zero(xy33):
    with pytest.raises(InvalidArgumentError):
        path_ideal_bipartite(xy33, 0)


@given(n=st.integers(1, 4), r=st.integers(1, 4))
@STANDARD_SETTINGS
def test_veronese_is_power_of_the_variables(n, r):
    ctx = VariableContext.of(("x", n))
    assert equals(veronese(ctx, "x", r), power(veronese(ctx, "x", 1), r))
    assert len(veronese(ctx, "x", r)) == comb(n + r - 1, r)


@given(n=st.integers(1, 5), r=st.integers(1, 5))
@STANDARD_SETTINGS
def test_squarefree_veronese_counts(n, r):
    ctx = VariableContext.of(("x", n))
    assert len(squarefree_veronese(ctx, "x", r)) == (comb(n, r) if r <= n else 0)


@given(n=st.integers(1, 4), a=st.integers(0, 4), b=st.integers(0, 4))
@STANDARD_SETTINGS
def test_higher_degrees_are_nested(n, a, b):
    ctx = VariableContext.of(("x", n))
    a, b = max(a, b), min(a, b)
    assert is_subideal(squarefree_veronese(ctx, "x", a), squarefree_veronese(ctx, "x", b))
    assert is_subideal(veronese(ctx, "x", a), veronese(ctx, "x", b))


@pytest.mark.parametrize(
    "build",
    [
        lambda ctx: veronese(ctx, "x", 3),
        lambda ctx: squarefree_veronese(ctx, "y", 2),
        lambda ctx: mixed_sum(ctx, [(2, 1), (1, 2)], squarefree=False),
        lambda ctx: mixed_product(ctx, 2, 1, 1, 2),
        lambda ctx: staircase(ctx, 4),
        lambda ctx: path_ideal_bipartite(ctx, 3),
    ],
)
def test_constructors_return_canonical_generators(xy33, build):
    L = build(xy33)
    assert from_generators(xy33, reversed(L.gens)).gens == L.gens
