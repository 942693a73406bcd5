import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nearvec import gf
from nearvec.errors import (
    BlockIndexOutOfRange, DimensionMismatch, NotInQuasiKernel, SizeBoundExceeded, ZeroGenerator,
)
from nearvec.space import (
    TwistedSpace, as_generic, compatible, coords, decompose_blocks, in_quasi_kernel,
    induced_addition, is_regular, is_vector_space, make_space, morley_report, quasi_kernel,
    scalar_act, validate_fgroup, check_block,
)

import mutations


def brute_quasi_kernel(S):
    """Straight from the definition: for all a, b some c has a u + b u = c u."""
    F = S.field
    out = set()
    for u in S.vectors():
        mult = {c: scalar_act(S, c, u) for c in range(F.q)}
        images = set(mult.values())
        if all(S.add(mult[a], mult[b]) in images for a in range(F.q) for b in range(F.q)):
            out.add(u)
    return frozenset(out)


SPACES = [make_space(5, (1, 3)), make_space(7, (1, 5)), make_space(2, (1, 2), n=2),
          make_space(5, (1, 3, 3)), make_space(5, (1, 1)), make_space(7, (1, 5, 1))]


@pytest.mark.parametrize("S", SPACES, ids=str)
def test_quasi_kernel_matches_definition(S):
    assert quasi_kernel(S) == brute_quasi_kernel(S)


def test_worked_examples(f5_13, f7_15):
    assert scalar_act(f5_13, 3, (2, 2)) == (1, 4)
    assert len(quasi_kernel(f5_13)) == 9
    assert len(quasi_kernel(f7_15)) == 13
    plus = induced_addition(f5_13, (0, 1))
    assert plus(1, 1) == 3
    assert not compatible(f5_13, (1, 0), (0, 1))
    assert compatible(make_space(2, (1, 2), n=2), (1, 0), (0, 1))
    assert coords(f5_13, (1, 4)) == (1, 4)
    assert coords(f5_13, (0, 2)) == (0, 3)


def test_blocks():
    dec = decompose_blocks(make_space(5, (1, 3, 3)))
    assert dec.blocks == ((0,), (1, 2))
    assert decompose_blocks(make_space(3, (1, 3), n=2)).count == 1
    assert morley_report(make_space(5, (1, 3, 3))) == (2, 1)
    with pytest.raises(BlockIndexOutOfRange):
        check_block(make_space(5, (1, 3)), 2)


@pytest.mark.parametrize("S", SPACES, ids=str)
def test_block_projection_and_addition(S):
    dec = decompose_blocks(S)
    for v in S.vectors():
        parts = [dec.project(j, v) for j in range(dec.count)]
        total = S.zero()
        for p in parts:
            total = S.add(total, p)
        assert total == v
    for j, b in enumerate(dec.blocks):
        for i in b:
            assert induced_addition(S, S.axis(i)) == dec.additions[j]


def test_properties(f5_13, f4_12):
    assert not is_regular(f5_13) and is_regular(f4_12)
    assert not is_vector_space(f5_13) and is_vector_space(make_space(5, (1, 1)))


def test_errors(f5_13):
    with pytest.raises(ZeroGenerator):
        induced_addition(f5_13, (0, 0))
    with pytest.raises(NotInQuasiKernel):
        induced_addition(f5_13, (1, 1))
    with pytest.raises(DimensionMismatch):
        scalar_act(f5_13, 2, (1, 2, 3))
    with pytest.raises(ValueError):
        make_space(5, (2,))
    with pytest.raises(SizeBoundExceeded):
        quasi_kernel(make_space(5, (1,) * 6))


def test_size_bound_env(monkeypatch):
    monkeypatch.setenv("NEARVEC_SIZE_BOUND", "100")
    with pytest.raises(SizeBoundExceeded):
        quasi_kernel(make_space(5, (1, 3, 3)))


@given(st.sampled_from(SPACES), st.data())
def test_action_is_fixed_point_free_and_additive(S, data):
    F = S.field
    u = data.draw(st.tuples(*[st.integers(0, F.q - 1)] * S.dim))
    v = data.draw(st.tuples(*[st.integers(0, F.q - 1)] * S.dim))
    a = data.draw(st.integers(0, F.q - 1))
    b = data.draw(st.integers(0, F.q - 1))
    assert scalar_act(S, a, S.add(u, v)) == S.add(scalar_act(S, a, u), scalar_act(S, a, v))
    assert scalar_act(S, a, scalar_act(S, b, u)) == scalar_act(S, F.mul(a, b), u)
    if a != b and any(u):
        assert scalar_act(S, a, u) != scalar_act(S, b, u)


@pytest.mark.parametrize("S", SPACES, ids=str)
def test_lambda_u_gives_same_addition(S):
    for u in quasi_kernel(S):
        if not any(u):
            continue
        plus = induced_addition(S, u)
        for lam in range(1, S.field.q):
            assert induced_addition(S, scalar_act(S, lam, u)) == plus
        # (F, +_u, .) is a field: +_u is a commutative group law distributing over .
        t = plus.table
        assert np.array_equal(t, t.T)
        F = S.field
        for a, b, c in itertools.product(range(F.q), repeat=3):
            assert F.mul(a, t[b, c]) == t[F.mul(a, b), F.mul(a, c)]


def test_mutation_families():
    for m in mutations.all_mutations():
        assert validate_fgroup(m.group).violated == {m.target}, m.name


def test_validate_generic_copy_roundtrip(f5_13):
    g = as_generic(f5_13)
    assert validate_fgroup(g).ok
    bad = g.copy()
    bad.add[1, 2], bad.add[1, 3] = bad.add[1, 3], bad.add[1, 2]
    assert "F1" in validate_fgroup(bad).violated
    assert validate_fgroup(g).ok
