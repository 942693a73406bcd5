import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nearvec import fbar
from nearvec.errors import BlockIndexOutOfRange, FieldMismatch, LengthMismatch, NotInImage
from nearvec.space import decompose_blocks, make_space


def brute_witnesses(S, max_len=8):
    """Lex-least shortest term multiset per tuple, by plain enumeration."""
    adds = decompose_blocks(S).additions
    found = {}
    for r in range(1, max_len + 1):
        for terms in itertools.combinations_with_replacement(range(S.field.q), r):
            t = tuple(a.fold(terms) for a in adds)
            found.setdefault(t, terms)
    return found


@pytest.mark.parametrize("S", [make_space(5, (1, 3)), make_space(7, (1, 5)), make_space(2, (1, 2), n=2),
                               make_space(5, (1, 3, 3)), make_space(5, (1, 1))], ids=str)
def test_witnesses_are_lex_least_shortest(S):
    ring = fbar.image_ring(S)
    brute = brute_witnesses(S)
    assert set(brute) == set(ring.witnesses)
    for t, terms in brute.items():
        assert ring.witnesses[t].terms == terms


def test_phi_examples(f5_13):
    F = f5_13.field
    assert fbar.phi_eval(f5_13, fbar.parse_formal_sum("1+.1", F)).components == (2, 3)
    assert fbar.phi_eval(f5_13, fbar.parse_formal_sum("1+.1+.1+.1+.1", F)).components == (0, 0)
    assert fbar.phi_eval(f5_13, fbar.parse_formal_sum("4", F)).components == (4, 4)
    assert fbar.phi_eval(f5_13, fbar.parse_formal_sum("1+.1+.1", F)).components == (3, 2)
    s = fbar.parse_formal_sum("1+.1+.1+.3", F)
    assert fbar.phi_eval(f5_13, s).components == (1, 0)
    assert not fbar.is_automorphism(f5_13, s)
    assert fbar.is_automorphism(f5_13, fbar.parse_formal_sum("1+.1+.1", F))


def test_ring_sizes(f5_13, f7_15):
    assert len(fbar.image_ring(f5_13)) == 25
    assert len(fbar.image_ring(f7_15)) == 49
    assert len(fbar.image_ring(make_space(5, (1, 1)))) == 5


@pytest.mark.parametrize("S", [make_space(5, (1, 3)), make_space(7, (1, 5)), make_space(5, (1, 3, 3))], ids=str)
def test_witness_actions_match_tuples(S):
    ring = fbar.image_ring(S)
    for t in ring.elements():
        assert fbar.action_matches(S, t)


@pytest.mark.parametrize("S", [make_space(5, (1, 3)), make_space(7, (1, 5, 1))], ids=str)
def test_ring_closed(S):
    ring = fbar.image_ring(S)
    for a, b in itertools.product(ring, repeat=2):
        assert fbar.tuple_add(S, a, b) in ring
        assert fbar.tuple_mul(S, a, b) in ring
    assert fbar.frac_units_closed(S)


def test_idempotents(f5_13):
    F = f5_13.field
    for j in range(2):
        e = fbar.separating_idempotent(f5_13, j)
        assert fbar.phi_eval(f5_13, e).components == fbar.unit_tuple(f5_13, j)
        # e o e acts like e
        assert np.array_equal(fbar.sum_act_table(f5_13, e.compose(e, F)), fbar.sum_act_table(f5_13, e))
    with pytest.raises(BlockIndexOutOfRange):
        fbar.separating_idempotent(f5_13, 2)
    one_block = make_space(5, (1,))
    assert fbar.separating_idempotent(one_block, 0).terms == (1,)


def test_preimage(f5_13):
    assert fbar.crt_preimage(f5_13, (3, 3)).terms == (3,)
    with pytest.raises(LengthMismatch):
        fbar.crt_preimage(f5_13, (1, 0, 0))
    # the ring is the full product, so only a component outside F misses it
    with pytest.raises(NotInImage):
        fbar.crt_preimage(make_space(5, (1, 1)), (7,))


def test_aut_set_equal(f5_13):
    assert fbar.aut_set_equal(f5_13, make_space(5, (3, 1)))
    assert not fbar.aut_set_equal(f5_13, make_space(5, (1, 1)))
    assert fbar.aut_set_equal(f5_13, make_space(5, (1, 3, 3)))
    with pytest.raises(FieldMismatch):
        fbar.aut_set_equal(f5_13, make_space(7, (1,)))


@given(st.lists(st.integers(0, 4), min_size=1, max_size=6), st.lists(st.integers(0, 4), min_size=1, max_size=6))
def test_phi_is_a_ring_homomorphism(a, b):
    S = make_space(5, (1, 3))
    F = S.field
    sa, sb = fbar.FormalSum(tuple(a)), fbar.FormalSum(tuple(b))
    pa, pb = fbar.phi_eval(S, sa).components, fbar.phi_eval(S, sb).components
    assert fbar.phi_eval(S, sa.concat(sb)).components == fbar.tuple_add(S, pa, pb)
    assert fbar.phi_eval(S, sa.compose(sb, F)).components == fbar.tuple_mul(S, pa, pb)
    assert np.array_equal(fbar.sum_act_table(S, sa),
                          [S.index(fbar.tuple_act(S, pa, v)) for v in S.vectors()])


def test_zero_pattern_separates_blocks(f5_13):
    adds = decompose_blocks(f5_13).additions
    assert fbar.zero_pattern(adds[0]) != fbar.zero_pattern(adds[1])
