"""Terms collapse to linear forms over the image ring.

A term in variables x1..xr evaluates to ``sum_x c_x * x`` where every c_x is a
block tuple, the image of a formal sum.  Scaling by lambda multiplies the
tuple by the diagonal (lambda, ..., lambda); adding terms adds tuples with the
block additions, so repeated additions of a variable fold through Phi.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from ..fbar import BlockTuple, image_ring, tuple_act, tuple_add, tuple_mul, tuple_neg
from ..space import TwistedSpace, decompose_blocks
from .syntax import Add, Equation, LinearAtom, Neg, Scale, Term, Var, Zero


def scalar_value(space: TwistedSpace, lit) -> int:
    return space.field.element(list(lit) if isinstance(lit, tuple) else lit)


def linear_form(space: TwistedSpace, t: Term) -> dict:
    """Variable -> raw component tuple, zero coefficients dropped."""
    n = decompose_blocks(space).count
    zero = (0,) * n

    def go(t: Term) -> dict:
        if isinstance(t, Zero):
            return {}
        if isinstance(t, Var):
            return {t.name: (1,) * n}
        if isinstance(t, Neg):
            return {x: tuple_neg(space, c) for x, c in go(t.arg).items()}
        if isinstance(t, Scale):
            lam = (scalar_value(space, t.scalar),) * n
            return {x: tuple_mul(space, lam, c) for x, c in go(t.arg).items()}
        if isinstance(t, Add):
            out = go(t.left)
            for x, c in go(t.right).items():
                out[x] = tuple_add(space, out.get(x, zero), c)
            return out
        raise TypeError(f"not a term: {t!r}")

    return {x: c for x, c in sorted(go(t).items()) if c != zero}


def normalize_term(space: TwistedSpace, t: Term) -> dict:
    """Variable -> BlockTuple (with its shortest formal-sum witness)."""
    ring = image_ring(space)
    return {x: ring.element(c) for x, c in linear_form(space, t).items()}


def subtract(space: TwistedSpace, a: Mapping, b: Mapping) -> tuple:
    n = decompose_blocks(space).count
    zero = (0,) * n
    out = dict(a)
    for x, c in b.items():
        out[x] = tuple_add(space, out.get(x, zero), tuple_neg(space, c))
    return tuple((x, c) for x, c in sorted(out.items()) if c != zero)


def normalize_atom(space: TwistedSpace, e: Equation) -> LinearAtom:
    """``lhs = rhs`` becomes ``lhs - rhs = 0`` (same polarity)."""
    return LinearAtom(subtract(space, linear_form(space, e.lhs), linear_form(space, e.rhs)), e.eq)


def eval_linear(space: TwistedSpace, coeffs, valuation: Mapping[str, Sequence[int]]) -> tuple:
    """Evaluate ``sum_x c_x * x`` from the tuple action on vectors."""
    items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
    out = space.zero()
    for x, c in items:
        comps = c.components if isinstance(c, BlockTuple) else c
        out = space.add(out, tuple_act(space, comps, valuation[x]))
    return out
