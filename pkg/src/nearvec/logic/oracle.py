"""Brute-force semantics over finite models.

The model for per-block dimensions ``dims`` is the direct sum of the space's
blocks, block j repeated ``dims[j]`` times (each copy uses the twist of the
block's first coordinate).  Evaluation is vectorized: free variables live on
axis 0 (one entry per valuation) and the quantifier at nesting depth k ranges
over axis k + 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from ..config import limits
from ..errors import SizeBoundExceeded, UnboundVariable
from ..space import TwistedSpace, decompose_blocks
from .linear import scalar_value
from .parser import parse_formula
from .syntax import (
    Add, And, Bottom, Equation, Exists, Forall, Formula, Implies, LinearAtom,
    Neg, Not, Or, Scale, Top, Var, Zero, count_atoms, free_vars,
)


def _depth(f: Formula) -> int:
    if isinstance(f, (Exists, Forall)):
        return 1 + _depth(f.body)
    if isinstance(f, Not):
        return _depth(f.arg)
    if isinstance(f, (And, Or)):
        return max((_depth(a) for a in f.args), default=0)
    if isinstance(f, Implies):
        return max(_depth(f.left), _depth(f.right))
    return 0


@lru_cache(maxsize=64)
def model_space(space: TwistedSpace, dims: tuple | None) -> TwistedSpace:
    if dims is None:
        return space
    dec = decompose_blocks(space)
    if len(dims) != dec.count:
        raise ValueError(f"{len(dims)} dimensions for {dec.count} blocks")
    if any(d < 1 for d in dims):
        raise ValueError("every block needs dimension at least 1")
    twists = tuple(space.twists[b[0]] for b, d in zip(dec.blocks, dims) for _ in range(d))
    size = space.field.q ** len(twists)
    bound = limits().size_bound
    if size > bound:
        raise SizeBoundExceeded(f"model with block dimensions {dims}", size, bound)
    return TwistedSpace(space.field, twists, space.block_card)


class _Evaluator:
    def __init__(self, model: TwistedSpace, depth: int):
        self.model = model
        self.t = model.tables
        self.depth = depth
        self.dec = decompose_blocks(model, verify=False)
        self._tuple_tables: dict = {}

    def _add(self, x, y):
        return self.t.add[x, y]

    def _tuple_table(self, comps: tuple) -> np.ndarray:
        tab = self._tuple_tables.get(comps)
        if tab is None:
            m = self.model
            F = m.field
            mult = np.array([m.sigma(i, comps[self.dec.block_of[i]]) for i in range(m.dim)])
            coords = F.mul(mult[None, :], self.t.coords)
            tab = np.asarray(coords).reshape(self.t.N, m.dim) @ self.t.powers
            self._tuple_tables[comps] = tab
        return tab

    def term(self, t, env):
        if isinstance(t, Zero):
            return np.zeros((1,) * (self.depth + 1), dtype=np.int64)
        if isinstance(t, Var):
            try:
                return env[t.name]
            except KeyError:
                raise UnboundVariable(t.name) from None
        if isinstance(t, Neg):
            return self.t.neg[self.term(t.arg, env)]
        if isinstance(t, Scale):
            return self.t.act[scalar_value(self.model, t.scalar)][self.term(t.arg, env)]
        if isinstance(t, Add):
            return self._add(self.term(t.left, env), self.term(t.right, env))
        raise TypeError(f"not a term: {t!r}")

    def formula(self, f, env, level):
        if isinstance(f, Top):
            return np.ones((1,) * (self.depth + 1), dtype=bool)
        if isinstance(f, Bottom):
            return np.zeros((1,) * (self.depth + 1), dtype=bool)
        if isinstance(f, Equation):
            r = self.term(f.lhs, env) == self.term(f.rhs, env)
            return r if f.eq else ~r
        if isinstance(f, LinearAtom):
            acc = np.zeros((1,) * (self.depth + 1), dtype=np.int64)
            for x, c in f.coeffs:
                acc = self._add(acc, self._tuple_table(c)[self.term(Var(x), env)])
            return (acc == 0) if f.eq else (acc != 0)
        if isinstance(f, Not):
            return ~self.formula(f.arg, env, level)
        if isinstance(f, And):
            out = self.formula(f.args[0], env, level)
            for a in f.args[1:]:
                out = out & self.formula(a, env, level)
            return out
        if isinstance(f, Or):
            out = self.formula(f.args[0], env, level)
            for a in f.args[1:]:
                out = out | self.formula(a, env, level)
            return out
        if isinstance(f, Implies):
            return ~self.formula(f.left, env, level) | self.formula(f.right, env, level)
        if isinstance(f, (Exists, Forall)):
            shape = [1] * (self.depth + 1)
            shape[level + 1] = self.t.N
            inner = dict(env)
            inner[f.var] = np.arange(self.t.N, dtype=np.int64).reshape(shape)
            body = self.formula(f.body, inner, level + 1)
            body = np.broadcast_to(body, body.shape[:level + 1] + (self.t.N,) + body.shape[level + 2:])
            red = np.any if isinstance(f, Exists) else np.all
            return red(body, axis=level + 1, keepdims=True)
        raise TypeError(f"not a formula: {f!r}")


def evaluate_many(space: TwistedSpace, f: Formula, names: Sequence[str],
                  columns: np.ndarray, dims: tuple | None = None) -> np.ndarray:
    """Truth of ``f`` for each row of ``columns`` (carrier indices, one column
    per name in ``names``)."""
    model = model_space(space, dims)
    depth = _depth(f)
    ev = _Evaluator(model, depth)
    columns = np.asarray(columns, dtype=np.int64)
    if columns.ndim == 1:
        columns = columns.reshape(-1, len(names))
    S = columns.shape[0]
    per_row = model.tables.N ** depth
    budget = limits().eval_budget
    chunk = max(1, budget // max(per_row, 1))
    out = np.empty(S, dtype=bool)
    for lo in range(0, S, chunk):
        block = columns[lo:lo + chunk]
        env = {x: block[:, i].reshape((-1,) + (1,) * depth) for i, x in enumerate(names)}
        r = ev.formula(f, env, 0)
        out[lo:lo + len(block)] = np.broadcast_to(r, (len(block),) + r.shape[1:]).reshape(len(block), -1)[:, 0]
    return out


def evaluate(space: TwistedSpace, f: Formula | str, valuation: Mapping[str, Sequence[int]],
             dims: Sequence[int] | None = None) -> bool:
    """Satisfaction of ``f`` in the model with block dimensions ``dims``
    (the space itself when ``dims`` is None)."""
    if isinstance(f, str):
        f = parse_formula(f)
    dims = None if dims is None else tuple(dims)
    model = model_space(space, dims)
    missing = sorted(free_vars(f) - set(valuation))
    if missing:
        raise UnboundVariable(missing[0])
    names = sorted(valuation)
    row = [model.index(model.check(valuation[x])) for x in names]
    return bool(evaluate_many(space, f, names, np.array([row]), dims)[0])


@dataclass
class EquivalenceReport:
    ok: bool
    counterexample: dict | None
    dims: tuple | None
    exhaustive: bool
    samples: int
    bound: int  # the model satisfies q^d > bound in every block
    variables: tuple = field(default_factory=tuple)

    def __bool__(self):
        return self.ok

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "counterexample": self.counterexample,
            "dims": list(self.dims) if self.dims is not None else None,
            "exhaustive": self.exhaustive,
            "samples": self.samples,
            "bound": self.bound,
        }


def adequate_dimension(q: int, bound: int) -> int:
    d = 1
    while q ** d <= bound:
        d += 1
    return d


def equivalent(space: TwistedSpace, f: Formula | str, g: Formula | str,
               exclusions: int | None = None, dims: Sequence[int] | None = None,
               on_space: bool = False, samples: int | None = None, seed: int | None = None) -> EquivalenceReport:
    """Compare f and g on a finite model of adequate dimension.

    The per-block dimension d is the least with q^d > bound, where bound is
    max(atoms of f, atoms of g), or max(atoms of f, exclusions) when g came
    from eliminating f and ``exclusions`` is the eliminator's record.  Pass
    ``dims`` to fix the dimension instead, or ``on_space`` to compare on the
    space itself (the right model for finite-declared blocks).  Valuations are
    enumerated when there are at most ``limits().exhaustive_valuations`` of
    them and the whole run fits ``limits().eval_budget``, otherwise ``samples`` are drawn uniformly with ``seed``.
    """
    if isinstance(f, str):
        f = parse_formula(f)
    if isinstance(g, str):
        g = parse_formula(g)
    lim = limits()
    if exclusions is None:
        bound = max(count_atoms(f), count_atoms(g))
    else:
        bound = max(count_atoms(f), exclusions)
    n = decompose_blocks(space).count
    if on_space:
        dims = decompose_blocks(space).block_dims
    elif dims is None:
        d = adequate_dimension(space.field.q, bound)
        dims = (d,) * n
    dims = tuple(dims)
    model = model_space(space, dims)
    names = tuple(sorted(free_vars(f) | free_vars(g)))
    N = model.tables.N
    total = N ** len(names)
    work = total * N ** max(_depth(f), _depth(g))
    if total <= lim.exhaustive_valuations and work <= lim.eval_budget:
        exhaustive = True
        columns = np.array(list(itertools.product(range(N), repeat=len(names))),
                           dtype=np.int64).reshape(total, len(names))
    else:
        exhaustive = False
        rng = np.random.default_rng(lim.seed if seed is None else seed)
        count = lim.samples if samples is None else samples
        columns = rng.integers(0, N, size=(count, len(names)))
    a = evaluate_many(space, f, names, columns, dims)
    b = evaluate_many(space, g, names, columns, dims)
    bad = np.flatnonzero(a != b)
    cex = None
    if bad.size:
        row = columns[bad[0]]
        cex = {x: list(model.vector(int(i))) for x, i in zip(names, row)}
    return EquivalenceReport(not bad.size, cex, dims, exhaustive, len(columns), bound, names)
