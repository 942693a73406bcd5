"""Quantifier elimination for spaces with finitely many blocks.

Each existential is removed innermost first:

1. atoms become linear atoms ``sum c_x x = 0`` / ``!= 0`` over block tuples;
2. every atom mentioning the bound variable w is split into its block
   projections (coefficients multiplied by the separating idempotent e_j): an
   equation becomes the conjunction of its projections, a disequation the
   disjunction;
3. the matrix is put in disjunctive normal form;
4. inside a disjunct, block by block: an equation with a nonzero block-j
   coefficient on w is solved for w_j and substituted into the other block-j
   atoms; otherwise the remaining block-j disequations each exclude one value
   of w_j and are dropped, provided the block has room for a witness;
5. the disjuncts are recombined and simplified.

Atoms with pairwise disjoint block supports over the same variables are
merged again before rendering, so per-block equations collapse back into one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..config import limits
from ..errors import CapacityExceeded, InconsistencyError
from ..fbar import image_ring, tuple_add, tuple_mul, tuple_neg, unit_tuple
from ..space import TwistedSpace, check_block, decompose_blocks
from .linear import normalize_atom
from .parser import parse_formula
from .syntax import (
    FALSE, TRUE, And, Bottom, Equation, Exists, Forall, Formula, Implies,
    LinearAtom, Neg, Not, Or, Scale, Top, Var, Zero, Add, conj, disj, free_vars,
)


# -- block cardinalities -----------------------------------------------------------

@dataclass(frozen=True)
class BlockCardinality:
    """Per block: ``None`` for an infinite block, else its number of points."""

    capacities: tuple

    @classmethod
    def of(cls, space: TwistedSpace, card=None) -> "BlockCardinality":
        if isinstance(card, BlockCardinality):
            return card
        dec = decompose_blocks(space)
        decl = space.block_card if card is None else card
        kinds = (decl,) * dec.count if isinstance(decl, str) else tuple(decl)
        if len(kinds) != dec.count:
            raise ValueError(f"{len(kinds)} cardinality declarations for {dec.count} blocks")
        q = space.field.q
        caps = []
        for kind, dim in zip(kinds, dec.block_dims):
            if kind == "infinite":
                caps.append(None)
            elif kind == "finite":
                caps.append(q ** dim)
            else:
                raise ValueError(f"bad block cardinality {kind!r}")
        return cls(tuple(caps))

    def is_infinite(self, j: int) -> bool:
        return self.capacities[j] is None


# -- helpers on linear atoms ----------------------------------------------------------

def _key(a: LinearAtom):
    return (a.coeffs, not a.eq)


def _support(a: LinearAtom) -> frozenset:
    return frozenset(j for _, c in a.coeffs for j, x in enumerate(c) if x)


def _project(space: TwistedSpace, a: LinearAtom, j: int) -> LinearAtom:
    e = unit_tuple(space, j)
    coeffs = tuple((x, tuple_mul(space, e, c)) for x, c in a.coeffs)
    return LinearAtom(tuple((x, c) for x, c in coeffs if any(c)), a.eq)


def _combine(space: TwistedSpace, a, b, scale_b=None, j=None):
    """Coefficients of a + s*b (s a field scalar acting on block j only)."""
    n = decompose_blocks(space).count
    zero = (0,) * n
    out = dict(a)
    for x, c in b:
        if scale_b is not None:
            lam = tuple(scale_b if i == j else 0 for i in range(n))
            c = tuple_mul(space, lam, c)
        out[x] = tuple_add(space, out.get(x, zero), c)
    return tuple((x, c) for x, c in sorted(out.items()) if any(c))


def _const(a: LinearAtom) -> Formula:
    """Fold a constant atom: ``0 = 0`` is true, ``0 != 0`` false."""
    if a.is_constant:
        return TRUE if a.eq else FALSE
    return a


# -- normal forms ------------------------------------------------------------------------

def _nnf(f: Formula, negate: bool = False) -> Formula:
    if isinstance(f, LinearAtom):
        return _const(f.negate() if negate else f)
    if isinstance(f, Top):
        return FALSE if negate else TRUE
    if isinstance(f, Bottom):
        return TRUE if negate else FALSE
    if isinstance(f, Not):
        return _nnf(f.arg, not negate)
    if isinstance(f, And):
        parts = [_nnf(a, negate) for a in f.args]
        return disj(*parts) if negate else conj(*parts)
    if isinstance(f, Or):
        parts = [_nnf(a, negate) for a in f.args]
        return conj(*parts) if negate else disj(*parts)
    raise TypeError(f"unexpected node in a quantifier-free matrix: {f!r}")


def _absorb(disjuncts) -> list:
    """Drop contradictory and subsumed disjuncts; keep a stable order."""
    out = []
    for d in sorted(set(disjuncts), key=lambda d: (len(d), sorted(map(_key, d)))):
        if any(a.negate() in d for a in d):
            continue
        if any(e <= d for e in out):
            continue
        out.append(d)
    return out


def _dnf(f: Formula) -> list:
    """NNF formula -> list of frozensets of literals."""
    if isinstance(f, Top):
        return [frozenset()]
    if isinstance(f, Bottom):
        return []
    if isinstance(f, LinearAtom):
        return [frozenset([f])]
    if isinstance(f, Or):
        return _absorb([d for a in f.args for d in _dnf(a)])
    if isinstance(f, And):
        acc = [frozenset()]
        for a in f.args:
            acc = _absorb([x | y for x in acc for y in _dnf(a)])
            if not acc:
                break
        return acc
    raise TypeError(f"unexpected node in NNF: {f!r}")


def _from_dnf(disjuncts) -> Formula:
    return disj(*(conj(*sorted(d, key=_key)) for d in disjuncts))


# -- the eliminator ------------------------------------------------------------------------

class QuantifierEliminator:
    """Eliminates quantifiers over one space; records the largest number of
    points excluded for a bound variable in any block (``max_exclusions``)."""

    def __init__(self, space: TwistedSpace, card=None):
        self.space = space
        self.card = BlockCardinality.of(space, card)
        self.blocks = decompose_blocks(space).count
        self.max_exclusions = 0

    # public entry points
    def eliminate(self, f: Formula | str) -> Formula:
        """Quantifier-free formula over linear atoms, simplified."""
        if isinstance(f, str):
            f = parse_formula(f)
        return simplify(self.space, self._qf(f))

    def __call__(self, f: Formula | str) -> Formula:
        if isinstance(f, str):
            f = parse_formula(f)
        return to_syntax(self.space, self.eliminate(f), order=_appearance(f))

    # recursion
    def _qf(self, f: Formula) -> Formula:
        if isinstance(f, (Top, Bottom)):
            return f
        if isinstance(f, Equation):
            return _const(normalize_atom(self.space, f))
        if isinstance(f, LinearAtom):
            return _const(f)
        if isinstance(f, Not):
            return _nnf(self._qf(f.arg), True)
        if isinstance(f, And):
            return conj(*(self._qf(a) for a in f.args))
        if isinstance(f, Or):
            return disj(*(self._qf(a) for a in f.args))
        if isinstance(f, Implies):
            return disj(_nnf(self._qf(f.left), True), self._qf(f.right))
        if isinstance(f, Exists):
            return self.exists(f.var, self._qf(f.body))
        if isinstance(f, Forall):
            return _nnf(self.exists(f.var, _nnf(self._qf(f.body), True)), True)
        raise TypeError(f"not a formula: {f!r}")

    def _split(self, f: Formula, w: str) -> Formula:
        if isinstance(f, LinearAtom):
            if f.coeff(w) is None:
                return f
            parts = [_const(_project(self.space, f, j)) for j in range(self.blocks)]
            return conj(*parts) if f.eq else disj(*parts)
        if isinstance(f, And):
            return conj(*(self._split(a, w) for a in f.args))
        if isinstance(f, Or):
            return disj(*(self._split(a, w) for a in f.args))
        return f

    def exists(self, w: str, matrix: Formula) -> Formula:
        """Eliminate ``E w.`` in front of a quantifier-free NNF matrix."""
        matrix = self._split(_nnf(matrix), w)
        out = []
        for d in _dnf(matrix):
            r = self._disjunct(w, d)
            if r is not None:
                out.append(r)
        return _from_dnf(_absorb(out))

    def _disjunct(self, w: str, lits: frozenset):
        F = self.space.field
        lits = set(lits)
        for j in range(self.blocks):
            mentions = sorted((a for a in lits if (c := a.coeff(w)) is not None and c[j]), key=_key)
            if not mentions:
                continue
            eqs = [a for a in mentions if a.eq]
            if eqs:
                e = eqs[0]
                cinv = F.inv(e.coeff(w)[j])
                lits -= set(mentions)
                for a in mentions:
                    if a is e:
                        continue
                    s = F.neg(F.mul(a.coeff(w)[j], cinv))
                    lits.add(LinearAtom(_combine(self.space, a.coeffs, e.coeffs, s, j), a.eq))
            else:
                m = len(mentions)
                self.max_exclusions = max(self.max_exclusions, m)
                cap = self.card.capacities[j]
                if cap is not None and m >= cap:
                    raise CapacityExceeded(j, m, cap)
                lits -= set(mentions)
        folded = set()
        for a in lits:
            c = _const(a)
            if c == FALSE:
                return None
            if c != TRUE:
                folded.add(c)
        return frozenset(folded)


# -- simplification and merging ----------------------------------------------------------------

def _merge(space: TwistedSpace, atoms: list) -> list:
    """Merge atoms (all equations or all disequations) over the same variables
    whose block supports are pairwise disjoint."""
    groups: list[list] = []
    for a in atoms:
        for g in groups:
            if g[0].variables == a.variables and all(not (_support(a) & _support(b)) for b in g[1]):
                g[0] = LinearAtom(_combine(space, g[0].coeffs, a.coeffs), a.eq)
                g[1].append(a)
                break
        else:
            groups.append([a, [a]])
    return [g[0] for g in groups]


def simplify(space: TwistedSpace, f: Formula) -> Formula:
    """NNF with constant folding, duplicate removal, absorption and merging
    of block-split atoms."""
    f = _nnf(f) if not isinstance(f, (Top, Bottom)) else f
    return _simp(space, f)


def _simp(space: TwistedSpace, f: Formula) -> Formula:
    if not isinstance(f, (And, Or)):
        return f
    is_and = isinstance(f, And)
    flat = []
    for a in f.args:
        a = _simp(space, a)
        if isinstance(a, type(f)):
            flat.extend(a.args)
        else:
            flat.append(a)
    # dedupe preserving order
    seen, args = set(), []
    for a in flat:
        if a not in seen:
            seen.add(a)
            args.append(a)
    # absorption: x & (x | y) -> x ;  x | (x & y) -> x
    inner = Or if is_and else And
    lits = {a for a in args if not isinstance(a, inner)}
    args = [a for a in args if not (isinstance(a, inner) and lits & set(a.args))]
    # a literal and its negation
    atoms = [a for a in args if isinstance(a, LinearAtom)]
    if any(a.negate() in seen for a in atoms):
        return FALSE if is_and else TRUE
    pol = is_and  # equations merge under &, disequations under |
    mergeable = [a for a in atoms if a.eq == pol]
    merged = _merge(space, mergeable)
    if len(merged) < len(mergeable):
        it = iter(merged)
        rebuilt, placed = [], False
        for a in args:
            if isinstance(a, LinearAtom) and a.eq == pol:
                if not placed:
                    rebuilt.extend(it)
                    placed = True
                continue
            rebuilt.append(a)
        args = rebuilt
    return conj(*args) if is_and else disj(*args)


# -- rendering ----------------------------------------------------------------------------------

def _appearance(f: Formula) -> list:
    """Free variables in order of first appearance."""
    order: list[str] = []
    free = free_vars(f)

    def term(t):
        if isinstance(t, Var):
            if t.name in free and t.name not in order:
                order.append(t.name)
        elif isinstance(t, (Neg, Scale)):
            term(t.arg)
        elif isinstance(t, Add):
            term(t.left)
            term(t.right)

    def go(g):
        if isinstance(g, Equation):
            term(g.lhs)
            term(g.rhs)
        elif isinstance(g, LinearAtom):
            for x in g.variables:
                if x not in order:
                    order.append(x)
        elif isinstance(g, Not):
            go(g.arg)
        elif isinstance(g, (And, Or)):
            for a in g.args:
                go(a)
        elif isinstance(g, Implies):
            go(g.left)
            go(g.right)
        elif isinstance(g, (Exists, Forall)):
            go(g.body)

    go(f)
    return order


def _scalar_literal(field, a: int):
    if a < field.p:
        return a
    return tuple(int(c) for c in field.digits[a])


def _scaled(space: TwistedSpace, comps: tuple, x: str):
    """Term for ``comps * x``, written with the shortest formal-sum witness."""
    F = space.field
    w = image_ring(space).witnesses[comps]
    parts = [Var(x) if a == 1 else Scale(_scalar_literal(F, a), Var(x)) for a in w.terms]
    t = parts[0]
    for p in parts[1:]:
        t = Add(t, p)
    return t


def _cost(space: TwistedSpace, comps: tuple):
    w = image_ring(space).witnesses[comps]
    return (len(w), w.terms)


def _sum(ts: list):
    if not ts:
        return Zero()
    t = ts[0]
    for s in ts[1:]:
        t = Add(t, s)
    return t


def atom_to_equation(space: TwistedSpace, a: LinearAtom, order: Sequence[str] = ()) -> Equation:
    rank = {x: i for i, x in enumerate(order)}
    items = sorted(a.coeffs, key=lambda xc: (rank.get(xc[0], len(rank)), xc[0]))
    left, right = [], []
    for x, c in items:
        neg = tuple_neg(space, c)
        if _cost(space, neg) < _cost(space, c):
            right.append(_scaled(space, neg, x))
        else:
            left.append(_scaled(space, c, x))
    if not left:
        left, right = right, left
    return Equation(_sum(left), _sum(right), a.eq)


def to_syntax(space: TwistedSpace, f: Formula, order: Sequence[str] = ()) -> Formula:
    """Render linear atoms back as equations of the language.

    A constant answer is written ``x = x`` / ``x != x`` with the first free
    variable so the output keeps the formula's signature; ``true``/``false``
    when there is none.
    """
    def go(g):
        if isinstance(g, LinearAtom):
            c = _const(g)
            return go(c) if c in (TRUE, FALSE) else atom_to_equation(space, g, order)
        if isinstance(g, Not):
            return Not(go(g.arg))
        if isinstance(g, And):
            return And(tuple(go(a) for a in g.args))
        if isinstance(g, Or):
            return Or(tuple(go(a) for a in g.args))
        return g

    if f in (TRUE, FALSE) and order:
        v = Var(order[0])
        return Equation(v, v, f == TRUE)
    return go(f)


def eliminate_quantifiers(space: TwistedSpace, f: Formula | str, card=None) -> Formula:
    """Quantifier-free formula equivalent to ``f`` over ``space``'s theory."""
    return QuantifierEliminator(space, card)(f)


def block_formula(space: TwistedSpace, j: int, var: str = "v") -> Formula:
    """Quantifier-free formula defining the summand of block ``j``.

    ``v`` lies in block j exactly when ``e_j(v) = v`` for the separating
    idempotent ``e_j``, i.e. when ``(1 - e_j) v = 0``.
    """
    from .oracle import evaluate_many

    check_block(space, j)
    dec = decompose_blocks(space)
    one = (1,) * dec.count
    coeff = tuple_add(space, one, tuple_neg(space, unit_tuple(space, j)))
    atom = LinearAtom(((var, coeff),) if any(coeff) else (), True)
    f = to_syntax(space, _const(atom), order=[var])
    if space.size <= limits().size_bound:
        N = space.tables.N
        truth = evaluate_many(space, f, [var], np.arange(N))
        members = np.array([dec.project(j, space.vector(i)) == space.vector(i) for i in range(N)])
        if not np.array_equal(truth, members):
            raise InconsistencyError(f"block formula for block {j} is not extensionally correct")
    return f
