"""Seeded random formulas for soundness runs of the QE engine."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .syntax import (
    Add, And, Equation, Exists, Forall, Formula, Implies, Neg, Not, Or, Scale,
    Term, Var, Zero, all_vars, count_atoms, count_quantifiers,
)


@dataclass(frozen=True)
class CorpusConfig:
    free: tuple = ("u", "v")
    bound: tuple = ("w", "x", "y")
    max_vars: int = 4
    atoms: tuple = (1, 4)  # inclusive range of atom counts
    max_quantifiers: int = 3
    max_depth: int = 3  # nesting depth of quantifiers
    scalars: tuple = (1, 2, 3, 4)
    max_summands: int = 3


class _Gen:
    def __init__(self, cfg: CorpusConfig, rng: random.Random):
        self.cfg = cfg
        self.rng = rng

    def term(self, scope: list, prefer: str | None) -> Term:
        rng = self.rng
        k = rng.randint(1, self.cfg.max_summands)
        parts = []
        for i in range(k):
            x = prefer if (i == 0 and prefer) else rng.choice(scope)
            t: Term = Var(x)
            r = rng.random()
            if r < 0.45:
                t = Scale(rng.choice(self.cfg.scalars), t)
            elif r < 0.55:
                t = Neg(t)
            parts.append(t)
        t = parts[0]
        for p in parts[1:]:
            t = Add(t, p)
        return t

    def atom(self, scope: list, prefer: str | None) -> Formula:
        lhs = self.term(scope, prefer)
        rhs = Zero() if self.rng.random() < 0.35 else self.term(scope, None)
        return Equation(lhs, rhs, self.rng.random() < 0.5)

    def formula(self, scope: list, bound: list, atoms: int, quants: int, depth: int) -> Formula:
        rng = self.rng
        cfg = self.cfg
        names = [b for b in cfg.bound if b not in scope]
        used = set(scope) | set(bound)
        fresh_ok = [b for b in names if b in used or len(used) < cfg.max_vars]
        if quants and depth < cfg.max_depth and fresh_ok and (atoms == 1 or rng.random() < 0.5):
            w = rng.choice(fresh_ok)
            bound.append(w)
            body = self.formula(scope + [w], bound, atoms, quants - 1, depth + 1)
            q = Exists if rng.random() < 0.6 else Forall
            return q(w, body)
        if atoms == 1:
            inner = scope[-1] if len(scope) > 0 and scope[-1] in cfg.bound else None
            a = self.atom(scope, inner)
            return Not(a) if rng.random() < 0.1 else a
        a1 = rng.randint(1, atoms - 1)
        q1 = rng.randint(0, quants)
        left = self.formula(scope, bound, a1, q1, depth)
        right = self.formula(scope, bound, atoms - a1, quants - count_quantifiers(left), depth)
        r = rng.random()
        if r < 0.45:
            f = And((left, right))
        elif r < 0.85:
            f = Or((left, right))
        else:
            f = Implies(left, right)
        return Not(f) if rng.random() < 0.1 else f


def generate(cfg: CorpusConfig, count: int, seed: int = 0) -> list[Formula]:
    """``count`` distinct formulas within the bounds of ``cfg``."""
    rng = random.Random(seed)
    gen = _Gen(cfg, rng)
    out: list[Formula] = []
    seen = set()
    while len(out) < count:
        nfree = rng.randint(1, min(len(cfg.free), cfg.max_vars - 1))
        scope = list(cfg.free[:nfree])
        atoms = rng.randint(*cfg.atoms)
        quants = rng.randint(1, cfg.max_quantifiers)
        f = gen.formula(scope, [], atoms, quants, 0)
        if (f in seen or count_quantifiers(f) == 0 or len(all_vars(f)) > cfg.max_vars
                or count_atoms(f) != atoms):
            continue
        seen.add(f)
        out.append(f)
    return out
