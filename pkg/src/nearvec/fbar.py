"""Formal pointwise sums of scalars and the ring they induce on V.

A formal sum ``a1 +. a2 +. ... +. ar`` acts on V by ``v -> a1*v + ... + ar*v``.
On block ``j`` it acts like the single scalar obtained by folding the terms
with that block's induced addition, so its image in End(V) is a tuple with one
field element per block (a "block tuple").  Tuples are added with the block
additions and multiplied with ordinary field multiplication.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    FieldMismatch,
    InconsistencyError,
    LengthMismatch,
    NotInImage,
)
from .space import TwistedSpace, check_block, decompose_blocks, scalar_act


@dataclass(frozen=True)
class FormalSum:
    terms: tuple

    def __post_init__(self):
        if not self.terms:
            raise ValueError("a formal sum needs at least one term")
        object.__setattr__(self, "terms", tuple(sorted(int(t) for t in self.terms)))

    def __len__(self):
        return len(self.terms)

    def concat(self, other: "FormalSum") -> "FormalSum":
        return FormalSum(self.terms + other.terms)

    def compose(self, other: "FormalSum", field) -> "FormalSum":
        return FormalSum(tuple(field.mul(a, b) for a in self.terms for b in other.terms))

    def format(self, field) -> str:
        return "+.".join(field.format(t) for t in self.terms)


_TERM = re.compile(r"\s*(\[[^\]]*\]|-?\d+)\s*")


def parse_formal_sum(text: str, field) -> FormalSum:
    terms = []
    for chunk in text.split("+."):
        m = _TERM.fullmatch(chunk)
        if not m:
            raise ValueError(f"bad formal-sum term {chunk!r}")
        tok = m.group(1)
        if tok.startswith("["):
            lit = [int(x) for x in tok[1:-1].split(",") if x.strip()]
        else:
            lit = int(tok)
        terms.append(field.element(lit))
    return FormalSum(tuple(terms))


@dataclass(frozen=True)
class BlockTuple:
    components: tuple
    witness: FormalSum | None = None

    @property
    def is_unit(self) -> bool:
        return all(self.components)

    def format(self, field) -> str:
        return "(" + ",".join(field.format(c) for c in self.components) + ")"


# -- tuple arithmetic ------------------------------------------------------------

def _tables(space: TwistedSpace) -> list[np.ndarray]:
    return [a.table for a in decompose_blocks(space).additions]


def tuple_add(space: TwistedSpace, a: Sequence[int], b: Sequence[int]) -> tuple:
    return tuple(int(t[x, y]) for t, x, y in zip(_tables(space), a, b))


def tuple_mul(space: TwistedSpace, a: Sequence[int], b: Sequence[int]) -> tuple:
    F = space.field
    return tuple(F.mul(x, y) for x, y in zip(a, b))


def tuple_neg(space: TwistedSpace, a: Sequence[int]) -> tuple:
    # additive inverse in (F, +_j, o) is composition with -1, i.e. ordinary negation
    F = space.field
    return tuple(F.neg(x) for x in a)


def diagonal(space: TwistedSpace, alpha: int) -> tuple:
    return (int(alpha),) * decompose_blocks(space).count


def unit_tuple(space: TwistedSpace, j: int) -> tuple:
    n = decompose_blocks(space).count
    return tuple(1 if i == j else 0 for i in range(n))


def tuple_act(space: TwistedSpace, components: Sequence[int], v: Sequence[int]) -> tuple:
    """Act on v as the block tuple: coordinate i of block j gets
    multiplied by sigma_i(components[j])."""
    dec = decompose_blocks(space)
    v = space.check(v)
    F = space.field
    return tuple(F.mul(space.sigma(i, components[dec.block_of[i]]), x) for i, x in enumerate(v))


def sum_act(space: TwistedSpace, s: FormalSum, v: Sequence[int]) -> tuple:
    """Pointwise action of a formal sum, straight from the definition."""
    out = space.zero()
    for a in s.terms:
        out = space.add(out, scalar_act(space, a, v))
    return out


def sum_act_table(space: TwistedSpace, s: FormalSum) -> np.ndarray:
    t = space.tables
    out = np.zeros(t.N, dtype=np.int64)
    for a in s.terms:
        out = t.add[out, t.act[a]]
    return out


# -- evaluation ------------------------------------------------------------------

def phi_eval(space: TwistedSpace, s: FormalSum) -> BlockTuple:
    comps = tuple(a.fold(s.terms) for a in decompose_blocks(space).additions)
    return BlockTuple(comps, s)


def action_matches(space: TwistedSpace, t: BlockTuple) -> bool:
    """Exhaustively compare the witness action with the tuple action on V."""
    if t.witness is None:
        return True
    return all(sum_act(space, t.witness, v) == tuple_act(space, t.components, v)
               for v in space.vectors())


class ImageRing:
    """Phi(F-bar) inside End(V), with the shortest witness for each element."""

    def __init__(self, space: TwistedSpace, witnesses: dict):
        self.space = space
        self.witnesses = witnesses

    def __len__(self):
        return len(self.witnesses)

    def __contains__(self, t):
        return tuple(t) in self.witnesses

    def __iter__(self):
        return iter(sorted(self.witnesses))

    def element(self, t: Sequence[int]) -> BlockTuple:
        t = tuple(t)
        return BlockTuple(t, self.witnesses[t])

    def elements(self) -> list[BlockTuple]:
        return [self.element(t) for t in self]

    def units(self) -> list[tuple]:
        return [t for t in self if all(t)]


@lru_cache(maxsize=128)
def image_ring(space: TwistedSpace) -> ImageRing:
    """Breadth-first closure of the diagonal under block addition.

    Every formal sum of length r maps to an element of level r; products of
    formal sums are formal sums, so the additive closure is already closed
    under composition.  The witness of an element is the lexicographically
    least sorted term tuple among the shortest sums reaching it.
    """
    F = space.field
    q = F.q
    dec = decompose_blocks(space)
    n = dec.count
    M = q ** n
    powers = q ** np.arange(n, dtype=np.int64)
    idx = np.arange(M, dtype=np.int64)
    digits = (idx[:, None] // powers[None, :]) % q
    # shift[a][x] = index of (tuple x) + diag(a)
    shift = np.stack([
        sum(add.table[digits[:, j], a] * powers[j] for j, add in enumerate(dec.additions))
        for a in range(q)
    ])

    # shortest lengths by levels
    INF = np.iinfo(np.int64).max
    first = np.full(M, INF, dtype=np.int64)
    level = np.zeros(M, dtype=bool)
    level[0] = True  # empty sum
    r = 0
    while True:
        nxt = np.zeros(M, dtype=bool)
        src = np.flatnonzero(level)
        for a in range(q):
            nxt[shift[a][src]] = True
        r += 1
        new = nxt & (first == INF)
        if not new.any():
            break
        first[new] = r
        level = nxt
    rmax = r - 1

    # reach[k][lo]: tuples reachable by k terms, all >= lo
    reach = [[None] * (q + 1) for _ in range(rmax)]
    base = np.zeros(M, dtype=bool)
    base[0] = True
    reach_prev = [base] * (q + 1)
    reach_all = [reach_prev]
    for k in range(1, rmax):
        cur = [None] * (q + 1)
        cur[q] = np.zeros(M, dtype=bool)
        for lo in range(q - 1, -1, -1):
            s = cur[lo + 1].copy()
            s[shift[lo][np.flatnonzero(reach_prev[lo])]] = True
            cur[lo] = s
        reach_all.append(cur)
        reach_prev = cur

    neg_shift = np.stack([shift[F.neg(a)] for a in range(q)])
    witnesses = {}
    for x in np.flatnonzero(first != INF):
        length = int(first[x])
        terms = []
        cur, lo = int(x), 0
        for step in range(length):
            left = length - step - 1
            for a in range(lo, q):
                y = int(neg_shift[a][cur])
                if reach_all[left][a][y]:
                    terms.append(a)
                    cur, lo = y, a
                    break
            else:
                raise InconsistencyError("witness reconstruction failed")
        comps = tuple(int(c) for c in digits[x])
        witnesses[comps] = FormalSum(tuple(terms))
    return ImageRing(space, witnesses)


def is_automorphism(space: TwistedSpace, s: FormalSum) -> bool:
    answer = phi_eval(space, s).is_unit
    image = sum_act_table(space, s)
    bijective = len(np.unique(image)) == space.tables.N
    if answer != bijective:
        raise InconsistencyError(f"{s.format(space.field)}: block test disagrees with bijectivity")
    return answer


def separating_idempotent(space: TwistedSpace, j: int) -> FormalSum:
    check_block(space, j)
    return crt_preimage(space, unit_tuple(space, j))


def crt_preimage(space: TwistedSpace, target: Sequence[int] | BlockTuple) -> FormalSum:
    comps = tuple(target.components if isinstance(target, BlockTuple) else target)
    n = decompose_blocks(space).count
    if len(comps) != n:
        raise LengthMismatch(f"target has {len(comps)} components, the space has {n} blocks")
    ring = image_ring(space)
    if comps not in ring:
        raise NotInImage(f"{comps} is not in the image of the sum ring")
    return ring.witnesses[comps]


def block_type(space: TwistedSpace) -> frozenset:
    return frozenset(a.key for a in decompose_blocks(space).additions)


def aut_set_equal(s1: TwistedSpace, s2: TwistedSpace) -> bool:
    """Do the same formal sums act as automorphisms on both spaces?

    Every formal sum is classified by its image in the ring of the joint
    space (coordinates of both), so comparing over that finite ring covers
    all of F-bar.  The answer is checked against block-type equality.
    """
    if s1.field != s2.field:
        raise FieldMismatch("spaces over different fields")
    joint = TwistedSpace(s1.field, s1.twists + s2.twists)
    dec = decompose_blocks(joint, verify=False)
    first = set(dec.block_of[:s1.dim])
    second = set(dec.block_of[s1.dim:])
    ring = image_ring(joint)
    answer = all(
        all(t[j] for j in first) == all(t[j] for j in second) for t in ring
    )
    if answer != (block_type(s1) == block_type(s2)):
        raise InconsistencyError("automorphism sets disagree with block types")
    return answer


def frac_units_closed(space: TwistedSpace) -> bool:
    """Units of the image ring are closed under componentwise inverses."""
    F = space.field
    ring = image_ring(space)
    return all(tuple(F.inv(c) for c in t) in ring for t in ring.units())


def zero_pattern(add, length: int = 3, field=None) -> frozenset:
    """Term tuples (sorted, given length) that sum to 0 under ``add``."""
    import itertools

    q = add.table.shape[0]
    return frozenset(
        ts for ts in itertools.combinations_with_replacement(range(q), length) if add.fold(ts) == 0
    )
