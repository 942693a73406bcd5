"""Finite near vector spaces built from twisted coordinates.

A :class:`TwistedSpace` is ``V = F^m`` with coordinatewise addition, where the
scalar ``lam`` acts on coordinate ``i`` as multiplication by ``lam**k_i``.
Vectors are tuples of field elements (see :mod:`nearvec.gf` for the encoding).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence, Union

import numpy as np

from . import gf
from .config import limits
from .errors import (
    BlockIndexOutOfRange,
    DimensionMismatch,
    InconsistencyError,
    NotInQuasiKernel,
    SizeBoundExceeded,
    ZeroGenerator,
)

Vector = tuple


@dataclass(frozen=True)
class TwistedSpace:
    field: gf.FieldTable
    twists: tuple
    # "finite", "infinite", or one of those per block; read only by the QE engine
    block_card: Union[str, tuple] = "finite"

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(int(k) for k in self.twists))
        if isinstance(self.block_card, list):
            object.__setattr__(self, "block_card", tuple(self.block_card))
        if not self.twists:
            raise ValueError("a space needs at least one coordinate")
        for k in self.twists:
            if not gf.is_twist(self.field, k):
                raise ValueError(f"{k} is not a multiplicative automorphism exponent of {self.field}")
        cards = (self.block_card,) if isinstance(self.block_card, str) else self.block_card
        if any(c not in ("finite", "infinite") for c in cards):
            raise ValueError(f"bad block_card {self.block_card!r}")

    @property
    def dim(self) -> int:
        return len(self.twists)

    @property
    def size(self) -> int:
        return self.field.q ** self.dim

    def zero(self) -> Vector:
        return (0,) * self.dim

    def axis(self, i: int, value: int = 1) -> Vector:
        v = [0] * self.dim
        v[i] = value
        return tuple(v)

    def vectors(self) -> Iterable[Vector]:
        # index order: coordinate 0 varies fastest
        for rev in itertools.product(range(self.field.q), repeat=self.dim):
            yield tuple(reversed(rev))

    def index(self, v: Vector) -> int:
        q = self.field.q
        return sum(int(c) * q ** i for i, c in enumerate(v))

    def vector(self, idx: int) -> Vector:
        q = self.field.q
        return tuple((idx // q ** i) % q for i in range(self.dim))

    def check(self, v: Sequence[int]) -> Vector:
        if len(v) != self.dim:
            raise DimensionMismatch(f"vector of length {len(v)} in a space of dimension {self.dim}")
        return tuple(int(c) for c in v)

    def sigma(self, i: int, lam):
        return self.field.pow(lam, self.twists[i])

    def add(self, a: Vector, b: Vector) -> Vector:
        F = self.field
        return tuple(F.add(x, y) for x, y in zip(a, b))

    def neg(self, a: Vector) -> Vector:
        return tuple(self.field.neg(x) for x in a)

    def descriptor(self) -> dict:
        card = self.block_card if isinstance(self.block_card, str) else list(self.block_card)
        return {"field": self.field.descriptor(), "twists": list(self.twists), "block_card": card}

    def __str__(self):
        return f"{self.field} twists {self.twists}"

    @cached_property
    def tables(self) -> "CarrierTables":
        return CarrierTables(self)


def make_space(p: int, twists: Sequence[int], n: int = 1, block_card="finite") -> TwistedSpace:
    return TwistedSpace(gf.field_make(p, n), tuple(twists), block_card)


def scalar_act(space: TwistedSpace, lam: int, v: Sequence[int]) -> Vector:
    v = space.check(v)
    F = space.field
    return tuple(F.mul(space.sigma(i, lam), x) for i, x in enumerate(v))


class CarrierTables:
    """Index-based tables for exhaustive work on the carrier."""

    def __init__(self, space: TwistedSpace):
        bound = limits().size_bound
        if space.size > bound:
            raise SizeBoundExceeded(f"carrier of {space}", space.size, bound)
        F = space.field
        q, m = F.q, space.dim
        self.space = space
        self.N = q ** m
        idx = np.arange(self.N, dtype=np.int64)
        self.powers = q ** np.arange(m, dtype=np.int64)
        self.coords = (idx[:, None] // self.powers[None, :]) % q  # N x m
        self.neg = np.asarray(F.neg(self.coords)).reshape(self.N, m) @ self.powers
        act = np.empty((q, self.N), dtype=np.int64)
        for lam in range(q):
            mult = np.array([space.sigma(i, lam) for i in range(m)], dtype=np.int64)
            act[lam] = np.asarray(F.mul(mult[None, :], self.coords)).reshape(self.N, m) @ self.powers
        self.act = act

    def encode(self, coords: np.ndarray) -> np.ndarray:
        return np.asarray(coords) @ self.powers

    @cached_property
    def add(self) -> np.ndarray:
        F = self.space.field
        out = np.zeros((self.N, self.N), dtype=np.int64)
        for i in range(self.space.dim):
            col = self.coords[:, i]
            out += np.asarray(F.add(col[:, None], col[None, :])) * self.powers[i]
        return out


# -- F-group axioms ----------------------------------------------------------

@dataclass
class GenericFGroup:
    """Candidate F-group given by raw tables; may violate any axiom.

    ``add[x, y]`` is the group law on carrier indices and ``action[lam, x]``
    the action of field element ``lam``.
    """

    field: gf.FieldTable
    carrier: list
    add: np.ndarray
    action: np.ndarray

    def copy(self) -> "GenericFGroup":
        return GenericFGroup(self.field, list(self.carrier), self.add.copy(), self.action.copy())


def as_generic(space: TwistedSpace) -> GenericFGroup:
    t = space.tables
    return GenericFGroup(space.field, list(space.vectors()), t.add.copy(), t.act.copy())


@dataclass(frozen=True)
class Violation:
    axiom: str
    detail: str
    scalars: tuple = ()
    witness: tuple = ()


@dataclass
class ValidationReport:
    violations: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def violated(self) -> set:
        return {v.axiom for v in self.violations}

    def __bool__(self):
        return self.ok


def _group_violations(add: np.ndarray, labels) -> tuple[list, int | None]:
    n = add.shape[0]
    out = []
    ids = [e for e in range(n) if np.array_equal(add[e], np.arange(n)) and np.array_equal(add[:, e], np.arange(n))]
    if not ids:
        out.append(Violation("F1", "(V,+) has no identity element"))
        return out, None
    e = ids[0]
    for a in range(n):
        lhs = add[add[a]]          # (a+b)+c over all b, c
        rhs = add[a][add]          # a+(b+c)
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            b, c = bad[0]
            out.append(Violation("F1", "(V,+) is not associative",
                                 witness=(labels[a], labels[b], labels[c])))
            break
    for a in range(n):
        if not np.any(add[a] == e):
            out.append(Violation("F1", "element without additive inverse", witness=(labels[a],)))
            break
    return out, e


def validate_fgroup(g: GenericFGroup | TwistedSpace) -> ValidationReport:
    """Exhaustively check F1-F4, collecting one witness per failing condition.

    F1: (V,+) is a group and every action is an endomorphism.
    F2: 0, 1 and -1 act as the zero map, the identity and negation.
    F3: the nonzero scalars act as a group of bijections under composition.
    F4: the action is fixed point free.

    For a TwistedSpace the group axioms are checked on the coordinate group
    (F,+); V is its m-fold product.
    """
    if isinstance(g, TwistedSpace):
        F = g.field
        coord = np.asarray(F.add(np.arange(F.q)[:, None], np.arange(F.q)[None, :]))
        group_issues, _ = _group_violations(coord, list(range(F.q)))
        t = g.tables
        add, act, labels = t.add, t.act, list(g.vectors())
        zero = 0
    else:
        F = g.field
        add, act, labels = np.asarray(g.add), np.asarray(g.action), g.carrier
        group_issues, zero = _group_violations(add, labels)
    report = ValidationReport(list(group_issues))
    if zero is None:
        return report
    n = add.shape[0]
    ident = np.arange(n)
    fmt = F.format

    # F1: endomorphisms
    for lam in F.elements():
        row = act[lam]
        mismatch = row[add] != add[row[:, None], row[None, :]]
        if mismatch.any():
            x, y = np.argwhere(mismatch)[0]
            report.violations.append(Violation(
                "F1", f"{fmt(lam)} is not additive", (lam,), (labels[x], labels[y])))
            break

    # F2: distinguished scalars
    inverse = np.argmax(add == zero, axis=1)
    for lam, target, name in ((0, np.full(n, zero), "the zero map"),
                              (1, ident, "the identity"),
                              (F.minus_one, inverse, "negation")):
        bad = np.flatnonzero(act[lam] != target)
        if bad.size:
            report.violations.append(Violation(
                "F2", f"{fmt(lam)} does not act as {name}", (lam,), (labels[bad[0]],)))

    # F3: nonzero actions form a permutation group
    nonzero = [lam for lam in F.elements() if lam != 0]
    f3 = None
    for lam in nonzero:
        if len(np.unique(act[lam])) != n:
            f3 = Violation("F3", f"{fmt(lam)} is not a bijection", (lam,))
            break
    if f3 is None:
        maps = {act[lam].tobytes() for lam in nonzero}
        if ident.astype(act.dtype).tobytes() not in maps:
            f3 = Violation("F3", "identity map missing from F*")
    if f3 is None:
        for a, b in itertools.product(nonzero, repeat=2):
            if act[a][act[b]].tobytes() not in maps:
                f3 = Violation("F3", f"{fmt(a)} o {fmt(b)} is not the action of a nonzero scalar", (a, b))
                break
    if f3 is None:
        for a in nonzero:
            inv = np.empty(n, dtype=act.dtype)
            inv[act[a]] = ident
            if inv.tobytes() not in maps:
                f3 = Violation("F3", f"inverse of {fmt(a)} is not in F*", (a,))
                break
    if f3 is not None:
        report.violations.append(f3)

    # F4: fixed point freeness
    for a, b in itertools.combinations(F.elements(), 2):
        same = np.flatnonzero(act[a] == act[b])
        same = same[same != zero]
        if same.size:
            report.violations.append(Violation(
                "F4", f"{fmt(a)} and {fmt(b)} agree on a nonzero vector", (a, b), (labels[same[0]],)))
            break
    return report


# -- quasi-kernel and induced additions ---------------------------------------

def _multiples(space: TwistedSpace, u: Vector) -> np.ndarray:
    """q x m array whose row gamma is gamma*u."""
    F = space.field
    lam = np.arange(F.q)
    cols = [np.asarray(F.mul(F.pow(lam, k), x)) for k, x in zip(space.twists, u)]
    return np.stack(cols, axis=1)


def _solve_sums(space: TwistedSpace, u: Vector):
    """For u != 0 return (gamma table, ok mask) with gamma*u = alpha*u + beta*u
    wherever ok holds."""
    F = space.field
    M = _multiples(space, u)
    S = np.asarray(F.add(M[:, None, :], M[None, :, :]))  # q x q x m
    i = next(j for j, x in enumerate(u) if x)
    k_inv = gf.twist_inverse(F, space.twists[i])
    # gamma is pinned down by a coordinate where u is nonzero
    gamma = np.asarray(F.pow(F.mul(S[:, :, i], F.inv(u[i])), k_inv))
    ok = np.all(M[gamma] == S, axis=-1)
    return gamma, ok


def in_quasi_kernel(space: TwistedSpace, u: Sequence[int]) -> bool:
    u = space.check(u)
    if not any(u):
        return True
    return bool(_solve_sums(space, u)[1].all())


def quasi_kernel(space: TwistedSpace) -> frozenset:
    bound = limits().size_bound
    if space.size > bound:
        raise SizeBoundExceeded(f"carrier of {space}", space.size, bound)
    return frozenset(v for v in space.vectors() if in_quasi_kernel(space, v))


@dataclass(frozen=True, eq=False)
class InducedAddition:
    """The addition +_u on F: ``table[a, b] = a +_u b``."""

    u: Vector
    table: np.ndarray

    @cached_property
    def key(self) -> bytes:
        return self.table.tobytes()

    def __eq__(self, other):
        if not isinstance(other, InducedAddition):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __call__(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def fold(self, terms: Iterable[int]) -> int:
        acc = 0
        for a in terms:
            acc = int(self.table[acc, a])
        return acc


def induced_addition(space: TwistedSpace, u: Sequence[int]) -> InducedAddition:
    u = space.check(u)
    if not any(u):
        raise ZeroGenerator("+_u is undefined for u = 0")
    gamma, ok = _solve_sums(space, u)
    if not ok.all():
        raise NotInQuasiKernel(f"{u} is not in the quasi-kernel")
    gamma = gamma.astype(np.int64)
    gamma.setflags(write=False)
    return InducedAddition(u, gamma)


def _require_qk(space, u):
    if not any(u) or not in_quasi_kernel(space, u):
        raise NotInQuasiKernel(f"{u} is not a nonzero quasi-kernel element")


def compatible(space: TwistedSpace, u: Sequence[int], v: Sequence[int]) -> bool:
    """u, v in Q(V)\\{0} are compatible if u + lam*v is in Q(V) for some lam != 0.

    The answer is cross-checked against the equivalent condition that +_u
    equals +_{lam*v} for some lam != 0.
    """
    u, v = space.check(u), space.check(v)
    _require_qk(space, u)
    _require_qk(space, v)
    nonzero = range(1, space.field.q)
    by_definition = any(
        in_quasi_kernel(space, space.add(u, scalar_act(space, lam, v))) for lam in nonzero)
    plus_u = induced_addition(space, u)
    by_tables = any(induced_addition(space, scalar_act(space, lam, v)) == plus_u for lam in nonzero)
    if by_definition != by_tables:
        raise InconsistencyError(f"compatibility characterisations disagree on {u}, {v}")
    return by_definition


# -- blocks --------------------------------------------------------------------

@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple  # tuple of tuples of coordinate indices (0-based)
    additions: tuple  # one InducedAddition per block
    block_of: tuple  # coordinate -> block index

    @property
    def count(self) -> int:
        return len(self.blocks)

    @property
    def block_dims(self) -> tuple:
        return tuple(len(b) for b in self.blocks)

    def project(self, j: int, v: Vector) -> Vector:
        return tuple(x if self.block_of[i] == j else 0 for i, x in enumerate(v))


@lru_cache(maxsize=256)
def decompose_blocks(space: TwistedSpace, verify: bool = True) -> BlockDecomposition:
    """Group coordinates by the induced addition of their axis vectors.

    With ``verify`` (and a carrier within the size bound) every nonzero
    quasi-kernel element is checked to lie in exactly one block summand and
    to induce that block's addition.
    """
    blocks: list[list[int]] = []
    adds: list[InducedAddition] = []
    block_of = []
    for i in range(space.dim):
        a = induced_addition(space, space.axis(i))
        for j, b in enumerate(adds):
            if b == a:
                blocks[j].append(i)
                block_of.append(j)
                break
        else:
            blocks.append([i])
            adds.append(a)
            block_of.append(len(adds) - 1)
    dec = BlockDecomposition(tuple(tuple(b) for b in blocks), tuple(adds), tuple(block_of))
    if verify and space.size <= limits().size_bound:
        for u in quasi_kernel(space):
            if not any(u):
                continue
            touched = {block_of[i] for i, x in enumerate(u) if x}
            if len(touched) != 1:
                raise InconsistencyError(f"quasi-kernel element {u} spans several blocks")
            if induced_addition(space, u) != adds[touched.pop()]:
                raise InconsistencyError(f"{u} induces an addition foreign to its block")
    return dec


def check_block(space: TwistedSpace, j: int) -> int:
    n = decompose_blocks(space).count
    if not 0 <= j < n:
        raise BlockIndexOutOfRange(f"block {j} out of range for {n} blocks")
    return j


def is_regular(space: TwistedSpace, samples: int = 16) -> bool:
    """One block, cross-checked by pairwise compatibility on a sample of
    Q(V)\\{0} that always contains an axis vector from every block."""
    dec = decompose_blocks(space)
    answer = dec.count == 1
    picked = [space.axis(b[0]) for b in dec.blocks]
    if space.size <= limits().size_bound:
        qk = sorted(u for u in quasi_kernel(space) if any(u))
        step = max(1, len(qk) // samples)
        picked += [u for u in qk[::step][:samples] if u not in picked]
    pairwise = all(compatible(space, a, b) for a, b in itertools.combinations(picked, 2))
    if pairwise != answer:
        raise InconsistencyError("regularity disagrees with pairwise compatibility")
    return answer


def is_vector_space(space: TwistedSpace) -> bool:
    """True iff the quasi-kernel is all of V; cross-checked against the
    pointwise-sum ring acting only through the diagonal."""
    from .fbar import image_ring

    answer = len(quasi_kernel(space)) == space.size
    diagonal_only = len(image_ring(space)) == space.field.q
    if answer != diagonal_only:
        raise InconsistencyError("Q(V)=V disagrees with the image ring being the diagonal")
    return answer


def coords(space: TwistedSpace, v: Sequence[int]) -> tuple:
    """Unique scalars xi_i with v = sum_i xi_i * e_i."""
    v = space.check(v)
    F = space.field
    xi = tuple(int(F.pow(x, gf.twist_inverse(F, k))) for x, k in zip(v, space.twists))
    back = space.zero()
    for i, c in enumerate(xi):
        back = space.add(back, scalar_act(space, c, space.axis(i)))
    if back != v:
        raise InconsistencyError(f"coordinates {xi} do not rebuild {v}")
    return xi


def morley_report(space: TwistedSpace) -> tuple[int, int]:
    return decompose_blocks(space).count, 1
