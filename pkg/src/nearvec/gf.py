"""Exact arithmetic in GF(p^n) and its multiplicative automorphisms.

Elements are encoded as integers ``c0 + c1*p + ... + c_{n-1}*p^(n-1)`` where
``c0 + c1 t + ...`` is the residue modulo the field's modulus.  In a prime
field this is just the residue itself.  Every arithmetic method accepts either
Python ints or numpy integer arrays.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .config import limits
from .errors import DivisionByZero, NotPrime, SizeBoundExceeded

Poly = tuple  # ascending coefficients, no trailing zeros; () is the zero polynomial


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


# -- polynomials over F_p ------------------------------------------------------

def poly_trim(a: Sequence[int]) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_add(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    return poly_trim(
        ((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)
    )


def poly_neg(a: Poly, p: int) -> Poly:
    return poly_trim((-c) % p for c in a)


def poly_sub(a: Poly, b: Poly, p: int) -> Poly:
    return poly_add(a, poly_neg(b, p), p)


def poly_scale(a: Poly, c: int, p: int) -> Poly:
    return poly_trim((c * x) % p for x in a)


def poly_mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(c % p for c in out)


def poly_divmod(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for shift in range(len(a) - len(b), -1, -1):
        c = (a[shift + len(b) - 1] * inv_lead) % p
        q[shift] = c
        if c:
            for i, y in enumerate(b):
                a[shift + i] = (a[shift + i] - c * y) % p
    return poly_trim(q), poly_trim(a)


def poly_monic(a: Poly, p: int) -> Poly:
    if not a:
        return a
    return poly_scale(a, pow(a[-1], -1, p), p)


def poly_gcd(a: Poly, b: Poly, p: int) -> Poly:
    while b:
        a, b = b, poly_divmod(a, b, p)[1]
    return poly_monic(a, p)


def poly_pow_mod(a: Poly, e: int, mod: Poly, p: int) -> Poly:
    result: Poly = (1,)
    base = poly_divmod(a, mod, p)[1]
    while e:
        if e & 1:
            result = poly_divmod(poly_mul(result, base, p), mod, p)[1]
        base = poly_divmod(poly_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def format_poly(a: Poly, var: str = "t") -> str:
    """Human notation, highest degree first: ``t^2+2t+1``."""
    if not a:
        return "0"
    parts = []
    for d in range(len(a) - 1, -1, -1):
        c = a[d]
        if not c:
            continue
        if d == 0:
            parts.append(str(c))
        else:
            mono = var if d == 1 else f"{var}^{d}"
            parts.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(parts)


def _monics(p: int, d: int) -> Iterator[Poly]:
    # itertools.product varies the last slot fastest, so tuples come out in
    # lexicographic order with the constant term compared first
    for low in itertools.product(range(p), repeat=d):
        yield tuple(low) + (1,)


@lru_cache(maxsize=None)
def _irreducibles_of_degree(p: int, d: int) -> tuple[Poly, ...]:
    lower = [f for e in range(1, d // 2 + 1) for f in _irreducibles_of_degree(p, e)]
    return tuple(
        f for f in _monics(p, d) if all(poly_divmod(f, g, p)[1] for g in lower)
    )


def is_irreducible(f: Sequence[int], p: int) -> bool:
    f = poly_trim(c % p for c in f)
    d = len(f) - 1
    if d < 1:
        return False
    f = poly_monic(f, p)
    return all(
        poly_divmod(f, g, p)[1]
        for e in range(1, d // 2 + 1)
        for g in _irreducibles_of_degree(p, e)
    )


def iter_irreducibles(p: int) -> Iterator[Poly]:
    """All monic irreducibles over F_p, by degree then lexicographically."""
    if not is_prime(p):
        raise NotPrime(p)
    for d in itertools.count(1):
        yield from _irreducibles_of_degree(p, d)


def irreducibles_enum(p: int, max_deg: int) -> list[Poly]:
    if not is_prime(p):
        raise NotPrime(p)
    return [f for d in range(1, max_deg + 1) for f in _irreducibles_of_degree(p, d)]


# -- the field -----------------------------------------------------------------

ADD_TABLE_LIMIT = 256


@dataclass(frozen=True)
class FieldTable:
    p: int
    n: int
    modulus: Poly
    q: int = field(init=False)
    digits: np.ndarray = field(init=False, repr=False, compare=False)
    _exp: np.ndarray = field(init=False, repr=False, compare=False)
    _log: np.ndarray = field(init=False, repr=False, compare=False)
    _neg: np.ndarray = field(init=False, repr=False, compare=False)
    _inv: np.ndarray = field(init=False, repr=False, compare=False)
    _add: np.ndarray | None = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        q = self.p ** self.n
        set_ = object.__setattr__
        set_(self, "q", q)
        powers = self.p ** np.arange(self.n, dtype=np.int64)
        idx = np.arange(q, dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % self.p
        set_(self, "digits", digits)
        set_(self, "_powers", powers)

        g = self._find_primitive()
        exp = np.zeros(max(q - 1, 1), dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, g)
        set_(self, "_exp", exp)
        set_(self, "_log", log)
        set_(self, "_neg", self._encode_digits((-digits) % self.p))
        # a full addition table is cheap for small fields and much faster to index
        add = None
        if q <= ADD_TABLE_LIMIT:
            add = self._encode_digits((digits[:, None, :] + digits[None, :, :]) % self.p)
        set_(self, "_add", add)
        inv = np.zeros(q, dtype=np.int64)
        if q > 1:
            inv[1:] = exp[(-log[1:]) % (q - 1)]
        set_(self, "_inv", inv)

    # encoding helpers
    def _encode_digits(self, d):
        return (np.asarray(d, dtype=np.int64) * self._powers).sum(axis=-1)

    def to_poly(self, a: int) -> Poly:
        return poly_trim(int(c) for c in self.digits[a])

    def from_poly(self, f: Sequence[int]) -> int:
        f = poly_divmod(poly_trim(c % self.p for c in f), self.modulus, self.p)[1]
        return sum(int(c) * self.p ** i for i, c in enumerate(f))

    def _slow_mul(self, a: int, b: int) -> int:
        return self.from_poly(poly_mul(self.to_poly(a), self.to_poly(b), self.p))

    def _find_primitive(self) -> int:
        q = self.q
        if q == 2:
            return 1
        primes = [r for r in range(2, q) if (q - 1) % r == 0 and is_prime(r)]
        for g in range(2 if self.n == 1 else self.p, q):
            gp = self.to_poly(g)
            if all(
                poly_pow_mod(gp, (q - 1) // r, self.modulus, self.p) != (1,) for r in primes
            ):
                return g
        raise AssertionError("no primitive element; modulus not irreducible?")

    # arithmetic
    def elements(self) -> range:
        return range(self.q)

    @property
    def minus_one(self) -> int:
        return int(self._neg[1])

    def add(self, a, b):
        if self._add is not None:
            r = self._add[a, b]
            return int(r) if np.ndim(r) == 0 else r
        r = self._encode_digits((self.digits[a] + self.digits[b]) % self.p)
        return int(r) if np.ndim(r) == 0 else r

    def neg(self, a):
        r = self._neg[a]
        return int(r) if np.ndim(r) == 0 else r

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        r = self._exp[(self._log[a] + self._log[b]) % max(self.q - 1, 1)]
        r = np.where((a == 0) | (b == 0), 0, r)
        return int(r) if r.ndim == 0 else r

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise DivisionByZero("inverse of 0")
        r = self._inv[a]
        return int(r) if np.ndim(r) == 0 else r

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        a = np.asarray(a)
        if k == 0:
            r = np.ones_like(a)
        else:
            e = (self._log[a] * (k % (self.q - 1) if self.q > 1 else 0)) % max(self.q - 1, 1)
            r = np.where(a == 0, 0, self._exp[e])
            if k < 0 and np.any(a == 0):
                raise DivisionByZero("negative power of 0")
        return int(r) if r.ndim == 0 else r

    # literals
    def element(self, lit) -> int:
        """Field element from an integer (read in the prime subfield) or a
        list of ascending polynomial coefficients."""
        if isinstance(lit, (int, np.integer)):
            return int(lit) % self.p
        coeffs = list(lit)
        if len(coeffs) > self.n:
            raise ValueError(f"literal {lit!r} has more than {self.n} coefficients")
        return self.from_poly(coeffs)

    def literal(self, a: int):
        if self.n == 1:
            return int(a)
        return [int(c) for c in self.digits[a]]

    def format(self, a: int) -> str:
        if self.n == 1:
            return str(int(a))
        return "[" + ",".join(str(int(c)) for c in self.digits[a]) + "]"

    def descriptor(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    def __str__(self):
        if self.n == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.n}) mod {format_poly(self.modulus)}"


def canonical_modulus(p: int, n: int) -> Poly:
    if n == 1:
        return (0, 1)
    return _irreducibles_of_degree(p, n)[0]


@lru_cache(maxsize=64)
def _make(p: int, n: int, modulus: Poly) -> FieldTable:
    return FieldTable(p, n, modulus)


def field_make(p: int, n: int = 1, modulus: Sequence[int] | None = None,
               size_bound: int | None = None) -> FieldTable:
    if not is_prime(p):
        raise NotPrime(p)
    if n < 1:
        raise ValueError("extension degree must be at least 1")
    bound = limits().size_bound if size_bound is None else size_bound
    if p ** n > bound:
        raise SizeBoundExceeded(f"GF({p}^{n})", p ** n, bound)
    if modulus is None:
        mod = canonical_modulus(p, n)
    else:
        mod = poly_trim(c % p for c in modulus)
        if len(mod) != n + 1 or mod[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {n}")
        if n > 1 and not is_irreducible(mod, p):
            raise ValueError(f"modulus {format_poly(mod)} is reducible over F_{p}")
    return _make(p, n, mod)


def fe_arith(kind: str, field: FieldTable, a: int, b=None) -> int:
    if kind == "add":
        return field.add(a, b)
    if kind == "mul":
        return field.mul(a, b)
    if kind == "neg":
        return field.neg(a)
    if kind == "inv":
        return field.inv(a)
    if kind == "pow":
        return field.pow(a, b)
    raise ValueError(f"unknown operation {kind!r}")


# -- twists --------------------------------------------------------------------

def mult_twists(field: FieldTable) -> list[int]:
    m = field.q - 1
    return [k for k in range(1, m + 1) if math.gcd(k, m) == 1]


def is_twist(field: FieldTable, k: int) -> bool:
    return 1 <= k <= field.q - 1 and math.gcd(k, field.q - 1) == 1


def twist_inverse(field: FieldTable, k: int) -> int:
    m = field.q - 1
    if m == 1:
        return 1
    return pow(k, -1, m) or m


def is_additive_power(field: FieldTable, k: int) -> bool:
    """Brute force: is x -> x^k additive on the whole field?"""
    x = np.arange(field.q)
    lhs = field.pow(field.add(x[:, None], x[None, :]), k)
    rhs = field.add(field.pow(x, k)[:, None], field.pow(x, k)[None, :])
    return bool(np.array_equal(lhs, rhs))


def is_frobenius(field: FieldTable, k: int) -> bool:
    from .errors import InconsistencyError

    m = field.q - 1
    answer = any((k - field.p ** j) % m == 0 for j in range(field.n))
    if answer != is_additive_power(field, k):
        raise InconsistencyError(f"Frobenius test disagrees with additivity for k={k}")
    return answer
