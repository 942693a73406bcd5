"""The mixed-characteristic near vector space Q (+) F_3(t) over Q.

``(Q*, .)`` and ``(F_3(t)*, .)`` are both free abelian on countably many
generators times {+-1}, so a bijection of primes with monic irreducibles (and
-1 -> -1 = 2) extends to a multiplicative isomorphism sigma.  Q acts on the
second summand through sigma.  The action is not compatible with any single
addition on F: three equal terms vanish in characteristic 3 but not in Q.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from sympy import factorint, primepi

from . import gf
from .errors import DivisionByZero, ZeroArgument

P = 3
Poly = tuple


# -- F_3(t) ------------------------------------------------------------------------

def _divide(a: Poly, b: Poly) -> Poly:
    q, r = gf.poly_divmod(a, b, P)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


@dataclass(frozen=True)
class RatFunc3:
    """``num / den`` over F_3 with den monic and coprime to num."""

    num: Poly
    den: Poly = (1,)

    def __post_init__(self):
        num = gf.poly_trim(c % P for c in self.num)
        den = gf.poly_trim(c % P for c in self.den)
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            den = (1,)
        else:
            g = gf.poly_gcd(num, den, P)
            num, den = _divide(num, g), _divide(den, g)
            lead = den[-1]
            inv = pow(lead, -1, P)
            num, den = gf.poly_scale(num, inv, P), gf.poly_scale(den, inv, P)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def const(cls, c: int) -> "RatFunc3":
        return cls((c,))

    @property
    def is_zero(self) -> bool:
        return not self.num

    def __add__(self, other: "RatFunc3") -> "RatFunc3":
        num = gf.poly_add(gf.poly_mul(self.num, other.den, P), gf.poly_mul(other.num, self.den, P), P)
        return RatFunc3(num, gf.poly_mul(self.den, other.den, P))

    def __neg__(self) -> "RatFunc3":
        return RatFunc3(gf.poly_neg(self.num, P), self.den)

    def __sub__(self, other: "RatFunc3") -> "RatFunc3":
        return self + (-other)

    def __mul__(self, other: "RatFunc3") -> "RatFunc3":
        return RatFunc3(gf.poly_mul(self.num, other.num, P), gf.poly_mul(self.den, other.den, P))

    def inverse(self) -> "RatFunc3":
        if self.is_zero:
            raise DivisionByZero("inverse of 0 in F_3(t)")
        return RatFunc3(self.den, self.num)

    def __truediv__(self, other: "RatFunc3") -> "RatFunc3":
        return self * other.inverse()

    def __pow__(self, e: int) -> "RatFunc3":
        base = self if e >= 0 else self.inverse()
        out = RatFunc3((1,))
        for _ in range(abs(e)):
            out = out * base
        return out

    def __str__(self) -> str:
        num = gf.format_poly(self.num)
        if self.den == (1,):
            return num
        den = gf.format_poly(self.den)
        wrap = (lambda s: f"({s})" if "+" in s else s)
        return f"{wrap(num)}/{wrap(den)}"


_MONO = re.compile(r"^(\d*)(?:\*?(t(?:\^(\d+))?))?$")


def parse_poly3(text: str) -> Poly:
    """``t^2+2t+1`` (any term order; ``-`` allowed) -> ascending coefficients."""
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    for sign, term in re.findall(r"([+-]?)([^+-]+)", text):
        m = _MONO.match(term)
        if not m or (not m.group(1) and not m.group(2)):
            raise ValueError(f"bad polynomial term {term!r}")
        c = int(m.group(1)) if m.group(1) else 1
        d = 0 if not m.group(2) else int(m.group(3) or 1)
        coeffs[d] = coeffs.get(d, 0) + (-c if sign == "-" else c)
    top = max(coeffs)
    return gf.poly_trim(coeffs.get(d, 0) % P for d in range(top + 1))


def parse_ratfunc3(text: str) -> RatFunc3:
    """``(t^2+t)/(t+1)``, ``2/t`` or a bare polynomial."""
    text = text.strip()
    depth = 0
    for i, ch in enumerate(text):
        depth += ch == "("
        depth -= ch == ")"
        if ch == "/" and depth == 0:
            return RatFunc3(parse_poly3(_unwrap(text[:i])), parse_poly3(_unwrap(text[i + 1:])))
    return RatFunc3(parse_poly3(_unwrap(text)))


def _unwrap(s: str) -> str:
    s = s.strip()
    return s[1:-1] if s.startswith("(") and s.endswith(")") else s


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


# -- sigma -------------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _irreducible(i: int) -> Poly:
    """The i-th (1-based) monic irreducible over F_3."""
    return next(itertools.islice(gf.iter_irreducibles(P), i - 1, None))


class MultIso:
    """sigma: the i-th prime goes to the i-th monic irreducible, -1 to 2."""

    def prime_image(self, p: int) -> RatFunc3:
        return RatFunc3(_irreducible(int(primepi(p))))

    def _int_image(self, n: int) -> RatFunc3:
        out = RatFunc3.const(2 if n < 0 else 1)
        for p, e in factorint(abs(n)).items():
            out = out * self.prime_image(p) ** e
        return out

    def __call__(self, q) -> RatFunc3:
        q = Fraction(q)
        if q == 0:
            raise ZeroArgument("sigma is defined on nonzero rationals")
        return self._int_image(q.numerator) / self._int_image(q.denominator)


sigma = MultIso()


def sigma_map(q) -> RatFunc3:
    return sigma(q)


def _sigma0(q: Fraction) -> RatFunc3:
    return RatFunc3(()) if q == 0 else sigma(q)


# -- vectors and the action --------------------------------------------------------------------

@dataclass(frozen=True)
class MixedVector:
    v1: Fraction
    v2: RatFunc3

    def __add__(self, other: "MixedVector") -> "MixedVector":
        return MixedVector(self.v1 + other.v1, self.v2 + other.v2)

    def __str__(self) -> str:
        return f"({self.v1}, {self.v2})"


def mixed_vector(v1, v2) -> MixedVector:
    if isinstance(v2, str):
        v2 = parse_ratfunc3(v2)
    elif isinstance(v2, int):
        v2 = RatFunc3.const(v2)
    return MixedVector(Fraction(v1), v2)


def mixed_act(lam, v: MixedVector) -> MixedVector:
    lam = Fraction(lam)
    return MixedVector(lam * v.v1, _sigma0(lam) * v.v2)


def rationals_by_height(bound: int) -> list[Fraction]:
    """Nonzero rationals with |num|, den <= bound, smallest height first."""
    seen = set()
    out = []
    for h in range(1, bound + 1):
        layer = []
        for d in range(1, h + 1):
            for n in range(1, h + 1):
                if max(n, d) != h:
                    continue
                for s in (1, -1):
                    q = Fraction(s * n, d)
                    if q not in seen:
                        seen.add(q)
                        layer.append(q)
        layer.sort(key=lambda q: (q.denominator, q < 0, abs(q.numerator)))
        out.extend(layer)
    return out


def qk_refute(v: MixedVector, bound: int = 2):
    """Search (alpha, beta) showing v is outside the quasi-kernel.

    A gamma with alpha v + beta v = gamma v is pinned by the first coordinate
    to alpha + beta; the pair refutes membership when the second coordinate
    disagrees.  Axis vectors always lie in the quasi-kernel: None.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    if v.v1 == 0 or v.v2.is_zero:
        return None
    cands = rationals_by_height(bound)
    height = {q: max(abs(q.numerator), q.denominator) for q in cands}
    pairs = sorted(itertools.product(range(len(cands)), repeat=2),
                   key=lambda ij: (max(height[cands[ij[0]]], height[cands[ij[1]]]), ij))
    for i, j in pairs:
        a, b = cands[i], cands[j]
        lhs = _sigma0(a + b) * v.v2
        rhs = (sigma(a) + sigma(b)) * v.v2
        if lhs != rhs:
            return a, b
    return None


# -- pointwise sums ------------------------------------------------------------------------------

@dataclass(frozen=True)
class DemoResult:
    image: MixedVector
    multipliers: tuple  # (sum of alphas in Q, sum of sigma(alpha) in F_3(t))
    automorphism: bool  # both multipliers invertible

    def as_dict(self) -> dict:
        return {
            "image": str(self.image),
            "multipliers": [str(self.multipliers[0]), str(self.multipliers[1])],
            "automorphism": self.automorphism,
        }


def parse_rational_sum(text: str) -> list[Fraction]:
    return [parse_rational(t) for t in text.split("+.")]


def fbar_demo(terms: Sequence | str, v: MixedVector) -> DemoResult:
    """Action of the pointwise sum alpha_1 +. ... +. alpha_r on v."""
    if isinstance(terms, str):
        terms = parse_rational_sum(terms)
    terms = [Fraction(a) for a in terms]
    m1 = sum(terms, Fraction(0))
    m2 = RatFunc3(())
    for a in terms:
        m2 = m2 + _sigma0(a)
    image = MixedVector(m1 * v.v1, m2 * v.v2)
    return DemoResult(image, (m1, m2), m1 != 0 and not m2.is_zero)


def is_additive_on(lam, vectors: Iterable[MixedVector]) -> bool:
    vs = list(vectors)
    return all(mixed_act(lam, a + b) == mixed_act(lam, a) + mixed_act(lam, b) for a in vs for b in vs)
