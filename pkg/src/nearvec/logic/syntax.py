"""Terms and formulas of the language {+, 0, (lam) for lam in F}.

Scalars inside terms are kept as literals (an int, or a tuple of ascending
coefficients for extension fields) and resolved against a field when a term
is evaluated or normalized.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union


# -- terms -----------------------------------------------------------------

class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Zero(Term):
    pass


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Neg(Term):
    arg: Term


@dataclass(frozen=True)
class Add(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Scale(Term):
    scalar: Union[int, tuple]
    arg: Term


# -- formulas --------------------------------------------------------------

class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


TRUE = Top()
FALSE = Bottom()


@dataclass(frozen=True)
class Equation(Formula):
    lhs: Term
    rhs: Term
    eq: bool = True  # False means lhs != rhs


@dataclass(frozen=True)
class LinearAtom(Formula):
    """``sum_x c_x * x = 0`` (eq) or ``!= 0``; each c_x is a block tuple.

    ``coeffs`` is a sorted tuple of (variable, components) pairs with the
    zero tuples removed.
    """

    coeffs: tuple
    eq: bool = True

    @property
    def variables(self) -> tuple:
        return tuple(v for v, _ in self.coeffs)

    def coeff(self, var: str):
        for v, c in self.coeffs:
            if v == var:
                return c
        return None

    @property
    def is_constant(self) -> bool:
        return not self.coeffs

    def negate(self) -> "LinearAtom":
        return LinearAtom(self.coeffs, not self.eq)


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    args: tuple


@dataclass(frozen=True)
class Or(Formula):
    args: tuple


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


ATOMS = (Top, Bottom, Equation, LinearAtom)
QUANTIFIERS = (Exists, Forall)


def conj(*args: Formula) -> Formula:
    args = tuple(a for a in args if a != TRUE)
    if any(a == FALSE for a in args):
        return FALSE
    if not args:
        return TRUE
    return args[0] if len(args) == 1 else And(args)


def disj(*args: Formula) -> Formula:
    args = tuple(a for a in args if a != FALSE)
    if any(a == TRUE for a in args):
        return TRUE
    if not args:
        return FALSE
    return args[0] if len(args) == 1 else Or(args)


# -- traversal ---------------------------------------------------------------

def term_vars(t: Term) -> Iterator[str]:
    if isinstance(t, Var):
        yield t.name
    elif isinstance(t, (Neg, Scale)):
        yield from term_vars(t.arg)
    elif isinstance(t, Add):
        yield from term_vars(t.left)
        yield from term_vars(t.right)


def free_vars(f: Formula) -> frozenset:
    if isinstance(f, Equation):
        return frozenset(term_vars(f.lhs)) | frozenset(term_vars(f.rhs))
    if isinstance(f, LinearAtom):
        return frozenset(f.variables)
    if isinstance(f, (Top, Bottom)):
        return frozenset()
    if isinstance(f, Not):
        return free_vars(f.arg)
    if isinstance(f, (And, Or)):
        return frozenset().union(*(free_vars(a) for a in f.args))
    if isinstance(f, Implies):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, QUANTIFIERS):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def all_vars(f: Formula) -> frozenset:
    if isinstance(f, QUANTIFIERS):
        return all_vars(f.body) | {f.var}
    if isinstance(f, Not):
        return all_vars(f.arg)
    if isinstance(f, (And, Or)):
        return frozenset().union(*(all_vars(a) for a in f.args))
    if isinstance(f, Implies):
        return all_vars(f.left) | all_vars(f.right)
    return free_vars(f)


def count_quantifiers(f: Formula) -> int:
    if isinstance(f, QUANTIFIERS):
        return 1 + count_quantifiers(f.body)
    if isinstance(f, Not):
        return count_quantifiers(f.arg)
    if isinstance(f, (And, Or)):
        return sum(count_quantifiers(a) for a in f.args)
    if isinstance(f, Implies):
        return count_quantifiers(f.left) + count_quantifiers(f.right)
    return 0


def count_atoms(f: Formula) -> int:
    if isinstance(f, (Equation, LinearAtom)):
        return 1
    if isinstance(f, QUANTIFIERS):
        return count_atoms(f.body)
    if isinstance(f, Not):
        return count_atoms(f.arg)
    if isinstance(f, (And, Or)):
        return sum(count_atoms(a) for a in f.args)
    if isinstance(f, Implies):
        return count_atoms(f.left) + count_atoms(f.right)
    return 0


def is_quantifier_free(f: Formula) -> bool:
    return count_quantifiers(f) == 0


# -- printing ----------------------------------------------------------------

def format_scalar(s) -> str:
    if isinstance(s, tuple):
        return "[" + ",".join(str(c) for c in s) + "]"
    return str(s)


def format_term(t: Term, factor: bool = False) -> str:
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Neg):
        return "-" + format_term(t.arg, True)
    if isinstance(t, Scale):
        return format_scalar(t.scalar) + "*" + format_term(t.arg, True)
    if isinstance(t, Add):
        s = format_term(t.left) + " + " + format_term(t.right, True)
        return f"({s})" if factor else s
    raise TypeError(f"not a term: {t!r}")


# precedence: quantifier 0, implication 1, disjunction 2, conjunction 3, literal 4
def _prec(f: Formula) -> int:
    if isinstance(f, QUANTIFIERS):
        return 0
    if isinstance(f, Implies):
        return 1
    if isinstance(f, Or):
        return 2
    if isinstance(f, And):
        return 3
    return 4


def _wrap(f: Formula, need: int) -> str:
    s = format_formula(f)
    return s if _prec(f) >= need else f"({s})"


def format_formula(f: Formula) -> str:
    """Render in the concrete grammar accepted by :func:`parse_formula`."""
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Equation):
        op = "=" if f.eq else "!="
        return f"{format_term(f.lhs)} {op} {format_term(f.rhs)}"
    if isinstance(f, LinearAtom):
        raise TypeError("linear atoms need a space to be rendered; use to_syntax first")
    if isinstance(f, Not):
        # the grammar allows a single "!" per literal
        inner = format_formula(f.arg)
        return "!" + (inner if _prec(f.arg) == 4 and not isinstance(f.arg, Not) else f"({inner})")
    if isinstance(f, And):
        return " & ".join(_wrap(a, 4) for a in f.args)
    if isinstance(f, Or):
        return " | ".join(_wrap(a, 3) for a in f.args)
    if isinstance(f, Implies):
        return f"{_wrap(f.left, 2)} -> {_wrap(f.right, 1)}"
    if isinstance(f, Exists):
        return f"E {f.var}. {format_formula(f.body)}"
    if isinstance(f, Forall):
        return f"A {f.var}. {format_formula(f.body)}"
    raise TypeError(f"not a formula: {f!r}")
