"""Sparse multivariate polynomials with exact integer coefficients.

A monomial is a sorted tuple of ``(variable, exponent)`` pairs. Variables are tuples whose first
item names them: ``("u", key)`` for weight-indexed variables, ``("v",)``, ``("z",)``, ``("y",)``,
and ``("m", i, k)`` for bound variables.
"""

from collections.abc import Callable, Mapping
from fractions import Fraction
from typing import Any

from .semigroups import format_key

Variable = tuple
Monomial = tuple[tuple[Variable, int], ...]


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    powers = dict(m1)
    for var, exp in m2:
        powers[var] = powers.get(var, 0) + exp
    return tuple(sorted(powers.items()))


def format_variable(var: Variable) -> str:
    if var[0] == "u":
        return f"u[{format_key(var[1])}]" if len(var) > 1 else "u"
    if var[0] == "m":
        return f"m[{var[1] + 1},{var[2] + 1}]" if len(var) == 3 else f"m[{var[1] + 1}]"
    return str(var[0])


class Polynomial:
    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        coefs: dict[Monomial, int] = {}
        for mono, coef in (terms or {}).items():
            if coef == 0:
                continue
            key = tuple(sorted((var, exp) for var, exp in mono if exp != 0))
            coefs[key] = coefs.get(key, 0) + coef
        self.terms: dict[Monomial, int] = {k: c for k, c in coefs.items() if c != 0}

    @classmethod
    def constant(cls, c: int) -> "Polynomial":
        return cls({(): c})

    @classmethod
    def variable(cls, var: Variable) -> "Polynomial":
        return cls({((var, 1),): 1})

    @classmethod
    def promote(cls, item: Any) -> "Polynomial":
        if isinstance(item, Polynomial):
            return item
        if isinstance(item, int):
            return cls.constant(item)
        raise TypeError(f"Cannot use {type(item).__name__} as a polynomial")

    def __add__(self, other):
        other = self.promote(other)
        cs = dict(self.terms)
        for key, value in other.terms.items():
            cs[key] = cs.get(key, 0) + value
        return Polynomial(cs)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self.promote(other))

    def __rsub__(self, other):
        return self.promote(other) - self

    def __mul__(self, other):
        other = self.promote(other)
        cs: dict[Monomial, int] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = _mono_mul(k1, k2)
                cs[k] = cs.get(k, 0) + v1 * v2
        return Polynomial(cs)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("Negative powers are not polynomials")
        result = Polynomial.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        try:
            other = self.promote(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def variables(self) -> set[Variable]:
        return {var for mono in self.terms for var, _ in mono}

    def u_keys(self) -> set[tuple]:
        """Semigroup keys of the weight-indexed variables that occur."""
        return {var[1] for var in self.variables() if var[0] == "u" and len(var) > 1}

    def degree(self, var: Variable) -> int:
        return max((dict(mono).get(var, 0) for mono in self.terms), default=0)

    def coefficient(self, mono: Monomial) -> int:
        return self.terms.get(tuple(sorted(mono)), 0)

    def evaluate(self, values: Mapping[Variable, Any] | Callable[[Variable], Any]) -> Fraction:
        """Exact value with every variable replaced."""
        lookup = values if callable(values) else values.__getitem__
        total = Fraction(0)
        for mono, coef in self.terms.items():
            term = Fraction(coef)
            for var, exp in mono:
                term *= Fraction(lookup(var)) ** exp
            total += term
        return total

    def substitute(self, var: Variable, replacement: "Polynomial | int") -> "Polynomial":
        replacement = self.promote(replacement)
        result = Polynomial()
        for mono, coef in self.terms.items():
            rest = tuple((v, e) for v, e in mono if v != var)
            exp = dict(mono).get(var, 0)
            result = result + Polynomial({rest: coef}) * replacement**exp
        return result

    def map_variables(self, fn: Callable[[Variable], Variable]) -> "Polynomial":
        result: dict[Monomial, int] = {}
        for mono, coef in self.terms.items():
            new = Polynomial.constant(coef)
            for var, exp in mono:
                new = new * Polynomial({((fn(var), exp),): 1})
            for k, c in new.terms.items():
                result[k] = result.get(k, 0) + c
        return Polynomial(result)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        """Terms ordered by z-degree, v-degree, y-degree, then the u-multiset and other variables."""

        def order(item: tuple[Monomial, int]) -> tuple:
            powers = dict(item[0])
            u_part = tuple(var[1] for var, exp in item[0] if var[0] == "u" and len(var) > 1 for _ in range(exp))
            others = tuple((var, exp) for var, exp in item[0] if var[0] not in ("u", "v", "z", "y"))
            return (
                powers.get(("z",), 0),
                powers.get(("v",), 0),
                powers.get(("y",), 0),
                powers.get(("u",), 0),
                u_part,
                others,
            )

        return sorted(self.terms.items(), key=order)

    def to_dict(self) -> list[dict[str, Any]]:
        """Machine form: one entry per term, u-keys repeated by multiplicity."""
        rows = []
        for mono, coef in self.sorted_terms():
            row: dict[str, Any] = {"coef": coef, "u": []}
            for var, exp in mono:
                if var[0] == "u" and len(var) > 1:
                    row["u"].extend([var[1]] * exp)
                else:
                    row[format_variable(var)] = exp
            rows.append(row)
        return rows

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for mono, coef in self.sorted_terms():
            factors = []
            for var, exp in mono:
                name = format_variable(var)
                factors.append(name if exp == 1 else f"{name}^{exp}")
            body = "*".join(factors)
            magnitude = abs(coef)
            if not body:
                text = str(magnitude)
            elif magnitude == 1:
                text = body
            else:
                text = f"{magnitude}*{body}"
            pieces.append(("-" if coef < 0 else "+", text))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in pieces[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self):
        return f"Polynomial({self})"


V = Polynomial.variable(("v",))
Z = Polynomial.variable(("z",))
Y = Polynomial.variable(("y",))
ONE = Polynomial.constant(1)


def u(key: tuple) -> Polynomial:
    """The variable indexed by a semigroup key."""
    return Polynomial.variable(("u", key))


def m_var(i: int, k: int | None = None) -> Polynomial:
    return Polynomial.variable(("m", i, k) if k is not None else ("m", i))
