"""Exact multivariate polynomials over the rationals.

A :class:`Poly` is an immutable sparse map from exponent tuples to nonzero
:class:`fractions.Fraction` coefficients, tied to an ordered tuple of at most
five variable names taken from ``x0..x4`` or ``z1..z4``.  Terms are stored and
printed in graded reverse lexicographic order on the declared variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import (
    DimensionError,
    NotHomogeneousError,
    NotSingularError,
    PolySyntaxError,
    UnknownVariableError,
    WeightsError,
)

X_VARS = ("x0", "x1", "x2", "x3", "x4")
Z_VARS = ("z1", "z2", "z3", "z4")
MAX_VARS = 5

Monomial = tuple
Number = Union[int, Fraction]


def grevlex_key(exps: Sequence[int]) -> tuple:
    """Sort key: a larger key means a larger monomial in grevlex."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


def _family(name: str) -> tuple[str, ...]:
    if name in X_VARS:
        return X_VARS
    if name in Z_VARS:
        return Z_VARS
    raise UnknownVariableError(f"unknown variable {name!r}; use x0..x4 or z1..z4")


def _check_variables(variables: Sequence[str]) -> tuple[str, ...]:
    variables = tuple(variables)
    if len(variables) > MAX_VARS:
        raise DimensionError(f"at most {MAX_VARS} variables are supported, got {len(variables)}")
    if len(set(variables)) != len(variables):
        raise DimensionError(f"duplicate variable names in {variables}")
    families = {_family(v) for v in variables}
    if len(families) > 1:
        raise UnknownVariableError(f"variables {variables} mix the x and z families")
    return variables


class Poly:
    """Immutable polynomial with rational coefficients."""

    __slots__ = ("_vars", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Sequence[int], Number] | None = None):
        self._vars = _check_variables(variables)
        n = len(self._vars)
        clean: dict[tuple, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n or any(e < 0 for e in exps):
                raise DimensionError(f"bad exponent vector {exps} for variables {self._vars}")
            coeff = Fraction(coeff)
            if coeff:
                clean[exps] = clean.get(exps, Fraction(0)) + coeff
                if not clean[exps]:
                    del clean[exps]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, variables: tuple[str, ...], terms: dict) -> "Poly":
        # trusted constructor: terms already clean, variables already validated
        p = object.__new__(cls)
        p._vars = variables
        p._terms = terms
        p._hash = None
        return p

    # construction helpers

    @classmethod
    def constant(cls, value: Number, variables: Sequence[str] = ()) -> "Poly":
        variables = _check_variables(variables)
        value = Fraction(value)
        return cls._raw(variables, {(0,) * len(variables): value} if value else {})

    @classmethod
    def gen(cls, name: str, variables: Sequence[str]) -> "Poly":
        variables = _check_variables(variables)
        if name not in variables:
            raise UnknownVariableError(f"{name!r} is not among {variables}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls._raw(variables, {exps: Fraction(1)})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> tuple["Poly", ...]:
        return tuple(cls.gen(v, variables) for v in variables)

    @classmethod
    def monomial(cls, exps: Sequence[int], variables: Sequence[str], coeff: Number = 1) -> "Poly":
        return cls(variables, {tuple(exps): coeff})

    # accessors

    @property
    def variables(self) -> tuple[str, ...]:
        return self._vars

    @property
    def nvars(self) -> int:
        return len(self._vars)

    @property
    def terms(self) -> Mapping[tuple, Fraction]:
        return MappingProxyType(self._terms)

    def items(self) -> list[tuple[tuple, Fraction]]:
        """Terms in canonical (grevlex descending) order."""
        return sorted(self._terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def __iter__(self) -> Iterator[tuple[tuple, Fraction]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.nvars)

    def total_degree(self) -> int:
        """Maximum total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def used_variables(self) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self._vars) if any(e[i] for e in self._terms))

    # arithmetic

    def _pair(self, other):
        """Align ``other`` with ``self``; returns (a, b) sharing variables."""
        if isinstance(other, (int, Fraction)):
            return self, Poly.constant(other, self._vars)
        if not isinstance(other, Poly):
            return None
        if other._vars == self._vars:
            return self, other
        if not other._vars:
            return self, Poly.constant(other.constant_term(), self._vars)
        if not self._vars:
            return Poly.constant(self.constant_term(), other._vars), other
        raise DimensionError(f"cannot combine polynomials in {self._vars} and {other._vars}")

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        terms = dict(a._terms)
        for e, c in b._terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Poly._raw(a._vars, terms)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self._vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return Poly._raw(self._vars, {})
            return Poly._raw(self._vars, {e: c * other for e, c in self._terms.items()})
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        terms: dict[tuple, Fraction] = {}
        for e1, c1 in a._terms.items():
            for e2, c2 in b._terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Poly._raw(a._vars, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.constant(1, self._vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._vars == other._vars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r}, vars={self._vars})"

    def __str__(self) -> str:
        return format_poly(self)

    # calculus and variable bookkeeping

    def diff(self, var: str) -> "Poly":
        if var not in self._vars:
            raise UnknownVariableError(f"{var!r} is not among {self._vars}")
        i = self._vars.index(var)
        terms = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                terms[ne] = c * e[i]
        return Poly._raw(self._vars, terms)

    def embed(self, variables: Sequence[str]) -> "Poly":
        """Re-express in a larger (or reordered) variable list."""
        variables = _check_variables(variables)
        missing = [v for v in self.used_variables() if v not in variables]
        if missing:
            raise UnknownVariableError(f"variables {missing} are not among {variables}")
        index = [self._vars.index(v) if v in self._vars else None for v in variables]
        terms = {}
        for e, c in self._terms.items():
            terms[tuple(e[i] if i is not None else 0 for i in index)] = c
        return Poly._raw(variables, terms)

    def rename(self, mapping: Mapping[str, str]) -> "Poly":
        """Rename variables, keeping the positional layout of the terms."""
        return Poly(tuple(mapping.get(v, v) for v in self._vars), self._terms)

    def evaluate(self, values: Mapping[str, Number]) -> Fraction:
        total = Fraction(0)
        vals = [Fraction(values[v]) for v in self._vars]
        for e, c in self._terms.items():
            t = c
            for x, k in zip(vals, e):
                if k:
                    t *= x**k
            total += t
        return total


# printing


def _format_monomial(exps: Sequence[int], variables: Sequence[str]) -> str:
    parts = []
    for v, k in zip(variables, exps):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    """Canonical text: grevlex-sorted terms, explicit ``*`` and ``^``."""
    if p.is_zero():
        return "0"
    out = []
    for i, (exps, c) in enumerate(p.items()):
        mono = _format_monomial(exps, p.variables)
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# parsing

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<decimal>\d+\.\d*|\.\d+)
  | (?P<number>\d+(?:/\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*^()])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos] == "/":
                raise PolySyntaxError("division is only allowed inside a p/q literal", pos, text)
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind == "decimal":
            raise PolySyntaxError(
                f"non-rational coefficient literal {m.group()!r}; write it as p/q", pos, text
            )
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, tokens, variables: tuple[str, ...]):
        self.text = text
        self.tokens = tokens
        self.i = 0
        self.vars = variables
        self.literal = False

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise PolySyntaxError(message, tok[2], self.text)

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            self.fail("empty polynomial")
        p = self.sum()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return p

    def sum(self) -> Poly:
        p = self.product()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            q = self.product()
            p = p + q if op == "+" else p - q
        return p

    def product(self) -> Poly:
        p = self.unary()
        while True:
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "*":
                self.take()
                p = p * self.unary()
            elif self.literal and (nxt[0] == "ident" or nxt[1] == "("):
                # implicit product is only allowed right after a number
                p = p * self.power()
                self.literal = False
            else:
                return p

    def unary(self) -> Poly:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            p = self.unary()
            return -p if tok[1] == "-" else p
        return self.power()

    def power(self) -> Poly:
        is_number = self.peek()[0] == "number"
        base = self.atom()
        self.literal = is_number
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "number" or "/" in tok[1]:
                self.fail("exponent must be a nonnegative integer literal", tok)
            self.literal = False
            return base ** int(tok[1])
        return base

    def atom(self) -> Poly:
        tok = self.take()
        kind, value, pos = tok
        if kind == "number":
            if "/" in value:
                num, den = value.split("/")
                if int(den) == 0:
                    raise PolySyntaxError("zero denominator", pos, self.text)
                return Poly.constant(Fraction(int(num), int(den)), self.vars)
            return Poly.constant(int(value), self.vars)
        if kind == "ident":
            return Poly.gen(value, self.vars)
        if kind == "op" and value == "(":
            p = self.sum()
            if self.peek()[1] != ")":
                self.fail("expected ')'")
            self.take()
            return p
        if kind == "end":
            self.fail("unexpected end of input", tok)
        self.fail(f"unexpected {value!r}", tok)


def parse_poly(text: str, expected_vars: Sequence[str] | None = None) -> Poly:
    """Parse the polynomial grammar into a canonical :class:`Poly`.

    Without ``expected_vars`` the variables are the ones that occur in the
    text, in family order (``x0 < x1 < ...``).
    """
    tokens = _tokenize(text)
    seen = []
    for i, (kind, value, pos) in enumerate(tokens):
        if kind != "ident":
            continue
        if tokens[i + 1][1] == "(":
            raise PolySyntaxError(f"non-rational coefficient: function {value!r}", pos, text)
        if value not in X_VARS and value not in Z_VARS:
            raise UnknownVariableError(f"unknown variable {value!r} at position {pos}")
        if expected_vars is not None and value not in expected_vars:
            raise UnknownVariableError(
                f"variable {value!r} at position {pos} is not among {tuple(expected_vars)}"
            )
        if value not in seen:
            seen.append(value)
    if expected_vars is None:
        families = {_family(v) for v in seen}
        if len(families) > 1:
            raise UnknownVariableError("polynomial mixes x and z variables")
        fam = families.pop() if families else ()
        variables = tuple(v for v in fam if v in seen)
    else:
        variables = _check_variables(expected_vars)
    return _Parser(text, tokens, variables).parse()


# weights and weighted degrees


@dataclass(frozen=True)
class Weights:
    """Rational weights of four variables and the quasihomogeneity degree."""

    alpha: tuple
    degree: Fraction = Fraction(1)

    def __post_init__(self):
        alpha = tuple(Fraction(a) for a in self.alpha)
        degree = Fraction(self.degree)
        if len(alpha) != 4:
            raise WeightsError(f"expected 4 weights, got {len(alpha)}")
        if any(not (0 < a <= 1) for a in alpha):
            raise WeightsError(f"weights must lie in (0, 1], got {[str(a) for a in alpha]}")
        if degree <= 0:
            raise WeightsError("weighted degree must be positive")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "degree", degree)

    @classmethod
    def parse(cls, text: str) -> "Weights":
        try:
            return cls(tuple(Fraction(part.strip()) for part in text.split(",")))
        except (ValueError, ZeroDivisionError) as exc:
            raise WeightsError(f"cannot read weights {text!r}: {exc}") from None

    def permuted(self, order: Sequence[int]) -> "Weights":
        return Weights(tuple(self.alpha[i] for i in order), self.degree)

    def __str__(self) -> str:
        return ",".join(str(a) for a in self.alpha)


def weighted_degree(exponents: Sequence[int], w: Weights) -> Fraction:
    if len(exponents) != len(w.alpha):
        raise DimensionError(
            f"exponent vector of length {len(exponents)} against {len(w.alpha)} weights"
        )
    return sum((e * a for e, a in zip(exponents, w.alpha)), Fraction(0))


# substitution and charts


def substitute(f: Poly, sigma: Mapping[str, Poly]) -> Poly:
    """Compose ``f`` with the variable images in ``sigma`` and expand."""
    for v, img in sigma.items():
        if v not in f.variables:
            raise UnknownVariableError(f"substitution for undeclared variable {v!r}")
        if not isinstance(img, Poly):
            sigma = dict(sigma)
            sigma[v] = Poly.constant(img, f.variables)
    images = []
    for v in f.variables:
        img = sigma.get(v)
        if img is None:
            images.append(Poly.gen(v, f.variables))
        else:
            try:
                images.append(img.embed(f.variables))
            except UnknownVariableError as exc:
                raise UnknownVariableError(f"image of {v!r} uses an undeclared variable: {exc}") from None
    powers: list[dict[int, Poly]] = [{0: Poly.constant(1, f.variables), 1: img} for img in images]

    def power(i: int, k: int) -> Poly:
        cache = powers[i]
        if k not in cache:
            cache[k] = power(i, k - 1) * images[i]
        return cache[k]

    result = Poly.constant(0, f.variables)
    for exps, c in f.terms.items():
        term = Poly.constant(c, f.variables)
        for i, k in enumerate(exps):
            if k:
                term = term * power(i, k)
        result = result + term
    return result


def translate(f: Poly, point: Mapping[str, Number]) -> Poly:
    """Move ``point`` to the origin: x -> x + point[x]."""
    sigma = {
        v: Poly.gen(v, f.variables) + Fraction(c) for v, c in point.items() if Fraction(c) != 0
    }
    return substitute(f, sigma) if sigma else f


def permute_variables(f: Poly, order: Sequence[str]) -> Poly:
    """Relabel so that new position j holds old variable ``order[j]``.

    The variable names stay the same; only their roles move.
    """
    if sorted(order) != sorted(f.variables):
        raise UnknownVariableError(f"{tuple(order)} is not a permutation of {f.variables}")
    index = [f.variables.index(v) for v in order]
    terms = {tuple(e[i] for i in index): c for e, c in f.terms.items()}
    return Poly._raw(f.variables, terms)


def dehomogenize(F: Poly, chart: str) -> Poly:
    """Set the chart variable to 1 and drop it."""
    if chart not in F.variables:
        raise UnknownVariableError(f"chart variable {chart!r} is not among {F.variables}")
    if not F.is_homogeneous():
        raise NotHomogeneousError(f"{F} is not homogeneous")
    i = F.variables.index(chart)
    rest = F.variables[:i] + F.variables[i + 1:]
    terms: dict[tuple, Fraction] = {}
    for e, c in F.terms.items():
        ne = e[:i] + e[i + 1:]
        terms[ne] = terms.get(ne, 0) + c
    return Poly(rest, terms)


def specialize(f: Poly, values: Mapping[str, Number]) -> Poly:
    """Fix some variables to constants and drop them from the ring."""
    for v in values:
        if v not in f.variables:
            raise UnknownVariableError(f"{v!r} is not among {f.variables}")
    keep = [i for i, v in enumerate(f.variables) if v not in values]
    fixed = [(i, Fraction(values[v])) for i, v in enumerate(f.variables) if v in values]
    terms: dict[tuple, Fraction] = {}
    for e, c in f.terms.items():
        for i, x in fixed:
            if e[i]:
                c *= x ** e[i]
        if c:
            ne = tuple(e[i] for i in keep)
            terms[ne] = terms.get(ne, 0) + c
    return Poly(tuple(f.variables[i] for i in keep), terms)


def gradient(f: Poly) -> list[Poly]:
    return [f.diff(v) for v in f.variables]


def hessian_at_origin(f: Poly) -> list[list[Fraction]]:
    """Second partials at 0 of a germ with a singular point at the origin."""
    n = f.nvars
    if f.constant_term():
        raise NotSingularError(f"germ has constant term {f.constant_term()}; origin is not on it")
    for exps, c in f.terms.items():
        if sum(exps) == 1:
            raise NotSingularError(f"germ has nonzero linear part ({c}*{_format_monomial(exps, f.variables)})")
    H = [[Fraction(0)] * n for _ in range(n)]
    for exps, c in f.terms.items():
        if sum(exps) != 2:
            continue
        idx = [i for i, e in enumerate(exps) for _ in range(e)]
        i, j = idx
        if i == j:
            H[i][i] = 2 * c
        else:
            H[i][j] = H[j][i] = c
    return H


def homogeneous_parts(f: Poly) -> dict[int, Poly]:
    parts: dict[int, dict] = {}
    for e, c in f.terms.items():
        parts.setdefault(sum(e), {})[e] = c
    return {d: Poly._raw(f.variables, t) for d, t in parts.items()}


def monomials_of_degree(n: int, degree: int) -> Iterable[tuple]:
    if n == 0:
        if degree == 0:
            yield ()
        return
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(n - 1, degree - first):
            yield (first,) + rest
