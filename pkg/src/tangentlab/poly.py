"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial in m variables x1..xm is a dictionary mapping exponent tuples
(one nonnegative int per variable) to nonzero Fraction coefficients.  The
zero polynomial is the empty dict.  Because no floating point is involved,
equality of polynomials is decidable and exact: two polynomials are equal
iff their canonical term dictionaries coincide.

Printing and witness output order terms by graded lexicographic order with
x1 < x2 < ... (total degree first, ties broken lexicographically), largest
term first, so rendered output is deterministic and re-parseable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Exponent = tuple[int, ...]


class DimensionError(ValueError):
    """Raised when dimensions of operands do not line up."""


class ParseError(ValueError):
    """Syntax error in a polynomial expression, with a byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


def _as_fraction(value: int | Fraction) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


class Poly:
    """A multivariate polynomial in canonical form (no zero terms stored)."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: dict[Exponent, Fraction] | None = None,
                 _canonical: bool = False):
        if dim < 0:
            raise DimensionError(f"negative dimension {dim}")
        self.dim = dim
        if terms is None:
            self.terms: dict[Exponent, Fraction] = {}
        elif _canonical:
            self.terms = terms
        else:
            clean: dict[Exponent, Fraction] = {}
            for mono, coeff in terms.items():
                if len(mono) != dim:
                    raise DimensionError(
                        f"exponent tuple {mono} does not match dimension {dim}")
                c = _as_fraction(coeff)
                if c != 0:
                    clean[tuple(mono)] = c
            self.terms = clean

    # ---------- constructors ----------

    @staticmethod
    def zero(dim: int) -> Poly:
        return Poly(dim, None, _canonical=True)

    @staticmethod
    def const(dim: int, value: int | Fraction) -> Poly:
        c = _as_fraction(value)
        if c == 0:
            return Poly.zero(dim)
        return Poly(dim, {(0,) * dim: c}, _canonical=True)

    @staticmethod
    def var(dim: int, index: int) -> Poly:
        """The variable x<index>, 1-indexed."""
        if not 1 <= index <= dim:
            raise DimensionError(f"variable index {index} out of range 1..{dim}")
        exp = [0] * dim
        exp[index - 1] = 1
        return Poly(dim, {tuple(exp): Fraction(1)}, _canonical=True)

    @staticmethod
    def monomial(dim: int, exponents: Sequence[int],
                 coeff: int | Fraction = 1) -> Poly:
        exps = tuple(exponents)
        if len(exps) != dim:
            raise DimensionError(f"exponent tuple of length {len(exps)} for dim {dim}")
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        return Poly(dim, {exps: _as_fraction(coeff)})

    # ---------- queries ----------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Total degree; the zero polynomial has degree 0 by convention."""
        if not self.terms:
            return 0
        return max(sum(mono) for mono in self.terms)

    def degree_in(self, indices: Iterable[int]) -> int:
        """Max combined degree over the given 1-indexed variables."""
        idx = [i - 1 for i in indices]
        if not self.terms:
            return 0
        return max(sum(mono[i] for i in idx) for mono in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.dim, Fraction(0))

    # ---------- arithmetic ----------

    def _require_same_dim(self, other: Poly) -> None:
        if self.dim != other.dim:
            raise DimensionError(
                f"variable-set mismatch: dim {self.dim} vs {other.dim}")

    def __add__(self, other: Poly) -> Poly:
        self._require_same_dim(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = out.get(mono, Fraction(0)) + coeff
            if acc == 0:
                out.pop(mono, None)
            else:
                out[mono] = acc
        return Poly(self.dim, out, _canonical=True)

    def __sub__(self, other: Poly) -> Poly:
        self._require_same_dim(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = out.get(mono, Fraction(0)) - coeff
            if acc == 0:
                out.pop(mono, None)
            else:
                out[mono] = acc
        return Poly(self.dim, out, _canonical=True)

    def __neg__(self) -> Poly:
        return Poly(self.dim, {m: -c for m, c in self.terms.items()}, _canonical=True)

    def __mul__(self, other: Poly) -> Poly:
        self._require_same_dim(other)
        if not self.terms or not other.terms:
            return Poly.zero(self.dim)
        out: dict[Exponent, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                acc = out.get(mono, Fraction(0)) + c1 * c2
                if acc == 0:
                    out.pop(mono, None)
                else:
                    out[mono] = acc
        return Poly(self.dim, out, _canonical=True)

    def scale(self, factor: int | Fraction) -> Poly:
        c = _as_fraction(factor)
        if c == 0:
            return Poly.zero(self.dim)
        return Poly(self.dim, {m: c * k for m, k in self.terms.items()},
                    _canonical=True)

    def pow_int(self, n: int) -> Poly:
        if n < 0:
            raise ValueError(f"negative exponent {n}")
        result = Poly.const(self.dim, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # ---------- calculus and evaluation ----------

    def partial(self, index: int) -> Poly:
        """Formal partial derivative with respect to x<index> (1-indexed)."""
        if not 1 <= index <= self.dim:
            raise DimensionError(f"variable index {index} out of range 1..{self.dim}")
        i = index - 1
        out: dict[Exponent, Fraction] = {}
        for mono, coeff in self.terms.items():
            e = mono[i]
            if e == 0:
                continue
            new = list(mono)
            new[i] = e - 1
            key = tuple(new)
            acc = out.get(key, Fraction(0)) + coeff * e
            if acc == 0:
                out.pop(key, None)
            else:
                out[key] = acc
        return Poly(self.dim, out, _canonical=True)

    def eval_at(self, point: Sequence[int | Fraction]) -> Fraction:
        if len(point) != self.dim:
            raise DimensionError(
                f"point of length {len(point)} for dimension {self.dim}")
        vals = [_as_fraction(v) for v in point]
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            term = coeff
            for v, e in zip(vals, mono):
                if e:
                    term *= v ** e
            total += term
        return total

    def substitute(self, replacements: Sequence[Poly],
                   new_dim: int | None = None) -> Poly:
        """Substitute xi := replacements[i-1]; all replacements share one dim.

        new_dim pins the variable count of the result; it is required when
        there are no replacements to infer it from (a 0-variable source).
        """
        if len(replacements) != self.dim:
            raise DimensionError(
                f"{len(replacements)} replacements for dimension {self.dim}")
        if new_dim is None:
            if not replacements:
                raise DimensionError(
                    "substituting into a constant needs an explicit new_dim")
            new_dim = replacements[0].dim
        for r in replacements:
            if r.dim != new_dim:
                raise DimensionError("replacement polynomials disagree on dim")
        power_cache: dict[tuple[int, int], Poly] = {}

        def power(i: int, e: int) -> Poly:
            key = (i, e)
            cached = power_cache.get(key)
            if cached is None:
                if e == 1:
                    cached = replacements[i]
                else:
                    cached = power(i, e - 1) * replacements[i]
                power_cache[key] = cached
            return cached

        total = Poly.zero(new_dim)
        for mono, coeff in self.terms.items():
            term = Poly.const(new_dim, coeff)
            for i, e in enumerate(mono):
                if e:
                    term = term * power(i, e)
            total = total + term
        return total

    def remap_vars(self, mapping: Sequence[int], new_dim: int) -> Poly:
        """Rename variable i (0-indexed) to mapping[i] (0-indexed) in a
        polynomial over new_dim variables."""
        out: dict[Exponent, Fraction] = {}
        for mono, coeff in self.terms.items():
            new = [0] * new_dim
            for i, e in enumerate(mono):
                if e:
                    new[mapping[i]] += e
            out[tuple(new)] = out.get(tuple(new), Fraction(0)) + coeff
        return Poly(new_dim, out)

    # ---------- canonical order, equality, printing ----------

    @staticmethod
    def _grlex_key(mono: Exponent) -> tuple:
        return (sum(mono), mono)

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in descending graded-lex order (x1 < x2 < ...)."""
        return sorted(self.terms.items(), key=lambda kv: Poly._grlex_key(kv[0]),
                      reverse=True)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for mono, coeff in self.sorted_terms():
            factors = [f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}"
                       for i, e in enumerate(mono) if e]
            if not factors:
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(coeff))] + factors)
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self.dim}, {self})"


# ---------------------------------------------------------------------------
# Expression parser
# ---------------------------------------------------------------------------
#
# expr   := term (('+'|'-') term)*
# term   := factor ('*' factor)*
# factor := '-' factor | atom ('^' INT)?
# atom   := RATIONAL | VARIABLE | '(' expr ')'
#
# RATIONAL is `a` or `a/b` with nonnegative integer a, positive integer b;
# VARIABLE is x1..x<dim>.  Exponents are nonnegative integer literals.


@dataclass
class _Token:
    kind: str
    text: str
    offset: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if ch in "+-*^()":
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if i < n and text[i] == "/":
                j = i + 1
                if j < n and text[j].isdigit():
                    i = j
                    while i < n and text[i].isdigit():
                        i += 1
                    tokens.append(_Token("rat", text[start:i], start))
                    continue
                raise ParseError("expected digits after '/'", i + 1)
            tokens.append(_Token("rat", text[start:i], start))
            continue
        if ch == "x":
            start = i
            i += 1
            while i < n and text[i].isdigit():
                i += 1
            if i == start + 1:
                raise ParseError("expected variable index after 'x'", start)
            tokens.append(_Token("var", text[start:i], start))
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("eof", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], dim: int):
        self.tokens = tokens
        self.pos = 0
        self.dim = dim

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text!r}", tok.offset)
        return self.advance()

    def parse_expr(self) -> Poly:
        result = self.parse_term()
        while self.peek().kind in "+-":
            op = self.advance()
            rhs = self.parse_term()
            result = result + rhs if op.kind == "+" else result - rhs
        return result

    def parse_term(self) -> Poly:
        result = self.parse_factor()
        while self.peek().kind == "*":
            self.advance()
            result = result * self.parse_factor()
        return result

    def parse_factor(self) -> Poly:
        tok = self.peek()
        if tok.kind == "-":
            self.advance()
            return -self.parse_factor()
        base = self.parse_atom()
        if self.peek().kind == "^":
            caret = self.advance()
            exp_tok = self.peek()
            if exp_tok.kind != "rat" or "/" in exp_tok.text:
                raise ParseError("expected nonnegative integer exponent",
                                 caret.offset + 1)
            self.advance()
            return base.pow_int(int(exp_tok.text))
        return base

    def parse_atom(self) -> Poly:
        tok = self.advance()
        if tok.kind == "rat":
            if "/" in tok.text:
                num, den = tok.text.split("/")
                if int(den) == 0:
                    raise ParseError("zero denominator", tok.offset)
                return Poly.const(self.dim, Fraction(int(num), int(den)))
            return Poly.const(self.dim, int(tok.text))
        if tok.kind == "var":
            index = int(tok.text[1:])
            if not 1 <= index <= self.dim:
                raise ParseError(
                    f"variable {tok.text} out of range x1..x{self.dim}", tok.offset)
            return Poly.var(self.dim, index)
        if tok.kind == "(":
            inner = self.parse_expr()
            closing = self.peek()
            if closing.kind != ")":
                raise ParseError("expected ')'", closing.offset)
            self.advance()
            return inner
        raise ParseError(f"unexpected token {tok.text!r}", tok.offset)


def poly_parse(text: str, dim: int) -> Poly:
    """Parse an expression string into a canonical-form Poly in dim variables."""
    parser = _Parser(_tokenize(text), dim)
    result = parser.parse_expr()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError(f"trailing input {tok.text!r}", tok.offset)
    return result


# ---------------------------------------------------------------------------
# Polynomial maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolyMap:
    """An n-tuple of polynomials in m variables: a map Q^m -> Q^n."""

    domain_dim: int
    codomain_dim: int
    components: tuple[Poly, ...]

    def __post_init__(self):
        if len(self.components) != self.codomain_dim:
            raise DimensionError(
                f"{len(self.components)} components for codomain "
                f"dimension {self.codomain_dim}")
        for comp in self.components:
            if comp.dim != self.domain_dim:
                raise DimensionError(
                    f"component over {comp.dim} variables in a map with "
                    f"domain dimension {self.domain_dim}")

    @staticmethod
    def from_components(domain_dim: int, components: Sequence[Poly]) -> PolyMap:
        return PolyMap(domain_dim, len(components), tuple(components))

    @staticmethod
    def identity(dim: int) -> PolyMap:
        return PolyMap(dim, dim, tuple(Poly.var(dim, i + 1) for i in range(dim)))

    @staticmethod
    def zero_map(domain_dim: int, codomain_dim: int) -> PolyMap:
        return PolyMap(domain_dim, codomain_dim,
                       tuple(Poly.zero(domain_dim) for _ in range(codomain_dim)))

    @staticmethod
    def permutation(images: Sequence[int]) -> PolyMap:
        """Coordinate permutation: output slot j reads input slot images[j]
        (0-indexed)."""
        dim = len(images)
        return PolyMap(dim, dim,
                       tuple(Poly.var(dim, images[j] + 1) for j in range(dim)))

    def permutation_inverse(self) -> PolyMap:
        """Inverse of a coordinate-permutation map."""
        images = []
        for comp in self.components:
            [(mono, coeff)] = comp.terms.items()
            if coeff != 1 or sum(mono) != 1:
                raise ValueError("not a permutation map")
            images.append(mono.index(1))
        inverse = [0] * len(images)
        for j, i in enumerate(images):
            inverse[i] = j
        return PolyMap.permutation(inverse)

    def eval_at(self, point: Sequence[int | Fraction]) -> tuple[Fraction, ...]:
        return tuple(comp.eval_at(point) for comp in self.components)

    def then(self, other: PolyMap) -> PolyMap:
        """Apply self first, then other (diagrammatic order)."""
        return poly_compose(other, self)

    def slice_components(self, start: int, stop: int) -> tuple[Poly, ...]:
        return self.components[start:stop]

    def max_total_degree(self) -> int:
        return max((c.total_degree() for c in self.components), default=0)

    def difference(self, other: PolyMap) -> PolyMap:
        if (self.domain_dim, self.codomain_dim) != (other.domain_dim,
                                                    other.codomain_dim):
            raise DimensionError("maps of different shapes cannot be compared")
        return PolyMap(self.domain_dim, self.codomain_dim,
                       tuple(a - b for a, b in zip(self.components,
                                                   other.components)))

    def to_strs(self) -> list[str]:
        return [str(c) for c in self.components]

    def __str__(self) -> str:
        return "(" + ", ".join(self.to_strs()) + ")"


def poly_compose(f: PolyMap, g: PolyMap) -> PolyMap:
    """Composite f after g: substitute g's components into f."""
    if g.codomain_dim != f.domain_dim:
        raise DimensionError(
            f"cannot compose: inner codomain {g.codomain_dim} != outer "
            f"domain {f.domain_dim}")
    comps = tuple(c.substitute(list(g.components), g.domain_dim)
                  for c in f.components)
    return PolyMap(g.domain_dim, f.codomain_dim, comps)


def compose_chain(maps: Sequence[PolyMap]) -> PolyMap:
    """Flatten a chain given in application order (first map applied first)."""
    if not maps:
        raise ValueError("empty composition chain")
    result = maps[0]
    for step in maps[1:]:
        result = poly_compose(step, result)
    return result


def stack(maps: Sequence[PolyMap]) -> PolyMap:
    """Pairing <f, g, ...>: stack components of maps sharing one domain."""
    if not maps:
        raise ValueError("empty pairing")
    dom = maps[0].domain_dim
    comps: list[Poly] = []
    for f in maps:
        if f.domain_dim != dom:
            raise DimensionError("pairing requires equal domains")
        comps.extend(f.components)
    return PolyMap.from_components(dom, comps)


# Spec-surface aliases for the operation names of the algebra module.

def poly_arith(op: str, a: Poly, b: Poly | int | Fraction) -> Poly:
    """Dispatching arithmetic: op in {add, sub, mul, scale}."""
    if op == "scale":
        if isinstance(b, Poly):
            raise TypeError("scale takes a rational, not a Poly")
        return a.scale(b)
    if not isinstance(b, Poly):
        raise TypeError(f"{op} requires two polynomials")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def poly_partial(p: Poly, index: int) -> Poly:
    return p.partial(index)


def poly_eval(p: Poly, point: Sequence[int | Fraction]) -> Fraction:
    return p.eval_at(point)
