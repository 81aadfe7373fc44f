"""Exact multivariate polynomial arithmetic over Q and prime fields.

Monomials are exponent tuples, polynomials are dictionaries mapping exponent
tuples to nonzero coefficients.  Coefficients are `fractions.Fraction` in
characteristic zero and plain ints reduced mod p in characteristic p.  There
is no floating point anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    PolynomialSyntaxError,
    RingMismatchError,
    UnknownVariableError,
)

Mono = tuple  # exponent tuple, one slot per ring variable


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class RingDescriptor:
    """A polynomial ring: ordered variable names plus coefficient characteristic."""

    variables: tuple
    characteristic: int = 0

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        for v in self.variables:
            if not v or not (v[0].isalpha() or v[0] == "_"):
                raise ValueError(f"bad variable name {v!r}")
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise ValueError("characteristic must be 0 or a prime")

    @property
    def arity(self) -> int:
        return len(self.variables)

    def var_index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"no variable {name!r} in ring {self.variables}") from None

    def extend(self, names) -> "RingDescriptor":
        return RingDescriptor(self.variables + tuple(names), self.characteristic)

    def drop(self, names) -> "RingDescriptor":
        gone = set(names)
        kept = tuple(v for v in self.variables if v not in gone)
        return RingDescriptor(kept, self.characteristic)

    def coeff(self, value):
        """Coerce an int/Fraction/str into this ring's coefficient field."""
        if self.characteristic == 0:
            return value if isinstance(value, Fraction) else Fraction(value)
        p = self.characteristic
        if isinstance(value, Fraction):
            den = value.denominator % p
            if den == 0:
                raise ZeroDivisionError("denominator vanishes mod p")
            return (value.numerator % p) * pow(den, p - 2, p) % p
        return int(value) % p

    def coeff_inv(self, value):
        if self.characteristic == 0:
            return Fraction(1) / value
        return pow(value, self.characteristic - 2, self.characteristic)


def ring(text: str, characteristic: int = 0) -> RingDescriptor:
    """Build a ring from a comma/space separated variable list, e.g. ring("x, y, z")."""
    names = [s for chunk in text.split(",") for s in chunk.split()]
    if not names:
        raise ValueError("a ring needs at least one variable")
    return RingDescriptor(tuple(names), characteristic)


# ---------------------------------------------------------------------------
# monomial helpers


def mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Mono, b: Mono) -> bool:
    """True when a | b componentwise."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Mono, b: Mono) -> Mono:
    """a / b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a: Mono) -> int:
    return sum(a)


def mono_coprime(a: Mono, b: Mono) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# monomial orders


class MonomialOrder:
    """Total multiplicative well-order on exponent tuples.

    kind: 'degrevlex' | 'lex' | 'block'.  `perm` lists variable indices in
    priority order; `block` is the size of the leading block for elimination
    orders (compared degrevlex-first so the block's variables dominate).
    """

    __slots__ = ("kind", "perm", "block", "_n")

    def __init__(self, kind: str, perm: tuple, block: int = 0):
        if kind not in ("degrevlex", "lex", "block"):
            raise ValueError(f"unknown order kind {kind!r}")
        self.kind = kind
        self.perm = perm
        self.block = block
        self._n = len(perm)

    def signature(self) -> tuple:
        return (self.kind, self.perm, self.block)

    def key(self, expts: Mono):
        """Sort key: bigger key = bigger monomial."""
        p = self.perm
        if self.kind == "lex":
            return tuple(expts[i] for i in p)
        if self.kind == "degrevlex":
            v = [expts[i] for i in p]
            return (sum(v), tuple(-e for e in reversed(v)))
        # elimination block order: degrevlex on the leading block, then the rest
        v = [expts[i] for i in p]
        head, tail = v[: self.block], v[self.block :]
        return (
            sum(head),
            tuple(-e for e in reversed(head)),
            sum(tail),
            tuple(-e for e in reversed(tail)),
        )

    def greater(self, a: Mono, b: Mono) -> bool:
        return self.key(a) > self.key(b)

    def __repr__(self):
        return f"MonomialOrder({self.kind}, perm={self.perm}, block={self.block})"


def degrevlex(ring_or_n) -> MonomialOrder:
    n = ring_or_n if isinstance(ring_or_n, int) else ring_or_n.arity
    return MonomialOrder("degrevlex", tuple(range(n)))


def lex(ring_or_n) -> MonomialOrder:
    n = ring_or_n if isinstance(ring_or_n, int) else ring_or_n.arity
    return MonomialOrder("lex", tuple(range(n)))


def elimination_order(rng: RingDescriptor, first_block) -> MonomialOrder:
    """Order that eliminates the variables named in `first_block`."""
    head = [rng.var_index(v) for v in first_block]
    tail = [i for i in range(rng.arity) if i not in set(head)]
    return MonomialOrder("block", tuple(head + tail), block=len(head))


def order_from_name(name: str, rng: RingDescriptor) -> MonomialOrder:
    if name == "degrevlex":
        return degrevlex(rng)
    if name == "lex":
        return lex(rng)
    raise ValueError(f"unknown order name {name!r}")


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Immutable-by-convention multivariate polynomial."""

    __slots__ = ("ring", "terms")

    def __init__(self, rng: RingDescriptor, terms: dict, normalize: bool = True):
        self.ring = rng
        if normalize:
            clean = {}
            for m, c in terms.items():
                c = rng.coeff(c)
                if c:
                    clean[tuple(m)] = c
            self.terms = clean
        else:
            self.terms = terms

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, rng: RingDescriptor) -> "Polynomial":
        return cls(rng, {}, normalize=False)

    @classmethod
    def constant(cls, rng: RingDescriptor, c) -> "Polynomial":
        return cls(rng, {tuple([0] * rng.arity): c})

    @classmethod
    def one(cls, rng: RingDescriptor) -> "Polynomial":
        return cls.constant(rng, 1)

    @classmethod
    def variable(cls, rng: RingDescriptor, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else rng.var_index(name_or_index)
        e = [0] * rng.arity
        e[i] = 1
        return cls(rng, {tuple(e): 1})

    @classmethod
    def from_monomial(cls, rng: RingDescriptor, mono: Mono, coeff=1) -> "Polynomial":
        return cls(rng, {tuple(mono): coeff})

    # -- queries -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(mono_degree(m) == 0 for m in self.terms)

    def total_degree(self) -> int:
        """Degree of the zero polynomial is -1 by convention."""
        if not self.terms:
            return -1
        return max(mono_degree(m) for m in self.terms)

    def min_degree(self) -> int:
        if not self.terms:
            return -1
        return min(mono_degree(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {mono_degree(m) for m in self.terms}
        return len(degs) <= 1

    def is_term(self) -> bool:
        return len(self.terms) == 1

    def support_variables(self) -> set:
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return used

    def leading(self, order: MonomialOrder):
        """(monomial, coefficient) of the leading term; error on zero."""
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def sorted_terms(self, order: MonomialOrder):
        return sorted(self.terms.items(), key=lambda mc: order.key(mc[0]), reverse=True)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatchError(
                f"rings differ: {self.ring.variables} vs {other.ring.variables}"
            )

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.ring, other)
        self._check(other)
        out = dict(self.terms)
        p = self.ring.characteristic
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if p:
                s %= p
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out, normalize=False)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        p = self.ring.characteristic
        if p:
            return Polynomial(self.ring, {m: (-c) % p for m, c in self.terms.items()}, normalize=False)
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()}, normalize=False)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.ring, other)
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        return Polynomial.constant(self.ring, other).__sub__(self)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.ring.coeff(other)
            if not c:
                return Polynomial.zero(self.ring)
            p = self.ring.characteristic
            if p:
                return Polynomial(
                    self.ring, {m: (v * c) % p for m, v in self.terms.items()}, normalize=False
                )
            return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()}, normalize=False)
        self._check(other)
        p = self.ring.characteristic
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if p:
                    s %= p
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial(self.ring, out, normalize=False)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.one(self.ring)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def monic(self, order: MonomialOrder) -> "Polynomial":
        if self.is_zero():
            return self
        _, c = self.leading(order)
        return self * self.ring.coeff_inv(c)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if other == 0:
                return self.is_zero()
            return self == Polynomial.constant(self.ring, other)
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- calculus & substitution ---------------------------------------------

    def partial(self, var) -> "Polynomial":
        i = var if isinstance(var, int) else self.ring.var_index(var)
        out = {}
        for m, c in self.terms.items():
            if m[i] == 0:
                continue
            e = list(m)
            coeff = c * e[i]
            e[i] -= 1
            out[tuple(e)] = out.get(tuple(e), 0) + coeff
        return Polynomial(self.ring, out)

    def evaluate(self, point):
        """Evaluate at a rational point (tuple of Fractions/ints)."""
        if len(point) != self.ring.arity:
            raise ValueError("point arity mismatch")
        pt = [self.ring.coeff(v) for v in point]
        total = self.ring.coeff(0)
        p = self.ring.characteristic
        for m, c in self.terms.items():
            v = c
            for e, x in zip(m, pt):
                if e:
                    v = v * x**e
                    if p:
                        v %= p
            total = total + v
            if p:
                total %= p
        return total

    def translate(self, point) -> "Polynomial":
        """Substitute x_i -> x_i + point_i (moves `point` to the origin)."""
        if all(self.ring.coeff(v) == 0 for v in point):
            return self
        out = Polynomial.zero(self.ring)
        shifted = [
            Polynomial.variable(self.ring, i) + Polynomial.constant(self.ring, point[i])
            for i in range(self.ring.arity)
        ]
        for m, c in self.terms.items():
            term = Polynomial.constant(self.ring, c)
            for i, e in enumerate(m):
                if e:
                    term = term * shifted[i] ** e
            out = out + term
        return out

    def remap(self, new_ring: RingDescriptor, column_map) -> "Polynomial":
        """Move into `new_ring`; column_map[i] is the new index of old var i,
        or None if the variable is dropped (its exponent must then be 0)."""
        out = {}
        for m, c in self.terms.items():
            e = [0] * new_ring.arity
            for i, exp in enumerate(m):
                if exp == 0:
                    continue
                j = column_map[i]
                if j is None:
                    raise ValueError("nonzero exponent on a dropped variable")
                e[j] = exp
            out[tuple(e)] = c
        return Polynomial(new_ring, out)

    # -- text ------------------------------------------------------------------

    def to_text(self, order: MonomialOrder | None = None) -> str:
        """Canonical rendering: descending terms, '-' folded into coefficients."""
        if self.is_zero():
            return "0"
        order = order or degrevlex(self.ring)
        parts = []
        for m, c in self.sorted_terms(order):
            if self.ring.characteristic == 0:
                neg = c < 0
                mag = -c if neg else c
            else:
                neg, mag = False, c
            factors = []
            for name, e in zip(self.ring.variables, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            parts.append(("-" if neg else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"<poly {self.to_text()}>"


# ---------------------------------------------------------------------------
# parsing


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens = []
        self._scan()
        self.idx = 0

    def _scan(self):
        t, i, n = self.text, 0, len(self.text)
        while i < n:
            ch = t[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < n and t[j].isdigit():
                    j += 1
                self.tokens.append(("int", t[i:j], i))
                i = j
                continue
            if ch.isalpha() or ch == "_":
                j = i
                while j < n and (t[j].isalnum() or t[j] == "_"):
                    j += 1
                self.tokens.append(("ident", t[i:j], i))
                i = j
                continue
            if ch in "+-*^()/":
                self.tokens.append((ch, ch, i))
                i += 1
                continue
            raise PolynomialSyntaxError(f"unexpected character {ch!r}", i)
        self.tokens.append(("end", "", n))

    def peek(self):
        return self.tokens[self.idx]

    def next(self):
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok


def _split_identifier(name: str, rng: RingDescriptor, pos: int):
    """Greedy longest-match decomposition of an identifier into ring variables."""
    out = []
    i = 0
    names = sorted(rng.variables, key=len, reverse=True)
    while i < len(name):
        for v in names:
            if name.startswith(v, i):
                out.append(v)
                i += len(v)
                break
        else:
            raise UnknownVariableError(
                f"cannot read {name[i:]!r} as ring variables {rng.variables}", pos + i
            )
    return out


class _Parser:
    """Recursive descent for: sums of products; '*' optional; '^' powers; a/b rationals."""

    def __init__(self, text: str, rng: RingDescriptor):
        self.lx = _Lexer(text)
        self.ring = rng

    def parse(self) -> Polynomial:
        f = self._expr()
        kind, _, pos = self.lx.peek()
        if kind != "end":
            raise PolynomialSyntaxError("trailing input", pos)
        return f

    def _expr(self) -> Polynomial:
        kind, _, _ = self.lx.peek()
        negate = False
        if kind in ("+", "-"):
            self.lx.next()
            negate = kind == "-"
        f = self._term()
        if negate:
            f = -f
        while True:
            kind, _, _ = self.lx.peek()
            if kind == "+":
                self.lx.next()
                f = f + self._term()
            elif kind == "-":
                self.lx.next()
                f = f - self._term()
            else:
                return f

    def _term(self) -> Polynomial:
        f = self._factor()
        while True:
            kind, _, _ = self.lx.peek()
            if kind == "*":
                self.lx.next()
                f = f * self._factor()
            elif kind in ("int", "ident", "("):
                f = f * self._factor()  # implicit multiplication
            else:
                return f

    def _int(self) -> int:
        kind, val, pos = self.lx.next()
        if kind != "int":
            raise PolynomialSyntaxError("expected an integer", pos)
        return int(val)

    def _power_suffix(self, base: Polynomial) -> Polynomial:
        kind, _, _ = self.lx.peek()
        if kind == "^":
            self.lx.next()
            return base ** self._int()
        return base

    def _factor(self) -> Polynomial:
        kind, val, pos = self.lx.peek()
        if kind == "int":
            self.lx.next()
            num = int(val)
            k2, _, _ = self.lx.peek()
            if k2 == "/":
                self.lx.next()
                den = self._int()
                if den == 0:
                    raise PolynomialSyntaxError("zero denominator", pos)
                try:
                    const = Polynomial.constant(self.ring, Fraction(num, den))
                except ZeroDivisionError:
                    raise PolynomialSyntaxError(
                        "denominator not invertible in this characteristic", pos
                    ) from None
                return self._power_suffix(const)
            return self._power_suffix(Polynomial.constant(self.ring, num))
        if kind == "(":
            self.lx.next()
            f = self._expr()
            k2, _, p2 = self.lx.next()
            if k2 != ")":
                raise PolynomialSyntaxError("expected ')'", p2)
            return self._power_suffix(f)
        if kind == "ident":
            self.lx.next()
            vars_ = _split_identifier(val, self.ring, pos)
            f = Polynomial.one(self.ring)
            for v in vars_[:-1]:
                f = f * Polynomial.variable(self.ring, v)
            last = Polynomial.variable(self.ring, vars_[-1])
            # a trailing '^' binds to the last juxtaposed variable: xy^2 = x*y^2
            return f * self._power_suffix(last)
        raise PolynomialSyntaxError("expected a factor", pos)


def parse_polynomial(text: str, rng: RingDescriptor) -> Polynomial:
    if not text.strip():
        raise PolynomialSyntaxError("empty polynomial", 0)
    return _Parser(text, rng).parse()


def parse_generators(text: str, rng: RingDescriptor):
    """Split on commas and newlines, parse each chunk; empty chunks are skipped."""
    chunks = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        chunks.extend(line.split(","))
    return [parse_polynomial(c, rng) for c in chunks if c.strip()]
