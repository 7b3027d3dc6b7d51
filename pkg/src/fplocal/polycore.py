"""Sparse multivariate polynomials over prime fields F_p.

A polynomial is a map from exponent tuples to nonzero coefficients in
[1, p); the zero polynomial is the empty map.  The ring object fixes the
modulus, the variable count and the monomial order, and every operation
is exact integer arithmetic mod p.

Two layers coexist on purpose: Polynomial is the immutable public value,
while the raw dict helpers (add_scaled, dict_mul, ...) are the hot-loop
kernels shared with the Groebner engines.  The kernels never mutate a
Polynomial's term map; they work on plain dict copies.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import ParseError, RingMismatchError

__all__ = [
    "MINUS_INF",
    "PolyRing",
    "FpElem",
    "Polynomial",
    "RationalPoint",
    "mono_mul",
    "mono_div",
    "mono_divides",
    "mono_lcm",
    "mono_deg",
    "monomials_of_degree",
    "monomials_up_to_degree",
    "parse_poly",
    "add_scaled",
    "dict_mul",
]


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


class _MinusInfinity:
    """Total degree of the zero polynomial; compares below every integer."""

    __slots__ = ()

    def __lt__(self, other):
        return other is not MINUS_INF

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is MINUS_INF

    def __add__(self, other):
        return MINUS_INF

    __radd__ = __add__

    def __repr__(self):
        return "-inf"


MINUS_INF = _MinusInfinity()


# ---------------------------------------------------------------------------
# monomials: plain exponent tuples

def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: tuple, b: tuple) -> tuple:
    """Exact quotient a / b; raises ArithmeticError on a negative exponent."""
    q = tuple(x - y for x, y in zip(a, b))
    if any(e < 0 for e in q):
        raise ArithmeticError(f"monomial {b} does not divide {a}")
    return q


def mono_divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x >= y else y for x, y in zip(a, b))


def mono_deg(a: tuple) -> int:
    return sum(a)


def monomials_of_degree(n: int, d: int) -> Iterator[tuple]:
    """All exponent tuples of total degree exactly d, deterministic order."""
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            yield (first,) + rest


def monomials_up_to_degree(n: int, d: int) -> Iterator[tuple]:
    for k in range(d + 1):
        yield from monomials_of_degree(n, k)


def _lex_key(a: tuple) -> tuple:
    return a


def _grevlex_key(a: tuple):
    return (sum(a), tuple(-e for e in reversed(a)))


class PolyRing:
    """F_p[x1, ..., xn] with a fixed monomial order.

    order is 'grevlex' (default) or 'lex'.  Orders of the form
    'elim-grevlex' / 'elim-lex' make the last variable dominant over a
    base order on the rest; the elimination steps of the ideal quotient
    machinery build such rings internally.
    """

    __slots__ = ("p", "n", "order", "key")

    def __init__(self, p: int, n: int, order: str = "grevlex"):
        if not _is_prime(p):
            raise ValueError(f"modulus must be prime, got {p}")
        if n < 1:
            raise ValueError(f"need at least one variable, got n={n}")
        base = order[5:] if order.startswith("elim-") else order
        if base == "grevlex":
            base_key = _grevlex_key
        elif base == "lex":
            base_key = _lex_key
        else:
            raise ValueError(f"unknown monomial order {order!r}")
        self.p = p
        self.n = n
        self.order = order
        if order.startswith("elim-"):
            self.key = lambda a, _bk=base_key: (a[-1], _bk(a[:-1]))
        else:
            self.key = base_key

    def zero_mono(self) -> tuple:
        return (0,) * self.n

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.p == other.p
            and self.n == other.n
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.p, self.n, self.order))

    def __repr__(self):
        return f"PolyRing(p={self.p}, n={self.n}, order={self.order!r})"


class FpElem:
    """An element of F_p, always reduced to [0, p)."""

    __slots__ = ("p", "val")

    def __init__(self, p: int, val: int):
        if not _is_prime(p):
            raise ValueError(f"modulus must be prime, got {p}")
        self.p = p
        self.val = int(val) % p

    def _coerce(self, other) -> "FpElem":
        if isinstance(other, FpElem):
            if other.p != self.p:
                raise RingMismatchError(f"F_{self.p} vs F_{other.p}")
            return other
        if isinstance(other, int):
            return FpElem(self.p, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElem(self.p, self.val + o.val)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElem(self.p, self.val - o.val)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElem(self.p, o.val - self.val)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElem(self.p, self.val * o.val)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElem(self.p, -self.val)

    def inverse(self) -> "FpElem":
        if self.val == 0:
            raise ZeroDivisionError(f"0 is not invertible in F_{self.p}")
        return FpElem(self.p, pow(self.val, -1, self.p))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FpElem(self.p, pow(self.val, e, self.p))

    def __eq__(self, other):
        if isinstance(other, FpElem):
            return self.p == other.p and self.val == other.val
        if isinstance(other, int):
            return self.val == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.val))

    def __int__(self):
        return self.val

    def __bool__(self):
        return self.val != 0

    def __repr__(self):
        return f"FpElem({self.p}, {self.val})"


# ---------------------------------------------------------------------------
# raw term-dict kernels

def add_scaled(acc: dict, src: Mapping, coeff: int, shift: tuple, p: int) -> None:
    """acc += coeff * x^shift * src, in place, dropping cancelled terms."""
    for a, c in src.items():
        m = tuple(x + y for x, y in zip(a, shift))
        v = (acc.get(m, 0) + coeff * c) % p
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


def dict_mul(A: Mapping, B: Mapping, p: int) -> dict:
    out: dict = {}
    if len(A) > len(B):
        A, B = B, A
    for a, ca in A.items():
        for b, cb in B.items():
            m = tuple(x + y for x, y in zip(a, b))
            v = (out.get(m, 0) + ca * cb) % p
            if v:
                out[m] = v
            else:
                del out[m]
    return out


class Polynomial:
    """Immutable sparse polynomial.  Treat .terms as read-only."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Union[Mapping, Iterable] = (), *, _raw: bool = False):
        self.ring = ring
        if _raw:
            # internal fast path: terms is already a clean dict
            self.terms = terms
            return
        clean: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, c in items:
            mono = tuple(mono)
            if len(mono) != ring.n:
                raise ValueError(f"exponent tuple {mono} has length != {ring.n}")
            if any((not isinstance(e, int)) or e < 0 for e in mono):
                raise ValueError(f"exponents must be non-negative integers: {mono}")
            v = (clean.get(mono, 0) + int(c)) % ring.p
            if v:
                clean[mono] = v
            else:
                clean.pop(mono, None)
        self.terms = clean

    # -- constructors

    @classmethod
    def zero(cls, ring: PolyRing) -> "Polynomial":
        return cls(ring, {}, _raw=True)

    @classmethod
    def constant(cls, ring: PolyRing, c: int) -> "Polynomial":
        c = int(c) % ring.p
        return cls(ring, {ring.zero_mono(): c} if c else {}, _raw=True)

    @classmethod
    def one(cls, ring: PolyRing) -> "Polynomial":
        return cls.constant(ring, 1)

    @classmethod
    def variable(cls, ring: PolyRing, k: int) -> "Polynomial":
        """The variable x_k, 1-based to match the text syntax x1..xn."""
        if not 1 <= k <= ring.n:
            raise ValueError(f"variable index {k} out of range 1..{ring.n}")
        mono = tuple(1 if i == k - 1 else 0 for i in range(ring.n))
        return cls(ring, {mono: 1}, _raw=True)

    @classmethod
    def monomial(cls, ring: PolyRing, exps: Sequence[int], coeff: int = 1) -> "Polynomial":
        return cls(ring, {tuple(exps): coeff})

    # -- structure

    def __bool__(self) -> bool:
        return bool(self.terms)

    def total_degree(self):
        if not self.terms:
            return MINUS_INF
        return max(sum(a) for a in self.terms)

    def leading_monomial(self) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=self.ring.key)

    def leading_coeff(self) -> int:
        return self.terms[self.leading_monomial()]

    def leading_term(self) -> tuple:
        lm = self.leading_monomial()
        return lm, self.terms[lm]

    def coefficient(self, mono: Sequence[int]) -> int:
        return self.terms.get(tuple(mono), 0)

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {self.ring.zero_mono()}

    def is_homogeneous(self) -> bool:
        degs = {sum(a) for a in self.terms}
        return len(degs) <= 1

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        c = self.leading_coeff()
        if c == 1:
            return self
        inv = pow(c, -1, self.ring.p)
        return Polynomial(
            self.ring, {a: (v * inv) % self.ring.p for a, v in self.terms.items()}, _raw=True
        )

    # -- arithmetic

    def _check(self, other: "Polynomial") -> None:
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(self.ring, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        add_scaled(out, other.terms, 1, self.ring.zero_mono(), self.ring.p)
        return Polynomial(self.ring, out, _raw=True)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(self.ring, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        add_scaled(out, other.terms, self.ring.p - 1, self.ring.zero_mono(), self.ring.p)
        return Polynomial(self.ring, out, _raw=True)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {a: p - c for a, c in self.terms.items()}, _raw=True)

    def __mul__(self, other):
        if isinstance(other, int):
            c = other % self.ring.p
            if c == 0:
                return Polynomial.zero(self.ring)
            return Polynomial(
                self.ring, {a: (v * c) % self.ring.p for a, v in self.terms.items()}, _raw=True
            )
        if isinstance(other, FpElem):
            if other.p != self.ring.p:
                raise RingMismatchError(f"F_{other.p} scalar on {self.ring}")
            return self * other.val
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        return Polynomial(self.ring, dict_mul(self.terms, other.terms, self.ring.p), _raw=True)

    __rmul__ = __mul__

    def _frobenius(self) -> "Polynomial":
        # g -> g^p is exponent scaling; coefficients are fixed by Fermat
        p = self.ring.p
        return Polynomial(
            self.ring, {tuple(e * p for e in a): c for a, c in self.terms.items()}, _raw=True
        )

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative powers are not defined in R")
        p = self.ring.p
        result = Polynomial.one(self.ring)
        base = self
        while e:
            e, d = divmod(e, p)
            if d:
                result = result * _small_pow(base, d)
            if e:
                base = base._frobenius()
        return result

    # -- substitution

    def evaluate(self, point) -> int:
        coords = _coords(self.ring, point)
        p = self.ring.p
        total = 0
        for a, c in self.terms.items():
            v = c
            for x, e in zip(coords, a):
                if e:
                    v = (v * pow(x, e, p)) % p
            total = (total + v) % p
        return total

    def translate(self, point) -> "Polynomial":
        """g(x + a): shift coordinates by the rational point a."""
        coords = _coords(self.ring, point)
        if not any(coords):
            return self
        ring = self.ring
        p = ring.p
        n = ring.n
        cache: dict = {}
        out: dict = {}
        for mono, c in self.terms.items():
            term = {ring.zero_mono(): c}
            for i, e in enumerate(mono):
                if e == 0:
                    continue
                a = coords[i]
                if a == 0:
                    shift = tuple(e if j == i else 0 for j in range(n))
                    term = {mono_mul(m, shift): v for m, v in term.items()}
                    continue
                factor = cache.get((i, e))
                if factor is None:
                    factor = {}
                    for k in range(e + 1):
                        cc = (math.comb(e, k) * pow(a, e - k, p)) % p
                        if cc:
                            factor[tuple(k if j == i else 0 for j in range(n))] = cc
                    cache[(i, e)] = factor
                term = dict_mul(term, factor, p)
            for m, v in term.items():
                w = (out.get(m, 0) + v) % p
                if w:
                    out[m] = w
                else:
                    del out[m]
        return Polynomial(ring, out, _raw=True)

    # -- comparison and text

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=self.ring.key, reverse=True):
            c = self.terms[mono]
            factors = []
            if c != 1 or not any(mono):
                factors.append(str(c))
            for i, e in enumerate(mono):
                if e == 0:
                    continue
                factors.append(f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return str(self)


def _small_pow(g: Polynomial, d: int) -> Polynomial:
    # square-and-multiply for exponents below p
    result = None
    base = g
    while d:
        if d & 1:
            result = base if result is None else result * base
        d >>= 1
        if d:
            base = base * base
    return result if result is not None else Polynomial.one(g.ring)


class RationalPoint:
    """An F_p-rational point: a length-n coordinate vector over F_p."""

    __slots__ = ("ring", "coords")

    def __init__(self, ring: PolyRing, coords: Sequence[int]):
        coords = tuple(int(c) % ring.p for c in coords)
        if len(coords) != ring.n:
            raise ValueError(f"point needs {ring.n} coordinates, got {len(coords)}")
        self.ring = ring
        self.coords = coords

    @classmethod
    def origin(cls, ring: PolyRing) -> "RationalPoint":
        return cls(ring, (0,) * ring.n)

    def is_origin(self) -> bool:
        return not any(self.coords)

    def elements(self) -> tuple:
        return tuple(FpElem(self.ring.p, c) for c in self.coords)

    def __neg__(self) -> "RationalPoint":
        return RationalPoint(self.ring, tuple(-c for c in self.coords))

    def __eq__(self, other):
        if not isinstance(other, RationalPoint):
            return NotImplemented
        return self.ring == other.ring and self.coords == other.coords

    def __hash__(self):
        return hash((self.ring, self.coords))

    def __repr__(self):
        return f"RationalPoint({self.coords})"


def _coords(ring: PolyRing, point) -> tuple:
    if isinstance(point, RationalPoint):
        if point.ring.p != ring.p or point.ring.n != ring.n:
            raise RingMismatchError(f"{point.ring} point used in {ring}")
        return point.coords
    coords = tuple(int(c) % ring.p for c in point)
    if len(coords) != ring.n:
        raise ValueError(f"point needs {ring.n} coordinates, got {len(coords)}")
    return coords


# ---------------------------------------------------------------------------
# text grammar
#
#   poly   := [sign] term (('+' | '-') term)*
#   term   := factor ('*' factor)*
#   factor := integer | power
#   power  := 'x' index ['^' exponent]
#
# Whitespace is ignored.  Variables are x1..xn.  format() emits the
# canonical form: terms in descending ring order, coefficients in [1, p),
# exponent 1 left implicit; parse(format(g)) == g.

def _tokenize(text: str):
    tokens = []
    pos = 0
    end = len(text)
    while pos < end:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch.isdigit():
            j = pos
            while j < end and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[pos:j]), pos))
            pos = j
        elif ch == "x":
            j = pos + 1
            while j < end and text[j].isdigit():
                j += 1
            if j == pos + 1:
                raise ParseError("variable needs an index", text, pos)
            tokens.append(("var", int(text[pos + 1:j]), pos))
            pos = j
        elif ch in "^*+-":
            tokens.append((ch, ch, pos))
            pos += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", text, pos)
    tokens.append(("end", None, end))
    return tokens


def parse_poly(ring: PolyRing, text: str) -> Polynomial:
    """Parse the canonical polynomial grammar over the given ring."""
    tokens = _tokenize(text)
    k = 0

    def peek():
        return tokens[k]

    def advance():
        nonlocal k
        tok = tokens[k]
        k += 1
        return tok

    terms: dict = {}
    kind, _, pos = peek()
    if kind == "end":
        raise ParseError("empty polynomial text", text, pos)

    while True:
        sign = 1
        kind, _, pos = peek()
        if kind in "+-":
            advance()
            sign = -1 if kind == "-" else 1
        coeff = 1
        exps = [0] * ring.n
        saw_factor = False
        while True:
            kind, val, pos = peek()
            if kind == "int":
                advance()
                coeff = coeff * val
            elif kind == "var":
                advance()
                if not 1 <= val <= ring.n:
                    raise ParseError(f"variable x{val} out of range 1..{ring.n}", text, pos)
                e = 1
                if peek()[0] == "^":
                    advance()
                    ekind, eval_, epos = peek()
                    if ekind != "int":
                        raise ParseError("exponent must be an integer", text, epos)
                    advance()
                    e = eval_
                exps[val - 1] += e
            else:
                raise ParseError("expected a coefficient or variable", text, pos)
            saw_factor = True
            if peek()[0] == "*":
                advance()
                continue
            break
        if not saw_factor:
            raise ParseError("empty term", text, pos)
        mono = tuple(exps)
        v = (terms.get(mono, 0) + sign * coeff) % ring.p
        if v:
            terms[mono] = v
        else:
            terms.pop(mono, None)
        kind, _, pos = peek()
        if kind == "end":
            break
        if kind not in "+-":
            raise ParseError("expected '+' or '-' between terms", text, pos)
    return Polynomial(ring, terms, _raw=True)
