"""Exact fields: prime fields, extension fields GF(p^n), Q and GF(2)(t).

Elements are plain Python values with a canonical representation:

* ``PrimeField`` and ``ExtensionField`` use integers ``0..q-1``; for GF(p^n)
  the integer ``sum c_i p^i`` encodes the residue polynomial ``sum c_i t^i``;
* ``Rationals`` uses ``fractions.Fraction``;
* ``RationalFunctionField`` uses :class:`RatFunc` (reduced quotients of
  GF(2)[t] polynomials stored as bit masks).

Every field also offers elementwise operations on numpy arrays (integer
arrays for finite fields, object arrays otherwise) together with an exact
``einsum``; the tensor code in the rest of the package is written against
that interface only.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import reduce

import numpy as np

from .errors import InfiniteClassSet, InfiniteField, NotPrime, ParseError, ReducibleModulus, Unsupported


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def prime_power(q: int):
    """Return (p, n) with q = p**n, or None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                return None
            n, r = 0, q
            while r % p == 0:
                r //= p
                n += 1
            return (p, n) if r == 1 else None
    return None


# -- integer polynomial parsing ------------------------------------------------

_TERM = re.compile(r"([+-]?)([^+-]+)")


def parse_int_poly(text: str, var: str = "t") -> dict[int, int]:
    """Parse ``2t^2 - t + 1`` style text into {degree: integer coefficient}."""
    s = text.replace(" ", "")
    if s.startswith("(") and s.endswith(")") and s.count("(") == 1:
        s = s[1:-1]
    if not s:
        raise ParseError("empty polynomial")
    pos = 0
    out: dict[int, int] = {}
    for m in _TERM.finditer(s):
        if m.start() != pos:
            raise ParseError(f"cannot parse polynomial {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2)
        if var in body:
            coef_s, _, rest = body.partition(var)
            coef_s = coef_s.rstrip("*")
            coef = int(coef_s) if coef_s else 1
            if rest == "":
                deg = 1
            elif rest.startswith("^") and rest[1:].isdigit():
                deg = int(rest[1:])
            else:
                raise ParseError(f"cannot parse term {body!r}")
        else:
            if not body.isdigit():
                raise ParseError(f"cannot parse term {body!r}")
            coef, deg = int(body), 0
        out[deg] = out.get(deg, 0) + sign * coef
    if pos != len(s):
        raise ParseError(f"cannot parse polynomial {text!r}")
    return out


def format_poly(coeffs, var: str = "t") -> str:
    """Format a low-to-high coefficient sequence of non-negative integers."""
    terms = []
    for deg in range(len(coeffs) - 1, -1, -1):
        c = coeffs[deg]
        if c == 0:
            continue
        if deg == 0:
            terms.append(str(c))
            continue
        mono = var if deg == 1 else f"{var}^{deg}"
        terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


# -- the field interface -------------------------------------------------------

class Field:
    """Common interface.  Subclasses provide the concrete arithmetic."""

    characteristic: int = 0
    order: int | None = None
    dtype: object = object

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    # scalar helpers shared by all backends
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        out = self.one
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def from_int(self, n: int):
        raise NotImplementedError

    def elements(self):
        raise InfiniteField(f"{self} is infinite")

    def nonzero_elements(self):
        return [a for a in self.elements() if not self.is_zero(a)]

    def is_zero(self, a) -> bool:
        return a == self.zero

    # array helpers
    def zeros(self, shape):
        raise NotImplementedError

    def eye(self, n: int):
        m = self.zeros((n, n))
        for i in range(n):
            m[i, i] = self.one
        return m

    def allzero(self, x) -> bool:
        raise NotImplementedError

    def first_nonzero(self, x):
        """Index tuple of the first nonzero entry of ``x`` (C order), or None."""
        raise NotImplementedError

    def vsum(self, x, axis: int):
        raise NotImplementedError

    def einsum(self, subscripts: str, *ops):
        raise NotImplementedError

    def key(self, x) -> tuple:
        """Hashable key of an array, used for deduplication."""
        return tuple(np.asarray(x).ravel().tolist())

    def __repr__(self):
        return str(self)

    def __eq__(self, other):
        return isinstance(other, Field) and str(self) == str(other)

    def __hash__(self):
        return hash(str(self))


def _generic_einsum(F: Field, subscripts: str, ops) -> np.ndarray:
    """einsum through F.mul and F.vsum; used where numpy cannot do the arithmetic."""
    lhs, out = subscripts.replace(" ", "").split("->")
    terms = lhs.split(",")
    sizes: dict[str, int] = {}
    for term, op in zip(terms, ops):
        for letter, n in zip(term, op.shape):
            sizes[letter] = n
    summed = [c for c in dict.fromkeys("".join(terms)) if c not in out]
    full = list(out) + summed
    shape = [sizes[c] for c in full]
    if 0 in shape:
        return F.zeros([sizes[c] for c in out])
    acc = None
    for term, op in zip(terms, ops):
        perm = sorted(range(len(term)), key=lambda i: full.index(term[i]))
        arr = np.transpose(np.asarray(op), perm)
        arr = arr.reshape([sizes[c] if c in term else 1 for c in full])
        acc = arr if acc is None else F.mul(acc, arr)
    acc = np.broadcast_to(acc, shape)
    for _ in summed:
        acc = F.vsum(acc, -1)
    return np.array(acc)


class _FiniteField(Field):
    dtype = np.int64

    def elements(self):
        return list(range(self.order))

    def from_int(self, n: int):
        return self._from_int(n)

    def random_element(self, rng):
        return int(rng.integers(self.order))

    def zeros(self, shape):
        return np.zeros(shape, dtype=np.int64)

    def array(self, data):
        return np.array(data, dtype=np.int64)

    def allzero(self, x) -> bool:
        return not np.any(x)

    def first_nonzero(self, x):
        idx = np.argwhere(np.asarray(x) != 0)
        return tuple(int(i) for i in idx[0]) if len(idx) else None

    def is_zero(self, a) -> bool:
        return a == 0

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def _square_roots(self):
        roots = getattr(self, "_roots", None)
        if roots is None:
            roots = {}
            for a in self.elements():
                roots.setdefault(int(self.mul(a, a)), a)
            self._roots = roots
        return roots

    def is_square(self, a):
        root = self._square_roots().get(int(a))
        return (root is not None, root)


class PrimeField(_FiniteField):
    def __init__(self, p: int):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.order = p

    def __str__(self):
        return f"GF({self.p})"

    def _from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def vsum(self, x, axis):
        return np.sum(x, axis=axis) % self.p

    def einsum(self, subscripts, *ops):
        return np.einsum(subscripts, *[np.asarray(o, dtype=np.int64) for o in ops]) % self.p

    def parse_element(self, text: str):
        try:
            return int(text.strip()) % self.p
        except ValueError:
            raise ParseError(f"not an element of {self}: {text!r}") from None

    def format_element(self, a) -> str:
        return str(int(a))


def _poly_mulmod(a, b, modulus, p):
    n = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for deg in range(len(prod) - 1, n - 1, -1):
        c = prod[deg]
        if c:
            for k in range(n + 1):
                prod[deg - n + k] = (prod[deg - n + k] - c * modulus[k]) % p
    return (prod + [0] * n)[:n]


def _poly_is_irreducible(modulus, p) -> bool:
    """Trial division by every monic polynomial of degree 1..n//2."""
    n = len(modulus) - 1
    for deg in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            div = list(tail) + [1]
            rem = list(modulus)
            for top in range(n, deg - 1, -1):
                c = rem[top]
                if c:
                    for k in range(deg + 1):
                        rem[top - deg + k] = (rem[top - deg + k] - c * div[k]) % p
            if not any(rem[:deg]):
                return False
    return True


def default_modulus(p: int, n: int) -> tuple:
    """Least monic irreducible polynomial of degree n over GF(p) in integer-encoding order."""
    for code in range(p ** n):
        tail = [(code // p ** i) % p for i in range(n)]
        cand = tuple(tail + [1])
        if _poly_is_irreducible(cand, p):
            return cand
    raise ReducibleModulus(f"no irreducible polynomial of degree {n} over GF({p})")


class ExtensionField(_FiniteField):
    """GF(p^n) = GF(p)[t]/(modulus) with modulus given low-to-high and monic."""

    def __init__(self, p: int, modulus):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) < 2 or modulus[-1] != 1:
            raise ReducibleModulus("modulus must be monic of degree >= 1")
        if not _poly_is_irreducible(modulus, p):
            raise ReducibleModulus(f"{format_poly(modulus)} is reducible over GF({p})")
        self.p = p
        self.modulus = modulus
        self.degree = n = len(modulus) - 1
        self.characteristic = p
        self.order = q = p ** n
        digits = [self._digits(a) for a in range(q)]
        self._add = np.array(
            [[self._encode([(x + y) % p for x, y in zip(digits[a], digits[b])]) for b in range(q)] for a in range(q)],
            dtype=np.int64,
        )
        self._mul = np.array(
            [[self._encode(_poly_mulmod(digits[a], digits[b], modulus, p)) for b in range(q)] for a in range(q)],
            dtype=np.int64,
        )
        self._neg = np.array([self._encode([(-x) % p for x in digits[a]]) for a in range(q)], dtype=np.int64)
        self._inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            self._inv[a] = int(np.nonzero(self._mul[a] == 1)[0][0])

    def _digits(self, a: int):
        return [(a // self.p ** i) % self.p for i in range(self.degree)]

    def _encode(self, coeffs) -> int:
        return sum(int(c) * self.p ** i for i, c in enumerate(coeffs))

    def __str__(self):
        return f"GF({self.order})=GF({self.p})[t]/({format_poly(self.modulus)})"

    def _from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return self._add[a, b]

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        return self._mul[a, b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return int(self._inv[a])

    def vsum(self, x, axis):
        x = np.moveaxis(np.asarray(x), axis, 0)
        if x.shape[0] == 0:
            return np.zeros(x.shape[1:], dtype=np.int64)
        return reduce(lambda s, t: self._add[s, t], x)

    def einsum(self, subscripts, *ops):
        return _generic_einsum(self, subscripts, [np.asarray(o, dtype=np.int64) for o in ops])

    def parse_element(self, text: str):
        coeffs = parse_int_poly(text)
        # reduce t^k for k >= n through the multiplication table
        out = 0
        t = self._encode([0, 1] + [0] * (self.degree - 2)) if self.degree > 1 else self._encode([0])
        power = 1
        for deg in range(max(coeffs) + 1):
            c = coeffs.get(deg, 0) % self.p
            if c:
                out = int(self._add[out, self._mul[power, c]])
            power = int(self._mul[power, t])
        return out

    def format_element(self, a) -> str:
        return format_poly(self._digits(int(a)))


class _ObjectField(Field):
    dtype = object

    def zeros(self, shape):
        out = np.empty(shape, dtype=object)
        out.fill(self.zero)
        return out

    def array(self, data):
        arr = np.array(data, dtype=object)
        flat = arr.reshape(-1)
        for i, v in enumerate(flat):
            flat[i] = self.coerce(v)
        return arr

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.one / a

    def allzero(self, x) -> bool:
        return all(v == 0 for v in np.asarray(x).ravel())

    def first_nonzero(self, x):
        x = np.asarray(x)
        for idx in np.ndindex(x.shape):
            if x[idx] != 0:
                return tuple(int(i) for i in idx)
        return None

    def vsum(self, x, axis):
        x = np.moveaxis(np.asarray(x, dtype=object), axis, 0)
        if x.shape[0] == 0:
            return self.zeros(x.shape[1:])
        return reduce(lambda s, t: s + t, x)

    def einsum(self, subscripts, *ops):
        out = _generic_einsum(self, subscripts, [np.asarray(o, dtype=object) for o in ops])
        return self.array(out) if out.ndim else self.coerce(out[()])

    def key(self, x) -> tuple:
        return tuple(self.format_element(v) for v in np.asarray(x).ravel())


class Rationals(_ObjectField):
    characteristic = 0
    order = None

    def __str__(self):
        return "Q"

    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, v):
        return Fraction(v)

    def from_int(self, n):
        return Fraction(n)

    def random_element(self, rng):
        return Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 4)))

    def parse_element(self, text: str):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not a rational number: {text!r}") from None

    def format_element(self, a) -> str:
        return str(Fraction(a))

    def is_square(self, a):
        a = Fraction(a)
        if a < 0:
            return (False, None)
        n, d = a.numerator, a.denominator
        rn, rd = math.isqrt(n), math.isqrt(d)
        if rn * rn == n and rd * rd == d:
            return (True, Fraction(rn, rd))
        return (False, None)


# -- GF(2)[t] on bit masks ------------------------------------------------------

def _deg2(a: int) -> int:
    return a.bit_length() - 1


def _mul2(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def _divmod2(a: int, b: int):
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    q, db = 0, _deg2(b)
    while a and _deg2(a) >= db:
        shift = _deg2(a) - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def _gcd2(a: int, b: int) -> int:
    while b:
        a, b = b, _divmod2(a, b)[1]
    return a


def _poly2_str(a: int) -> str:
    return format_poly([(a >> i) & 1 for i in range(max(a.bit_length(), 1))])


def _poly2_parse(text: str) -> int:
    out = 0
    for deg, c in parse_int_poly(text).items():
        if c % 2:
            out ^= 1 << deg
    return out


def _poly2_sqrt(a: int):
    """Square root in GF(2)[t] if a has only even-degree terms, else None."""
    out, i = 0, 0
    while a >> i:
        if (a >> i) & 1:
            if i % 2:
                return None
            out |= 1 << (i // 2)
        i += 1
    return out


class RatFunc:
    """An element num/den of GF(2)(t); polynomials are bit masks, always reduced."""

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        g = _gcd2(num, den)
        if g != 1:
            num = _divmod2(num, g)[0]
            den = _divmod2(den, g)[0]
        if num == 0:
            den = 1
        self.num, self.den = num, den

    @staticmethod
    def lift(v):
        if isinstance(v, RatFunc):
            return v
        if isinstance(v, (int, np.integer)):
            return RatFunc(int(v) & 1)
        raise TypeError(f"cannot coerce {v!r} into GF(2)(t)")

    def __add__(self, other):
        o = RatFunc.lift(other)
        return RatFunc(_mul2(self.num, o.den) ^ _mul2(o.num, self.den), _mul2(self.den, o.den))

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        o = RatFunc.lift(other)
        return RatFunc(_mul2(self.num, o.num), _mul2(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFunc.lift(other)
        if o.num == 0:
            raise ZeroDivisionError("division by zero in GF(2)(t)")
        return RatFunc(_mul2(self.num, o.den), _mul2(self.den, o.num))

    def __rtruediv__(self, other):
        return RatFunc.lift(other) / self

    def __eq__(self, other):
        try:
            o = RatFunc.lift(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den)) if self.den != 1 or self.num > 1 else hash(self.num)

    def degree(self) -> int:
        return max(_deg2(self.num), _deg2(self.den))

    def __str__(self):
        n = _poly2_str(self.num)
        if self.den == 1:
            return n
        d = _poly2_str(self.den)
        if "+" in n:
            n = f"({n})"
        if "+" in d:
            d = f"({d})"
        return f"{n}/{d}"

    __repr__ = __str__


class RationalFunctionField(_ObjectField):
    """GF(2)(t); only characteristic 2 is offered."""

    def __init__(self, p: int = 2):
        if p != 2:
            raise Unsupported("rational function fields are only offered over GF(2)")
        self.p = 2
        self.characteristic = 2
        self.order = None
        self.zero = RatFunc(0)
        self.one = RatFunc(1)
        self.t = RatFunc(0b10)

    def __str__(self):
        return "GF(2)(t)"

    def coerce(self, v):
        return RatFunc.lift(v)

    def from_int(self, n):
        return RatFunc(n & 1)

    def random_element(self, rng, degree_bound: int = 2):
        num = int(rng.integers(0, 2 ** (degree_bound + 1)))
        den = int(rng.integers(1, 2 ** (degree_bound + 1)))
        return RatFunc(num, den)

    def parse_element(self, text: str):
        s = text.replace(" ", "")
        depth, split = 0, None
        for i, ch in enumerate(s):
            depth += ch == "("
            depth -= ch == ")"
            if ch == "/" and depth == 0:
                split = i
        try:
            if split is None:
                return RatFunc(_poly2_parse(s))
            return RatFunc(_poly2_parse(s[:split]), _poly2_parse(s[split + 1:]))
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in {text!r}") from None

    def format_element(self, a) -> str:
        return str(RatFunc.lift(a))

    def is_square(self, a):
        a = RatFunc.lift(a)
        # num/den = (num*den)/den^2, and a polynomial over GF(2) is a square iff it is even
        root = _poly2_sqrt(_mul2(a.num, a.den))
        if root is None:
            return (False, None)
        return (True, RatFunc(root, a.den))

    def bounded_elements(self, degree_bound: int = 2):
        """All distinct elements with numerator and denominator degree <= bound."""
        seen = {}
        for den in range(1, 2 ** (degree_bound + 1)):
            for num in range(0, 2 ** (degree_bound + 1)):
                r = RatFunc(num, den)
                seen.setdefault((r.num, r.den), r)
        return sorted(seen.values(), key=lambda r: (r.degree(), r.den, r.num))

    def is_artin_schreier(self, g) -> tuple[bool, object]:
        """Decide exactly whether g = a^2 + a for some a in GF(2)(t)."""
        g = RatFunc.lift(g)
        b = _poly2_sqrt(g.den)
        if b is None:
            return (False, None)
        # a = c/b in lowest terms forces c^2 + cb = num, hence deg c <= max(deg num / 2, deg b)
        bound = max(_deg2(g.num) // 2 + 1, _deg2(b) + 1, 1)
        for c in range(2 ** (bound + 1)):
            if _mul2(c, c) ^ _mul2(c, b) == g.num:
                return (True, RatFunc(c, b))
        return (False, None)


# -- parsing and top-level operations ------------------------------------------

_GF_PLAIN = re.compile(r"^GF\((\d+)\)$")
_GF_PRESENTED = re.compile(r"^GF\((\d+)\)=GF\((\d+)\)\[t\]/\((.+)\)$")


def field_parse(text: str) -> Field:
    """Parse ``Q``, ``GF(p)``, ``GF(q)=GF(p)[t]/(poly)`` or ``GF(2)(t)``.

    A bare ``GF(q)`` with q a prime power (e.g. ``GF(4)``) uses the least
    monic irreducible modulus in integer-encoding order.
    """
    s = text.replace(" ", "")
    if s == "Q":
        return Rationals()
    if s == "GF(2)(t)":
        return RationalFunctionField(2)
    m = _GF_PLAIN.match(s)
    if m:
        q = int(m.group(1))
        if is_prime(q):
            return PrimeField(q)
        pp = prime_power(q)
        if pp is None:
            raise NotPrime(f"{q} is not a prime power")
        return ExtensionField(pp[0], default_modulus(*pp))
    m = _GF_PRESENTED.match(s)
    if m:
        q, p = int(m.group(1)), int(m.group(2))
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        coeffs = parse_int_poly(m.group(3))
        n = max(coeffs)
        modulus = [coeffs.get(i, 0) % p for i in range(n + 1)]
        if p ** n != q:
            raise ParseError(f"GF({q}) does not match a degree-{n} modulus over GF({p})")
        if n == 1:
            raise ParseError("use GF(p) for prime fields")
        if modulus[-1] != 1:
            raise ParseError("modulus must be monic")
        return ExtensionField(p, modulus)
    m = re.match(r"^GF\((\d+)\)\(t\)$", s)
    if m:
        return RationalFunctionField(int(m.group(1)))
    raise ParseError(f"malformed field spec {text!r}")


def is_square(F: Field, x):
    """(True, root) if x is a square in F, else (False, None)."""
    return F.is_square(x)


def enumerate_elements(F: Field):
    if not F.is_finite:
        raise InfiniteField(f"{F} is infinite")
    return iter(F.elements())


@dataclass
class ClassSystem:
    """Square classes and the related representative systems of a field.

    ``S_reps``: representatives of k minus k^2 under d ~ q^2 d.
    ``T_reps``: representatives of c ~ c' when c - c' lies in the additive
    span of {a^2 - a}; 0 is always listed.
    ``R_reps``: (characteristic 2 only) representatives of d ~ d' when
    d - q^2 d' is a square.
    ``complete`` is False when only a degree-bounded portion was computed.
    """

    field: Field
    squares: tuple | None
    _S: list | None
    _T: list | None
    _R: list | None
    square_class_index: int | None
    complete: bool = True
    classes: dict = dc_field(default_factory=dict)

    def _get(self, name, value):
        if value is None:
            raise InfiniteClassSet(f"{name} over {self.field} is infinite; pass a degree bound")
        return value

    @property
    def S_reps(self):
        return self._get("S", self._S)

    @property
    def T_reps(self):
        return self._get("T", self._T)

    @property
    def R_reps(self):
        return self._get("R", self._R)

    def is_square(self, x) -> bool:
        return self.field.is_square(x)[0]


def _orbits(elements, step_images, order_key):
    """Partition ``elements`` into closures under ``step_images`` (x -> iterable)."""
    rest = sorted(elements, key=order_key)
    seen, reps, classes = set(), [], {}
    for x in rest:
        if x in seen:
            continue
        todo, cls = [x], {x}
        while todo:
            y = todo.pop()
            for z in step_images(y):
                if z not in cls:
                    cls.add(z)
                    todo.append(z)
        seen |= cls
        reps.append(x)
        classes[x] = sorted(cls, key=order_key)
    return reps, classes


def class_system(F: Field, degree_bound: int | None = None) -> ClassSystem:
    if isinstance(F, Rationals):
        return ClassSystem(F, None, None, None, None, None, complete=False)
    if isinstance(F, RationalFunctionField):
        return _class_system_gf2t(F, 2 if degree_bound is None else degree_bound)
    elems = F.elements()
    squares = sorted({int(F.mul(a, a)) for a in elems})
    sq_nonzero = [s for s in squares if s != 0]
    nonsquares = [a for a in elems if a not in set(squares)]
    order = int
    S, s_classes = _orbits(nonsquares, lambda d: [int(F.mul(s, d)) for s in sq_nonzero], order)
    # additive span of the Artin-Schreier values, then its cosets
    span = {0}
    gens = {int(F.sub(F.mul(a, a), a)) for a in elems}
    frontier = list(span)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = int(F.add(x, g))
            if y not in span:
                span.add(y)
                frontier.append(y)
    T, t_classes = _orbits(elems, lambda c: [int(F.add(c, w)) for w in span], order)
    # k^2 = k in finite characteristic 2, so R is empty there; undefined otherwise
    R = [] if F.characteristic == 2 else None
    index = (F.order - 1) // len(sq_nonzero)
    cs = ClassSystem(F, tuple(squares), S, T, R if R is not None else [], index)
    cs.classes = {"S": s_classes, "T": t_classes}
    return cs


def _class_system_gf2t(F: RationalFunctionField, bound: int) -> ClassSystem:
    elems = F.bounded_elements(bound)
    order = lambda r: (r.degree(), r.den, r.num)
    nonsq = [e for e in elems if not F.is_square(e)[0]]

    def square_ratio(a, b):
        return F.is_square(a / b)[0]

    S, s_classes = [], {}
    for d in sorted(nonsq, key=order):
        for rep in S:
            if square_ratio(d, rep):
                s_classes[rep].append(d)
                break
        else:
            S.append(d)
            s_classes[d] = [d]
    T, t_classes = [], {}
    for c in sorted(elems, key=order):
        for rep in T:
            if F.is_artin_schreier(c - rep)[0]:
                t_classes[rep].append(c)
                break
        else:
            T.append(c)
            t_classes[c] = [c]
    # Every element of GF(2)(t) is s0 + t*s1 with s0, s1 squares; d - q^2 d' is a
    # square iff s1 = q^2 s1', and s1/s1' is always a square, so all non-squares
    # form a single class represented by t.
    R = [F.t]
    cs = ClassSystem(F, None, S, T, R, None, complete=False)
    cs.classes = {"S": s_classes, "T": t_classes}
    return cs
