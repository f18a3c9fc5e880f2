"""Exact coefficient fields: the rationals and small prime-power fields.

Scalars are either `fractions.Fraction` (over Q) or `FFElement` (over a
finite field).  Both support `+ - * /`, truthiness (zero is falsy),
equality and hashing, which is all the linear algebra in this package
needs.  No floating point is used anywhere.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import NotPrimeField


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class RationalField:
    """The field Q; scalars are `Fraction` instances."""

    char = 0
    order = None

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def of_int(self, n: int) -> Fraction:
        return Fraction(n)

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def parse(self, text: str) -> Fraction:
        return Fraction(text)

    def format(self, x) -> str:
        return str(x)

    def random(self, rng) -> Fraction:
        return Fraction(rng.randint(-4, 4), rng.randint(1, 3))

    def random_nonzero(self, rng) -> Fraction:
        while True:
            x = self.random(rng)
            if x:
                return x

    def elements(self):
        raise NotPrimeField("Q is infinite and cannot be enumerated")

    def __repr__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")


QQ = RationalField()


# ---------------------------------------------------------------------------
# dense polynomial helpers over Z/p, coefficient lists low degree first

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, b, p):
    """Remainder of a modulo monic b, coefficients mod p."""
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = a[-1]
        if c:
            shift = len(a) - 1 - db
            for i, bc in enumerate(b):
                a[shift + i] = (a[shift + i] - c * bc) % p
        a.pop()
    return _poly_trim(a)


def _monic_polys(deg, p):
    for tail in itertools.product(range(p), repeat=deg):
        yield list(tail) + [1]


def _is_irreducible(f, p):
    deg = len(f) - 1
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(d, p):
            if not _poly_mod(f, g, p):
                return False
    return True


def _find_modulus(p, e):
    """Lexicographically first monic irreducible of degree e over F_p."""
    for f in _monic_polys(e, p):
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")


class FFElement:
    """Element of F_{p^e}, stored as a coefficient tuple of length e in
    the power basis 1, a, ..., a^{e-1} of the defining root a."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, FFElement) or other.field is not self.field:
            if isinstance(other, FFElement) and other.field == self.field:
                return
            raise TypeError("mixed finite field arithmetic")

    def __add__(self, other):
        self._check(other)
        p = self.field.p
        return FFElement(self.field, tuple((x + y) % p for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        p = self.field.p
        return FFElement(self.field, tuple((x - y) % p for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        p = self.field.p
        return FFElement(self.field, tuple((-x) % p for x in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        fld = self.field
        p = fld.p
        e = fld.e
        if e == 1:
            return FFElement(fld, ((self.coeffs[0] * other.coeffs[0]) % p,))
        a, b = self.coeffs, other.coeffs
        conv = [0] * (2 * e - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    conv[i + j] = (conv[i + j] + x * y) % p
        m = fld.modulus  # monic, length e+1
        for k in range(2 * e - 2, e - 1, -1):
            c = conv[k]
            if c:
                conv[k] = 0
                shift = k - e
                for i in range(e):
                    conv[shift + i] = (conv[shift + i] - c * m[i]) % p
        return FFElement(fld, tuple(conv[:e]))

    def inv(self):
        if not self:
            raise ZeroDivisionError("finite field inverse of zero")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        return self * other.inv()

    def __pow__(self, n):
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, FFElement) and other.field == self.field
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((self.field.p, self.field.e, self.coeffs))

    def __repr__(self):
        return self.field.format(self)


class FiniteField:
    """F_{p^e} for a prime p.  e = 1 gives the prime field."""

    def __init__(self, p: int, e: int = 1):
        if not is_prime(p):
            raise NotPrimeField(f"{p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.e = e
        self.order = p ** e
        self.char = p
        self.modulus = _find_modulus(p, e) if e > 1 else None
        self.zero = FFElement(self, (0,) * e)
        self.one = FFElement(self, (1,) + (0,) * (e - 1))

    def of_int(self, n: int) -> FFElement:
        return FFElement(self, (n % self.p,) + (0,) * (self.e - 1))

    def coerce(self, x) -> FFElement:
        if isinstance(x, FFElement):
            if x.field == self:
                return x
            if x.field.p == self.p and x.field.e == 1:
                return self.embed(x)
            raise TypeError("element of a different finite field")
        if isinstance(x, int):
            return self.of_int(x)
        raise TypeError(f"cannot coerce {x!r} into F_{self.order}")

    def embed(self, x: FFElement) -> FFElement:
        """Embed a prime field scalar into this extension."""
        return FFElement(self, (x.coeffs[0],) + (0,) * (self.e - 1))

    def extension(self, e: int) -> "FiniteField":
        if self.e != 1:
            raise NotPrimeField("base change is defined from a prime field only")
        return FiniteField(self.p, e)

    def parse(self, text: str) -> FFElement:
        try:
            return self.of_int(int(text))
        except ValueError:
            raise NotPrimeField(
                f"only integer coefficients are accepted over F_{self.order}")

    def format(self, x: FFElement) -> str:
        if self.e == 1:
            return str(x.coeffs[0])
        parts = []
        for i, c in enumerate(x.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                var = "a" if i == 1 else f"a^{i}"
                parts.append(var if c == 1 else f"{c}{var}")
        return "+".join(parts) if parts else "0"

    def random(self, rng) -> FFElement:
        return FFElement(self, tuple(rng.randrange(self.p) for _ in range(self.e)))

    def random_nonzero(self, rng) -> FFElement:
        while True:
            x = self.random(rng)
            if x:
                return x

    def elements(self):
        for coeffs in itertools.product(range(self.p), repeat=self.e):
            yield FFElement(self, coeffs)

    def __repr__(self):
        return f"F{self.p}" if self.e == 1 else f"F{self.p}^{self.e}"

    def __eq__(self, other):
        return (isinstance(other, FiniteField) and other.p == self.p
                and other.e == self.e)

    def __hash__(self):
        return hash(("FiniteField", self.p, self.e))


def rationals() -> RationalField:
    return QQ


def prime_field(p: int) -> FiniteField:
    return FiniteField(p, 1)


def parse_field(text: str):
    """Parse a field label: "Q" or "F<p>" for a prime p."""
    text = text.strip()
    if text in ("Q", "QQ"):
        return QQ
    if text.startswith("F"):
        try:
            p = int(text[1:])
        except ValueError:
            raise NotPrimeField(f"bad field label {text!r}")
        return FiniteField(p, 1)
    raise NotPrimeField(f"bad field label {text!r} (expected Q or F<p>)")


def format_field(field) -> str:
    if isinstance(field, RationalField):
        return "Q"
    if isinstance(field, FiniteField) and field.e == 1:
        return f"F{field.p}"
    if isinstance(field, FiniteField):
        return f"F{field.p}^{field.e}"
    raise TypeError(f"unknown field {field!r}")
