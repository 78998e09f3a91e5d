"""Exact scalars: rationals (backed by :class:`fractions.Fraction`) and prime fields.

Rational values are plain ``int`` or ``Fraction`` objects, freely mixed.  Prime
field values are :class:`Fp` instances which also accept ``int`` operands, so
integer structure constants can be written once and reused over any field.

The canonical text form is ``"p/q"`` with ``q > 0`` and ``gcd(p, q) = 1``, or
just ``"p"`` when ``q = 1``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .errors import InputError, ObstructionError


class Fp:
    """An element of the prime field GF(p)."""

    __slots__ = ("v", "p")

    def __init__(self, v, p: int):
        if isinstance(v, Fp):
            v = v.v
        elif isinstance(v, Fraction):
            if v.denominator % p == 0:
                raise ZeroDivisionError(f"{v} has no image in GF({p})")
            v = v.numerator * pow(v.denominator, -1, p)
        self.v = int(v) % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"mixed characteristics {self.p} and {other.p}")
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return Fp(other, self.p).v
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o, self.p) / self

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return Fp(pow(self.v, -1, self.p), self.p) ** (-n)
        return Fp(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.v == o

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class RationalField:
    """The field of rational numbers."""

    kind = "rational"
    characteristic = 0
    zero = 0
    one = 1

    def __call__(self, x):
        if isinstance(x, Fp):
            raise InputError("prime-field value used in a rational context")
        if isinstance(x, str):
            return parse_rational(x)
        if isinstance(x, int):
            return x
        if isinstance(x, Rational):
            return _normalize(Fraction(x))
        raise InputError(f"not an exact rational: {x!r}")

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return _normalize(Fraction(a) / Fraction(b))

    def inv(self, a):
        return self.div(1, a)

    def format(self, x) -> str:
        return format_rational(x)

    def to_json(self):
        return {"kind": "rational"}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The prime field GF(p)."""

    kind = "prime"

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise InputError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = Fp(0, p)
        self.one = Fp(1, p)

    def __call__(self, x):
        if isinstance(x, str):
            x = parse_rational(x)
        if isinstance(x, Fp):
            if x.p != self.p:
                raise InputError(f"value from GF({x.p}) used in GF({self.p})")
            return x
        return Fp(x, self.p)

    def div(self, a, b):
        return self(a) / self(b)

    def inv(self, a):
        return self.one / self(a)

    def format(self, x) -> str:
        return str(self(x).v)

    def to_json(self):
        return {"kind": "prime", "p": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def _normalize(x: Fraction):
    return x.numerator if x.denominator == 1 else x


def parse_rational(s: str):
    """Parse ``"p/q"`` or ``"p"`` into an int or Fraction."""
    if isinstance(s, int):
        return s
    try:
        return _normalize(Fraction(s.strip()))
    except (ValueError, ZeroDivisionError, AttributeError) as exc:
        raise InputError(f"malformed rational {s!r}") from exc


def format_rational(x) -> str:
    if isinstance(x, Fp):
        return str(x.v)
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def field_from_json(obj) -> RationalField | PrimeField:
    if obj is None:
        return QQ
    kind = obj.get("kind", "rational")
    if kind == "rational":
        return QQ
    if kind == "prime":
        if "p" not in obj:
            raise InputError("prime field requires 'p'")
        return PrimeField(int(obj["p"]))
    raise InputError(f"unknown field kind {kind!r}")


def is_zero(x) -> bool:
    return x == 0


def require_invertible(field, x, what="value"):
    if x == 0:
        raise ObstructionError(f"{what} is zero in {field!r}")
    return field.inv(x)
