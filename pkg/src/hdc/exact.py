"""Exact arithmetic in quadratic fields Q(sqrt(d)).

Integers and rationals are Python ``int`` and ``fractions.Fraction``.  A
:class:`QuadraticNumber` is the canonical triple ``(p, q, d)`` standing for
``p + q*sqrt(d)`` with ``d`` square-free, and ``q == 0`` exactly when
``d == 1``.  Canonical triples are unique, so equality is structural.
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import DomainError, FieldMismatchError

__all__ = [
    "QuadraticNumber",
    "sqrt_canonical",
    "squarefree_core",
    "quad_add",
    "quad_mul",
    "quad_div",
    "quad_to_decimal",
    "parse_quadratic",
]


@functools.lru_cache(maxsize=None)
def sqrt_canonical(m: int) -> tuple[int, int]:
    """Split sqrt(m) as ``outside * sqrt(d)`` with ``d`` square-free."""
    if int(m) != m or m <= 0:
        raise DomainError(f"sqrt_canonical needs a positive integer, got {m!r}")
    m = int(m)
    outside, core = 1, 1
    rest = m
    f = 2
    while f * f <= rest:
        e = 0
        while rest % f == 0:
            rest //= f
            e += 1
        outside *= f ** (e // 2)
        if e % 2:
            core *= f
        f += 1 if f == 2 else 2
    core *= rest
    return outside, core


def squarefree_core(m: int) -> int:
    return sqrt_canonical(m)[1]


def _is_squarefree(d: int) -> bool:
    return d >= 1 and sqrt_canonical(d)[0] == 1


@dataclass(frozen=True)
class QuadraticNumber:
    """Canonical ``p + q*sqrt(d)``.

    Build values with :meth:`make` (or the arithmetic operators); the raw
    constructor only accepts triples that are already canonical.
    """

    p: Fraction
    q: Fraction = Fraction(0)
    d: int = 1

    def __post_init__(self):
        if not (isinstance(self.p, Fraction) and isinstance(self.q, Fraction)):
            object.__setattr__(self, "p", Fraction(self.p))
            object.__setattr__(self, "q", Fraction(self.q))
        if not _is_squarefree(self.d):
            raise DomainError(f"d must be a square-free positive integer, got {self.d!r}")
        if (self.q == 0) != (self.d == 1):
            raise DomainError("non-canonical triple: q == 0 must coincide with d == 1")

    @classmethod
    def make(cls, p=0, q=0, d: int = 1) -> QuadraticNumber:
        p, q = Fraction(p), Fraction(q)
        if int(d) != d or d < 0:
            raise DomainError(f"radicand must be a non-negative integer, got {d!r}")
        if d == 0 or q == 0:
            return cls(p)
        outside, core = sqrt_canonical(int(d))
        q *= outside
        if core == 1:
            return cls(p + q)
        return cls(p, q, core)

    @classmethod
    def sqrt(cls, m: int) -> QuadraticNumber:
        return cls.make(0, 1, m)

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def conjugate(self) -> QuadraticNumber:
        if self.q == 0:
            return self
        return QuadraticNumber(self.p, -self.q, self.d)

    def norm(self) -> Fraction:
        """Field norm p^2 - q^2 d."""
        return self.p * self.p - self.q * self.q * self.d

    def sign(self) -> int:
        sp = (self.p > 0) - (self.p < 0)
        sq = (self.q > 0) - (self.q < 0)
        if sq == 0 or sp == sq:
            return sp or sq
        if sp == 0:
            return sq
        # opposite signs: the larger square wins
        n = self.norm()
        return sp if n > 0 else sq

    def __float__(self) -> float:
        # exact-enough via Fractions: q*sqrt(d) = sign(q) sqrt(q^2 d)
        if self.q == 0:
            return float(self.p)
        return float(self.p) + float(self.q) * math.sqrt(self.d)

    # arithmetic

    @staticmethod
    def _coerce(other) -> QuadraticNumber | None:
        if isinstance(other, QuadraticNumber):
            return other
        if isinstance(other, (int, Rational)):
            return QuadraticNumber(Fraction(other))
        return None

    @staticmethod
    def _field(x: QuadraticNumber, y: QuadraticNumber) -> int:
        if x.d == 1:
            return y.d
        if y.d == 1 or x.d == y.d:
            return x.d
        raise FieldMismatchError(f"cannot combine elements of Q(sqrt({x.d})) and Q(sqrt({y.d}))")

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        d = self._field(self, other)
        return QuadraticNumber.make(self.p + other.p, self.q + other.q, d)

    __radd__ = __add__

    def __neg__(self):
        if self.q == 0:
            return QuadraticNumber(-self.p)
        return QuadraticNumber(-self.p, -self.q, self.d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        d = self._field(self, other)
        p = self.p * other.p + self.q * other.q * d
        q = self.p * other.q + self.q * other.p
        return QuadraticNumber.make(p, q, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.p == 0 and other.q == 0:
            raise DomainError("division by zero")
        self._field(self, other)
        if other.q == 0:
            return QuadraticNumber.make(self.p / other.p, self.q / other.p, self.d)
        n = other.norm()
        num = self * other.conjugate()
        return QuadraticNumber.make(num.p / n, num.q / n, num.d)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    # comparison

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self.p, self.q, self.d) == (other.p, other.q, other.d)

    def __hash__(self):
        return hash((self.p, self.q, self.d))

    def __lt__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return _sign_of_difference(self, other) < 0

    def __le__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return _sign_of_difference(self, other) <= 0

    def __gt__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return _sign_of_difference(self, other) > 0

    def __ge__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return _sign_of_difference(self, other) >= 0

    def __str__(self):
        if self.q == 0:
            return str(self.p)
        op = "+" if self.q > 0 else "-"
        return f"{self.p} {op} {abs(self.q)}*sqrt({self.d})"

    def __repr__(self):
        return f"QuadraticNumber({self})"


def _sign_of_difference(x: QuadraticNumber, y: QuadraticNumber) -> int:
    if x.d == y.d or x.d == 1 or y.d == 1:
        return (x - y).sign()
    # x - y = left - right with left in Q(sqrt(d1)) and right = q2*sqrt(d2)
    left = QuadraticNumber.make(x.p - y.p, x.q, x.d)
    right = QuadraticNumber.make(0, y.q, y.d)
    sl, sr = left.sign(), right.sign()
    if sl != sr:
        return (sl > sr) - (sl < sr)
    # same sign s: sign(left - right) = s * sign(left^2 - right^2)
    return (left * left - right * right).sign() * sl


def quad_add(x: QuadraticNumber, y: QuadraticNumber) -> QuadraticNumber:
    return x + y


def quad_mul(x: QuadraticNumber, y: QuadraticNumber) -> QuadraticNumber:
    return x * y


def quad_div(x: QuadraticNumber, y: QuadraticNumber) -> QuadraticNumber:
    """Exact division, rationalized with the conjugate of ``y``."""
    return x / y


def _floor(x: QuadraticNumber) -> int:
    if x.q == 0:
        return math.floor(x.p)
    # q*sqrt(d) = sign(q) * sqrt(q^2 d); estimate then correct with exact signs
    r = x.q * x.q * x.d
    root = math.isqrt(r.numerator * r.denominator) / Fraction(r.denominator)
    guess = math.floor(x.p + (root if x.q > 0 else -root))
    while (x - guess).sign() < 0:
        guess -= 1
    while (x - (guess + 1)).sign() >= 0:
        guess += 1
    return guess


def quad_to_decimal(x: QuadraticNumber, digits: int = 10) -> str:
    """Fixed-point decimal with ``digits`` places, correctly rounded half-even."""
    if not 1 <= digits <= 50:
        raise DomainError(f"digits must be in 1..50, got {digits!r}")
    if not isinstance(x, QuadraticNumber):
        x = QuadraticNumber.make(x)
    scaled = x * (10 ** digits)
    n = _floor(scaled)
    half = (scaled - n) - Fraction(1, 2)
    s = half.sign()
    if s > 0 or (s == 0 and n % 2 == 1):
        n += 1
    neg = n < 0
    n = abs(n)
    whole, frac = divmod(n, 10 ** digits)
    return f"{'-' if neg else ''}{whole}.{frac:0{digits}d}"


_QUAD_RE = re.compile(
    r"^\s*(?P<p>-?\d+(?:/\d+)?)\s*(?:(?P<op>[+-])\s*(?P<q>\d+(?:/\d+)?)\*sqrt\((?P<d>\d+)\))?\s*$"
)


def parse_quadratic(text: str) -> QuadraticNumber:
    """Inverse of ``str(QuadraticNumber)``."""
    m = _QUAD_RE.match(text)
    if not m:
        raise DomainError(f"not a quadratic number: {text!r}")
    p = Fraction(m["p"])
    if m["q"] is None:
        return QuadraticNumber(p)
    q = Fraction(m["q"])
    if m["op"] == "-":
        q = -q
    return QuadraticNumber.make(p, q, int(m["d"]))
