"""p-adic numbers at finite relative precision.

A ``PadicValue`` represents p^v * u with the unit u known modulo p^m
(relative precision m), or an exact zero.  Arithmetic tracks precision
pessimistically; an operation whose result would retain no known digits
raises ``PrecisionExhausted`` instead of silently returning noise.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import IncompatiblePrime, PrecisionExhausted
from .intmath import valuation


class PadicValue:
    __slots__ = ("p", "valuation", "unit", "precision", "is_zero")

    def __init__(self, p: int, valuation_: int = 0, unit: int = 1,
                 precision: int = 1, is_zero: bool = False):
        self.p = p
        self.is_zero = is_zero
        if is_zero:
            self.valuation = 0
            self.unit = 0
            self.precision = precision
            return
        if precision < 1:
            raise PrecisionExhausted(f"relative precision {precision} < 1")
        unit %= p ** precision
        if unit % p == 0:
            raise ValueError("unit part must be prime to p")
        self.valuation = valuation_
        self.unit = unit
        self.precision = precision

    # --- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> "PadicValue":
        return cls(p, is_zero=True)

    @classmethod
    def from_rational(cls, x, p: int, precision: int) -> "PadicValue":
        x = Fraction(x)
        if x == 0:
            return cls.zero(p)
        v = valuation(x.numerator, p) - valuation(x.denominator, p)
        num = x.numerator // p ** max(0, valuation(x.numerator, p))
        den = x.denominator // p ** max(0, valuation(x.denominator, p))
        pm = p ** precision
        unit = num * pow(den, -1, pm) % pm
        return cls(p, v, unit, precision)

    @classmethod
    def from_integer_mod(cls, a: int, p: int, abs_precision: int) -> "PadicValue":
        """Value known as an integer modulo p^abs_precision."""
        a %= p ** abs_precision
        if a == 0:
            raise PrecisionExhausted(
                f"residue 0 mod {p}^{abs_precision} carries no unit digits")
        v = valuation(a, p)
        return cls(p, v, a // p ** v, abs_precision - v)

    # --- helpers ----------------------------------------------------------

    def _check(self, other: "PadicValue"):
        if self.p != other.p:
            raise IncompatiblePrime(f"primes {self.p} and {other.p} differ")

    def abs_precision(self) -> int:
        if self.is_zero:
            raise ValueError("exact zero has infinite precision")
        return self.valuation + self.precision

    def lift(self) -> int:
        """Integer representative mod p^abs_precision (requires valuation >= 0)."""
        if self.is_zero:
            return 0
        if self.valuation < 0:
            raise ValueError("negative valuation has no integer lift")
        return self.unit * self.p ** self.valuation

    def reduce(self, j: int) -> int:
        """Residue modulo p^j (requires valuation >= 0 and j <= abs precision)."""
        if self.is_zero:
            return 0
        if j > self.abs_precision():
            raise PrecisionExhausted(f"only known modulo p^{self.abs_precision()}")
        return self.lift() % self.p ** j

    # --- arithmetic --------------------------------------------------------

    def __neg__(self):
        if self.is_zero:
            return self
        return PadicValue(self.p, self.valuation, -self.unit % self.p ** self.precision,
                          self.precision)

    def __add__(self, other):
        self._check(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        absp = min(self.abs_precision(), other.abs_precision())
        v = min(self.valuation, other.valuation)
        mod = self.p ** (absp - v)
        s = (self.unit * self.p ** (self.valuation - v)
             + other.unit * self.p ** (other.valuation - v)) % mod
        if s == 0:
            raise PrecisionExhausted(
                "cancellation below working precision; result indistinguishable from 0")
        extra = valuation(s, self.p)
        return PadicValue(self.p, v + extra, s // self.p ** extra, absp - v - extra)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        if self.is_zero or other.is_zero:
            return PadicValue.zero(self.p)
        m = min(self.precision, other.precision)
        return PadicValue(self.p, self.valuation + other.valuation,
                          self.unit * other.unit, m)

    def __truediv__(self, other):
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("division by exact p-adic zero")
        if self.is_zero:
            return self
        m = min(self.precision, other.precision)
        pm = self.p ** m
        return PadicValue(self.p, self.valuation - other.valuation,
                          self.unit * pow(other.unit, -1, pm), m)

    def __eq__(self, other):
        """Equality at the common known precision."""
        if not isinstance(other, PadicValue) or self.p != other.p:
            return NotImplemented
        if self.is_zero and other.is_zero:
            return True
        if self.is_zero or other.is_zero:
            return False
        if self.valuation != other.valuation:
            return False
        m = min(self.precision, other.precision)
        return (self.unit - other.unit) % self.p ** m == 0

    def __hash__(self):
        raise TypeError("PadicValue compares at finite precision; not hashable")

    def __repr__(self):
        if self.is_zero:
            return f"PadicValue(0 exactly, p={self.p})"
        return (f"PadicValue({self.p}^{self.valuation} * {self.unit} "
                f"+ O({self.p}^{self.valuation + self.precision}))")
