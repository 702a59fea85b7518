"""Exact scalars: arbitrary-precision rationals and prime fields.

Rationals are `fractions.Fraction`, which already keeps numerator and
denominator reduced with a positive denominator and represents zero as 0/1.
Prime-field elements are small immutable values; the oracle only uses
p in {7, 11, 13}.

Architecture boundary: pure value arithmetic. No polynomial or semigroup
knowledge lives here.
"""

from dataclasses import dataclass
from fractions import Fraction

from src.errors import BadInputError, DivisionByZeroError, ModulusMismatchError, UnsupportedPrimeError

Rational = Fraction

ORACLE_PRIMES = (7, 11, 13)

RATIONAL_OPS = ("add", "sub", "mul", "div", "neg", "inv")


def rat_arith(op: str, x: Fraction, y: Fraction | None = None) -> Fraction:
    """Apply a field operation to exact rationals.

    Args:
        op: One of add, sub, mul, div, neg, inv.
        x: Left operand.
        y: Right operand for binary operations.

    Returns:
        Reduced rational result.
    """
    if op == "neg":
        return -x
    if op == "inv":
        if x == 0:
            raise DivisionByZeroError("inverse of zero")
        return 1 / x
    if y is None:
        raise ValueError(f"operation {op} needs two operands")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        if y == 0:
            raise DivisionByZeroError(f"{format_rational(x)} / 0")
        return x / y
    raise ValueError(f"Unknown rational operation: {op}")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse "num/den", an integer string, or an int into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except ZeroDivisionError as e:
        raise DivisionByZeroError(f"zero denominator in {text!r}") from e
    except ValueError as e:
        raise BadInputError(f"not a rational number: {text!r}") from e


def format_rational(x: Fraction) -> str:
    """Serialize as "num/den", dropping the denominator when it is 1."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, order=True)
class PrimeFieldElement:
    """Element of F_p stored as its least non-negative residue."""

    value: int
    p: int

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.p:
            object.__setattr__(self, "value", self.value % self.p)

    def _check(self, other: "PrimeFieldElement") -> None:
        if self.p != other.p:
            raise ModulusMismatchError(f"moduli {self.p} and {other.p}")

    def _coerce(self, other) -> "PrimeFieldElement":
        if isinstance(other, PrimeFieldElement):
            self._check(other)
            return other
        if isinstance(other, int):
            return PrimeFieldElement(other, self.p)
        if isinstance(other, Fraction):
            return reduce_rational(other, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PrimeFieldElement(self.value + other.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PrimeFieldElement(self.value - other.value, self.p)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PrimeFieldElement(other.value - self.value, self.p)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PrimeFieldElement(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __neg__(self) -> "PrimeFieldElement":
        return PrimeFieldElement(-self.value, self.p)

    def __pow__(self, exponent: int) -> "PrimeFieldElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return PrimeFieldElement(pow(self.value, exponent, self.p), self.p)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def inverse(self) -> "PrimeFieldElement":
        if self.value == 0:
            raise DivisionByZeroError(f"inverse of 0 mod {self.p}")
        return PrimeFieldElement(pow(self.value, -1, self.p), self.p)

    def to_json(self) -> dict:
        return {"value": self.value, "p": self.p}

    def __str__(self) -> str:
        return str(self.value)


def reduce_rational(x: Fraction, p: int) -> PrimeFieldElement:
    """Map a rational into F_p; the denominator must be coprime to p."""
    if x.denominator % p == 0:
        raise DivisionByZeroError(f"denominator of {format_rational(x)} vanishes mod {p}")
    return PrimeFieldElement(x.numerator * pow(x.denominator, -1, p), p)


def modp_arith(op: str, x: PrimeFieldElement, y: PrimeFieldElement | None = None) -> PrimeFieldElement:
    """Apply a field operation in F_p.

    Args:
        op: One of add, sub, mul, div, neg, inv.
        x: Left operand.
        y: Right operand for binary operations; must share x's modulus.

    Returns:
        Result reduced into [0, p).
    """
    if op == "neg":
        return -x
    if op == "inv":
        return x.inverse()
    if y is None:
        raise ValueError(f"operation {op} needs two operands")
    if x.p != y.p:
        raise ModulusMismatchError(f"moduli {x.p} and {y.p}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"Unknown F_p operation: {op}")


def sqrt_modp(q: PrimeFieldElement) -> set[PrimeFieldElement]:
    """All square roots of q in F_p, by scanning every residue."""
    return {PrimeFieldElement(s, q.p) for s in range(q.p) if (s * s - q.value) % q.p == 0}


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def require_oracle_prime(p: int, allowed: tuple[int, ...] | list[int] = ORACLE_PRIMES) -> int:
    """Return p if finite-field enumeration supports it, else raise UnsupportedPrimeError."""
    if p not in allowed or not is_prime(p):
        raise UnsupportedPrimeError(f"prime {p} not supported; choose one of {list(allowed)}")
    return p
