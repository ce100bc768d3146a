"""Exact coefficient fields: prime fields F_p and arbitrary-precision rationals.

Scalars are immutable canonical values (an integer in ``[0, p)`` for prime
fields, a reduced ``Fraction`` for the rationals) tagged with their field.
No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import FieldMismatchError, InfiniteFieldError, ParseError

MAX_PRIME = 2**31 - 1


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common interface of the two supported coefficient fields.

    ``cardinality`` is the number of elements, or ``None`` for an infinite
    field; the theorems downstream branch on the three regimes |K| = 2,
    2 < |K| < infinity and |K| = infinity.
    """

    cardinality: int | None
    characteristic: int

    def scalar(self, value) -> "Scalar":
        raise NotImplementedError

    @property
    def zero(self) -> "Scalar":
        return self.scalar(0)

    @property
    def one(self) -> "Scalar":
        return self.scalar(1)

    def elements(self) -> list["Scalar"]:
        """All field elements in canonical order (prime fields only)."""
        raise NotImplementedError

    def parse_scalar(self, text: str) -> "Scalar":
        raise NotImplementedError

    def format_scalar(self, s: "Scalar") -> str:
        raise NotImplementedError


class PrimeField(Field):
    """The field of integers modulo a prime p, 2 <= p <= 2^31 - 1."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or not 2 <= p <= MAX_PRIME:
            raise ValueError(f"prime field modulus out of range: {p!r}")
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def cardinality(self) -> int:
        return self.p

    @property
    def characteristic(self) -> int:
        return self.p

    def scalar(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatchError(f"scalar from {value.field} used in {self}")
            return value
        return Scalar(self, int(value) % self.p)

    def elements(self) -> list["Scalar"]:
        return [Scalar(self, v) for v in range(self.p)]

    def parse_scalar(self, text: str) -> "Scalar":
        try:
            return self.scalar(int(text))
        except ValueError:
            raise ParseError(f"bad {self} scalar literal: {text!r}") from None

    def format_scalar(self, s: "Scalar") -> str:
        return str(s.value)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Fp", self.p))

    def __repr__(self) -> str:
        return f"Fp {self.p}"


class Rationals(Field):
    """The field of arbitrary-precision rationals."""

    __slots__ = ()

    cardinality = None
    characteristic = 0

    def scalar(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatchError(f"scalar from {value.field} used in {self}")
            return value
        return Scalar(self, Fraction(value))

    def elements(self) -> list["Scalar"]:
        raise InfiniteFieldError("cannot enumerate an infinite field")

    def parse_scalar(self, text: str) -> "Scalar":
        try:
            return Scalar(self, Fraction(text))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad rational scalar literal: {text!r}") from None

    def format_scalar(self, s: "Scalar") -> str:
        v: Fraction = s.value
        return f"{v.numerator}/{v.denominator}"

    def __eq__(self, other) -> bool:
        return isinstance(other, Rationals)

    def __hash__(self) -> int:
        return hash("Q")

    def __repr__(self) -> str:
        return "Q"


def parse_field(text: str) -> Field:
    """Parse a field literal: ``Fp 3``, ``Fp 2`` or ``Q``."""
    tokens = text.split()
    if tokens == ["Q"]:
        return Rationals()
    if len(tokens) == 2 and tokens[0] == "Fp":
        try:
            p = int(tokens[1])
        except ValueError:
            raise ParseError(f"bad field literal: {text!r}") from None
        try:
            return PrimeField(p)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    raise ParseError(f"bad field literal: {text!r} (expected 'Fp <prime>' or 'Q')")


def format_field(field: Field) -> str:
    return repr(field)


class Scalar:
    """A canonical element of a coefficient field.

    Arithmetic is closed within the declared field; mixing fields raises
    :class:`FieldMismatchError`. Inverting zero raises ``ZeroDivisionError``.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _coerce(self, other: "Scalar"):
        if not isinstance(other, Scalar):
            raise TypeError(f"expected Scalar, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"cannot mix {self.field} and {other.field}")
        return other.value

    def __add__(self, other: "Scalar") -> "Scalar":
        v = self.value + self._coerce(other)
        if isinstance(self.field, PrimeField):
            v %= self.field.p
        return Scalar(self.field, v)

    def __sub__(self, other: "Scalar") -> "Scalar":
        v = self.value - self._coerce(other)
        if isinstance(self.field, PrimeField):
            v %= self.field.p
        return Scalar(self.field, v)

    def __mul__(self, other: "Scalar") -> "Scalar":
        v = self.value * self._coerce(other)
        if isinstance(self.field, PrimeField):
            v %= self.field.p
        return Scalar(self.field, v)

    def __neg__(self) -> "Scalar":
        if isinstance(self.field, PrimeField):
            return Scalar(self.field, (-self.value) % self.field.p)
        return Scalar(self.field, -self.value)

    def inverse(self) -> "Scalar":
        if not self.value:
            raise ZeroDivisionError(f"inverse of zero in {self.field}")
        if isinstance(self.field, PrimeField):
            return Scalar(self.field, pow(self.value, -1, self.field.p))
        return Scalar(self.field, 1 / self.value)

    def __truediv__(self, other: "Scalar") -> "Scalar":
        self._coerce(other)
        return self * other.inverse()

    def __bool__(self) -> bool:
        return bool(self.value)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Scalar)
            and other.field == self.field
            and other.value == self.value
        )

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __repr__(self) -> str:
        return self.field.format_scalar(self)
