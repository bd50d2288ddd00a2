"""Prime field arithmetic.

Coefficients are plain Python ints in ``[0, p)``; :class:`PrimeField` and
:class:`FieldElement` are the user-facing wrappers around them.
"""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_PRIME = 32003
MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> int:
    """Validate a session characteristic: an odd prime below 2^31."""
    if not isinstance(p, int) or not 3 <= p < MAX_PRIME or not is_prime(p):
        raise ValueError(f"characteristic must be an odd prime in [3, 2^31), got {p!r}")
    return p


def inverse(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("zero has no inverse in a field")
    return pow(a, -1, p)


@dataclass(frozen=True)
class PrimeField:
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        check_prime(self.p)

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value % self.p, self.p)

    def zero(self) -> FieldElement:
        return FieldElement(0, self.p)

    def one(self) -> FieldElement:
        return FieldElement(1, self.p)


@dataclass(frozen=True)
class FieldElement:
    value: int
    p: int

    def __post_init__(self):
        if not 0 <= self.value < self.p:
            raise ValueError("field element must be reduced mod p")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise ValueError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement((self.value + b) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement((self.value - b) % self.p, self.p)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement((b - self.value) % self.p, self.p)

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement((self.value * b) % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement((-self.value) % self.p, self.p)

    def inverse(self) -> FieldElement:
        return FieldElement(inverse(self.value, self.p), self.p)

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self * FieldElement(inverse(b, self.p), self.p)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"
