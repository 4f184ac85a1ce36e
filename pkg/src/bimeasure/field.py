"""Exact ground fields: the rationals and prime fields F_p."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Union

Scalar = Union[int, Fraction]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    """An exact field of characteristic 0 (``Q``) or a prime ``p`` (``F_p``).

    Rational elements are :class:`fractions.Fraction`; prime-field elements
    are canonical residues in ``[0, p)``.  Arithmetic goes through the field
    object so that residues stay reduced.
    """

    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int = 0):
        if characteristic != 0 and not _is_prime(characteristic):
            raise ValueError(f"characteristic must be 0 or prime, got {characteristic}")
        self.characteristic = characteristic

    @classmethod
    def rationals(cls) -> Field:
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> Field:
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> Field:
        """Parse ``Q`` or ``Fp:7`` / ``F7``."""
        t = text.strip()
        if t.upper() in ("Q", "QQ", "RATIONALS"):
            return cls(0)
        for prefix in ("Fp:", "FP:", "fp:", "F_", "F"):
            if t.startswith(prefix) and t[len(prefix):].isdigit():
                return cls(int(t[len(prefix):]))
        raise ValueError(f"unrecognized field {text!r}")

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime_field"

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    @property
    def size(self) -> int | None:
        return self.characteristic or None

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self) -> int:
        return hash(("Field", self.characteristic))

    def __repr__(self) -> str:
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"

    def to_json(self) -> dict:
        if self.characteristic == 0:
            return {"kind": "Q"}
        return {"kind": "Fp", "p": self.characteristic}

    # -- elements ---------------------------------------------------------

    def __call__(self, value) -> Scalar:
        p = self.characteristic
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, bool):
            value = int(value)
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            return (value.numerator * pow(value.denominator, -1, p)) % p
        if isinstance(value, int):
            return value % p
        raise TypeError(f"cannot coerce {value!r} into {self!r}")

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.characteristic == 0 else 1

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        p = self.characteristic
        return a + b if p == 0 else (a + b) % p

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        p = self.characteristic
        return a - b if p == 0 else (a - b) % p

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        p = self.characteristic
        return a * b if p == 0 else (a * b) % p

    def neg(self, a: Scalar) -> Scalar:
        p = self.characteristic
        return -a if p == 0 else (-a) % p

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        return 1 / a if p == 0 else pow(a, -1, p)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def pow(self, a: Scalar, n: int) -> Scalar:
        p = self.characteristic
        if n < 0:
            return self.pow(self.inv(a), -n)
        return a**n if p == 0 else pow(a, n, p)

    def reduce(self, a: Scalar) -> Scalar:
        """Canonical representative of a raw integer/Fraction expression."""
        return a if self.characteristic == 0 else self(a)

    def factorial(self, n: int) -> Scalar:
        out = self.one
        for i in range(2, n + 1):
            out = self.mul(out, self(i))
        return out

    def binomial(self, n: int, k: int) -> Scalar:
        from math import comb

        return self(comb(n, k))

    def elements(self) -> Iterator[Scalar]:
        if self.characteristic == 0:
            raise ValueError("Q is infinite")
        return iter(range(self.characteristic))

    def format(self, a: Scalar) -> str:
        if self.characteristic == 0:
            a = Fraction(a)
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(int(a))
