"""Coefficient descriptors: the integers, the rationals and prime fields.

>>> Coefficients.parse("Zp:3")
Coefficients(ring='Zp', p=3)
>>> str(Coefficients.parse("Q"))
'Q'
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class Coefficients:
    ring: str
    p: int | None = None

    def __post_init__(self) -> None:
        if self.ring not in ("Z", "Q", "Zp"):
            raise ValueError(f"unknown coefficient ring {self.ring!r}")
        if self.ring == "Zp":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"Z/p coefficients need a prime p, got {self.p!r}")
        elif self.p is not None:
            raise ValueError(f"{self.ring} takes no characteristic")

    @classmethod
    def parse(cls, text: str) -> "Coefficients":
        """Parse ``Z``, ``Q`` or ``Zp:<p>`` (``Z/<p>`` is accepted as well)."""
        t = text.strip()
        if t in ("Z", "Q"):
            return cls(t)
        for prefix in ("Zp:", "Z/"):
            if t.startswith(prefix):
                digits = t[len(prefix):]
                if not digits.isdigit():
                    raise ValueError(f"bad characteristic in {text!r}")
                return cls("Zp", int(digits))
        raise ValueError(f"coefficients must be Z, Q or Zp:<p>, got {text!r}")

    @property
    def is_field(self) -> bool:
        return self.ring != "Z"

    @property
    def characteristic(self) -> int:
        return self.p if self.ring == "Zp" else 0

    def __str__(self) -> str:
        return f"Z/{self.p}" if self.ring == "Zp" else self.ring

    def reduce(self, x):
        """Bring a scalar into canonical form for this ring."""
        if self.ring == "Zp":
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return x % self.p
        if isinstance(x, Fraction):
            if x.denominator == 1:
                return x.numerator
            if self.ring == "Z":
                raise ValueError(f"non-integral entry {x} over Z")
        return x

    def div(self, a, b):
        """Exact quotient a / b in the field."""
        if self.ring == "Zp":
            return (a * pow(b, -1, self.p)) % self.p
        if self.ring == "Q":
            if b == 1:
                return a
            if b == -1:
                return -a
            return self.reduce(Fraction(a) / b)
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{b} does not divide {a} over Z")
        return q


Z = Coefficients("Z")
Q = Coefficients("Q")


def Zp(p: int) -> Coefficients:
    return Coefficients("Zp", p)


def as_coefficients(coeff: "Coefficients | str | None") -> Coefficients:
    if coeff is None:
        return Z
    if isinstance(coeff, Coefficients):
        return coeff
    return Coefficients.parse(coeff)
