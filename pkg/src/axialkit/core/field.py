"""Exact ground fields: the rationals and prime fields F_p.

Rationals are :class:`fractions.Fraction`; prime-field elements are
:class:`Mod` residues.  Both support the usual operators, and ``Mod`` accepts
ints and Fractions on either side as long as the denominator is invertible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union


class FieldError(ValueError):
    pass


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller-Rabin on the first 13 prime bases.

    Deterministic below 3.3e24; above that a composite passing every base
    is astronomically unlikely but not excluded.
    """
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Mod:
    """Residue class modulo a prime ``p``, stored canonically in ``[0, p)``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> int | None:
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldError(f"mixing F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise FieldError(f"{other} is not defined in F_{self.p}")
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Mod(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Mod(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Mod(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Mod(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Mod(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.value == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Mod(o * pow(self.value, -1, self.p), self.p)

    def __neg__(self):
        return Mod(-self.value, self.p)

    def __pos__(self):
        return self

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except FieldError:
            return False
        if o is None:
            return NotImplemented
        return self.value == o

    def __hash__(self):
        return hash(self.value)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Mod({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


Scalar = Union[Fraction, Mod]


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: ``modulus == 0`` means Q, otherwise F_modulus."""

    modulus: int = 0

    def __post_init__(self):
        if self.modulus != 0 and not is_prime(self.modulus):
            raise FieldError(f"modulus {self.modulus} is not prime")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        if not is_prime(p):
            raise FieldError(f"modulus {p} is not prime")
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Accepts ``Q``, ``F7``, ``F 7``, ``F:7`` or a bare prime ``7``."""
        t = text.strip().replace(" ", "").replace(":", "")
        if t in ("Q", "QQ", "0"):
            return cls.rationals()
        if t[:1] in ("F", "f"):
            t = t[1:]
        try:
            p = int(t)
        except ValueError:
            raise FieldError(f"cannot parse field {text!r}") from None
        return cls.prime(p)

    @property
    def is_rational(self) -> bool:
        return self.modulus == 0

    @property
    def characteristic(self) -> int:
        return self.modulus

    @property
    def order(self) -> int | None:
        return None if self.modulus == 0 else self.modulus

    def __call__(self, value) -> Scalar:
        """Coerce an int, Fraction, ``"p/q"`` string or residue into the field."""
        if isinstance(value, str):
            value = Fraction(value.strip())
        if self.modulus == 0:
            if isinstance(value, Mod):
                raise FieldError("cannot lift a residue to Q")
            return Fraction(value)
        if isinstance(value, Mod):
            if value.p != self.modulus:
                raise FieldError(f"residue mod {value.p} is not in F_{self.modulus}")
            return value
        value = Fraction(value)
        if value.denominator % self.modulus == 0:
            raise FieldError(f"{value} is not defined in F_{self.modulus}")
        return Mod(value.numerator * pow(value.denominator, -1, self.modulus), self.modulus)

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def elements(self) -> Iterator[Scalar]:
        if self.modulus == 0:
            raise FieldError("Q is infinite")
        for v in range(self.modulus):
            yield Mod(v, self.modulus)

    def contains(self, x) -> bool:
        if self.modulus == 0:
            return isinstance(x, (int, Fraction))
        return isinstance(x, Mod) and x.p == self.modulus

    def format(self, x) -> str:
        """Canonical text: ``p/q`` with q > 0 (q omitted when 1), residues in [0, p)."""
        x = self(x)
        if isinstance(x, Mod):
            return str(x.value)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def __str__(self):
        return "Q" if self.modulus == 0 else f"F{self.modulus}"


QQ = FieldSpec.rationals()


def GF(p: int) -> FieldSpec:
    return FieldSpec.prime(p)
