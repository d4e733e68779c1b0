# verlindepy/core/cyclotomic.py
"""
Exact arithmetic in the cyclotomic field Q(zeta_N).

An element is stored in the power basis 1, z, ..., z^(phi(N)-1), reduced modulo
the N-th cyclotomic polynomial, as a vector of integer numerators over one
positive common denominator. The stored form is canonical, so equality of
elements is equality of their stored data.
"""

import logging
from fractions import Fraction
from functools import reduce
from math import gcd
from numbers import Rational
from typing import Dict, List, Mapping, Optional, Sequence, Union

from .polynomial import (
    cyclotomic_polynomial,
    poly_extended_gcd,
    reduce_modulo_cyclotomic,
    trim,
)

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class CycloElem:
    """Immutable element of the cyclotomic field of a fixed order."""

    __slots__ = ("order", "_nums", "_den")

    def __init__(self, order: int, coeffs: Sequence[Scalar] = ()):
        """
        Build an element from coefficients of 1, z, z^2, ... of any length.

        Coefficients beyond phi(N) are reduced modulo the cyclotomic polynomial.
        """
        if order < 1:
            raise ValueError(f"cyclotomic order must be positive, got {order}")
        fracs = [Fraction(c) for c in coeffs]
        den = reduce(_lcm, (f.denominator for f in fracs), 1)
        nums = [f.numerator * (den // f.denominator) for f in fracs]
        self._assign(order, reduce_modulo_cyclotomic(nums, order), den)

    def _assign(self, order: int, nums: List[int], den: int) -> None:
        common = reduce(gcd, nums, den)
        if common > 1:
            nums = [n // common for n in nums]
            den //= common
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_nums", tuple(nums))
        object.__setattr__(self, "_den", den)

    def __setattr__(self, name, value):
        raise AttributeError("CycloElem is immutable")

    @classmethod
    def _from_parts(cls, order: int, nums: List[int], den: int) -> "CycloElem":
        """Wrap already reduced numerators of length phi(order)."""
        elem = object.__new__(cls)
        if den < 0:
            nums, den = [-n for n in nums], -den
        elem._assign(order, nums, den)
        return elem

    @classmethod
    def from_vector(cls, order: int, vector: Sequence[int], den: int = 1) -> "CycloElem":
        """Integer coefficients of any length, optionally over a common denominator."""
        return cls._from_parts(order, reduce_modulo_cyclotomic(vector, order), den)

    @classmethod
    def scalar(cls, order: int, value: Scalar) -> "CycloElem":
        return cls(order, [value])

    @classmethod
    def from_exponents(cls, order: int, terms: Mapping[int, int]) -> "CycloElem":
        """Sum of c * zeta^e over the items (e, c) of ``terms``."""
        vector = [0] * order
        for exponent, coeff in terms.items():
            vector[exponent % order] += coeff
        return cls.from_vector(order, vector)

    # ---- accessors ---------------------------------------------------------

    @property
    def coeffs(self) -> tuple:
        """Power-basis coefficients as Fractions."""
        return tuple(Fraction(n, self._den) for n in self._nums)

    @property
    def degree(self) -> int:
        """Dimension of the field over Q (Euler phi of the order)."""
        return len(self._nums)

    def is_zero(self) -> bool:
        return not any(self._nums)

    def as_rational(self) -> Optional[Fraction]:
        """The rational value, or None when the element is not rational."""
        if any(self._nums[1:]):
            return None
        return Fraction(self._nums[0], self._den)

    def is_real(self) -> bool:
        return self.conj() == self

    # ---- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "CycloElem":
        if isinstance(other, CycloElem):
            if other.order != self.order:
                raise ValueError(
                    f"mismatched cyclotomic orders {self.order} and {other.order}"
                )
            return other
        if isinstance(other, Rational):
            return CycloElem.scalar(self.order, Fraction(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        den = _lcm(self._den, other._den)
        fa, fb = den // self._den, den // other._den
        nums = [a * fa + b * fb for a, b in zip(self._nums, other._nums)]
        return CycloElem._from_parts(self.order, nums, den)

    __radd__ = __add__

    def __neg__(self):
        return CycloElem._from_parts(self.order, [-n for n in self._nums], self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        product = [0] * (2 * len(self._nums) - 1)
        for i, a in enumerate(self._nums):
            if a:
                for j, b in enumerate(other._nums):
                    if b:
                        product[i + j] += a * b
        return CycloElem.from_vector(self.order, product, self._den * other._den)

    __rmul__ = __mul__

    def inverse(self) -> "CycloElem":
        """Multiplicative inverse by the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        g, s = poly_extended_gcd(list(self._nums), cyclotomic_polynomial(self.order))
        g = trim(g)
        if len(g) != 1:
            raise ArithmeticError("cyclotomic polynomial is not coprime to the element")
        scale = Fraction(self._den) / g[0]
        return CycloElem(self.order, [c * scale for c in s])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int) -> "CycloElem":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CycloElem.scalar(self.order, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def galois(self, a: int) -> "CycloElem":
        """Apply the automorphism zeta -> zeta^a (a coprime to the order)."""
        n = self.order
        if gcd(a, n) != 1:
            raise ValueError(f"{a} is not a unit modulo {n}")
        vector = [0] * n
        for i, c in enumerate(self._nums):
            if c:
                vector[(a * i) % n] += c
        return CycloElem.from_vector(n, vector, self._den)

    def conj(self) -> "CycloElem":
        """Complex conjugation, zeta -> zeta^(N-1)."""
        return self.galois(self.order - 1)

    def embed(self, order: int) -> "CycloElem":
        """Image under Q(zeta_M) -> Q(zeta_N), zeta_M -> zeta_N^(N/M)."""
        if order % self.order:
            raise ValueError(
                f"order {self.order} does not divide target order {order}"
            )
        step = order // self.order
        vector = [0] * (step * len(self._nums))
        for i, c in enumerate(self._nums):
            vector[step * i] = c
        return CycloElem.from_vector(order, vector, self._den)

    # ---- comparison, hashing, display -------------------------------------

    def __eq__(self, other):
        if isinstance(other, CycloElem):
            return (
                self.order == other.order
                and self._den == other._den
                and self._nums == other._nums
            )
        if isinstance(other, Rational):
            return self.as_rational() == other
        return NotImplemented

    def __hash__(self):
        value = self.as_rational()
        if value is not None:
            return hash(value)
        return hash((self.order, self._nums, self._den))

    def __repr__(self):
        coeffs = ", ".join(str(c) for c in self.coeffs)
        return f"CycloElem(order={self.order}, coeffs=[{coeffs}])"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                power = "z" if i == 1 else f"z^{i}"
                terms.append(power if c == 1 else f"{c}*{power}")
        return " + ".join(terms) if terms else "0"

    def to_dict(self) -> Dict[str, object]:
        """Serialise as {order, coeffs} with coefficients as 'p/q' strings."""
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_dict(cls, data: Mapping[str, object]) -> "CycloElem":
        order = int(data["order"])
        coeffs = [Fraction(str(c)) for c in data["coeffs"]]
        elem = cls(order, coeffs)
        if len(coeffs) != elem.degree or elem.coeffs != tuple(coeffs):
            raise ValueError("serialised coefficients are not in canonical reduced form")
        return elem


def root_of_unity(order: int, exponent: int) -> CycloElem:
    """zeta_N^(a mod N) in reduced form."""
    if order < 1:
        raise ValueError(f"cyclotomic order must be positive, got {order}")
    return CycloElem.from_exponents(order, {exponent: 1})


def _same_order(x: CycloElem, y: CycloElem) -> None:
    if x.order != y.order:
        raise ValueError(f"mismatched cyclotomic orders {x.order} and {y.order}")


def cyclo_add(x: CycloElem, y: CycloElem) -> CycloElem:
    _same_order(x, y)
    return x + y


def cyclo_sub(x: CycloElem, y: CycloElem) -> CycloElem:
    _same_order(x, y)
    return x - y


def cyclo_mul(x: CycloElem, y: CycloElem) -> CycloElem:
    _same_order(x, y)
    return x * y


def cyclo_neg(x: CycloElem) -> CycloElem:
    return -x


def cyclo_conj(x: CycloElem) -> CycloElem:
    return x.conj()


def cyclo_inverse(x: CycloElem) -> CycloElem:
    return x.inverse()


def cyclo_pow(x: CycloElem, exponent: int) -> CycloElem:
    return x ** exponent


def galois_conjugate(x: CycloElem, a: int) -> CycloElem:
    return x.galois(a)


def embed(x: CycloElem, order: int) -> CycloElem:
    return x.embed(order)


def as_rational(x: CycloElem) -> Optional[Fraction]:
    return x.as_rational()
