# verlindepy/core/polynomial.py
"""
Dense univariate polynomials over the integers and the rationals.

Polynomials are plain lists of coefficients, lowest degree first. The only
modulus the package ever reduces by is a cyclotomic polynomial, which is monic
with integer coefficients, so reduction of integer vectors stays integral.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple

logger = logging.getLogger(__name__)


def trim(poly: Sequence) -> list:
    """Drop trailing zero coefficients (the zero polynomial becomes [])."""
    out = list(poly)
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(poly: Sequence) -> int:
    """Degree of a trimmed polynomial; -1 for the zero polynomial."""
    return len(trim(poly)) - 1


def poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] += ai * bj
    return out


def poly_sub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
        for i in range(n)
    ]


def poly_divmod(a: Sequence, b: Sequence) -> Tuple[list, list]:
    """
    Euclidean division over the rationals.

    Returns:
        (quotient, remainder), both trimmed lists of Fraction
    """
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in trim(a)]
    lead = Fraction(b[-1])
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], rem
    quot = [Fraction(0)] * (len(rem) - db)
    for shift in range(len(rem) - 1 - db, -1, -1):
        coeff = rem[shift + db] / lead
        if coeff:
            quot[shift] = coeff
            for j, bj in enumerate(b):
                rem[shift + j] -= coeff * bj
    return trim(quot), trim(rem[:db])


def poly_extended_gcd(a: Sequence, b: Sequence) -> Tuple[list, list]:
    """
    Extended Euclidean algorithm over the rationals.

    Returns:
        (g, s) with s*a congruent to g modulo b, g a gcd of a and b
    """
    r0, r1 = [Fraction(c) for c in trim(a)], [Fraction(c) for c in trim(b)]
    s0, s1 = [Fraction(1)], []
    while r1:
        quot, rem = poly_divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, trim(poly_sub(s0, poly_mul(quot, s1)))
    return r0, s0


def _exact_divide_monic(a: List[int], b: Sequence[int]) -> List[int]:
    """Integer division by a monic polynomial that is known to be exact."""
    rem = list(a)
    db = len(b) - 1
    quot = [0] * (len(rem) - db)
    for shift in range(len(rem) - 1 - db, -1, -1):
        coeff = rem[shift + db]
        if coeff:
            quot[shift] = coeff
            for j, bj in enumerate(b):
                rem[shift + j] -= coeff * bj
    if any(rem[:db]):
        raise ArithmeticError("non-exact division by a monic polynomial")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Tuple[int, ...]:
    """
    The n-th cyclotomic polynomial, lowest degree first.

    Computed by dividing x^n - 1 by the cyclotomic polynomials of all proper
    divisors of n. Cached per order.
    """
    if n < 1:
        raise ValueError(f"cyclotomic order must be positive, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _exact_divide_monic(poly, cyclotomic_polynomial(d))
    logger.debug("cyclotomic polynomial of order %d has degree %d", n, len(poly) - 1)
    return tuple(poly)


def euler_phi(n: int) -> int:
    """Degree of the n-th cyclotomic polynomial."""
    return len(cyclotomic_polynomial(n)) - 1


def warm_up(orders: Iterable[int]) -> None:
    """Populate the cyclotomic cache before handing work to concurrent workers."""
    for n in orders:
        cyclotomic_polynomial(n)


def reduce_modulo_cyclotomic(vector: Sequence, n: int) -> list:
    """
    Reduce a coefficient vector modulo the n-th cyclotomic polynomial.

    The vector is first folded modulo x^n - 1 (a multiple of the cyclotomic
    polynomial), then divided by the monic modulus. Integer input gives
    integer output.

    Returns:
        list of exactly euler_phi(n) coefficients
    """
    modulus = cyclotomic_polynomial(n)
    phi = len(modulus) - 1
    folded = [0] * n
    for i, c in enumerate(vector):
        if c:
            folded[i % n] += c
    for top in range(n - 1, phi - 1, -1):
        coeff = folded[top]
        if coeff:
            folded[top] = 0
            base = top - phi
            for j in range(phi):
                if modulus[j]:
                    folded[base + j] -= coeff * modulus[j]
    return folded[:phi]
