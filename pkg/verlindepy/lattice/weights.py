# verlindepy/lattice/weights.py
"""
Level-k dominant weights of SL_r and the matching orbits of diagonal matrices.

A dominant weight is stored by its fundamental-weight marks (m_1, ..., m_{r-1}).
The corresponding point t = diag(t_1, ..., t_r) with t_i = zeta_N^{a_i},
N = r(k+r), is stored by its exponent tuple in canonical form: every exponent
reduced into the window (-N/2, N/2], listed in strictly decreasing order.
"""

import logging
from dataclasses import dataclass, field
from math import comb
from typing import Dict, Iterator, List, Sequence, Tuple

from ..core.validation import ParameterValidator, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LevelContext:
    """Rank, level and root-of-unity order of one computation."""

    r: int
    k: int
    N: int = 0

    def __post_init__(self):
        ParameterValidator.validate_rank(self.r)
        ParameterValidator.validate_level(self.k)
        expected = self.r * (self.k + self.r)
        if self.N == 0:
            object.__setattr__(self, "N", expected)
        elif self.N != expected:
            raise ValidationError(
                f"Order N={self.N} does not equal r(k+r)={expected}"
            )

    @property
    def M(self) -> int:
        """Shifted level k + r."""
        return self.k + self.r

    @property
    def target_class(self) -> int:
        """Centre class c with zeta_r^c = (-1)^(r-1)."""
        return self.r // 2 if self.r % 2 == 0 else 0

    @property
    def count(self) -> int:
        """Number of dominant weights of level at most k."""
        return comb(self.k + self.r - 1, self.r - 1)


@dataclass(frozen=True)
class DominantWeight:
    """Dominant weight in fundamental-weight coordinates."""

    marks: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "marks", tuple(self.marks))
        for m in self.marks:
            ParameterValidator.validate_integer(m, "Mark")
        if any(m < 0 for m in self.marks):
            raise ValidationError(f"Marks must be non-negative, got {self.marks}")

    @property
    def level(self) -> int:
        """Value on the coroot of the highest root, m_1 + ... + m_{r-1}."""
        return sum(self.marks)

    @property
    def rank(self) -> int:
        return len(self.marks) + 1

    def __str__(self):
        return "(" + ",".join(str(m) for m in self.marks) + ")"


@dataclass(frozen=True)
class OrbitPoint:
    """Canonical representative of an orbit of diagonal matrices under permutation."""

    exponents: Tuple[int, ...]
    N: int
    center_class: int = field(default=-1)

    def __post_init__(self):
        canonical = canonicalize(self.exponents, self.N)
        if canonical != tuple(self.exponents):
            raise ValidationError(
                f"Exponents {tuple(self.exponents)} are not canonical mod {self.N} "
                f"(expected {canonical})"
            )
        if sum(self.exponents) % self.N:
            raise ValidationError(
                f"Exponents {self.exponents} do not sum to 0 mod {self.N}"
            )
        r = len(self.exponents)
        classes = {a % r for a in self.exponents}
        if len(classes) != 1:
            raise ValidationError(
                f"Exponents {self.exponents} are not congruent mod r={r}"
            )
        c = classes.pop()
        if self.center_class == -1:
            object.__setattr__(self, "center_class", c)
        elif self.center_class != c:
            raise ValidationError(
                f"Centre class {self.center_class} does not match exponents ({c})"
            )

    @classmethod
    def from_exponents(cls, exponents: Sequence[int], N: int) -> "OrbitPoint":
        """Canonicalise an arbitrary admissible exponent tuple."""
        return cls(canonicalize(exponents, N), N)

    @property
    def rank(self) -> int:
        return len(self.exponents)

    def to_dict(self) -> Dict[str, object]:
        return {
            "exponents": list(self.exponents),
            "N": self.N,
            "center_class": self.center_class,
        }


def canonicalize(exponents: Sequence[int], N: int) -> Tuple[int, ...]:
    """
    Reduce exponents into (-N/2, N/2] and sort them in decreasing order.

    Raises:
        ValidationError: if two exponents coincide mod N
    """
    window = []
    for a in exponents:
        v = a % N
        if 2 * v > N:
            v -= N
        window.append(v)
    if len(set(window)) != len(window):
        raise ValidationError(f"Exponents {tuple(exponents)} repeat mod {N}")
    return tuple(sorted(window, reverse=True))


def _marks(r: int, budget: int) -> Iterator[Tuple[int, ...]]:
    if r == 1:
        yield ()
        return
    for first in range(budget + 1):
        for rest in _marks(r - 1, budget - first):
            yield (first,) + rest


def enumerate_Pk(ctx: LevelContext) -> List[DominantWeight]:
    """All dominant weights of level at most k, marks in lexicographic order."""
    weights = [DominantWeight(m) for m in _marks(ctx.r, ctx.k)]
    logger.debug("r=%d k=%d: %d dominant weights", ctx.r, ctx.k, len(weights))
    return weights


def _check_weight(ctx: LevelContext, weight: DominantWeight) -> None:
    if weight.rank != ctx.r:
        raise ValidationError(
            f"Weight {weight} has {len(weight.marks)} marks, expected {ctx.r - 1}"
        )
    if weight.level > ctx.k:
        raise ValidationError(
            f"Weight {weight} has level {weight.level} > k={ctx.k}"
        )


def gaps(weight: DominantWeight) -> Tuple[int, ...]:
    """Strictly decreasing l_1 > ... > l_r = 0, l_i = sum over j >= i of (m_j + 1)."""
    out = [0]
    for m in reversed(weight.marks):
        out.append(out[-1] + m + 1)
    return tuple(reversed(out))


def weight_to_orbit(ctx: LevelContext, weight: DominantWeight) -> OrbitPoint:
    """t_lambda = exp(2 pi i (lambda + rho)/(k + r)), as exponents a_i = r l_i - s."""
    _check_weight(ctx, weight)
    ell = gaps(weight)
    s = sum(ell)
    return OrbitPoint.from_exponents([ctx.r * l - s for l in ell], ctx.N)


def orbit_to_weight(ctx: LevelContext, point: OrbitPoint) -> DominantWeight:
    """
    Inverse of weight_to_orbit.

    Each exponent is tried as the one with l = 0; the gaps are the differences
    divided by r, read mod k + r. Exactly one choice satisfies a_ref = -s mod N.
    """
    if point.N != ctx.N or point.rank != ctx.r:
        raise ValidationError(f"Orbit point {point.exponents} does not belong to {ctx}")
    for ref in point.exponents:
        ell = sorted(((a - ref) // ctx.r) % ctx.M for a in point.exponents)[::-1]
        if (ref + sum(ell)) % ctx.N == 0:
            return DominantWeight(
                tuple(ell[i] - ell[i + 1] - 1 for i in range(ctx.r - 1))
            )
    raise ValidationError(f"Orbit point {point.exponents} has no dominant weight")


def enumerate_Tk(ctx: LevelContext) -> List[OrbitPoint]:
    """Orbit points in the order of the dominant weights they come from."""
    return [weight_to_orbit(ctx, w) for w in enumerate_Pk(ctx)]


def enumerate_Tk_prime(ctx: LevelContext) -> List[OrbitPoint]:
    """Orbit points with t^(k+r) = (-1)^(r-1) I."""
    target = ctx.target_class
    return [p for p in enumerate_Tk(ctx) if p.center_class == target]


def is_root_lattice(ctx: LevelContext, weight: DominantWeight) -> bool:
    _check_weight(ctx, weight)
    return sum(j * m for j, m in enumerate(weight.marks, start=1)) % ctx.r == 0


def center_action(ctx: LevelContext, point: OrbitPoint) -> OrbitPoint:
    """Multiply t by zeta_r, i.e. add k + r to every exponent."""
    return OrbitPoint.from_exponents([a + ctx.M for a in point.exponents], ctx.N)


def rotate_weight(ctx: LevelContext, weight: DominantWeight) -> DominantWeight:
    """Alcove rotation: (m_1, ..., m_{r-1}) -> (m_2, ..., m_{r-1}, k - level)."""
    _check_weight(ctx, weight)
    return DominantWeight(weight.marks[1:] + (ctx.k - weight.level,))


def fixed_point_weight(ctx: LevelContext) -> DominantWeight:
    """The weight (k/r) rho, fixed by the rotation."""
    if ctx.k % ctx.r:
        raise ValidationError(f"k={ctx.k} is not a multiple of r={ctx.r}")
    return DominantWeight((ctx.k // ctx.r,) * (ctx.r - 1))


@dataclass
class CenterOrbits:
    """Partition of the root-lattice weights into orbits of the centre."""

    orbits: List[Tuple[DominantWeight, ...]]
    fixed: DominantWeight

    @property
    def size(self) -> int:
        return sum(len(o) for o in self.orbits) + 1


def center_orbits_on_Pk_prime(ctx: LevelContext) -> CenterOrbits:
    """
    Orbits of the rotation on root-lattice weights.

    Requires r prime and D^k descending to the quotient; then every orbit has
    r elements apart from the fixed point (k/r) rho.
    """
    ParameterValidator.validate_descent(ctx.r, ctx.k)
    fixed = fixed_point_weight(ctx)
    seen = set()
    orbits: List[Tuple[DominantWeight, ...]] = []
    for weight in enumerate_Pk(ctx):
        if weight in seen or not is_root_lattice(ctx, weight):
            continue
        members = [weight]
        nxt = rotate_weight(ctx, weight)
        while nxt != weight:
            members.append(nxt)
            nxt = rotate_weight(ctx, nxt)
        seen.update(members)
        if len(members) == 1:
            if weight != fixed:
                raise ValidationError(f"Unexpected fixed weight {weight}")
            continue
        orbits.append(tuple(members))
    if fixed not in seen:
        raise ValidationError(f"Fixed weight {fixed} is not in the root lattice")
    logger.debug("r=%d k=%d: %d free centre orbits", ctx.r, ctx.k, len(orbits))
    return CenterOrbits(orbits=orbits, fixed=fixed)


def describe_orbits(ctx: LevelContext) -> List[Dict[str, object]]:
    """Listing of weights with their orbit points."""
    rows = []
    for weight in enumerate_Pk(ctx):
        point = weight_to_orbit(ctx, weight)
        rows.append(
            {
                "marks": list(weight.marks),
                "exponents": list(point.exponents),
                "N": ctx.N,
                "center_class": point.center_class,
                "in_root_lattice": is_root_lattice(ctx, weight),
            }
        )
    return rows
