"""Newton--Girard polynomials, characters, and the Chern/Pontryagin conversion.

All classes live in polynomial rings built by :func:`chern_ring`,
:func:`pontryagin_ring` and :func:`symplectic_ring`.  The zeroth classes
``c0 = p0 = q0 = 1`` are implicit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Mapping, Sequence

from .graded_algebra import GradedRing, RingElement

__all__ = [
    "FAMILY_STEP",
    "abstract_ring",
    "chern_ring",
    "pontryagin_ring",
    "symplectic_ring",
    "newton_girard",
    "newton_girard_in",
    "chern_to_pontryagin",
    "character_component",
    "SIdentityResult",
    "verify_s_identity",
    "CharSeries",
    "whitney_sum",
]

# cohomological degree of the i-th class is step * i
FAMILY_STEP = {"c": 2, "p": 4, "q": 4}
_CHARACTER_FAMILY = {"ch": "c", "po": "p", "sy": "q"}


@lru_cache(maxsize=None)
def abstract_ring(k: int) -> GradedRing:
    """``Q[x1, ..., xk]`` with ``|xi| = 2i``."""
    return GradedRing.polynomial("x", k, step=2)


@lru_cache(maxsize=None)
def chern_ring(n: int) -> GradedRing:
    return GradedRing.polynomial("c", n, step=2)


@lru_cache(maxsize=None)
def pontryagin_ring(n: int) -> GradedRing:
    return GradedRing.polynomial("p", n, step=4)


@lru_cache(maxsize=None)
def symplectic_ring(n: int) -> GradedRing:
    return GradedRing.polynomial("q", n, step=4)


_FAMILY_RING = {"c": chern_ring, "p": pontryagin_ring, "q": symplectic_ring}


@lru_cache(maxsize=None)
def newton_girard(k: int) -> RingElement:
    """``s_k(x1, ..., xk)``, read off from ``log(1 + sum xi t^i)``.

    >>> str(newton_girard(2))
    'x1^2 - 2*x2'
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    ring = abstract_ring(k)
    zero = ring.zero()
    series = [zero] + [ring.gen(f"x{i}") for i in range(1, k + 1)]
    # coefficient of t^k in sum_j (-1)^(j-1) X^j / j, X = series
    power = list(series)
    log_k = zero
    for j in range(1, k + 1):
        term = power[k]
        if term:
            log_k = log_k + term.scale(Fraction((-1) ** (j - 1), j))
        if j < k:
            power = _series_mul(power, series, k)
    return log_k.scale((-1) ** (k - 1) * k)


def _series_mul(a: Sequence[RingElement], b: Sequence[RingElement], order: int) -> list[RingElement]:
    out = [a[0].ring.zero() for _ in range(order + 1)]
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j in range(order + 1 - i):
            if b[j]:
                out[i + j] = out[i + j] + ai * b[j]
    return out


def newton_girard_in(k: int, ring: GradedRing, prefix: str) -> RingElement:
    """``s_k`` evaluated on the generators ``prefix1, ..., prefixk`` of ``ring``."""
    return newton_girard(k).substitute({f"x{i}": ring.gen(f"{prefix}{i}") for i in range(1, k + 1)}, ring)


def chern_to_pontryagin(k: int, ring: GradedRing | None = None) -> RingElement:
    """``p_k = c_k^2 + 2 sum_{i<k} (-1)^(k+i) c_(2k-i) c_i`` in Chern classes.

    ``ring`` defaults to ``chern_ring(2k)``; any ring holding ``c1..c(2k)``
    works.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if ring is None:
        ring = chern_ring(2 * k)

    def c(i: int) -> RingElement:
        return ring.one() if i == 0 else ring.gen(f"c{i}")

    out = c(k) * c(k)
    for i in range(k):
        out = out + (c(2 * k - i) * c(i)).scale(2 * (-1) ** (k + i))
    return out


def character_component(kind: str, k: int) -> RingElement:
    """Degree-k piece of ch, po or sy: ``s_k`` on the family, over ``k!``."""
    try:
        family = _CHARACTER_FAMILY[kind]
    except KeyError:
        raise ValueError(f"unknown character {kind!r}; expected ch, po or sy") from None
    if k < 1:
        raise ValueError("k must be at least 1")
    ring = _FAMILY_RING[family](k)
    return newton_girard_in(k, ring, family).scale(Fraction(1, factorial(k)))


@dataclass(frozen=True)
class SIdentityResult:
    k: int
    holds: bool
    witness: RingElement  # common value if holds, else the difference

    def __bool__(self) -> bool:
        return self.holds


def verify_s_identity(k: int) -> SIdentityResult:
    """Check ``s_k(p1..pk) == s_2k(c1..c2k)`` with each ``p_i`` written in Chern classes."""
    ring = chern_ring(2 * k)
    images = {f"x{i}": chern_to_pontryagin(i, ring) for i in range(1, k + 1)}
    lhs = newton_girard(k).substitute(images, ring)
    rhs = newton_girard_in(2 * k, ring, "c")
    diff = lhs - rhs
    if diff:
        return SIdentityResult(k, False, diff)
    return SIdentityResult(k, True, lhs)


@dataclass(frozen=True)
class CharSeries:
    """Truncated total class ``1 + r_1 + r_2 + ...`` of one family."""

    family: str
    components: tuple[RingElement, ...]

    def __post_init__(self) -> None:
        if self.family not in FAMILY_STEP:
            raise ValueError(f"unknown family {self.family!r}")
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps or comps[0] != 1:
            raise ValueError("component 0 must be 1")
        step = FAMILY_STEP[self.family]
        ring = comps[0].ring
        for k, x in enumerate(comps):
            if x.ring != ring:
                raise ValueError("components must share one ring")
            if not x.is_homogeneous(step * k):
                raise ValueError(f"component {k} is not homogeneous of degree {step * k}")

    @property
    def ring(self) -> GradedRing:
        return self.components[0].ring

    def component(self, k: int) -> RingElement:
        if k < len(self.components):
            return self.components[k]
        return self.ring.zero()

    @classmethod
    def universal(cls, family: str, ring: GradedRing, prefix: str, length: int) -> "CharSeries":
        """Series whose k-th class is the generator ``prefix<k>`` of ``ring``."""
        return cls(family, (ring.one(),) + tuple(ring.gen(f"{prefix}{k}") for k in range(1, length + 1)))

    @classmethod
    def trivial(cls, family: str, ring: GradedRing) -> "CharSeries":
        return cls(family, (ring.one(),))

    @classmethod
    def from_mapping(cls, family: str, ring: GradedRing, classes: Mapping[int, RingElement]) -> "CharSeries":
        top = max(classes, default=0)
        comps = [ring.one()] + [classes.get(k, ring.zero()) for k in range(1, top + 1)]
        return cls(family, tuple(comps))


def whitney_sum(a: CharSeries, b: CharSeries, n: int) -> RingElement:
    """Degree-n component of the total class of ``E + F``: ``sum_{i+j=n} a_i b_j``."""
    if a.family != b.family:
        raise ValueError(f"family mismatch: {a.family} vs {b.family}")
    if a.ring != b.ring:
        raise ValueError("series live in different rings")
    out = a.ring.zero()
    for i in range(n + 1):
        out = out + a.component(i) * b.component(n - i)
    return out
