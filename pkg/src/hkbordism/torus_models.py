"""Cohomology of decorated tori T^2n_c and T^4n_h.

``H^*(T^2n)`` is the exterior algebra on ``e1, f1, ..., en, fn`` (degree 1),
oriented by ``e1*f1*...*en*fn``.  The line bundle ``L_2n`` has
``c1 = sum e_l f_l``; the SU(2)-bundle ``Q_4n`` induced from its unit circle
bundle has ``p1 = -2 c1^2``.  The tangent bundle is framed, so its
Pontryagin classes vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .graded_algebra import GradedRing, Monomial, RingElement

__all__ = [
    "TorusModel",
    "torus_ring",
    "orientation",
    "c1_class",
    "c1_power_integral",
    "p1_of_induced_su2",
    "p1_class",
    "p1_power_integral",
    "q_bundle_integral",
    "q_bundle_integral_closed_form",
    "tangent_pontryagin_class",
]

_DECORATIONS = ("framed", "c", "h")


@lru_cache(maxsize=None)
def torus_ring(half_dim: int) -> GradedRing:
    return GradedRing.exterior_pairs(half_dim)


def orientation(half_dim: int) -> Monomial:
    ring = torus_ring(half_dim)
    return ring.monomial(ring.names)


@dataclass(frozen=True)
class TorusModel:
    """The torus ``T^(2 * half_dim)`` with a decoration ``framed``, ``c`` or ``h``."""

    half_dim: int
    decoration: str = "c"

    def __post_init__(self) -> None:
        if self.half_dim < 0:
            raise ValueError("half_dim must be non-negative")
        if self.decoration not in _DECORATIONS:
            raise ValueError(f"unknown torus decoration {self.decoration!r}")
        if self.decoration == "h" and self.half_dim % 2:
            raise ValueError("an h-decorated torus needs real dimension divisible by 4")

    @property
    def dim(self) -> int:
        return 2 * self.half_dim

    @property
    def ring(self) -> GradedRing:
        return torus_ring(self.half_dim)

    @property
    def orientation(self) -> Monomial:
        return orientation(self.half_dim)

    def integrate(self, x: RingElement) -> Fraction:
        return x.top_coefficient(self.orientation)


def c1_class(t: TorusModel) -> RingElement:
    """``c1(L_2n) = e1 f1 + ... + en fn``."""
    if t.decoration == "framed":
        raise ValueError("a framed torus carries no line bundle")
    ring = t.ring
    out = ring.zero()
    for l in range(1, t.half_dim + 1):
        out = out + ring.term(1, (f"e{l}", f"f{l}"))
    return out


@lru_cache(maxsize=None)
def c1_power_integral(n: int, y: int) -> Fraction:
    """``int_{T^2n} c1(L_2n)^y``, by expansion in the exterior algebra."""
    if n < 0 or y < 0:
        raise ValueError("arguments must be non-negative")
    t = TorusModel(n, "c")
    return t.integrate(c1_class(t).power(y))


def p1_of_induced_su2(c1: RingElement) -> RingElement:
    """First Pontryagin class of ``P x_U(1) SU(2)`` from ``c1(P)``: ``-2 c1^2``."""
    if not c1.is_homogeneous(2):
        raise ValueError("c1 must be homogeneous of degree 2")
    return (c1 * c1).scale(-2)


def p1_class(t: TorusModel) -> RingElement:
    """``p1(Q_2n)`` on an h-decorated torus."""
    if t.decoration != "h":
        raise ValueError("p1 of the SU(2)-bundle needs an h-decorated torus")
    return p1_of_induced_su2(c1_class(TorusModel(t.half_dim, "c")))


@lru_cache(maxsize=None)
def p1_power_integral(y: int, a: int) -> Fraction:
    """``int_{T^4y} p1(Q_4y)^a``, by expansion; zero unless ``a == y``."""
    if y < 0 or a < 0:
        raise ValueError("arguments must be non-negative")
    t = TorusModel(2 * y, "h")
    return t.integrate(p1_class(t).power(a))


def q_bundle_integral(n: int) -> Fraction:
    """``int_{T^4n} p1(Q_4n)^n``."""
    return p1_power_integral(n, n)


def q_bundle_integral_closed_form(n: int) -> int:
    return (-2) ** n * factorial(2 * n)


def tangent_pontryagin_class(t: TorusModel, k: int) -> RingElement:
    """``p_k(T T^2n)``: 1 for k = 0 and 0 otherwise, the tangent bundle being framed."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return t.ring.one() if k == 0 else t.ring.zero()
