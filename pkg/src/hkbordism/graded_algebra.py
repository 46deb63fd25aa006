"""Exact graded-commutative algebras over Q.

A :class:`GradedRing` is generated by polynomial generators of positive even
degree and exterior generators of odd degree.  Exterior generators square to
zero and anticommute with each other; everything else commutes.  Elements are
sparse maps from :class:`Monomial` to :class:`fractions.Fraction`.

Monomials store one exponent per generator, in the order the generators were
declared on the ring.  That declaration order *is* the canonical order: the
product of two monomials is rewritten into it and the Koszul sign of the
rewrite is folded into the coefficient.  Tori declare ``e1, f1, e2, f2, ...``
so that the orientation class ``e1*f1*...*en*fn`` is itself canonical.

Text form (used by the CLI and golden files)::

    >>> R = GradedRing.polynomial("c", 4, step=2)
    >>> x = R.parse("c1^2 - 2*c2")
    >>> str(x + 2 * R.gen("c2"))
    'c1^2'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

__all__ = [
    "POLYNOMIAL",
    "EXTERIOR",
    "GeneratorSpec",
    "Monomial",
    "GradedRing",
    "RingElement",
    "AmbientMismatch",
    "add",
    "mul",
    "power",
    "homogeneous_part",
    "top_coefficient",
]

POLYNOMIAL = "polynomial"
EXTERIOR = "exterior"

Scalar = Union[int, Fraction]

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


class AmbientMismatch(ValueError):
    """Raised when elements of two different rings are combined."""


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    degree: int
    kind: str = POLYNOMIAL

    def __post_init__(self) -> None:
        if not _NAME_RE.match(self.name):
            raise ValueError(f"invalid generator name {self.name!r}")
        if self.degree <= 0:
            raise ValueError(f"generator {self.name} must have positive degree")
        if self.kind == POLYNOMIAL:
            if self.degree % 2:
                raise ValueError(f"polynomial generator {self.name} must have even degree")
        elif self.kind == EXTERIOR:
            if self.degree % 2 == 0:
                raise ValueError(f"exterior generator {self.name} must have odd degree")
        else:
            raise ValueError(f"unknown generator kind {self.kind!r}")

    @property
    def is_odd(self) -> bool:
        return self.kind == EXTERIOR


@dataclass(frozen=True)
class Monomial:
    """Exponent vector aligned with the generators of its ring."""

    exponents: tuple[int, ...]
    degree: int

    def support(self) -> Iterator[int]:
        return (i for i, e in enumerate(self.exponents) if e)

    def is_unit(self) -> bool:
        return not any(self.exponents)


class GradedRing:
    """A graded-commutative Q-algebra on a fixed, ordered generating set."""

    def __init__(self, generators: Sequence[GeneratorSpec]):
        gens = tuple(generators)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        self.generators = gens
        self._index = {g.name: i for i, g in enumerate(gens)}
        self._degrees = tuple(g.degree for g in gens)
        self._odd = tuple(i for i, g in enumerate(gens) if g.is_odd)
        self._unit = Monomial((0,) * len(gens), 0)

    # -- constructors -------------------------------------------------

    @classmethod
    def polynomial(cls, prefix: str, count: int, step: int = 2) -> "GradedRing":
        """``Q[prefix1, ..., prefix<count>]`` with ``|prefix i| = step * i``."""
        return cls([GeneratorSpec(f"{prefix}{i}", step * i) for i in range(1, count + 1)])

    @classmethod
    def exterior_pairs(cls, count: int, first: str = "e", second: str = "f") -> "GradedRing":
        """Exterior algebra on ``e1, f1, ..., e<count>, f<count>``, all of degree 1."""
        gens = []
        for i in range(1, count + 1):
            gens.append(GeneratorSpec(f"{first}{i}", 1, EXTERIOR))
            gens.append(GeneratorSpec(f"{second}{i}", 1, EXTERIOR))
        return cls(gens)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GradedRing) and self.generators == other.generators

    def __hash__(self) -> int:
        return hash(self.generators)

    def __repr__(self) -> str:
        return f"GradedRing({', '.join(g.name for g in self.generators)})"

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    @property
    def exterior_count(self) -> int:
        return len(self._odd)

    def has(self, name: str) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"{name!r} is not a generator of {self!r}") from None

    def monomial(self, factors: Mapping[str, int] | Iterable[str] = ()) -> Monomial:
        """Build a monomial from ``{name: exponent}`` or an iterable of names.

        The factors are taken as already being in canonical order; no sign is
        involved.  A repeated exterior generator is rejected.
        """
        if isinstance(factors, Mapping):
            items = factors.items()
        else:
            counts: dict[str, int] = {}
            for name in factors:
                counts[name] = counts.get(name, 0) + 1
            items = counts.items()
        exps = [0] * len(self.generators)
        for name, e in items:
            i = self.index(name)
            if e < 0:
                raise ValueError("negative exponent")
            if e > 1 and self.generators[i].is_odd:
                raise ValueError(f"exterior generator {name} with exponent {e}")
            exps[i] += e
        return self._make_monomial(tuple(exps))

    def _make_monomial(self, exps: tuple[int, ...]) -> Monomial:
        return Monomial(exps, sum(e * d for e, d in zip(exps, self._degrees)))

    def zero(self) -> "RingElement":
        return RingElement(self, {})

    def one(self) -> "RingElement":
        return self.scalar(1)

    def scalar(self, value: Scalar) -> "RingElement":
        return RingElement(self, {self._unit: Fraction(value)})

    def gen(self, name: str) -> "RingElement":
        return RingElement(self, {self.monomial({name: 1}): Fraction(1)})

    def term(self, coefficient: Scalar, factors: Mapping[str, int] | Iterable[str] = ()) -> "RingElement":
        return RingElement(self, {self.monomial(factors): Fraction(coefficient)})

    @property
    def unit_monomial(self) -> Monomial:
        return self._unit

    # -- monomial product ---------------------------------------------

    def multiply_monomials(self, a: Monomial, b: Monomial) -> tuple[int, Monomial | None]:
        """Return ``(sign, a*b)``; the monomial is None when the product vanishes."""
        ea, eb = a.exponents, b.exponents
        sign = 1
        if self._odd:
            # moving each odd factor of b left past the odd factors of a that
            # sit after it in canonical order
            passed = 0
            for i in reversed(self._odd):
                if eb[i]:
                    if ea[i]:
                        return 0, None
                    if passed % 2:
                        sign = -sign
                if ea[i]:
                    passed += 1
        exps = tuple(x + y for x, y in zip(ea, eb))
        return sign, Monomial(exps, a.degree + b.degree)

    # -- text form ----------------------------------------------------

    def format_monomial(self, m: Monomial) -> str:
        parts = []
        for i, e in enumerate(m.exponents):
            if e == 1:
                parts.append(self.generators[i].name)
            elif e > 1:
                parts.append(f"{self.generators[i].name}^{e}")
        return "*".join(parts)

    def format(self, x: "RingElement") -> str:
        if not x.terms:
            return "0"
        pieces = []
        for m, c in x.sorted_terms():
            mono = self.format_monomial(m)
            mag = abs(c)
            if not mono:
                body = _format_fraction(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_format_fraction(mag)}*{mono}"
            if not pieces:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append((" - " if c < 0 else " + ") + body)
        return "".join(pieces)

    def parse(self, text: str) -> "RingElement":
        """Inverse of :meth:`format`; also accepts parentheses and any factor order."""
        return _Parser(self, text).parse()

    # -- change of ring -----------------------------------------------

    def include(self, x: "RingElement") -> "RingElement":
        """Map ``x`` into this ring along generator names.

        Every generator of ``x.ring`` that occurs in ``x`` must exist here with
        the same degree and kind.  Signs are recomputed for the new order.
        """
        if x.ring == self:
            return x
        mapping = {}
        for g in x.ring.generators:
            if self.has(g.name):
                if self.generators[self.index(g.name)] != g:
                    raise AmbientMismatch(f"generator {g.name} differs between rings")
                mapping[g.name] = self.gen(g.name)
        return x.substitute(mapping, self)


class RingElement:
    """An element of a :class:`GradedRing`, in canonical form."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: GradedRing, terms: Mapping[Monomial, Scalar]):
        self.ring = ring
        self._terms = {m: Fraction(c) for m, c in terms.items() if c != 0}

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        # ascending degree; within a degree, exponent vectors descending
        return sorted(self._terms.items(), key=lambda kv: (kv[0].degree, tuple(-e for e in kv[0].exponents)))

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degrees(self) -> set[int]:
        return {m.degree for m in self._terms}

    def is_homogeneous(self, degree: int | None = None) -> bool:
        ds = self.degrees()
        if not ds:
            return True
        if len(ds) != 1:
            return False
        return degree is None or degree in ds

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other: object) -> "RingElement":
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise AmbientMismatch(f"cannot combine elements of {self.ring!r} and {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return RingElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "RingElement":
        return RingElement(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, k: Scalar) -> "RingElement":
        k = Fraction(k)
        return RingElement(self.ring, {m: c * k for m, c in self._terms.items()})

    def multiply(self, other: "RingElement", truncate_above: int | None = None) -> "RingElement":
        other = self._coerce(other)
        ring = self.ring
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                if truncate_above is not None and ma.degree + mb.degree > truncate_above:
                    continue
                sign, m = ring.multiply_monomials(ma, mb)
                if m is None:
                    continue
                c = ca * cb
                out[m] = out.get(m, 0) + (c if sign > 0 else -c)
        return RingElement(ring, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.multiply(other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def power(self, k: int, truncate_above: int | None = None) -> "RingElement":
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result.multiply(base, truncate_above)
            k >>= 1
            if k:
                base = base.multiply(base, truncate_above)
        return result

    def __pow__(self, k: int) -> "RingElement":
        return self.power(k)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.scalar(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"RingElement({self.ring.format(self)!r})"

    def __str__(self) -> str:
        return self.ring.format(self)

    # -- graded pieces ------------------------------------------------

    def homogeneous_part(self, d: int) -> "RingElement":
        return RingElement(self.ring, {m: c for m, c in self._terms.items() if m.degree == d})

    def truncate(self, max_degree: int) -> "RingElement":
        return RingElement(self.ring, {m: c for m, c in self._terms.items() if m.degree <= max_degree})

    def top_coefficient(self, orientation: Monomial) -> Fraction:
        if len(orientation.exponents) != len(self.ring.generators):
            raise AmbientMismatch("orientation monomial does not belong to this ring")
        return self._terms.get(orientation, Fraction(0))

    def substitute(self, mapping: Mapping[str, "RingElement"], target: GradedRing) -> "RingElement":
        """Ring map sending generator ``name`` to ``mapping[name]`` in ``target``.

        Generators absent from ``mapping`` must not occur in ``self``.  Factors
        are multiplied in canonical order, so signs come out right whenever
        the images of odd generators are odd.
        """
        ring = self.ring
        images = []
        for g in ring.generators:
            img = mapping.get(g.name)
            if img is not None and img.ring != target:
                raise AmbientMismatch(f"image of {g.name} is not in the target ring")
            images.append(img)
        cache: dict[tuple[int, int], RingElement] = {}
        out = target.zero()
        for m, c in self._terms.items():
            prod = target.scalar(c)
            for i, e in enumerate(m.exponents):
                if not e:
                    continue
                if images[i] is None:
                    raise KeyError(f"no image given for generator {ring.generators[i].name}")
                key = (i, e)
                if key not in cache:
                    cache[key] = images[i].power(e)
                prod = prod * cache[key]
            out = out + prod
        return out


def add(a: RingElement, b: RingElement) -> RingElement:
    return a + b


def mul(a: RingElement, b: RingElement, truncate_above: int | None = None) -> RingElement:
    if a.ring != b.ring:
        raise AmbientMismatch(f"cannot multiply elements of {a.ring!r} and {b.ring!r}")
    return a.multiply(b, truncate_above)


def power(a: RingElement, k: int, truncate_above: int | None = None) -> RingElement:
    return a.power(k, truncate_above)


def homogeneous_part(a: RingElement, d: int) -> RingElement:
    return a.homogeneous_part(d)


def top_coefficient(a: RingElement, orientation: Monomial) -> Fraction:
    """Integrate ``a``: the coefficient of the orientation monomial."""
    return a.top_coefficient(orientation)


def _format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(\S))")


class _Parser:
    def __init__(self, ring: GradedRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens: list[tuple[str, str]] = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            m = _TOKEN_RE.match(stripped, pos)
            if m is None:
                break
            num, name, sym = m.groups()
            if num is not None:
                self.tokens.append(("num", num))
            elif name is not None:
                self.tokens.append(("name", name))
            else:
                self.tokens.append(("sym", sym))
            pos = m.end()
        self.pos = 0

    def _peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self) -> tuple[str, str]:
        tok = self._peek()
        if tok is None:
            raise ValueError(f"unexpected end of input in {self.text!r}")
        self.pos += 1
        return tok

    def _expect_sym(self, s: str) -> None:
        kind, val = self._take()
        if kind != "sym" or val != s:
            raise ValueError(f"expected {s!r}, got {val!r} in {self.text!r}")

    def parse(self) -> RingElement:
        if not self.tokens:
            raise ValueError("empty expression")
        x = self._expr()
        if self._peek() is not None:
            raise ValueError(f"trailing input {self._peek()[1]!r} in {self.text!r}")
        return x

    def _expr(self) -> RingElement:
        sign = 1
        tok = self._peek()
        if tok == ("sym", "-"):
            self.pos += 1
            sign = -1
        elif tok == ("sym", "+"):
            self.pos += 1
        acc = self._product().scale(sign)
        while True:
            tok = self._peek()
            if tok == ("sym", "+"):
                self.pos += 1
                acc = acc + self._product()
            elif tok == ("sym", "-"):
                self.pos += 1
                acc = acc - self._product()
            else:
                return acc

    def _product(self) -> RingElement:
        acc = self._factor()
        while self._peek() == ("sym", "*"):
            self.pos += 1
            acc = acc * self._factor()
        return acc

    def _factor(self) -> RingElement:
        kind, val = self._take()
        if kind == "num":
            value = Fraction(int(val))
            if self._peek() == ("sym", "/"):
                self.pos += 1
                kind2, den = self._take()
                if kind2 != "num":
                    raise ValueError(f"bad fraction in {self.text!r}")
                value /= int(den)
            base = self.ring.scalar(value)
        elif kind == "name":
            base = self.ring.gen(val)
        elif val == "(":
            base = self._expr()
            self._expect_sym(")")
        else:
            raise ValueError(f"unexpected {val!r} in {self.text!r}")
        if self._peek() == ("sym", "^"):
            self.pos += 1
            kind, e = self._take()
            if kind != "num":
                raise ValueError(f"bad exponent in {self.text!r}")
            base = base.power(int(e))
        return base
