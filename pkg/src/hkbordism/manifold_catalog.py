"""Basis manifolds, K3^[n] Chern data, and their Pontryagin numbers.

A basis element is a decorated torus times a product of Hilbert schemes
``K3^[m_1] x ... x K3^[m_a]``.  Tori are framed, so only the Hilbert-scheme
factors contribute tangential Pontryagin classes; the torus contributes the
auxiliary class (``c1`` of the line bundle, or ``p1`` of the SU(2)-bundle).
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Any, Iterable, Iterator, Mapping, Sequence

from .char_calculus import chern_ring, chern_to_pontryagin
from .partitions import Decoration, Partition, enumerate_partitions
from .torus_models import c1_power_integral, p1_power_integral

__all__ = [
    "ManifoldDescriptor",
    "basis_elements",
    "ChernDataError",
    "MissingDataError",
    "ChernDataRecord",
    "parse_chern_key",
    "format_chern_key",
    "goettsche_coefficients",
    "load_chern_data",
    "default_data_path",
    "load_default_data",
    "PontryaginNumbers",
    "chern_numbers_to_pontryagin_numbers",
    "product_pontryagin_numbers",
    "HilbertData",
    "characteristic_number",
    "functional_degree",
]

K3_EULER = 24
K3_SIGNATURE = -16


@dataclass(frozen=True)
class ManifoldDescriptor:
    k3_parts: Partition
    torus_dim: int
    decoration: Decoration

    def __post_init__(self) -> None:
        object.__setattr__(self, "decoration", Decoration(self.decoration))
        if self.torus_dim < 0 or self.torus_dim % 2:
            raise ValueError("torus dimension must be a non-negative even integer")
        if self.decoration is Decoration.r and self.torus_dim:
            raise ValueError("r-decorated basis elements have no torus factor")
        if self.decoration is Decoration.h and self.torus_dim % 4:
            raise ValueError("h-decorated tori have dimension divisible by 4")

    @property
    def dim(self) -> int:
        return 4 * self.k3_parts.weight + self.torus_dim

    @property
    def k3_weight(self) -> int:
        return self.k3_parts.weight

    def label(self) -> str:
        factors = []
        if self.torus_dim:
            factors.append(f"T^{self.torus_dim}_{self.decoration.value}")
        factors.extend(f"K3^[{m}]" for m in self.k3_parts)
        return " x ".join(factors) if factors else "pt"

    def __str__(self) -> str:
        return self.label()


def basis_elements(x: Decoration | str, degree: int) -> list[ManifoldDescriptor]:
    """The basis ``B^x_degree``, ordered by K3-weight then canonical partition order."""
    x = Decoration(x)
    if degree < 0:
        raise ValueError("degree must be non-negative")
    n, rem = divmod(degree, 4)
    if x is Decoration.r:
        if rem:
            return []
        return [ManifoldDescriptor(lam, 0, x) for lam in enumerate_partitions(n)]
    if not (rem == 0 or (x is Decoration.c and rem == 2)):
        return []
    out = []
    for m in range(n + 1):
        torus = 4 * (n - m) + rem
        out.extend(ManifoldDescriptor(lam, torus, x) for lam in enumerate_partitions(m))
    return out


# -- Chern data ---------------------------------------------------------


class ChernDataError(ValueError):
    """An ingested Chern-number record is malformed or fails validation."""

    def __init__(self, message: str, record: int | None = None, field: str | None = None):
        where = []
        if record is not None:
            where.append(f"record n={record}")
        if field is not None:
            where.append(f"field {field}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.record = record
        self.field = field


class MissingDataError(LookupError):
    """No Chern data for a Hilbert scheme that a computation needs."""


_FACTOR_RE = re.compile(r"c(\d+)(?:\^(\d+))?\Z")


def parse_chern_key(key: str) -> tuple[int, ...]:
    """``"c2^2*c4"`` -> ``(2, 2, 4)``; factor order in the key is free."""
    out: list[int] = []
    for factor in key.replace(" ", "").split("*"):
        m = _FACTOR_RE.match(factor)
        if m is None:
            raise ValueError(f"malformed Chern monomial {key!r}")
        idx = int(m.group(1))
        exp = int(m.group(2)) if m.group(2) else 1
        if idx < 1 or exp < 1:
            raise ValueError(f"malformed Chern monomial {key!r}")
        out.extend([idx] * exp)
    return tuple(sorted(out))


def format_chern_key(indices: Iterable[int]) -> str:
    counts: dict[int, int] = {}
    for i in indices:
        counts[i] = counts.get(i, 0) + 1
    return "*".join(f"c{i}" if e == 1 else f"c{i}^{e}" for i, e in sorted(counts.items()))


@lru_cache(maxsize=None)
def goettsche_coefficients(count: int) -> tuple[int, ...]:
    """First ``count + 1`` coefficients of ``prod_{m>=1} (1 - q^m)^(-24)``."""
    coeffs = [1] + [0] * count
    for m in range(1, count + 1):
        for _ in range(K3_EULER):
            for j in range(m, count + 1):
                coeffs[j] += coeffs[j - m]
    return tuple(coeffs)


@dataclass(frozen=True)
class ChernDataRecord:
    """Chern numbers of ``K3^[n]``; keys are sorted tuples of even indices."""

    n: int
    chern_numbers: Mapping[tuple[int, ...], int]
    provenance: str = ""

    def top_chern_number(self) -> int:
        return self.chern_numbers[(2 * self.n,)]

    def as_document(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "chern_numbers": {format_chern_key(k): v for k, v in sorted(self.chern_numbers.items())},
            "provenance": self.provenance,
        }


def _validate_record(raw: Any, position: int) -> ChernDataRecord:
    if not isinstance(raw, dict):
        raise ChernDataError(f"record #{position} is not an object")
    n = raw.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ChernDataError(f"record #{position}: n must be a positive integer", field="n")
    numbers = raw.get("chern_numbers")
    if not isinstance(numbers, dict):
        raise ChernDataError("chern_numbers must be an object", n, "chern_numbers")
    provenance = raw.get("provenance", "")
    if not isinstance(provenance, str):
        raise ChernDataError("provenance must be a string", n, "provenance")
    extra = set(raw) - {"n", "chern_numbers", "provenance"}
    if extra:
        raise ChernDataError(f"unknown fields {sorted(extra)}", n)

    parsed: dict[tuple[int, ...], int] = {}
    for key, value in numbers.items():
        fld = f"chern_numbers[{key!r}]"
        try:
            idx = parse_chern_key(key)
        except ValueError as exc:
            raise ChernDataError(str(exc), n, fld) from None
        if any(i % 2 for i in idx):
            raise ChernDataError("odd Chern index present", n, fld)
        if 2 * sum(idx) != 4 * n:
            raise ChernDataError(f"monomial has degree {2 * sum(idx)}, expected {4 * n}", n, fld)
        if not isinstance(value, int) or isinstance(value, bool):
            raise ChernDataError("Chern numbers must be integers", n, fld)
        if idx in parsed:
            raise ChernDataError("duplicate monomial after canonicalisation", n, fld)
        parsed[idx] = value

    top = (2 * n,)
    if top not in parsed:
        raise ChernDataError(f"top Chern number c{2 * n} missing", n, "chern_numbers")
    expected = goettsche_coefficients(n)[n]
    if parsed[top] != expected:
        raise ChernDataError(
            f"top Chern number {parsed[top]} disagrees with Euler characteristic {expected}",
            n,
            f"chern_numbers['c{2 * n}']",
        )
    return ChernDataRecord(n, parsed, provenance)


def load_chern_data(source: Any) -> list[ChernDataRecord]:
    """Validate a K3 Chern data document.

    ``source`` may be a path, a JSON string, a list of records, or an object
    with a ``records`` list.
    """
    if isinstance(source, os.PathLike) or (isinstance(source, str) and not source.lstrip().startswith(("{", "["))):
        with open(source, encoding="utf-8") as fh:
            doc = json.load(fh)
    elif isinstance(source, str):
        doc = json.loads(source)
    else:
        doc = source
    if isinstance(doc, dict):
        if "records" not in doc:
            raise ChernDataError("document has no 'records' list")
        doc = doc["records"]
    if not isinstance(doc, list):
        raise ChernDataError("document must be a list of records")
    records = []
    seen = set()
    for i, raw in enumerate(doc):
        rec = _validate_record(raw, i)
        if rec.n in seen:
            raise ChernDataError("duplicate record", rec.n, "n")
        seen.add(rec.n)
        records.append(rec)
    return records


def default_data_path():
    return resources.files("hkbordism") / "data" / "k3_chern.json"


def load_default_data() -> list[ChernDataRecord]:
    return load_chern_data(default_data_path().read_text(encoding="utf-8"))


# -- Pontryagin numbers -------------------------------------------------


@dataclass(frozen=True)
class PontryaginNumbers:
    """``lambda -> int_M p_lambda(M)`` for a closed manifold of dimension 4n."""

    dim: int
    values: Mapping[Partition, Fraction]

    def __post_init__(self) -> None:
        if self.dim % 4:
            raise ValueError("Pontryagin numbers need dimension divisible by 4")
        vals = {lam: Fraction(v) for lam, v in self.values.items()}
        if set(vals) != set(enumerate_partitions(self.dim // 4)):
            raise ValueError(f"keys must be exactly the partitions of {self.dim // 4}")
        object.__setattr__(self, "values", vals)

    @property
    def weight(self) -> int:
        return self.dim // 4

    @classmethod
    def point(cls) -> "PontryaginNumbers":
        return cls(0, {Partition(()): Fraction(1)})

    def __getitem__(self, lam: Partition) -> Fraction:
        return self.values[lam]

    def items(self) -> Iterator[tuple[Partition, Fraction]]:
        for lam in enumerate_partitions(self.weight):
            yield lam, self.values[lam]


@lru_cache(maxsize=None)
def _p_monomial_in_chern(lam: Partition) -> dict[tuple[int, ...], Fraction]:
    # p_lambda as a polynomial in even Chern classes: index tuple -> coefficient
    ring = chern_ring(2 * max(lam.weight, 1))
    prod = ring.one()
    for part in lam:
        prod = prod * chern_to_pontryagin(part, ring)
    out: dict[tuple[int, ...], Fraction] = {}
    for mono, coef in prod.items():
        idx = []
        for i, e in enumerate(mono.exponents):
            idx.extend([i + 1] * e)
        if any(i % 2 for i in idx):
            continue
        out[tuple(idx)] = coef
    return out


def chern_numbers_to_pontryagin_numbers(rec: ChernDataRecord) -> PontryaginNumbers:
    values = {}
    for lam in enumerate_partitions(rec.n):
        total = Fraction(0)
        for idx, coef in _p_monomial_in_chern(lam).items():
            if idx not in rec.chern_numbers:
                raise ChernDataError(
                    f"Chern number {format_chern_key(idx)} needed for p_{lam} is missing", rec.n, "chern_numbers"
                )
            total += coef * rec.chern_numbers[idx]
        values[lam] = total
    return PontryaginNumbers(4 * rec.n, values)


def _splits(parts: Sequence[int], m: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    # every p_k(MxN) = sum_{a+b=k} p_a(M) p_b(N); choose a for each part
    if not parts:
        if m == 0:
            yield (), ()
        return
    head, rest = parts[0], parts[1:]
    room = sum(rest)
    for a in range(max(0, m - room), min(head, m) + 1):
        for left, right in _splits(rest, m - a):
            yield ((a,) if a else ()) + left, ((head - a,) if head - a else ()) + right


def product_pontryagin_numbers(a: PontryaginNumbers, b: PontryaginNumbers) -> PontryaginNumbers:
    """Pontryagin numbers of ``M x N`` from those of ``M`` and ``N``."""
    values = {}
    for lam in enumerate_partitions(a.weight + b.weight):
        total = Fraction(0)
        for left, right in _splits(lam.parts, a.weight):
            total += a[Partition.of(*left)] * b[Partition.of(*right)]
        values[lam] = total
    return PontryaginNumbers(a.dim + b.dim, values)


class HilbertData:
    """Pontryagin numbers of the ``K3^[n]`` available to a computation."""

    def __init__(self, numbers: Mapping[int, PontryaginNumbers], provenance: Sequence[str] = ()):
        for n, pn in numbers.items():
            if pn.dim != 4 * n:
                raise ValueError(f"numbers for K3^[{n}] have dimension {pn.dim}")
        self.numbers = dict(numbers)
        self.provenance = list(provenance)
        self._products: dict[Partition, PontryaginNumbers] = {}

    @classmethod
    def from_records(cls, records: Iterable[ChernDataRecord]) -> "HilbertData":
        records = sorted(records, key=lambda r: r.n)
        numbers = {r.n: chern_numbers_to_pontryagin_numbers(r) for r in records}
        provenance = [f"K3^[{r.n}]: {r.provenance}" for r in records]
        return cls(numbers, provenance)

    @classmethod
    def coerce(cls, data: "HilbertData | Iterable[ChernDataRecord]") -> "HilbertData":
        if isinstance(data, HilbertData):
            return data
        return cls.from_records(data)

    @property
    def available(self) -> list[int]:
        return sorted(self.numbers)

    def require(self, n: int) -> PontryaginNumbers:
        try:
            return self.numbers[n]
        except KeyError:
            raise MissingDataError(f"no Chern data for K3^[{n}] (available: {self.available})") from None

    def product_numbers(self, parts: Partition) -> PontryaginNumbers:
        """Pontryagin numbers of ``prod K3^[m_i]`` over the parts."""
        cached = self._products.get(parts)
        if cached is not None:
            return cached
        out = PontryaginNumbers.point()
        for m in parts:
            out = product_pontryagin_numbers(out, self.require(m))
        self._products[parts] = out
        return out


def functional_degree(x: Decoration | str, aux_power: int, lam: Partition) -> int:
    x = Decoration(x)
    aux_degree = {Decoration.r: 0, Decoration.c: 2, Decoration.h: 4}[x]
    return aux_degree * aux_power + 4 * lam.weight


def characteristic_number(
    m: ManifoldDescriptor,
    aux_power: int,
    lam: Partition,
    data: "HilbertData | Iterable[ChernDataRecord]",
) -> Fraction:
    """``int_M aux^k p_lambda(M)`` with ``aux`` = c1 (x = c) or p1 of Q (x = h).

    Factors as (torus integral of the auxiliary class) times
    (``int p_lambda`` over the Hilbert-scheme product).
    """
    if aux_power < 0:
        raise ValueError("aux_power must be non-negative")
    if m.decoration is Decoration.r and aux_power:
        raise ValueError("r-decorated manifolds carry no auxiliary class")
    data = HilbertData.coerce(data)
    k3 = data.product_numbers(m.k3_parts)
    if functional_degree(m.decoration, aux_power, lam) != m.dim:
        return Fraction(0)
    if m.decoration is Decoration.c:
        torus = c1_power_integral(m.torus_dim // 2, aux_power)
    elif m.decoration is Decoration.h:
        torus = p1_power_integral(m.torus_dim // 4, aux_power)
    else:
        torus = Fraction(1)
    if not torus:
        return Fraction(0)
    # a nonzero torus integral fills the torus, so p_lambda fills the rest
    assert lam.weight == m.k3_weight
    return torus * k3[lam]
