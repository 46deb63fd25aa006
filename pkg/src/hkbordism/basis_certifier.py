"""Linear-independence certificates for the bases ``B^x_degree``.

Rows of the certificate matrix are the functionals ``aux^(k) p_lambda``
(``aux`` = ``c1`` for x = c, ``p1`` of the SU(2)-bundle for x = h, absent for
x = r); columns are the basis manifolds.  Both axes are ordered by K3-weight
blocks ``P(0), ..., P(n)`` and, within a block, by canonical partition order.
Entries above the diagonal blocks vanish for degree reasons; each diagonal
block is a torus integral times the Pontryagin-number matrix of the
Hilbert-scheme products of that weight.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, lcm
from typing import Any, Iterable, Sequence

from .manifold_catalog import (
    ChernDataRecord,
    HilbertData,
    ManifoldDescriptor,
    basis_elements,
    characteristic_number,
    functional_degree,
)
from .partitions import Decoration, Partition, bordism_rank, enumerate_partitions, partition_count

__all__ = [
    "Functional",
    "CertMatrix",
    "TriangularityReport",
    "Certificate",
    "RankZeroDegree",
    "CertificateInconsistency",
    "split_degree",
    "row_functionals",
    "build_matrix",
    "check_block_triangular",
    "exact_determinant",
    "diagonal_block_scalar",
    "gram_matrix",
    "certify_basis",
    "format_fraction",
]


class RankZeroDegree(ValueError):
    """The requested degree has rank 0; there is nothing to certify."""


class CertificateInconsistency(RuntimeError):
    """Two computations that must agree did not."""


def format_fraction(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Functional:
    decoration: Decoration
    aux_power: int
    partition: Partition

    def __post_init__(self) -> None:
        object.__setattr__(self, "decoration", Decoration(self.decoration))
        if self.aux_power < 0:
            raise ValueError("aux_power must be non-negative")
        if self.decoration is Decoration.r and self.aux_power:
            raise ValueError("r-functionals have no auxiliary class")

    @property
    def degree(self) -> int:
        return functional_degree(self.decoration, self.aux_power, self.partition)

    def label(self) -> str:
        aux = {Decoration.c: "c1", Decoration.h: "p1'", Decoration.r: ""}[self.decoration]
        pieces = []
        if self.aux_power == 1:
            pieces.append(aux)
        elif self.aux_power > 1:
            pieces.append(f"{aux}^{self.aux_power}")
        if self.partition.weight:
            pieces.append(f"p_{self.partition}")
        return " ".join(pieces) if pieces else "1"

    def __str__(self) -> str:
        return self.label()


def split_degree(x: Decoration | str, degree: int) -> tuple[int, int]:
    """``degree = 4n + 2*delta``; returns ``(n, delta)`` or raises for rank-0 degrees."""
    x = Decoration(x)
    if bordism_rank(x, degree) == 0:
        raise RankZeroDegree(f"rank 0 in degree {degree} for x = {x.value}")
    n, rem = divmod(degree, 4)
    return n, rem // 2


def row_functionals(x: Decoration | str, degree: int) -> list[Functional]:
    x = Decoration(x)
    n, delta = split_degree(x, degree)
    if x is Decoration.r:
        return [Functional(x, 0, lam) for lam in enumerate_partitions(n)]
    rows = []
    for m in range(n + 1):
        aux = 2 * (n - m) + delta if x is Decoration.c else n - m
        rows.extend(Functional(x, aux, lam) for lam in enumerate_partitions(m))
    return rows


@dataclass(frozen=True)
class CertMatrix:
    decoration: Decoration
    degree: int
    entries: tuple[tuple[Fraction, ...], ...]
    row_labels: tuple[Functional, ...]
    col_labels: tuple[ManifoldDescriptor, ...]
    block_sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        side = len(self.entries)
        if any(len(row) != side for row in self.entries):
            raise ValueError("certificate matrix must be square")
        if len(self.row_labels) != side or len(self.col_labels) != side:
            raise ValueError("labels do not match matrix size")
        if sum(self.block_sizes) != side:
            raise ValueError("block sizes do not sum to the side length")

    @property
    def side(self) -> int:
        return len(self.entries)

    def block_offsets(self) -> list[int]:
        out = [0]
        for s in self.block_sizes:
            out.append(out[-1] + s)
        return out

    def block(self, i: int, j: int) -> list[list[Fraction]]:
        off = self.block_offsets()
        return [list(row[off[j] : off[j + 1]]) for row in self.entries[off[i] : off[i + 1]]]

    def with_entry(self, row: int, col: int, value: Fraction | int) -> "CertMatrix":
        """Copy with one entry replaced (used for negative controls)."""
        entries = [list(r) for r in self.entries]
        entries[row][col] = Fraction(value)
        return CertMatrix(
            self.decoration,
            self.degree,
            tuple(tuple(r) for r in entries),
            self.row_labels,
            self.col_labels,
            self.block_sizes,
        )


def _block_sizes(x: Decoration, n: int) -> tuple[int, ...]:
    if x is Decoration.r:
        return (partition_count(n),)
    return tuple(partition_count(m) for m in range(n + 1))


def build_matrix(
    x: Decoration | str,
    degree: int,
    data: HilbertData | Iterable[ChernDataRecord],
) -> CertMatrix:
    x = Decoration(x)
    n, _ = split_degree(x, degree)
    data = HilbertData.coerce(data)
    rows = row_functionals(x, degree)
    cols = basis_elements(x, degree)
    entries = tuple(
        tuple(characteristic_number(col, f.aux_power, f.partition, data) for col in cols) for f in rows
    )
    return CertMatrix(x, degree, entries, tuple(rows), tuple(cols), _block_sizes(x, n))


@dataclass(frozen=True)
class TriangularityReport:
    holds: bool
    violations: tuple[tuple[int, int], ...]
    zero_blocks: tuple[tuple[int, int], ...]

    def __bool__(self) -> bool:
        return self.holds


def check_block_triangular(m: CertMatrix) -> TriangularityReport:
    """Every entry in block (i, j) with i < j must be exactly zero."""
    off = m.block_offsets()
    nb = len(m.block_sizes)
    violations = []
    zero_blocks = []
    for i in range(nb):
        for j in range(i + 1, nb):
            clean = True
            for r in range(off[i], off[i + 1]):
                for c in range(off[j], off[j + 1]):
                    if m.entries[r][c] != 0:
                        violations.append((r, c))
                        clean = False
            if clean:
                zero_blocks.append((i, j))
    return TriangularityReport(not violations, tuple(violations), tuple(zero_blocks))


def exact_determinant(m: CertMatrix | Sequence[Sequence[Fraction | int]]) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination.

    Rows are first scaled to integers; the scale factors are divided out at
    the end.
    """
    rows = m.entries if isinstance(m, CertMatrix) else m
    size = len(rows)
    if any(len(r) != size for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if size == 0:
        return Fraction(1)
    scale = Fraction(1)
    a: list[list[int]] = []
    for row in rows:
        fr = [Fraction(v) for v in row]
        d = lcm(*(v.denominator for v in fr))
        scale *= d
        a.append([int(v * d) for v in fr])
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            for i in range(k + 1, size):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = a[k][k]
        for i in range(k + 1, size):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, size):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return Fraction(sign * a[size - 1][size - 1]) / scale


def diagonal_block_scalar(x: Decoration | str, n: int, m: int, delta: int = 0) -> Fraction:
    """Torus integral multiplying the weight-m diagonal block in degree 4n + 2*delta."""
    x = Decoration(x)
    if not 0 <= m <= n:
        raise ValueError("need 0 <= m <= n")
    if delta not in (0, 1):
        raise ValueError("delta must be 0 or 1")
    if x is Decoration.c:
        return Fraction(factorial(2 * (n - m) + delta))
    if delta:
        raise ValueError(f"delta = 1 is only meaningful for x = c, not {x.value}")
    if x is Decoration.h:
        return Fraction((-2) ** (n - m) * factorial(2 * (n - m)))
    if m != n:
        raise ValueError("x = r has a single block, m = n")
    return Fraction(1)


def gram_matrix(m: int, data: HilbertData | Iterable[ChernDataRecord]) -> list[list[Fraction]]:
    """``int p_lambda`` over ``prod K3^[mu_i]`` for lambda, mu in P(m)."""
    data = HilbertData.coerce(data)
    parts = enumerate_partitions(m)
    cols = [data.product_numbers(mu) for mu in parts]
    return [[col[lam] for col in cols] for lam in parts]


@dataclass
class Certificate:
    decoration: Decoration
    degree: int
    matrix: CertMatrix | None
    block_triangular: bool
    triangular_violations: list[tuple[int, int]]
    zero_blocks: list[tuple[int, int]]
    block_determinants: list[Fraction]
    diagonal_scalars: list[Fraction]
    overall_determinant: Fraction
    rank_expected: int
    rank_columns: int
    data_provenance: list[str] = field(default_factory=list)

    @property
    def rank_match(self) -> bool:
        side = self.matrix.side if self.matrix is not None else self.rank_columns
        return self.rank_expected == self.rank_columns == side

    @property
    def verdict(self) -> str:
        ok = self.rank_match and self.block_triangular and all(d != 0 for d in self.block_determinants)
        return "pass" if ok else "fail"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_document(self, include_matrix: bool = False) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "decoration": self.decoration.value,
            "degree": self.degree,
            "side": self.rank_columns,
            "block_sizes": list(self.matrix.block_sizes) if self.matrix is not None else [],
            "block_determinants": [format_fraction(d) for d in self.block_determinants],
            "diagonal_scalars": [format_fraction(s) for s in self.diagonal_scalars],
            "overall_determinant": format_fraction(self.overall_determinant),
            "triangular_violations": [list(v) for v in self.triangular_violations],
            "rank_expected": self.rank_expected,
            "rank_columns": self.rank_columns,
            "data_provenance": list(self.data_provenance),
            "verdict": self.verdict,
        }
        if include_matrix and self.matrix is not None:
            doc["rows"] = [f.label() for f in self.matrix.row_labels]
            doc["columns"] = [c.label() for c in self.matrix.col_labels]
            doc["matrix"] = [[format_fraction(v) for v in row] for row in self.matrix.entries]
        return doc

    def to_json(self, include_matrix: bool = False) -> str:
        return json.dumps(self.to_document(include_matrix), indent=2) + "\n"


def certify_basis(
    x: Decoration | str,
    degree: int,
    data: HilbertData | Iterable[ChernDataRecord],
) -> Certificate:
    """Build, check and summarise the certificate for ``B^x_degree``.

    Raises :class:`RankZeroDegree` or a data error when there is nothing to
    certify, and :class:`CertificateInconsistency` when internal cross-checks
    disagree.  A failing verdict is returned, not raised.
    """
    x = Decoration(x)
    n, delta = split_degree(x, degree)
    data = HilbertData.coerce(data)
    mat = build_matrix(x, degree, data)
    tri = check_block_triangular(mat)

    nb = len(mat.block_sizes)
    weights = [n] if x is Decoration.r else list(range(n + 1))
    block_dets = []
    scalars = []
    for b, m in enumerate(weights):
        block = mat.block(b, b)
        scalar = diagonal_block_scalar(x, n, m, delta)
        gram = gram_matrix(m, data)
        expected = [[scalar * v for v in row] for row in gram]
        if block != expected:
            raise CertificateInconsistency(
                f"diagonal block {b} of B^{x.value}_{degree} is not {format_fraction(scalar)} times the Gram matrix"
            )
        scalars.append(scalar)
        block_dets.append(exact_determinant(block))

    overall = exact_determinant(mat)
    product = Fraction(1)
    for d in block_dets:
        product *= d
    if tri.holds and overall != product:
        raise CertificateInconsistency(
            f"determinant {format_fraction(overall)} differs from block product {format_fraction(product)}"
        )
    assert nb == len(block_dets)

    return Certificate(
        decoration=x,
        degree=degree,
        matrix=mat,
        block_triangular=tri.holds,
        triangular_violations=list(tri.violations),
        zero_blocks=list(tri.zero_blocks),
        block_determinants=block_dets,
        diagonal_scalars=scalars,
        overall_determinant=overall,
        rank_expected=bordism_rank(x, degree),
        rank_columns=len(mat.col_labels),
        data_provenance=list(data.provenance),
    )
