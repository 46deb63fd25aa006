"""Fast invariant checks run by ``hkbordism selftest``."""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable

from .basis_certifier import certify_basis
from .char_calculus import abstract_ring, chern_to_pontryagin, newton_girard, verify_s_identity
from .manifold_catalog import (
    K3_SIGNATURE,
    basis_elements,
    chern_numbers_to_pontryagin_numbers,
    load_default_data,
)
from .partitions import Decoration, Partition, bordism_rank, enumerate_partitions, partition_count
from .torus_models import c1_power_integral, q_bundle_integral, q_bundle_integral_closed_form


def _factorial_integrals() -> bool:
    return all(c1_power_integral(n, n) == factorial(n) for n in range(9))


def _newton_recurrence() -> bool:
    for k in range(1, 9):
        ring = abstract_ring(k)
        rec = ring.term((-1) ** (k - 1) * k, {f"x{k}": 1})
        for i in range(1, k):
            rec = rec + ring.gen(f"x{i}") * ring.include(newton_girard(k - i)).scale((-1) ** (i - 1))
        if rec != newton_girard(k):
            return False
    return True


def _s_identity() -> bool:
    return all(verify_s_identity(k).holds for k in range(1, 6))


def _pontryagin_signs() -> bool:
    for k in range(1, 7):
        p = chern_to_pontryagin(k)
        ring = p.ring
        if not p.is_homogeneous(4 * k):
            return False
        if p.coefficient(ring.monomial({f"c{k}": 2})) != 1:
            return False
        if p.coefficient(ring.monomial({f"c{2 * k}": 1})) != 2 * (-1) ** k:
            return False
    return True


def _su2_integrals() -> bool:
    return all(q_bundle_integral(n) == q_bundle_integral_closed_form(n) != 0 for n in range(5))


def _ranks() -> bool:
    for x in Decoration:
        for d in range(41):
            if bordism_rank(x, d) != len(basis_elements(x, d)):
                return False
    return all(len(enumerate_partitions(n)) == partition_count(n) for n in range(31))


def _k3_two_path() -> bool:
    rec = next(r for r in load_default_data() if r.n == 1)
    return chern_numbers_to_pontryagin_numbers(rec)[Partition((1,))] == 3 * K3_SIGNATURE


def _certificates() -> bool:
    data = load_default_data()
    cases = [("r", 4), ("r", 8), ("c", 4), ("c", 6), ("c", 8), ("c", 10), ("h", 4), ("h", 8)]
    return all(certify_basis(x, d, data).passed for x, d in cases)


CHECKS: list[tuple[str, Callable[[], bool]]] = [
    ("factorial torus integrals, n <= 8", _factorial_integrals),
    ("Newton recurrence, k <= 8", _newton_recurrence),
    ("s_k(p) == s_2k(c), k <= 5", _s_identity),
    ("p_k in Chern classes: degree and signs", _pontryagin_signs),
    ("SU(2) torus integrals, n <= 4", _su2_integrals),
    ("ranks equal basis sizes, degree <= 40", _ranks),
    ("K3: p_(1) == 3 * signature", _k3_two_path),
    ("certificates with shipped data", _certificates),
]


def run() -> list[tuple[str, bool]]:
    results = []
    for name, check in CHECKS:
        try:
            ok = bool(check())
        except Exception:  # a crash is a failed check
            ok = False
        results.append((name, ok))
    return results
