import json
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hkbordism.basis_certifier import (
    Functional,
    RankZeroDegree,
    build_matrix,
    certify_basis,
    check_block_triangular,
    diagonal_block_scalar,
    exact_determinant,
    format_fraction,
    gram_matrix,
    row_functionals,
    split_degree,
)
from hkbordism.manifold_catalog import HilbertData, MissingDataError, PontryaginNumbers
from hkbordism.partitions import Decoration, Partition, bordism_rank, partition_count

from oracles import cofactor_det, placeholder_data, random_rational_matrix

P = Partition.of


def entries(m):
    return [[int(v) for v in row] for row in m.entries]


def test_split_degree():
    assert split_degree("c", 10) == (2, 1)
    assert split_degree("h", 8) == (2, 0)
    with pytest.raises(RankZeroDegree):
        split_degree("r", 6)
    with pytest.raises(RankZeroDegree):
        split_degree("h", 2)


def test_row_labels():
    assert [f.label() for f in row_functionals("c", 6)] == ["c1^3", "c1 p_(1)"]
    assert [f.label() for f in row_functionals("h", 8)] == ["p1'^2", "p1' p_(1)", "p_(2)", "p_(1,1)"]
    assert [f.label() for f in row_functionals("r", 8)] == ["p_(2)", "p_(1,1)"]
    with pytest.raises(ValueError):
        Functional("r", 1, P())


def test_small_matrices(shipped_data):
    assert entries(build_matrix("c", 4, shipped_data)) == [[2, 0], [0, -48]]
    assert entries(build_matrix("r", 4, shipped_data)) == [[-48]]
    assert entries(build_matrix("c", 6, shipped_data)) == [[6, 0], [0, -48]]
    assert entries(build_matrix("h", 4, shipped_data)) == [[-4, 0], [0, -48]]
    assert entries(build_matrix("r", 8, shipped_data)) == [[1476, 2304], [3312, 4608]]


def test_block_sizes(shipped_data):
    assert build_matrix("c", 8, shipped_data).block_sizes == (1, 1, 2)
    assert build_matrix("r", 8, shipped_data).block_sizes == (2,)


def test_triangularity_report(shipped_data):
    m = build_matrix("c", 8, shipped_data)
    rep = check_block_triangular(m)
    assert rep.holds and rep.violations == ()
    assert set(rep.zero_blocks) == {(0, 1), (0, 2), (1, 2)}
    bad = m.with_entry(0, 3, 5)
    rep = check_block_triangular(bad)
    assert not rep.holds
    assert rep.violations == ((0, 3),)
    assert (0, 2) not in rep.zero_blocks
    # a single block has nothing above the diagonal
    assert check_block_triangular(build_matrix("r", 4, shipped_data)).holds


def test_determinant_examples():
    assert exact_determinant([]) == 1
    assert exact_determinant([[Fraction(3, 7)]]) == Fraction(3, 7)
    assert exact_determinant([[0, 1], [1, 0]]) == -1
    assert exact_determinant([[1, 2], [2, 4]]) == 0
    assert exact_determinant([[0, 0, 1], [0, 1, 0], [1, 0, 0]]) == -1
    assert exact_determinant([[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 4), Fraction(1, 5)]]) == Fraction(1, 60)
    with pytest.raises(ValueError):
        exact_determinant([[1, 2]])


def test_determinant_against_cofactor(rng):
    for _ in range(60):
        a = random_rational_matrix(rng, rng.randint(0, 6))
        assert exact_determinant(a) == cofactor_det(a)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.fractions(min_value=-50, max_value=50, max_denominator=9), min_size=n, max_size=n), min_size=n, max_size=n)
    )
)
def test_determinant_property(a):
    assert exact_determinant(a) == cofactor_det(a)


def test_diagonal_scalars():
    assert diagonal_block_scalar("r", 2, 2) == 1
    assert diagonal_block_scalar("c", 2, 0, 1) == 120
    assert diagonal_block_scalar("h", 1, 0) == -4
    assert diagonal_block_scalar("h", 3, 1) == 96
    for bad in [("r", 2, 1, 0), ("h", 2, 0, 1), ("c", 2, 3, 0), ("c", 2, 0, 2)]:
        with pytest.raises(ValueError):
            diagonal_block_scalar(*bad)


def test_gram_matrix(shipped_data):
    assert gram_matrix(0, shipped_data) == [[1]]
    assert gram_matrix(1, shipped_data) == [[-48]]
    g2 = gram_matrix(2, shipped_data)
    assert g2 == [[1476, 2304], [3312, 4608]]
    assert exact_determinant(g2) == -829440


@pytest.mark.parametrize(
    "x, degree, blocks, det",
    [
        ("r", 4, [-48], -48),
        ("r", 8, [-829440], -829440),
        ("c", 4, [2, -48], -96),
        ("c", 6, [6, -48], -288),
        ("c", 8, [24, -96, -829440], 1911029760),
        ("c", 10, [120, -288, -829440], 28665446400),
        ("h", 4, [-4, -48], 192),
        ("h", 8, [96, 192, -829440], -15288238080),
    ],
)
def test_certificates(shipped_data, x, degree, blocks, det):
    cert = certify_basis(x, degree, shipped_data)
    assert cert.passed
    assert cert.block_determinants == blocks
    assert cert.overall_determinant == det
    assert cert.rank_expected == cert.rank_columns == bordism_rank(x, degree)


def test_certificates_weight_three(shipped_data):
    for x, d in [("r", 12), ("c", 12), ("c", 14), ("h", 12)]:
        assert certify_basis(x, d, shipped_data).passed
    assert certify_basis("r", 12, shipped_data).overall_determinant == 8561413324800


def test_certificate_errors(k3_only):
    with pytest.raises(MissingDataError):
        certify_basis("c", 4, [])
    with pytest.raises(MissingDataError):
        certify_basis("r", 8, k3_only)
    with pytest.raises(RankZeroDegree):
        certify_basis("r", 6, k3_only)


def test_singular_data_fails_verdict():
    # K3 with vanishing Pontryagin numbers makes the weight-1 block zero
    data = HilbertData({1: PontryaginNumbers(4, {P(1): 0})})
    cert = certify_basis("c", 4, data)
    assert cert.verdict == "fail"
    assert cert.block_determinants == [2, 0]


def test_triangularity_with_placeholder_data(rng):
    for _ in range(10):
        data = placeholder_data(rng, 4)
        for x in ("c", "h"):
            for d in range(0, 17, 2):
                if bordism_rank(x, d):
                    assert check_block_triangular(build_matrix(x, d, data)).holds


def test_diagonal_factorisation_with_placeholder_data(rng):
    for _ in range(5):
        data = placeholder_data(rng, 3)
        for x, d in [("c", 12), ("c", 14), ("h", 12), ("r", 12)]:
            n, delta = split_degree(x, d)
            cert = certify_basis(x, d, data)
            m = cert.matrix
            weights = range(n + 1) if x != "r" else [n]
            for b, w in enumerate(weights):
                scalar = diagonal_block_scalar(x, n, w, delta)
                assert m.block(b, b) == [[scalar * v for v in row] for row in gram_matrix(w, data)]
            # the determinant is the product of the diagonal blocks
            prod = Fraction(1)
            for b in range(len(m.block_sizes)):
                prod *= cofactor_det(m.block(b, b)) if len(m.block(b, b)) <= 5 else exact_determinant(m.block(b, b))
            assert cert.overall_determinant == prod


def test_scalars_are_torus_integrals(shipped_data):
    for d in (4, 6, 8, 10, 12):
        cert = certify_basis("c", d, shipped_data)
        n, delta = split_degree("c", d)
        assert cert.diagonal_scalars == [factorial(2 * (n - m) + delta) for m in range(n + 1)]
    for d in (4, 8, 12):
        cert = certify_basis("h", d, shipped_data)
        n = d // 4
        assert cert.diagonal_scalars == [(-2) ** (n - m) * factorial(2 * (n - m)) for m in range(n + 1)]


def test_document(shipped_data):
    cert = certify_basis("c", 6, shipped_data)
    doc = cert.to_document(include_matrix=True)
    assert list(doc)[:12] == [
        "decoration", "degree", "side", "block_sizes", "block_determinants", "diagonal_scalars",
        "overall_determinant", "triangular_violations", "rank_expected", "rank_columns",
        "data_provenance", "verdict",
    ]
    assert doc["overall_determinant"] == "-288/1"
    assert doc["matrix"] == [["6/1", "0/1"], ["0/1", "-48/1"]]
    assert doc["columns"] == ["T^6_c", "T^2_c x K3^[1]"]
    assert json.loads(cert.to_json()) == cert.to_document()
    assert cert.to_json(True) == certify_basis("c", 6, shipped_data).to_json(True)


def test_format_fraction():
    assert format_fraction(-96) == "-96/1"
    assert format_fraction(Fraction(6, -4)) == "-3/2"


def test_rank_counts_match_blocks(shipped_data):
    for d in (4, 6, 8, 10, 12, 14):
        m = build_matrix("c", d, shipped_data)
        n = d // 4
        assert m.block_sizes == tuple(partition_count(k) for k in range(n + 1))
