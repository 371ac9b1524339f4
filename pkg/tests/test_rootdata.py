from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusionflag.errors import ConsistencyError, DomainError
from fusionflag.rootdata import (
    GAMMA_CONSTANTS,
    Weight,
    bilinear,
    build_root_system,
    check_half_integer,
    coroot,
    even_dimension,
    is_dominant,
    kac_dimension,
)
from oracles import kac_dimension_n1, osp_dimension_via_restriction


def test_rank_one_roots():
    rs = build_root_system(1)
    assert [a.weight for a in rs.positive_even] == [Weight.of(2)]
    assert [a.weight for a in rs.positive_odd] == [Weight.of(1)]
    assert [a.weight for a in rs.simple] == [Weight.of(1)]
    assert rs.simple[0].is_odd


def test_rank_two_counts():
    rs = build_root_system(2)
    assert len(rs.positive_even) == 4
    assert len(rs.positive_odd) == 2
    assert {a.weight for a in rs.positive_even} == {
        Weight.of(1, -1),
        Weight.of(1, 1),
        Weight.of(2, 0),
        Weight.of(0, 2),
    }


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_root_counts_and_simple_parity(n):
    rs = build_root_system(n)
    assert len(rs.positive_even) == n * n
    assert len(rs.positive_odd) == n
    assert [a.is_odd for a in rs.simple] == [False] * (n - 1) + [True]
    assert rs.kac_root.weight == Weight.delta(n, n, 2)


def test_rho_rank_one():
    rs = build_root_system(1)
    assert rs.rho == Weight.of(Fraction(1, 2))
    assert rs.rho0 == Weight.of(1)


def test_rank_zero_rejected():
    with pytest.raises(DomainError):
        build_root_system(0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cartan_factorization(n):
    rs = build_root_system(n)
    for i in range(n):
        for j in range(n):
            assert rs.cartan_A[i][j] == rs.diag_D[i] * rs.sym_B[i][j]
            assert rs.sym_B[i][j] == rs.sym_B[j][i]
            # alpha_j(h_i) = a_{ij}
            assert rs.pairing(rs.simple[j].weight, i + 1) == rs.cartan_A[i][j]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_coroots_pair_to_two(n):
    rs = build_root_system(n)
    for a in rs.positive:
        assert coroot(rs, a).pair(a.weight) == 2


def test_coroot_of_simple_is_h1():
    rs = build_root_system(2)
    h = coroot(rs, Weight.of(1, -1))
    assert h.coeffs == (1, 0)


def test_coroot_rejects_non_root():
    with pytest.raises(DomainError):
        coroot(build_root_system(1), Weight.of(3))


def test_form_normalization():
    rs = build_root_system(3)
    for i in range(1, 4):
        for j in range(1, 4):
            assert bilinear(rs, Weight.delta(3, i), Weight.delta(3, j)) == (1 if i == j else 0)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=2, max_size=2))
def test_pairing_matches_form_ratio(coords):
    rs = build_root_system(2)
    lam = Weight(tuple(coords))
    for a in rs.positive_even:
        ratio = 2 * bilinear(rs, lam, a.weight) / bilinear(rs, a.weight, a.weight)
        assert coroot(rs, a).pair(lam) == ratio


@pytest.mark.parametrize("m", range(9))
def test_kac_dimension_rank_one(m):
    assert kac_dimension(build_root_system(1), Weight.of(m)) == kac_dimension_n1(m)


@pytest.mark.parametrize("n,m", [(n, m) for n in (1, 2, 3) for m in range(5)])
def test_kac_dimension_matches_restriction(n, m):
    assert kac_dimension(build_root_system(n), Weight.delta(n, 1, m)) == osp_dimension_via_restriction(n, m)


def test_kac_dimension_defining_rep():
    assert kac_dimension(build_root_system(2), Weight.of(1, 0)) == 5


def test_kac_dimension_rejects_non_dominant():
    with pytest.raises(DomainError):
        kac_dimension(build_root_system(2), Weight.of(0, 1))
    with pytest.raises(DomainError):
        kac_dimension(build_root_system(1), Weight.of(Fraction(1, 2)))


def test_even_dimension_values():
    assert even_dimension(1, 5) == 6
    assert even_dimension(2, 2) == 10
    assert even_dimension(3, 1) == 6


def test_even_system_weyl_formula():
    rs = build_root_system(2, even=True)
    for k in range(5):
        assert kac_dimension(rs, Weight.of(k, 0)) == even_dimension(2, k)


@settings(max_examples=30, deadline=None)
@given(
    st.tuples(st.integers(0, 3), st.integers(0, 3)).map(lambda t: (max(t), min(t))),
    st.tuples(st.integers(0, 3), st.integers(0, 3)).map(lambda t: (max(t), min(t))),
)
def test_kac_dimension_monotone(a, b):
    rs = build_root_system(2)
    lam, mu = Weight(a), Weight(b)
    assert kac_dimension(rs, lam + mu) >= kac_dimension(rs, lam)


def test_half_integer_examples():
    rs = build_root_system(1)
    rep = check_half_integer(rs, Weight.of(0))
    assert rep.ok and rep.values[rs.positive_even[0]] == 1
    rep = check_half_integer(rs, Weight.of(3))
    # 2 (3 + 1/2) delta_1(h_{2 delta_1}) with delta_1(h_{2 delta_1}) = 1
    assert rep.values[rs.positive_even[0]] == 7
    rep = check_half_integer(build_root_system(2), Weight.of(1, 1))
    assert rep.ok and len(rep.values) == 4


def test_is_dominant():
    assert is_dominant(Weight.of(2, 1, 0))
    assert not is_dominant(Weight.of(1, 2))
    assert not is_dominant(Weight.of(1, -1))


def test_gamma_table_is_data():
    assert GAMMA_CONSTANTS["B(m,n)"](0) == (1, 4)
    assert GAMMA_CONSTANTS["F(4)"]() == (9, -6)


def test_consistency_error_is_runtime_error():
    assert issubclass(ConsistencyError, RuntimeError)
