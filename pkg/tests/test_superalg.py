import random
from fractions import Fraction

import pytest

from fusionflag.rootdata import Weight, build_root_system, coroot
from fusionflag.superalg import (
    SuperMatrix,
    bracket,
    constants_csv,
    gen_h,
    gen_x,
    in_algebra,
    matrix_realization,
    random_element,
    root_vector,
    spot_check_identities,
    structure_constants,
    verify_chevalley,
)


def entries(m: SuperMatrix, pairs):
    """Matrix with the given {(row label, col label): value} in the 0,1..n,-1..-n order."""
    size = m.size
    n = (size - 1) // 2
    order = [0] + list(range(1, n + 1)) + [-i for i in range(1, n + 1)]
    pos = {lab: i for i, lab in enumerate(order)}
    out = SuperMatrix.zero(m.index_parity)
    for (a, b), v in pairs.items():
        out.entries[pos[a], pos[b]] = Fraction(v)
    return out


def test_rank_one_generators():
    B = matrix_realization(1)
    xm = B.x(Weight.of(-1))
    assert xm == entries(xm, {(-1, 0): 1, (0, 1): 1})
    xp = B.x(Weight.of(1))
    assert xp.ratio_to(entries(xp, {(1, 0): 1, (0, -1): -1})) not in (None, 0)
    h = bracket(xp, xm)
    assert h == B.h(1)
    assert h == entries(h, {(1, 1): 2, (-1, -1): -2})


@pytest.mark.parametrize("n", [1, 2, 3])
def test_chevalley_axioms(n):
    assert verify_chevalley(matrix_realization(n)) == []
    assert verify_chevalley(matrix_realization(n, even=True)) == []


@pytest.mark.parametrize("n", [1, 2, 3])
def test_integer_structure_constants(n):
    B = matrix_realization(n)
    assert B.constants
    assert all(Fraction(c).denominator == 1 and c != 0 for c in B.constants.values())
    assert structure_constants(B) == B.constants


def test_rank_one_constants_frozen():
    B = matrix_realization(1)
    c = {(a[1], b[1]): v for (a, b), v in B.constants.items()}
    assert c[((-1,), (-1,))] == 4
    assert c[((1,), (1,))] == -4
    assert c[((-2,), (1,))] == 1


def test_odd_square_gives_even_root_vector():
    B = matrix_realization(1)
    xm = B.x(Weight.of(-1))
    sq = bracket(xm, xm)
    assert not sq.is_zero()
    assert sq.ratio_to(B.x(Weight.of(-2))) == 4


def test_perturbed_basis_fails():
    B = matrix_realization(2)
    g = gen_x(Weight.of(1, 1))
    B.elements[g] = B.elements[g].scale(Fraction(1, 2))
    assert verify_chevalley(B)


@pytest.mark.parametrize("n", [1, 2])
def test_cartan_commutes(n):
    B = matrix_realization(n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            assert bracket(B.h(i), B.h(j)).is_zero()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sl2_triples(n):
    B = matrix_realization(n)
    rs = build_root_system(n)
    for a in rs.positive_even:
        xp, xm = B.x(a.weight), B.x(-a.weight)
        h = B.cartan_matrix(coroot(rs, a).coeffs)
        assert bracket(xp, xm) == h
        assert bracket(h, xp) == xp.scale(2)
        assert bracket(h, xm) == xm.scale(-2)


def test_root_vector_parity_and_weight():
    B = matrix_realization(2)
    rs = B.rs
    assert root_vector(B, Weight.of(1, 0)).parity == "odd"
    assert root_vector(B, Weight.of(2, 0)).parity == "even"
    for a in rs.roots:
        x = root_vector(B, a)
        for i in range(1, 3):
            assert bracket(B.h(i), x) == x.scale(rs.pairing(a.weight, i))


def test_root_vector_2delta_proportional_to_square():
    B = matrix_realization(1)
    x = B.x(Weight.of(1))
    assert root_vector(B, Weight.of(2)).ratio_to(bracket(x, x)) is not None


def test_bracket_even_self_is_zero():
    B = matrix_realization(2)
    x = B.x(Weight.of(1, -1))
    assert bracket(x, x).is_zero()


@pytest.mark.parametrize("n,seed", [(1, 0), (2, 1), (3, 2)])
def test_jacobi_and_supertrace(n, seed):
    assert spot_check_identities(matrix_realization(n), random.Random(seed), 6) == []


def test_random_elements_in_algebra():
    B = matrix_realization(2)
    rng = random.Random(5)
    for parity in ("even", "odd"):
        x = random_element(B, rng, parity)
        assert in_algebra(x, 2)
        assert x.parity in (parity, "zero")


def test_constants_csv_header():
    text = constants_csv(matrix_realization(1))
    assert text.splitlines()[0] == "alpha,beta,c"
    assert len(text.splitlines()) == 7


def test_generator_ids():
    B = matrix_realization(2)
    assert gen_h(1) in B.elements and gen_x(Weight.of(-1, 0)) in B.elements
    assert len(B.elements) == 2 * 6 + 2
