"""Exact integer linear algebra: Smith form, cokernels, membership."""

import pytest
from hypothesis import given, settings, strategies as st

from bundlesec.zlinalg import (
    AbelianGroup,
    IntMatrix,
    cokernel,
    direct_sum,
    invariant_factors_by_minors,
    kernel_basis,
    quotient_class,
    smith_normal_form,
    solve,
    submodule_membership,
)

small_entries = st.integers(min_value=-9, max_value=9)


@st.composite
def matrices(draw, max_dim=4):
    r = draw(st.integers(min_value=1, max_value=max_dim))
    c = draw(st.integers(min_value=1, max_value=max_dim))
    rows = draw(st.lists(
        st.lists(small_entries, min_size=c, max_size=c), min_size=r, max_size=r))
    return IntMatrix.from_rows(rows)


def test_smith_worked_example():
    m = IntMatrix.from_rows([[2, 4], [-2, 6]])
    dec = smith_normal_form(m)
    assert dec.diagonal() == (2, 10)
    assert dec.U @ m @ dec.V == dec.D


def test_smith_zero_and_identity():
    assert smith_normal_form(IntMatrix.zeros(3, 2)).diagonal() == (0, 0)
    assert smith_normal_form(IntMatrix.identity(3)).diagonal() == (1, 1, 1)


@settings(max_examples=200, derandomize=True)
@given(matrices())
def test_smith_decomposition_invariants(m):
    dec = smith_normal_form(m)
    assert dec.U @ m @ dec.V == dec.D
    assert dec.U.is_unimodular()
    assert dec.V.is_unimodular()
    diag = dec.diagonal()
    for i in range(dec.D.rows):
        for j in range(dec.D.cols):
            if i != j:
                assert dec.D.data[i][j] == 0
    for d in diag:
        assert d >= 0
    nonzero = [d for d in diag if d != 0]
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    # zeros trail the nonzero entries
    assert list(diag) == nonzero + [0] * (len(diag) - len(nonzero))


@settings(max_examples=200, derandomize=True)
@given(matrices(max_dim=3))
def test_smith_matches_minor_gcds(m):
    dec = smith_normal_form(m)
    expected = invariant_factors_by_minors(m)
    got = tuple(d for d in dec.diagonal() if d != 0)
    assert got == expected


def test_determinant_against_cofactor_expansion():
    def cofactor(m):
        n = m.rows
        if n == 1:
            return m.data[0][0]
        total = 0
        for j in range(n):
            minor = IntMatrix.from_rows(
                [[m.data[i][k] for k in range(n) if k != j] for i in range(1, n)])
            total += (-1) ** j * m.data[0][j] * cofactor(minor)
        return total

    import random
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(1, 4)
        m = IntMatrix.from_rows(
            [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)])
        assert m.determinant() == cofactor(m)


@settings(max_examples=100, derandomize=True)
@given(matrices())
def test_kernel_basis_annihilated(m):
    for v in kernel_basis(m):
        assert m.apply(v) == tuple(0 for _ in range(m.rows))


@settings(max_examples=100, derandomize=True)
@given(matrices(), st.lists(small_entries, min_size=4, max_size=4))
def test_solve_finds_constructed_solutions(m, raw):
    w = tuple(raw[: m.cols])
    v = m.apply(w)
    x = solve(m, v)
    assert x is not None
    assert m.apply(x) == v


def test_solve_detects_unsolvable():
    m = IntMatrix.from_rows([[2]])
    assert solve(m, (1,)) is None
    assert solve(m, (4,)) == (2,)


def test_cokernel_examples():
    assert str(cokernel(IntMatrix.from_rows([[2, 4], [-2, 6]]))) == "Z/2 + Z/10"
    assert str(cokernel(IntMatrix.zeros(2, 1))) == "Z^2"
    assert str(cokernel(IntMatrix.identity(3))) == "0"
    kb = cokernel(IntMatrix.from_rows([[0], [2]]))
    assert str(kb) == "Z + Z/2"


@settings(max_examples=100, derandomize=True)
@given(matrices(), st.lists(small_entries, min_size=4, max_size=4),
       st.lists(small_entries, min_size=4, max_size=4))
def test_projection_kills_the_image(m, raw_v, raw_w):
    group = cokernel(m)
    v = tuple(raw_v[: m.rows])
    w = tuple(raw_w[: m.cols])
    shifted = tuple(a + b for a, b in zip(v, m.apply(w)))
    assert group.project(v) == group.project(shifted)


def test_membership_and_quotient_class():
    gens = [(2, 0), (0, 3)]
    ok, witness = submodule_membership(gens, (4, -3))
    assert ok and witness is not None
    ok, _ = submodule_membership(gens, (1, 0))
    assert not ok
    assert any(c != 0 for c in quotient_class((1, 1), gens))
    assert all(c == 0 for c in quotient_class((2, 3), gens))


def test_direct_sum_merges_factors():
    a = cokernel(IntMatrix.from_rows([[2]]))
    b = cokernel(IntMatrix.from_rows([[3]]))
    assert direct_sum(a, b).invariant_factors == (6,)
    free = cokernel(IntMatrix.zeros(1, 1))
    assert str(direct_sum(a, free)) == "Z + Z/2"


def test_abelian_group_validation():
    with pytest.raises(ValueError):
        AbelianGroup((1,), IntMatrix.zeros(1, 1))
    with pytest.raises(ValueError):
        AbelianGroup((4, 2), IntMatrix.zeros(2, 2))
    with pytest.raises(ValueError):
        AbelianGroup((0, 2), IntMatrix.zeros(2, 2))


@settings(max_examples=100, derandomize=True)
@given(matrices())
def test_unimodular_inverse(m):
    dec = smith_normal_form(m)
    for mat in (dec.U, dec.V):
        inv = mat.inverse_unimodular()
        assert (mat @ inv).is_identity()
        assert (inv @ mat).is_identity()
