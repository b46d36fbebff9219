from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tauhh import _kernels
from tauhh.linalg import (
    GF,
    QQ,
    Matrix,
    RowReducer,
    cokernel_dim,
    echelonize,
    field_from_name,
    kernel_basis,
    rank,
    rank_from_entries,
    rank_of_rows,
    solution_space_dim,
)


def test_identity_is_its_own_echelon_form():
    m = Matrix.identity(QQ, 4)
    ech = echelonize(m)
    assert ech.matrix == m
    assert ech.pivots == (0, 1, 2, 3)
    assert ech.rank == 4


def test_zero_matrix_has_rank_zero():
    m = Matrix.zero(QQ, 3, 5)
    ech = echelonize(m)
    assert ech.rank == 0
    assert ech.pivots == ()
    assert rank(m) == 0


def test_dependent_rows_over_q():
    m = Matrix.from_rows(QQ, [[1, 2], [2, 4]])
    ech = echelonize(m)
    assert ech.rank == 1
    assert ech.pivots == (0,)
    assert ech.matrix.entries[0] == (Fraction(1), Fraction(2))
    assert ech.matrix.entries[1] == (Fraction(0), Fraction(0))


def test_kernel_over_f2():
    m = Matrix.from_rows(GF(2), [[1, 1]])
    assert kernel_basis(m) == [(1, 1)]


def test_cokernel_of_column_vector_over_q():
    m = Matrix.from_rows(QQ, [[1], [-1]])
    assert cokernel_dim(m) == 1


def test_solution_space_dim():
    m = Matrix.from_rows(QQ, [[1, 2, 3], [0, 0, 1]])
    assert solution_space_dim(m) == 1
    assert kernel_basis(m) == [(Fraction(-2), Fraction(1), Fraction(0))]


def test_echelonize_is_idempotent():
    m = Matrix.from_rows(QQ, [[2, 4, 1], [1, 2, 3], [0, 1, 1]])
    e1 = echelonize(m)
    e2 = echelonize(e1.matrix)
    assert e1.matrix == e2.matrix
    assert e1.pivots == e2.pivots


def test_fractional_entries_are_exact():
    m = Matrix.from_rows(QQ, [[Fraction(1, 3), Fraction(1, 6)], [2, 1]])
    assert rank(m) == 1
    (v,) = kernel_basis(m)
    assert v == (Fraction(-1, 2), Fraction(1))


def test_prime_field_validates_primality():
    with pytest.raises(ValueError):
        GF(6)


def test_field_from_name():
    assert field_from_name("q") is QQ
    assert field_from_name("fp:5") is GF(5)
    assert field_from_name("F3") is GF(3)
    with pytest.raises(ValueError):
        field_from_name("fp:4t")


def _brute_force_kernel(p: int, rows: list[list[int]]) -> set[tuple[int, ...]]:
    ncols = len(rows[0])
    out = set()
    for v in itertools.product(range(p), repeat=ncols):
        if all(sum(r[j] * v[j] for j in range(ncols)) % p == 0 for r in rows):
            out.add(v)
    return out


@pytest.mark.parametrize("p", [2, 3])
def test_kernel_matches_brute_force_over_small_prime_fields(p):
    rng = np.random.default_rng(12345 + p)
    for _ in range(25):
        nrows = int(rng.integers(1, 4))
        ncols = int(rng.integers(1, 13 // nrows))
        rows = [[int(x) for x in rng.integers(0, p, ncols)] for _ in range(nrows)]
        m = Matrix.from_rows(GF(p), rows)
        basis = kernel_basis(m)
        # brute-force span of the reported basis
        span = set()
        for coeffs in itertools.product(range(p), repeat=len(basis)):
            v = tuple(
                sum(c * b[j] for c, b in zip(coeffs, basis)) % p
                for j in range(ncols)
            )
            span.add(v)
        assert span == _brute_force_kernel(p, rows)


scalars = st.integers(-9, 9)


@given(
    st.integers(1, 5),
    st.integers(1, 5),
    st.data(),
)
@settings(max_examples=40, deadline=None)
def test_rank_nullity_over_q(nrows, ncols, data):
    rows = data.draw(
        st.lists(
            st.lists(scalars, min_size=ncols, max_size=ncols),
            min_size=nrows,
            max_size=nrows,
        )
    )
    m = Matrix.from_rows(QQ, rows)
    assert rank(m) + len(kernel_basis(m)) == ncols
    for v in kernel_basis(m):
        for row in m.entries:
            assert sum(a * b for a, b in zip(row, v)) == 0


@given(st.integers(1, 5), st.integers(1, 5), st.data())
@settings(max_examples=40, deadline=None)
def test_fast_rank_agrees_with_exact_rank(nrows, ncols, data):
    rows = data.draw(
        st.lists(
            st.lists(scalars, min_size=ncols, max_size=ncols),
            min_size=nrows,
            max_size=nrows,
        )
    )
    m = Matrix.from_rows(QQ, rows)
    assert rank(m) == echelonize(m).rank
    m3 = Matrix.from_rows(GF(3), rows)
    assert rank(m3) == echelonize(m3).rank


def test_both_kernel_lanes_agree():
    rng = np.random.default_rng(7)
    for _ in range(30):
        a = rng.integers(-20, 20, size=(int(rng.integers(1, 8)), int(rng.integers(1, 8))))
        a = a.astype(np.int64)
        r_np = _kernels.rank_int64_numpy(a)
        r_sel = _kernels.rank_int64(a.copy())
        assert r_np == r_sel
        p = 5
        assert _kernels.rank_modp_numpy(a, p) == _kernels.rank_modp(a.copy(), p)


def test_int64_lane_overflow_falls_back_to_exact():
    big = Fraction(1, (1 << 50))
    rows = [[big, 1], [1, big]]
    assert rank_of_rows(QQ, rows) == 2


def test_rank_from_entries_sparse():
    items = [(0, 0, Fraction(1)), (1, 1, Fraction(2)), (2, 0, Fraction(3))]
    assert rank_from_entries(QQ, 3, 2, items) == 2
    items_p = [(0, 0, 1), (1, 0, 2)]
    assert rank_from_entries(GF(3), 2, 2, items_p) == 1


def test_row_reducer_tracks_span():
    red = RowReducer(QQ, 3)
    assert red.add([Fraction(1), Fraction(2), Fraction(0)]) == 0
    assert red.add([Fraction(2), Fraction(4), Fraction(0)]) is None
    assert red.add([Fraction(0), Fraction(0), Fraction(5)]) == 2
    assert red.dim == 2
    assert red.contains([Fraction(3), Fraction(6), Fraction(7)])
    coords = red.coordinates([Fraction(3), Fraction(6), Fraction(7)])
    assert coords == [Fraction(3), Fraction(7)]
    assert red.coordinates([Fraction(0), Fraction(1), Fraction(0)]) is None
