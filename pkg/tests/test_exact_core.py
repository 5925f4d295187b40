import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

import pytest
from hypothesis import given, settings, strategies as st

from exact_core import (
    Cyclotomic, IntMatrix, cyc_conjugate, cyc_normalize, degree_of, hermite_normal_form, kernel_basis,
    lattice_basis, lattice_index, same_lattice, smith_normal_form, snf_diagonal,
)


def test_cube_roots_sum_to_minus_one():
    z = Cyclotomic.root_of_unity(1, 3)
    assert z + z * z == Cyclotomic.rational(-1, 3)
    assert z ** 3 == 1


def test_normalize_reduces_full_period():
    # z^4 = 1 in Q(zeta_4)
    assert cyc_normalize([0, 0, 0, 0, 1], 4) == Cyclotomic.one(4)
    assert cyc_normalize([0, 0, 1], 4) == -1


def test_conjugate_of_i_is_minus_i():
    i = Cyclotomic.root_of_unity(1, 4)
    assert cyc_conjugate(i) == -i
    assert i * cyc_conjugate(i) == 1


def test_embedding_preserves_value():
    z3 = Cyclotomic.root_of_unity(1, 3)
    z6 = Cyclotomic.root_of_unity(2, 6)
    assert z3.embed(6) == z6
    assert z3 == z6


def test_rational_helpers():
    half = Cyclotomic.rational(1, 1) / 2
    assert half.is_rational()
    assert not half.is_integral()
    assert half.to_json() == "1/2"
    with pytest.raises(ValueError):
        int(half)
    with pytest.raises(ValueError):
        Cyclotomic.root_of_unity(1, 5).rational_value()


def test_equal_values_hash_equal():
    a = Cyclotomic.root_of_unity(1, 3) + Cyclotomic.root_of_unity(2, 3)
    assert hash(a) == hash(Cyclotomic.rational(-1, 3))


@given(st.integers(min_value=1, max_value=12).flatmap(
    lambda m: st.tuples(st.just(m), st.lists(st.integers(-5, 5), min_size=m, max_size=m))))
def test_conjugation_is_involution(data):
    m, raw = data
    z = cyc_normalize(raw, m)
    assert z.conjugate().conjugate() == z
    assert len(z.coeffs) == degree_of(m)


def test_smith_normal_form_transforms():
    A = IntMatrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    U, D, V = smith_normal_form(A)
    assert U @ A @ V == D
    assert snf_diagonal(A) == [2, 6, 12]


def test_snf_divisibility_chain():
    assert snf_diagonal(IntMatrix([[2, 4], [6, 8]])) == [2, 4]


def test_hermite_normal_form_transform():
    A = IntMatrix([[3, 1], [1, 3]])
    H, U = hermite_normal_form(A)
    assert H == A @ U
    assert abs(U.det()) == 1
    assert lattice_index(A) == 8


def _unimodular(ops, n):
    U = IntMatrix.identity(n)
    for i, j, c in ops:
        if i == j:
            continue
        E = IntMatrix.identity(n).tolist()
        E[i][j] = c
        U = U @ IntMatrix(E)
    return U


@settings(max_examples=50)
@given(st.lists(st.integers(-6, 6), min_size=9, max_size=9),
       st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(-3, 3)), max_size=6))
def test_hnf_invariant_under_change_of_basis(entries, ops):
    A = IntMatrix([entries[0:3], entries[3:6], entries[6:9]])
    U = _unimodular(ops, 3)
    assert lattice_basis(A) == lattice_basis(A @ U)


def test_lattice_membership():
    L = IntMatrix([[2, 0], [0, 2]])
    assert same_lattice(L, IntMatrix([[2, 2], [0, 2]]))
    assert not same_lattice(L, IntMatrix.identity(2))


def test_kernel_basis():
    A = IntMatrix([[1, 1, 2]])
    K = kernel_basis(A)
    assert K.cols == 2
    assert A @ K == IntMatrix.zeros(1, 2)


def test_inverse_unimodular():
    U = IntMatrix([[2, 1], [1, 1]])
    assert U @ U.inverse_unimodular() == IntMatrix.identity(2)
    with pytest.raises(ValueError):
        IntMatrix([[2, 0], [0, 1]]).inverse_unimodular()
