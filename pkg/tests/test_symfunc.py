import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

import pytest

from partitions import Partition, partitions_of
from symfunc import (
    MissingAssignment, X, Y, cauchy_oracle, cauchy_p, complete_in_e, evaluate, newton_poly, schur_by_duality,
    schur_in_e, schur_in_h, schur_via_pieri,
    sym_cauchy_q, verify_cauchy_oracle, verify_newton_cauchy, verify_q_specialization, verify_schur_pieri,
)


def test_newton_examples():
    assert newton_poly(1).poly == X(1)
    assert newton_poly(2).poly == X(1) ** 2 - 2 * X(2)
    assert newton_poly(2, 'h').poly == 2 * X(2) - X(1) ** 2


def test_newton_is_homogeneous():
    for i in range(1, 7):
        expr = newton_poly(i)
        assert expr.is_homogeneous()
        assert expr.weights() == {(i, 0)}


def test_schur_examples():
    assert schur_in_e(Partition((1,))).poly == X(1)
    for k in range(1, 5):
        assert schur_in_e(Partition((k,))).poly == X(k)
    assert schur_in_e(Partition((1, 1))).poly == X(1) ** 2 - X(2)


def test_cauchy_examples():
    assert cauchy_p(1).poly == X(1) * Y(1)
    assert cauchy_p(2).poly == X(1) ** 2 * Y(2) + X(2) * Y(1) ** 2 - 2 * X(2) * Y(2)
    assert sym_cauchy_q(1).poly == X(1) * Y(1)
    assert sym_cauchy_q(2).poly == X(2) * Y(2) + (X(1) ** 2 - X(2)) * (Y(1) ** 2 - Y(2))


def test_q_specialization_example():
    assert evaluate(sym_cauchy_q(2), [X(1), X(2)], [0, 1]) == 2 * X(2) - X(1) ** 2


def test_evaluate_examples():
    assert evaluate(newton_poly(2), [2, 1]) == 2
    assert evaluate(cauchy_p(1), [3], [5]) == 15
    assert evaluate(schur_in_e(Partition((1, 1))), [0, 0]) == 0


def test_evaluate_missing_value():
    with pytest.raises(MissingAssignment):
        evaluate(newton_poly(3), [1, 2])


def test_bad_inputs():
    with pytest.raises(ValueError):
        newton_poly(0)
    with pytest.raises(ValueError):
        newton_poly(2, 'p')


@pytest.mark.parametrize('i', [1, 2, 3, 4])
def test_newton_cauchy(i):
    assert verify_newton_cauchy(i).status == 'pass'


@pytest.mark.parametrize('j', [1, 2, 3, 4, 5])
def test_q_specialization(j):
    assert verify_q_specialization(j).status == 'pass'


@pytest.mark.parametrize('kind', ['exterior', 'symmetric'])
def test_cauchy_oracle(kind):
    for i in (1, 2, 3):
        lhs, rhs = cauchy_oracle(i, kind, rank=2)
        assert lhs == rhs
    assert verify_cauchy_oracle(2, kind, 2).ok


def test_pieri_recursion_agrees_with_jacobi_trudi():
    for n in range(1, 6):
        for lam in partitions_of(n):
            assert schur_via_pieri(lam) == schur_in_e(lam)
    assert verify_schur_pieri(Partition((2, 1, 1))).status == 'pass'


def test_complete_classes_in_elementary_variables():
    assert complete_in_e(1) == X(1)
    assert complete_in_e(2) == X(1) ** 2 - X(2)
    assert complete_in_e(3) == X(1) ** 3 - 2 * X(1) * X(2) + X(3)
    assert schur_in_h(Partition((2,))).poly == X(2)
    assert schur_in_h(Partition((1, 1))).poly == X(1) ** 2 - X(2)


def test_complete_jacobi_trudi_is_dual():
    for n in range(1, 6):
        for lam in partitions_of(n):
            assert schur_by_duality(lam) == schur_in_e(lam), lam
    report = verify_schur_pieri(Partition((3, 1)))
    assert report.witness['complete_duality'] == report.witness['jacobi_trudi']
