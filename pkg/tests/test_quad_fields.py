import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

import pytest

from exact_core import IntMatrix, lattice_index
from quad_fields import (
    annihilator, build, cotangent_element, different, omega, sigma_matrix, squarefree_range, trace_dual,
    verify_differential_sequence, verify_graded_layers, verify_quad_different,
)
from reports import PreconditionError

GRADED_FIELDS = [-1, 2, 3, 5, 7, 13]


@pytest.mark.parametrize('D', [0, 1, 4, -8, 12])
def test_build_rejects(D):
    with pytest.raises(ValueError):
        build(D)


def test_rings_of_integers():
    Q = build(5)
    assert Q.minimal_polynomial == (1, -1, -1)
    assert Q.discriminant == 5
    assert Q.norm(Q.sqrt_d) == -5
    Q = build(-1)
    assert Q.minimal_polynomial == (1, 0, 1)
    assert Q.discriminant == -4
    assert Q.mul((0, 1), (0, 1)) == (-1, 0)


def test_conjugation():
    for D in (-3, 2, 5, 13):
        Q = build(D)
        s = sigma_matrix(Q)
        assert s @ s == IntMatrix.identity(2)
        x = (3, 2)
        assert Q.mul(x, Q.sigma(x)) == (Q.norm(x), 0)
        assert Q.trace(x) == Q.add(x, Q.sigma(x))[0]


@pytest.mark.parametrize('D,order', [(-1, 4), (5, 5), (2, 8), (7, 28), (3, 12), (13, 13)])
def test_omega_orders(D, order):
    Q = build(D)
    assert omega(Q).order == order
    assert different(Q).norm == order


def test_annihilator_is_different():
    for D in (-1, 2, 5, 7):
        Q = build(D)
        assert annihilator(Q, omega(Q).relations) == different(Q).basis


def test_ramified_primes():
    Q = build(15)
    primes = Q.ramified_primes
    assert [p.p for p in primes] == [2, 3, 5]
    assert [p.exponent for p in primes] == [2, 1, 1]
    assert [p.wild for p in primes] == [True, False, False]
    for prime in primes:
        assert lattice_index(prime.basis) == prime.p
        assert lattice_index(Q.ideal_power(prime.basis, 2)) == prime.p ** 2


def test_unramified_prime_rejected():
    with pytest.raises(PreconditionError):
        verify_graded_layers(build(5), 3)


def test_quad_different_range():
    for D in squarefree_range(-50, 50):
        assert verify_quad_different(build(D)).status == 'pass', D


def test_differential_sequence_range():
    for D in squarefree_range(-50, 50):
        report = verify_differential_sequence(build(D))
        assert report.status == 'pass', D
        assert report.witness['dual_action'] == report.witness['omega_action']
        assert all(report.witness['checks'].values()), D


def test_trace_dual_gaussian():
    n, dual = trace_dual(build(-1))
    assert n == 4
    # half the Gaussian integers
    assert dual == IntMatrix([[2, 0], [0, 2]])


@pytest.mark.parametrize('D', [-5, -3, -1, 2, 3, 5, 6, 7, 13, 15])
def test_trace_dual_index_is_discriminant(D):
    Q = build(D)
    n, dual = trace_dual(Q)
    assert n * n // lattice_index(dual) == abs(Q.discriminant)
    report = verify_differential_sequence(Q)
    assert report.witness['dual_index'] == abs(Q.discriminant) == report.witness['order']
    assert report.witness['checks']['trace_dual_is_principal']


@pytest.mark.parametrize('D', GRADED_FIELDS)
def test_graded_layers(D):
    Q = build(D)
    for prime in Q.ramified_primes:
        report = verify_graded_layers(Q, prime.p)
        assert report.status == 'pass'
        assert report.witness['layer_product'] == report.witness['omega_p_order']
        assert len(report.witness['layers']) == prime.exponent


def test_wild_layers_at_two():
    report = verify_graded_layers(build(2), 2)
    assert report.witness['type'] == 'wild'
    assert [layer['order'] for layer in report.witness['layers']] == [2, 2, 2]
    assert report.witness['J_over_JD'] == 8


def test_cotangent_element():
    element = cotangent_element(build(5))
    assert element.order == 5
    assert element.to_json()['certificate']['status'] == 'pass'
    assert cotangent_element(build(-3)).order == 3
    with pytest.raises(PreconditionError):
        cotangent_element(build(-1))


def test_field_summary():
    data = build(-5).to_json()
    assert data['discriminant'] == -20
    assert data['omega_order'] == 20
    assert not data['tame']
