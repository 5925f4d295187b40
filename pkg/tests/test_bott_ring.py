import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from math import gcd

import pytest
from hypothesis import given, strategies as st

from bott_ring import CyclicQuotientRing, bott_element, default_inverse, verify_bott_inverse, verify_bott_multiplier
from reports import PreconditionError


def coeffs(ring, a):
    return ring.to_json(a)


def test_bott_element_examples():
    ring = CyclicQuotientRing(3)
    assert coeffs(ring, bott_element(ring, 1)) == [1, 0, 0]
    assert coeffs(ring, bott_element(ring, 2)) == [1, 1, 0]
    assert coeffs(ring, bott_element(ring, 4)) == [2, 1, 1]
    assert ring.format(bott_element(ring, 4)) == "2 + x + x^2"
    with pytest.raises(ValueError):
        bott_element(ring, 0)


def test_ring_arithmetic():
    ring = CyclicQuotientRing(3)
    x = ring.monomial(1)
    assert ring.equal(ring.power(x, 3), ring.one())
    product = ring.mul(bott_element(ring, 2), ring.element([1, 0, 1]))
    assert coeffs(ring, product) == [2, 1, 1]


@given(st.integers(min_value=1, max_value=12).flatmap(
    lambda m: st.tuples(st.just(m), st.integers(min_value=1, max_value=3 * m))))
def test_wraparound_and_augmentation(data):
    m, k = data
    ring = CyclicQuotientRing(m)
    theta = bott_element(ring, k)
    assert ring.equal(bott_element(ring, k + m), theta + ring.norm_element())
    assert ring.augmentation(theta) == k


def test_inverse_examples():
    report = verify_bott_inverse(3, 2, 2)
    assert report.status == 'pass'
    assert report.witness['norm_multiple'] == 1
    assert verify_bott_inverse(4, 3, 3).status == 'pass'
    assert verify_bott_inverse(7, 1, 1).witness['norm_multiple'] == 0


def test_inverse_preconditions():
    with pytest.raises(PreconditionError):
        verify_bott_inverse(4, 3, 2)
    with pytest.raises(PreconditionError):
        verify_bott_inverse(4, 2)


def test_inverse_grid():
    for m in range(1, 13):
        for k in range(1, 13):
            if gcd(k, m) == 1:
                report = verify_bott_inverse(m, k)
                assert report.status == 'pass', (m, k)
                assert report.params['k_prime'] == default_inverse(m, k)


def test_multiplier_examples():
    assert verify_bott_multiplier(2, 3).status == 'pass'
    report = verify_bott_multiplier(5, 2)
    assert report.status == 'pass'
    assert report.witness['unit_witness']['k_prime'] == 3
    assert verify_bott_multiplier(6, 1).status == 'pass'
    assert 'unit_witness' not in verify_bott_multiplier(4, 2).witness


def test_multiplier_grid():
    for m in range(1, 13):
        for k in range(1, 13):
            assert verify_bott_multiplier(m, k).status == 'pass', (m, k)
