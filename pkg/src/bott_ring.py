"""
Bott elements in the cyclic quotient ring Z[x]/(x^m - 1)

x stands for the class of the inverse different, whose m-th power is trivial.
"""
import time
import logging
from math import gcd

import numpy as np

from reports import PreconditionError, VerificationReport

logger = logging.getLogger(__name__)


class CyclicQuotientRing:
    """
    Z[x]/(x^m - 1) with elements as length-m integer coefficient arrays

    Args:
        m: Modulus, at least 1
    """

    def __init__(self, m):
        if m < 1:
            raise ValueError(f"Modulus must be positive, got {m}")
        self.m = int(m)

    def __repr__(self):
        return f"CyclicQuotientRing(m={self.m})"

    def element(self, coeffs):
        """Reduce an arbitrary coefficient list mod x^m - 1"""
        out = np.zeros(self.m, dtype=object)
        for i, c in enumerate(coeffs):
            out[i % self.m] += int(c)
        return out

    def zero(self):
        return np.zeros(self.m, dtype=object)

    def one(self):
        return self.monomial(0)

    def monomial(self, exponent, coeff=1):
        out = self.zero()
        out[exponent % self.m] = coeff
        return out

    def norm_element(self):
        """nu = 1 + x + ... + x^{m-1}"""
        return np.ones(self.m, dtype=object)

    def mul(self, a, b):
        """Cyclic convolution"""
        out = self.zero()
        for shift, c in enumerate(b):
            if c:
                out = out + c * np.roll(a, shift)
        return out

    def power(self, a, k):
        result = self.one()
        for _ in range(k):
            result = self.mul(result, a)
        return result

    def augmentation(self, a):
        """x -> 1"""
        return int(sum(a))

    def equal(self, a, b):
        return bool(np.all(a == b))

    def to_json(self, a):
        return [int(c) for c in a]

    def format(self, a):
        terms = []
        for i, c in enumerate(a):
            if not c:
                continue
            mono = '1' if i == 0 else ('x' if i == 1 else f"x^{i}")
            if i == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return ' + '.join(terms) if terms else '0'


def bott_element(ring, k):
    """
    theta^k(x) = 1 + x + ... + x^{k-1}

    Raises:
        ValueError: k < 1
    """
    if k < 1:
        raise ValueError(f"Bott element needs k >= 1, got {k}")
    return ring.element([1] * k)


def geometric_sum(ring, k, k_prime):
    """sum_{i < k'} x^{ik}"""
    return sum((ring.monomial(i * k) for i in range(k_prime)), ring.zero())


def default_inverse(m, k):
    """Smallest positive k' with k k' = 1 mod m"""
    if m == 1:
        return 1
    return pow(k, -1, m)


def verify_bott_inverse(m, k, k_prime=None):
    """
    Geometric-series identities behind inverting a Bott element

    (i) theta^k (x - 1) = x^k - 1
    (ii) x^{kk'} = x
    (iii) (sum_{i<k'} x^{ik}) (x^k - 1) = x - 1
    (iv) theta^k sum_{i<k'} x^{ik} = 1 + ((kk' - 1)/m) nu

    Raises:
        PreconditionError: k k' is not 1 mod m
    """
    if k < 1:
        raise PreconditionError(f"k must be positive, got {k}")
    if k_prime is None:
        if gcd(k, m) != 1:
            raise PreconditionError(f"k={k} is not invertible mod {m}")
        k_prime = default_inverse(m, k)
    if (k * k_prime - 1) % m:
        raise PreconditionError(f"k*k'={k * k_prime} is not 1 mod {m}")
    started = time.perf_counter()
    ring = CyclicQuotientRing(m)
    x = ring.monomial(1)
    theta = bott_element(ring, k)
    xk_minus_1 = ring.monomial(k) - ring.one()
    series = geometric_sum(ring, k, k_prime)
    scalar = (k * k_prime - 1) // m

    identities = {
        'series': ring.equal(ring.mul(theta, x - ring.one()), xk_minus_1),
        'exponent': ring.equal(ring.monomial(k * k_prime), x),
        'inverse_series': ring.equal(ring.mul(series, xk_minus_1), x - ring.one()),
        'norm_line': ring.equal(ring.mul(theta, series), ring.one() + scalar * ring.norm_element()),
    }
    witness = {
        'identities': identities,
        'theta': ring.to_json(theta),
        'series': ring.to_json(series),
        'norm_multiple': scalar,
    }
    return VerificationReport.build(
        'bott-inverse', 'A geometric series inverts the Bott element modulo the norm line',
        {'m': m, 'k': k, 'k_prime': k_prime}, all(identities.values()), witness, started)


def verify_bott_multiplier(m, k):
    """
    (x^k - 1) = (x - 1) theta^k, with theta^k a unit mod nu when gcd(k, m) = 1

    Also checks the augmentation theta^k -> k and the wraparound
    theta^{k+m} = theta^k + nu.
    """
    if k < 1:
        raise PreconditionError(f"k must be positive, got {k}")
    started = time.perf_counter()
    ring = CyclicQuotientRing(m)
    theta = bott_element(ring, k)
    nu = ring.norm_element()
    checks = {
        'multiplier': ring.equal(ring.monomial(k) - ring.one(), ring.mul(ring.monomial(1) - ring.one(), theta)),
        'augmentation': ring.augmentation(theta) == k,
        'wraparound': ring.equal(bott_element(ring, k + m), theta + nu),
    }
    witness = {'theta': ring.to_json(theta)}
    if gcd(k, m) == 1:
        k_prime = default_inverse(m, k)
        residue = ring.mul(theta, geometric_sum(ring, k, k_prime)) - ring.one()
        # residue must be a multiple of nu
        checks['unit_mod_norm'] = len(set(residue.tolist())) == 1
        witness['unit_witness'] = {'k_prime': k_prime, 'series': ring.to_json(geometric_sum(ring, k, k_prime))}
    witness['checks'] = checks
    return VerificationReport.build(
        'bott-multiplier', 'The Bott element is the multiplier of the rank-zero class x - 1',
        {'m': m, 'k': k}, all(checks.values()), witness, started)
