"""
Quadratic fields, their differents and the module of differentials

Elements of O_N = Z[t] are pairs (a, b) meaning a + b t, where t is a root
of phi(T) = T^2 + c1 T + c0.  Ideals are Z-lattices in Z^2 given by an HNF
basis (columns).  Omega is the cyclic module O_N/(phi'(t)) dt and the
nontrivial automorphism acts on it by c dt -> -sigma(c) dt.
"""
import time
import logging
from dataclasses import dataclass
from functools import cached_property

from sympy import Poly, factorint, symbols

from exact_core import IntMatrix, contains_lattice, kernel_basis, lattice_basis, lattice_index, same_lattice
from reports import PreconditionError, VerificationReport

logger = logging.getLogger(__name__)

_T = symbols('T')


def valuation(n, p):
    """p-adic valuation of a nonzero integer"""
    return factorint(abs(int(n))).get(p, 0)


@dataclass(frozen=True)
class RamifiedPrime:
    """The unique prime above a ramified rational prime p"""
    p: int
    basis: IntMatrix
    exponent: int
    wild: bool
    uniformizer: tuple

    def to_json(self):
        return {
            'p': self.p,
            'basis': self.basis.tolist(),
            'different_exponent': self.exponent,
            'type': 'wild' if self.wild else 'tame',
            'uniformizer': list(self.uniformizer),
        }


class QuadraticField:
    """
    Q(sqrt D) with ring of integers Z[t]

    Args:
        D: Squarefree integer other than 0 and 1
    """

    def __init__(self, D):
        self.D = int(D)
        if self.D % 4 == 1:
            # t = (1 + sqrt D) / 2
            self.c1, self.c0 = -1, -(self.D - 1) // 4
            self.discriminant = self.D
        else:
            self.c1, self.c0 = 0, -self.D
            self.discriminant = 4 * self.D

    def __repr__(self):
        return f"QuadraticField(D={self.D})"

    @property
    def generator_name(self):
        return f"(1+sqrt({self.D}))/2" if self.D % 4 == 1 else f"sqrt({self.D})"

    @property
    def minimal_polynomial(self):
        return (1, self.c1, self.c0)

    # -- element arithmetic ----------------------------------------------------

    def mul(self, x, y):
        a, b = x
        c, d = y
        return (a * c - b * d * self.c0, a * d + b * c - b * d * self.c1)

    def add(self, x, y):
        return (x[0] + y[0], x[1] + y[1])

    def scale(self, x, n):
        return (x[0] * n, x[1] * n)

    def sigma(self, x):
        """t -> -c1 - t"""
        a, b = x
        return (a - b * self.c1, -b)

    def norm(self, x):
        a, b = x
        return a * a - a * b * self.c1 + b * b * self.c0

    def trace(self, x):
        return 2 * x[0] - x[1] * self.c1

    def divide_exact(self, x, n):
        if x[0] % n or x[1] % n:
            raise ValueError(f"{x} is not divisible by {n}")
        return (x[0] // n, x[1] // n)

    def power(self, x, k):
        result = (1, 0)
        for _ in range(k):
            result = self.mul(result, x)
        return result

    @property
    def sqrt_d(self):
        return (-1, 2) if self.D % 4 == 1 else (0, 1)

    @property
    def phi_prime(self):
        """phi'(t) = 2t + c1"""
        return (self.c1, 2)

    # -- ideals ----------------------------------------------------------------

    def multiplication_matrix(self, x):
        """Columns x*1 and x*t"""
        return IntMatrix.from_columns([self.mul(x, (1, 0)), self.mul(x, (0, 1))], 2)

    def ideal(self, *generators):
        """HNF basis of the ideal generated by elements"""
        columns = []
        for x in generators:
            columns += self.multiplication_matrix(x).columns()
        return lattice_basis(IntMatrix.from_columns(columns, 2))

    def unit_ideal(self):
        return IntMatrix.identity(2)

    def ideal_product(self, I, J):
        columns = [self.mul(tuple(x), tuple(y)) for x in I.columns() for y in J.columns()]
        return lattice_basis(IntMatrix.from_columns(columns, 2))

    def ideal_sum(self, I, J):
        return lattice_basis(I.hstack(J))

    def ideal_power(self, I, k):
        result = self.unit_ideal()
        for _ in range(k):
            result = self.ideal_product(result, I)
        return result

    def contains(self, I, x):
        return contains_lattice(I, IntMatrix.from_columns([x], 2))

    # -- ramification ----------------------------------------------------------

    @cached_property
    def ramified_primes(self):
        """Ramified primes above each p dividing the discriminant, increasing in p"""
        primes = []
        for p in sorted(factorint(abs(self.discriminant))):
            roots = Poly([1, self.c1, self.c0], _T, modulus=p).ground_roots()
            a = min(int(r) % p for r in roots)
            basis = self.ideal((p, 0), (-a, 1))
            primes.append(RamifiedPrime(
                p=p,
                basis=basis,
                exponent=valuation(self.discriminant, p),
                wild=p == 2,
                uniformizer=self._uniformizer(p),
            ))
        return tuple(primes)

    def prime_above(self, p):
        """
        Raises:
            PreconditionError: p does not ramify
        """
        for prime in self.ramified_primes:
            if prime.p == p:
                return prime
        raise PreconditionError(f"{p} is unramified in Q(sqrt({self.D}))")

    def _uniformizer(self, p):
        # sqrt D when it has valuation one, else the first t - a that does
        if valuation(self.norm(self.sqrt_d), p) == 1:
            return self.sqrt_d
        a = 0
        while True:
            candidate = (-a, 1)
            n = self.norm(candidate)
            if n and valuation(n, p) == 1:
                return candidate
            a += 1

    @property
    def is_tame(self):
        return self.discriminant % 2 != 0

    def to_json(self):
        data = different(self)
        return {
            'D': self.D,
            'generator': self.generator_name,
            'minimal_polynomial': list(self.minimal_polynomial),
            'discriminant': self.discriminant,
            'different': data.to_json(),
            'omega_order': omega(self).order,
            'tame': self.is_tame,
        }


def build(D):
    """
    Ring of integers of Q(sqrt D)

    Raises:
        ValueError: D is 0, 1 or not squarefree
    """
    D = int(D)
    if D in (0, 1):
        raise ValueError(f"D must not be 0 or 1, got {D}")
    if any(e > 1 for e in factorint(abs(D)).values()):
        raise ValueError(f"D={D} is not squarefree")
    return QuadraticField(D)


@dataclass(frozen=True)
class DifferentData:
    generator: tuple
    basis: IntMatrix
    norm: int
    primes: tuple

    def to_json(self):
        return {
            'generator': list(self.generator),
            'norm': self.norm,
            'primes': [prime.to_json() for prime in self.primes],
        }


def different(Q):
    """The principal ideal (phi'(t)) with its factorization over ramified primes"""
    generator = Q.phi_prime
    basis = Q.ideal(generator)
    return DifferentData(generator, basis, abs(Q.norm(generator)), Q.ramified_primes)


@dataclass(frozen=True)
class OmegaPresentation:
    """O_N/(phi'(t)) dt with the automorphism acting on coefficient vectors"""
    relations: IntMatrix
    order: int
    action: IntMatrix


def omega(Q):
    relations = Q.ideal(Q.phi_prime)
    s = sigma_matrix(Q)
    action = IntMatrix([[-x for x in row] for row in s.tolist()])
    return OmegaPresentation(relations, lattice_index(relations), action)


def sigma_matrix(Q):
    return IntMatrix.from_columns([Q.sigma((1, 0)), Q.sigma((0, 1))], 2)


def _adjugate(H):
    (a, b), (c, d) = H.tolist()
    return IntMatrix([[d, -b], [-c, a]])


def quotient_kernel(I, A):
    """
    Lattice of x in Z^2 with A_j x in I for every matrix A_j in A

    Solved as the kernel of [adj(I) A_1; adj(I) A_2; ... | delta * identity]
    with delta = det I.
    """
    delta = abs(I.det())
    adj = _adjugate(I)
    if I.det() < 0:
        adj = IntMatrix([[-x for x in row] for row in adj.tolist()])
    stacked = []
    for m in A:
        stacked += (adj @ m).tolist()
    rows = len(stacked)
    system = IntMatrix([row + [delta * int(i == r) for i in range(rows)] for r, row in enumerate(stacked)])
    kernel = kernel_basis(system)
    return lattice_basis(IntMatrix.from_columns([col[:2] for col in kernel.columns()], 2))


def annihilator(Q, relations):
    """Ann of the cyclic module O_N / relations"""
    # x * 1 and x * t must both land in the relation lattice
    left = [Q.multiplication_matrix((1, 0)), Q.multiplication_matrix((0, 1))]
    return quotient_kernel(relations, left)


def verify_quad_different(Q):
    """|O_N/(phi'(t))| = |disc| and Ann(Omega) = (phi'(t))"""
    started = time.perf_counter()
    data = different(Q)
    om = omega(Q)
    ann = annihilator(Q, om.relations)
    order_ok = om.order == abs(Q.discriminant) == data.norm
    ann_ok = ann == data.basis
    wild_ok = all(prime.wild == (prime.p == 2) for prime in data.primes) and \
        any(prime.wild for prime in data.primes) == (Q.discriminant % 2 == 0)
    witness = {'omega_order': om.order, 'discriminant': Q.discriminant,
               'annihilator': ann.tolist(), 'different': data.basis.tolist()}
    return VerificationReport.build(
        'quad-different', 'Differential module has order |disc| and is annihilated exactly by the different',
        {'D': Q.D}, order_ok and ann_ok and wild_ok, witness, started)


def trace_dual(Q):
    """
    Inverse different as the trace dual {x : Tr(x O_N) in Z}

    Elements are written y / n with n = |disc| and y in Z^2, so the dual is
    the lattice of y with Tr(y e_j) = 0 mod n for the basis e_j. Only the
    trace form enters, never phi'(t).

    Returns:
        (n, HNF basis of the y lattice)
    """
    n = abs(Q.discriminant)
    basis = ((1, 0), (0, 1))
    form = IntMatrix([[Q.trace(Q.mul(e, f)) for e in basis] for f in basis])
    scaled = IntMatrix([[n, 0], [0, n]])
    return n, quotient_kernel(scaled, [form])


def verify_differential_sequence(Q):
    """
    0 -> O_N -> D^-1 -> Omega -> 0 with x -> x phi'(t) dt, checked on Z-bases

    D^-1 comes from the trace form and is compared with phi'(t)^-1 O_N.
    Elements of D^-1 are written y / n with y in Z^2.
    """
    started = time.perf_counter()
    dp = Q.phi_prime
    om = omega(Q)
    identity = IntMatrix.identity(2)
    n, dual = trace_dual(Q)
    o_lattice = IntMatrix([[n, 0], [0, n]])

    # phi'^-1 = sigma(phi') / N(phi'), so phi'^-1 O_N is sigma(phi') O_N in y coordinates
    principal = Q.ideal(Q.sigma(dp))
    dual_ok = same_lattice(dual, principal)
    contains_o = contains_lattice(dual, o_lattice)
    dual_index = n * n // lattice_index(dual)
    index_ok = dual_index == abs(Q.discriminant) == om.order

    # y / n -> (y phi' / n) dt lands in (phi') exactly when y / n is integral
    kernel = quotient_kernel(IntMatrix([[n * x for x in row] for row in om.relations.tolist()]),
                             [Q.multiplication_matrix(dp)])
    kernel_ok = same_lattice(kernel, o_lattice)
    # every y in the dual maps to an integral coefficient vector
    integral = all(c % n == 0 for y in dual.columns() for c in Q.mul(tuple(y), dp))

    # gamma(a / phi') = sigma(a) / sigma(phi') = sigma(a) * phi'^2 / N(phi') / phi'
    ratio = Q.divide_exact(Q.mul(dp, dp), Q.norm(dp))
    s_dual = IntMatrix.from_columns([Q.mul(Q.sigma(e), ratio) for e in ((1, 0), (0, 1))], 2)
    equivariant = s_dual == om.action
    preserves = contains_lattice(om.relations, s_dual @ om.relations)
    involution = s_dual @ s_dual == identity

    checks = {
        'trace_dual_is_principal': dual_ok,
        'contains_integers': contains_o,
        'index': index_ok,
        'kernel': kernel_ok,
        'integral_image': integral,
        'equivariant': equivariant and preserves and involution,
    }
    witness = {
        'order': om.order,
        'dual_index': dual_index,
        'trace_dual': dual.tolist(),
        'scale': n,
        'dual_action': s_dual.tolist(),
        'omega_action': om.action.tolist(),
        'kernel': kernel.tolist(),
        'checks': checks,
    }
    return VerificationReport.build(
        'differential-sequence', 'Inverse different modulo O_N is equivariantly isomorphic to the differentials',
        {'D': Q.D}, all(checks.values()), witness, started)


def verify_graded_layers(Q, p):
    """
    Graded pieces P^{i+1}/P^{i+2} -> P^i Omega / P^{i+1} Omega for i < l

    The map sends x = a pi^{i+1} to a pi^i d(pi), computed as
    u' * b * x * sigma(pi) / p where N(pi) = p u, u u' = 1 mod p and
    d(pi) = b dt.  The layer P^i Omega is (P^i + (phi')) / (phi').

    Raises:
        PreconditionError: p is unramified
    """
    prime = Q.prime_above(p)
    started = time.perf_counter()
    pi = prime.uniformizer
    u = Q.norm(pi) // p
    u_inv = pow(u, -1, p)
    b = pi[1]
    P = prime.basis
    dp = Q.ideal(Q.phi_prime)

    def graded(x):
        lifted = Q.divide_exact(Q.mul(x, Q.sigma(pi)), p)
        return Q.scale(lifted, u_inv * b)

    layers = []
    passed = True
    for i in range(prime.exponent):
        source = Q.ideal_power(P, i + 1)
        kernel = Q.ideal_power(P, i + 2)
        upper = Q.ideal_sum(Q.ideal_power(P, i), dp)
        lower = Q.ideal_sum(Q.ideal_power(P, i + 1), dp)
        images = [graded(tuple(x)) for x in source.columns()]
        into = all(Q.contains(upper, y) for y in images)
        onto = same_lattice(upper, lower.hstack(IntMatrix.from_columns(images, 2)))
        kills = all(Q.contains(lower, graded(tuple(x))) for x in kernel.columns())
        layer_order = lattice_index(lower) // lattice_index(upper)
        exact = layer_order == lattice_index(kernel) // lattice_index(source)
        equivariant = all(
            Q.contains(lower, Q.add(graded(Q.sigma(tuple(x))), Q.sigma(graded(tuple(x)))))
            for x in source.columns())
        ok = into and onto and kills and exact and equivariant
        passed = passed and ok
        layers.append({'i': i, 'order': layer_order, 'exact': into and onto and kills and exact,
                       'equivariant': equivariant})

    total = 1
    for layer in layers:
        total *= layer['order']
    omega_p = p ** valuation(omega(Q).order, p)

    ramified = [r.basis for r in Q.ramified_primes]
    J = ramified[0]
    for basis in ramified[1:]:
        J = Q.ideal_product(J, basis)
    j_quotient = lattice_index(Q.ideal_product(J, dp)) // lattice_index(J)

    passed = passed and total == omega_p and j_quotient == omega(Q).order
    witness = {'layers': layers, 'layer_product': total, 'omega_p_order': omega_p,
               'J_over_JD': j_quotient, 'uniformizer': list(pi), 'type': 'wild' if prime.wild else 'tame'}
    return VerificationReport.build(
        'graded-layers', 'Powers of the ramified prime give exact equivariant graded pieces of the differentials',
        {'D': Q.D, 'p': p}, passed, witness, started)


@dataclass(frozen=True)
class CotangentElement:
    """Formal difference [D^-1] - [O_N] with its certified quotient"""
    field: QuadraticField
    order: int
    witness: object

    def to_json(self):
        return {
            'D': self.field.D,
            'positive': 'inverse different',
            'negative': 'ring of integers',
            'quotient_order': self.order,
            'certificate': self.witness.to_dict(timing=False),
        }


def cotangent_element(Q):
    """
    Raises:
        PreconditionError: 2 ramifies, so the extension is not tame
    """
    if not Q.is_tame:
        raise PreconditionError(f"Q(sqrt({Q.D})) is wildly ramified at 2")
    report = verify_differential_sequence(Q).require()
    return CotangentElement(Q, omega(Q).order, report)


def squarefree_range(low, high):
    """Squarefree D in [low, high] other than 0 and 1"""
    values = []
    for D in range(low, high + 1):
        if D in (0, 1):
            continue
        if all(e == 1 for e in factorint(abs(D)).values()):
            values.append(D)
    return values
