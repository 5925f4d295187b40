"""
Universal polynomials in graded symmetric-function indeterminates

Every expression lives in one fixed integer polynomial ring with two
alphabets X_1..X_N and Y_1..Y_N; X_i and Y_i carry weight i.  A basis tag
per alphabet records whether X_i stands for the i-th elementary class (E) or
the i-th complete class (H).

Convention: schur_in_e(lam) is the Schur function of the transposed shape,
so a single row (k) gives E_k (the k-th exterior class) and a single column
(1^k) gives the k-th symmetric class.
"""
import time
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations

from sympy import ZZ
from sympy.combinatorics import Permutation
from sympy.polys.rings import xring

from partitions import Partition, partitions_of, pieri_index_set, transpose
from reports import VerificationReport

logger = logging.getLogger(__name__)

MAX_WEIGHT = 12

RING, _GENS = xring([f"X{i}" for i in range(1, MAX_WEIGHT + 1)]
                    + [f"Y{i}" for i in range(1, MAX_WEIGHT + 1)], ZZ)


def X(i):
    return _GENS[i - 1]


def Y(i):
    return _GENS[MAX_WEIGHT + i - 1]


class MissingAssignment(ValueError):
    """An indeterminate appearing in an expression has no value"""


@dataclass(frozen=True)
class SymExpr:
    """
    Integer polynomial in one or two graded alphabets

    Attributes:
        poly: Element of RING (a sparse exponent-map polynomial; zero
            coefficients are never stored)
        bases: One basis tag ('e' or 'h') per alphabet in use
    """
    poly: object
    bases: tuple = ('e',)

    @property
    def alphabets(self):
        return len(self.bases)

    def __add__(self, other):
        return SymExpr(self.poly + other.poly, self.bases)

    def __sub__(self, other):
        return SymExpr(self.poly - other.poly, self.bases)

    def __mul__(self, other):
        if isinstance(other, SymExpr):
            return SymExpr(self.poly * other.poly, _merge_bases(self.bases, other.bases))
        return SymExpr(self.poly * other, self.bases)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SymExpr):
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self):
        return hash(tuple(sorted(self.poly.terms())))

    def weights(self):
        """Set of (X-weight, Y-weight) pairs over all monomials"""
        found = set()
        for monom, _ in self.poly.terms():
            wx = sum((i + 1) * e for i, e in enumerate(monom[:MAX_WEIGHT]))
            wy = sum((i + 1) * e for i, e in enumerate(monom[MAX_WEIGHT:]))
            found.add((wx, wy))
        return found

    def is_homogeneous(self):
        return len(self.weights()) <= 1

    def terms(self):
        """Canonical JSON form: sorted [exponents-by-name, coefficient] pairs"""
        out = []
        for monom, coeff in sorted(self.poly.terms()):
            exps = {str(RING.symbols[i]): e for i, e in enumerate(monom) if e}
            out.append([exps, int(coeff)])
        return out

    def __str__(self):
        return str(self.poly.as_expr())


def _merge_bases(a, b):
    return a if len(a) >= len(b) else b


def _variable(alphabet, i):
    if i < 0:
        return RING.zero
    if i == 0:
        return RING.one
    if i > MAX_WEIGHT:
        raise ValueError(f"Weight {i} exceeds the supported maximum {MAX_WEIGHT}")
    return X(i) if alphabet == 0 else Y(i)


def _determinant(matrix):
    """Leibniz expansion; matrices here are at most MAX_WEIGHT square"""
    n = len(matrix)
    total = RING.zero
    for perm in permutations(range(n)):
        term = RING.one
        for row, col in enumerate(perm):
            entry = matrix[row][col]
            if not entry:
                term = RING.zero
                break
            term = term * entry
        if term:
            total += Permutation(list(perm)).signature() * term
    return total


def _jacobi_trudi(kappa, alphabet):
    # det(V_{kappa_a - a + b}) for the alphabet's variables V
    n = len(kappa)
    return _determinant([[_variable(alphabet, kappa[a] - a + b) for b in range(n)]
                         for a in range(n)])


@lru_cache(maxsize=None)
def newton_poly(i, basis='e'):
    """
    Power sum t_1^i + ... expressed in elementary (or complete) classes

    Args:
        i: Weight, at least 1
        basis: 'e' for E-variables, 'h' for H-variables

    Returns:
        SymExpr in one alphabet
    """
    if i < 1:
        raise ValueError(f"Newton polynomial needs i >= 1, got {i}")
    if basis not in ('e', 'h'):
        raise ValueError(f"Unknown basis {basis!r}")
    if basis == 'e':
        # N_i = sum_{r<i} (-1)^(r-1) E_r N_{i-r} + (-1)^(i-1) i E_i
        poly = (-1) ** (i - 1) * i * X(i)
        for r in range(1, i):
            poly += (-1) ** (r - 1) * X(r) * newton_poly(i - r, 'e').poly
    else:
        # p_i = i H_i - sum_{r<i} p_r H_{i-r}
        poly = i * X(i)
        for r in range(1, i):
            poly -= newton_poly(r, 'h').poly * X(i - r)
    return SymExpr(poly, (basis,))


@lru_cache(maxsize=None)
def schur_in_e(lam):
    """
    Schur class of a partition in elementary variables

    Dual Jacobi-Trudi: det(E_{lam_a - a + b}), which is the Schur function of
    the transposed shape.
    """
    if lam.weight < 1:
        raise ValueError("schur_in_e needs a nonempty partition")
    return SymExpr(_jacobi_trudi(lam.parts, 0), ('e',))


def schur_in_h(kappa, alphabet=0):
    """Ordinary Schur function of shape kappa in complete variables"""
    return SymExpr(_jacobi_trudi(kappa.parts, alphabet), ('h',) * (alphabet + 1))


@lru_cache(maxsize=None)
def complete_in_e(i):
    """H_i in elementary variables from sum_r (-1)^r E_r H_(i-r) = 0"""
    if i == 0:
        return RING.one
    poly = RING.zero
    for r in range(1, i + 1):
        poly += (-1) ** (r - 1) * X(r) * complete_in_e(i - r)
    return poly


def schur_by_duality(lam):
    """
    s_transpose(lam) by Jacobi-Trudi in complete variables, rewritten in E

    Agrees with schur_in_e(lam) through the involution exchanging E and H.
    """
    mapping = [complete_in_e(r) for r in range(1, lam.weight + 1)]
    return SymExpr(evaluate(schur_in_h(transpose(lam)), mapping))


def _rename_to_y(poly):
    # move an X-only polynomial to the Y alphabet
    mapping = [Y(i) for i in range(1, MAX_WEIGHT + 1)]
    return evaluate(SymExpr(poly), mapping)


@lru_cache(maxsize=None)
def cauchy_p(i):
    """
    P_i = sum over |lam| = i of s_lam(X) * s_transpose(lam)(Y), both in E-variables

    Λ^i(M ⊗ N) has class P_i(Λ^•M; Λ^•N).
    """
    if i < 1:
        raise ValueError(f"cauchy_p needs i >= 1, got {i}")
    poly = RING.zero
    for lam in partitions_of(i):
        poly += schur_in_e(lam).poly * _rename_to_y(schur_in_e(transpose(lam)).poly)
    return SymExpr(poly, ('e', 'e'))


@lru_cache(maxsize=None)
def sym_cauchy_q(j):
    """
    Q_j = sum over |kappa| = j of S_kappa(X) * S_kappa(Y), both in H-variables

    Sym^j(M ⊗ N) has class Q_j(Sym^•M; Sym^•N).
    """
    if j < 1:
        raise ValueError(f"sym_cauchy_q needs j >= 1, got {j}")
    poly = RING.zero
    for kappa in partitions_of(j):
        poly += _jacobi_trudi(kappa.parts, 0) * _jacobi_trudi(kappa.parts, 1)
    return SymExpr(poly, ('h', 'h'))


def evaluate(expr, x_values, y_values=None):
    """
    Evaluate an expression in any commutative ring

    Args:
        expr: SymExpr
        x_values: Sequence whose entry r-1 is the value of X_r
        y_values: Same for the Y alphabet

    Returns:
        Ring element (int, Cyclotomic, ClassFunction, polynomial, ...)
    """
    alphabets = (list(x_values), list(y_values or []))
    total = 0
    for monom, coeff in expr.poly.terms():
        value = int(coeff)
        for idx, exp in enumerate(monom):
            if not exp:
                continue
            alphabet, r = divmod(idx, MAX_WEIGHT)
            values = alphabets[alphabet]
            if r >= len(values):
                name = 'XY'[alphabet]
                raise MissingAssignment(f"No value supplied for {name}{r + 1}")
            value = value * values[r] ** exp
        total = total + value
    return total


@lru_cache(maxsize=None)
def schur_via_pieri(lam):
    """
    Rebuild s_lam from the Pieri rule by induction on the lexicographic order

    Strip the last row (length p) of lam to get lam'; then s_lam' * E_p is
    s_lam plus classes of strictly smaller shapes nu, where transpose(nu)
    runs through the Pieri index set of transpose(lam') with p boxes.
    """
    if lam.weight == 0:
        return SymExpr(RING.one)
    p = lam.parts[-1]
    shorter = Partition(lam.parts[:-1])
    poly = schur_via_pieri(shorter).poly * X(p)
    for nu_t in pieri_index_set(transpose(shorter), p):
        nu = transpose(nu_t)
        if nu != lam:
            poly -= schur_via_pieri(nu).poly
    return SymExpr(poly)


def _line_alphabet(rank, offset, ring_gens):
    return ring_gens[offset:offset + rank]


def cauchy_oracle(i, kind='exterior', rank=3):
    """
    Brute-force check of P_i (kind 'exterior') or Q_i (kind 'symmetric')

    Two alphabets of `rank` free line elements a_s, b_t; the products a_s*b_t
    are the lines of M ⊗ N.  Compare the elementary (complete) symmetric
    function of the products with the universal polynomial evaluated at the
    elementary (complete) classes of each alphabet.

    Returns:
        (lhs, rhs) polynomials in the line-element ring
    """
    names = [f"a{s}" for s in range(rank)] + [f"b{s}" for s in range(rank)]
    _, gens = xring(names, ZZ)
    a, b = gens[:rank], gens[rank:]
    products = [x * y for x in a for y in b]
    combine = combinations if kind == 'exterior' else combinations_with_replacement

    def power_class(values, r):
        total = 0
        for chosen in combine(values, r):
            term = 1
            for v in chosen:
                term = term * v
            total = total + term
        return total

    expr = cauchy_p(i) if kind == 'exterior' else sym_cauchy_q(i)
    x_values = [power_class(a, r) for r in range(1, i + 1)]
    y_values = [power_class(b, r) for r in range(1, i + 1)]
    return power_class(products, i), evaluate(expr, x_values, y_values)


def verify_newton_cauchy(i):
    """N_i(P_1, ..., P_i) == N_i(X) * N_i(Y) as exact polynomials"""
    started = time.perf_counter()
    newton = newton_poly(i, 'e')
    lhs = evaluate(newton, [cauchy_p(r).poly for r in range(1, i + 1)])
    rhs = newton.poly * _rename_to_y(newton.poly)
    passed = lhs == rhs
    witness = {'lhs': str(lhs.as_expr()), 'rhs': str(rhs.as_expr())} if not passed else \
        {'terms': len(rhs.terms()), 'canonical': str(rhs.as_expr())}
    logger.debug(f"newton-cauchy i={i}: {passed}")
    return VerificationReport.build(
        'newton-cauchy', 'Newton polynomial of the exterior Cauchy classes factors',
        {'i': i}, passed, witness, started)


def verify_q_specialization(j):
    """Q_j with the second alphabet set to (0, ..., 0, 1) equals N_j in H-variables"""
    started = time.perf_counter()
    q = sym_cauchy_q(j)
    specialized = evaluate(q, [X(r) for r in range(1, j + 1)], [0] * (j - 1) + [1])
    expected = newton_poly(j, 'h').poly
    passed = specialized == expected
    witness = {'specialized': str(specialized.as_expr()), 'expected': str(expected.as_expr())}
    return VerificationReport.build(
        'q-specialization', 'Symmetric Cauchy polynomial specializes to the Newton polynomial',
        {'j': j}, passed, witness, started)


def verify_cauchy_oracle(i, kind='exterior', rank=3):
    started = time.perf_counter()
    lhs, rhs = cauchy_oracle(i, kind, rank)
    passed = lhs == rhs
    witness = {} if passed else {'brute_force': str(lhs.as_expr()), 'universal': str(rhs.as_expr())}
    return VerificationReport.build(
        'cauchy-oracle', f'Cauchy polynomial matches the {kind} power of a product of line alphabets',
        {'i': i, 'kind': kind, 'rank': rank}, passed, witness, started)


def verify_schur_pieri(lam):
    started = time.perf_counter()
    direct = schur_in_e(lam)
    rebuilt = schur_via_pieri(lam)
    dual = schur_by_duality(lam)
    passed = direct == rebuilt == dual
    witness = {'jacobi_trudi': str(direct), 'pieri': str(rebuilt), 'complete_duality': str(dual)}
    return VerificationReport.build(
        'schur-pieri', 'Pieri recursion and the complete-variable Jacobi-Trudi reproduce the dual Jacobi-Trudi Schur class',
        {'lambda': str(lam)}, passed, witness, started)
