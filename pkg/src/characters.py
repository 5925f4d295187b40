"""
Character tables and the lambda-ring operations on virtual characters

Class functions are stored as one exact cyclotomic value per conjugacy class,
written in the conductor e = exponent of the group.  Tables come from Dixon's
modular method; catalog groups also have closed forms used as cross-checks.
"""
import time
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as cartesian
from math import gcd, isqrt

from sympy import Poly, nextprime, primitive_root, symbols
from sympy.combinatorics import Permutation
from sympy.ntheory import sqrt_mod
from sympy.polys.domains import FF
from sympy.polys.matrices import DomainMatrix

from exact_core import Cyclotomic, as_cyclotomic, cyc_normalize
from groups import kth_root_counts
from reports import IdentityViolation, PreconditionError, VerificationReport
from symfunc import evaluate, newton_poly

logger = logging.getLogger(__name__)

_z = symbols('z')

REAL, COMPLEX, QUATERNIONIC = 'R', 'C', 'H'


class ClassFunction:
    """
    Function on the conjugacy classes of a group with cyclotomic values

    Supports pointwise +, -, * and powers, plus integer scaling, so it can be
    fed to symfunc.evaluate like any ring element.
    """

    def __init__(self, group, values):
        data = group.conjugacy
        if len(values) != len(data):
            raise ValueError(f"Expected {len(data)} class values, got {len(values)}")
        self.group = group
        self.values = tuple(as_cyclotomic(v, data.exponent) for v in values)

    @classmethod
    def constant(cls, group, value):
        return cls(group, [value] * len(group.conjugacy))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, c):
        return self.values[c]

    def __iter__(self):
        return iter(self.values)

    @property
    def degree(self):
        return int(self.values[0])

    def _other_values(self, other):
        if isinstance(other, ClassFunction):
            if other.group is not self.group:
                raise ValueError(f"Class functions on different groups: {self.group.name} vs {other.group.name}")
            return other.values
        if isinstance(other, (int, Cyclotomic)):
            return (other,) * len(self.values)
        return None

    def __add__(self, other):
        values = self._other_values(other)
        if values is None:
            return NotImplemented
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, values)])

    __radd__ = __add__

    def __sub__(self, other):
        values = self._other_values(other)
        if values is None:
            return NotImplemented
        return ClassFunction(self.group, [a - b for a, b in zip(self.values, values)])

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return ClassFunction(self.group, [-a for a in self.values])

    def __mul__(self, other):
        values = self._other_values(other)
        if values is None:
            return NotImplemented
        return ClassFunction(self.group, [a * b for a, b in zip(self.values, values)])

    __rmul__ = __mul__

    def __pow__(self, n):
        return ClassFunction(self.group, [a ** n for a in self.values])

    def exact_divide(self, m):
        """Divide by an integer, requiring every value to stay a cyclotomic integer"""
        quotient = ClassFunction(self.group, [a / m for a in self.values])
        if not all(v.is_integral() for v in quotient.values):
            raise IdentityViolation(f"Division by {m} is not integral: {self.values}")
        return quotient

    def conjugate(self):
        return ClassFunction(self.group, [a.conjugate() for a in self.values])

    def is_zero(self):
        return not any(self.values)

    def __eq__(self, other):
        if isinstance(other, int):
            return all(v == other for v in self.values)
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return other.group is self.group and self.values == other.values

    def __hash__(self):
        return hash((id(self.group), self.values))

    def sort_key(self):
        return tuple(v.sort_key() for v in self.values)

    def to_json(self):
        return [v.to_json() for v in self.values]

    def __repr__(self):
        return f"ClassFunction({self.group.name}, {list(self.values)})"


def trivial_character(G):
    return ClassFunction.constant(G, 1)


def regular_character(G):
    values = [0] * len(G.conjugacy)
    values[0] = G.order
    return ClassFunction(G, values)


def pairing(chi, theta):
    """
    Classical character pairing (1/|G|) sum chi(g) conj(theta(g))

    Raises:
        ValueError: The class functions live on different groups
    """
    if chi.group is not theta.group:
        raise ValueError(f"Cannot pair class functions of {chi.group.name} and {theta.group.name}")
    data = chi.group.conjugacy
    total = Cyclotomic.zero(data.exponent)
    for size, a, b in zip(data.sizes, chi.values, theta.values):
        total = total + a * b.conjugate() * size
    return total / chi.group.order


@dataclass(frozen=True)
class CharacterTable:
    """Irreducible characters of a group, trivial character first"""
    group: object
    characters: tuple
    method: str = 'dixon'

    def __len__(self):
        return len(self.characters)

    def __getitem__(self, i):
        return self.characters[i]

    @property
    def degrees(self):
        return tuple(chi.degree for chi in self.characters)

    def decompose(self, cf):
        return decompose(self, cf)

    def irreducible(self, i):
        coefficients = [0] * len(self.characters)
        coefficients[i] = 1
        return VirtualCharacter(self, tuple(coefficients))

    def to_json(self):
        G = self.group
        data = G.conjugacy
        return {
            'group': G.name,
            'order': G.order,
            'exponent': data.exponent,
            'method': self.method,
            'classes': [{'representative': G.labels[rep], 'size': size}
                        for rep, size in zip(data.representatives, data.sizes)],
            'degrees': list(self.degrees),
            'characters': [chi.to_json() for chi in self.characters],
        }


@dataclass(frozen=True)
class VirtualCharacter:
    """Integer combination of the irreducibles of a table"""
    table: CharacterTable
    coefficients: tuple

    def class_function(self):
        total = ClassFunction.constant(self.table.group, 0)
        for a, chi in zip(self.coefficients, self.table.characters):
            if a:
                total = total + chi * a
        return total

    @property
    def is_genuine(self):
        return all(a >= 0 for a in self.coefficients)

    @property
    def degree(self):
        return sum(a * d for a, d in zip(self.coefficients, self.table.degrees))

    def positive_part(self):
        return VirtualCharacter(self.table, tuple(max(a, 0) for a in self.coefficients))

    def negative_part(self):
        return VirtualCharacter(self.table, tuple(max(-a, 0) for a in self.coefficients))

    def __add__(self, other):
        return VirtualCharacter(self.table, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other):
        return VirtualCharacter(self.table, tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self):
        return VirtualCharacter(self.table, tuple(-a for a in self.coefficients))

    def __mul__(self, other):
        if isinstance(other, int):
            return VirtualCharacter(self.table, tuple(a * other for a in self.coefficients))
        return decompose(self.table, self.class_function() * other.class_function())

    __rmul__ = __mul__

    def to_json(self):
        return list(self.coefficients)


def decompose(table, cf):
    """
    Coordinates of a class function in the irreducible basis

    Raises:
        ValueError: Some coordinate is not a rational integer
    """
    coefficients = []
    for chi in table.characters:
        c = pairing(cf, chi)
        if not c.is_rational() or c.rational_value().denominator != 1:
            raise ValueError(f"{cf} is not a virtual character (pairing {c})")
        coefficients.append(int(c))
    return VirtualCharacter(table, tuple(coefficients))


def _as_class_function(x):
    return x.class_function() if isinstance(x, VirtualCharacter) else x


# -- Dixon's method --------------------------------------------------------

def dixon_prime(n, e):
    """Smallest prime p with p = 1 mod e and p > 2 sqrt(n)"""
    p = int(nextprime(2 * isqrt(n)))
    while (p - 1) % e or p * p <= 4 * n:
        p = int(nextprime(p))
    return p


def _class_matrices(G, data, K):
    # M_j[i][k] = #{x in C_j : x * y_i in C_k}; every irreducible chi gives a
    # common right eigenvector (chi(y_k) / chi(1))_k
    r = len(data)
    matrices = []
    for j in range(1, r):
        M = [[0] * r for _ in range(r)]
        for i, y in enumerate(data.representatives):
            for x in data.classes[j]:
                M[i][data.class_of[G.multiply(x, y)]] += 1
        matrices.append(DomainMatrix.from_list(M, K))
    return matrices


def _split_space(space, M, K, p):
    basis, pivots = space
    d = basis.shape[0]
    if d == 1:
        return [space]
    image = basis * M.transpose()
    restricted = image.extract(list(range(d)), list(pivots)).transpose()
    coeffs = [int(c) % p for c in restricted.charpoly()]
    roots = sorted({int(root) % p for root in Poly(coeffs, _z, modulus=p).ground_roots()})
    pieces = []
    for z in roots:
        shifted = restricted - DomainMatrix.eye(d, K) * K(z)
        null = shifted.nullspace()
        pieces.append((null * basis).rref())
    if sum(piece[0].shape[0] for piece in pieces) != d:
        raise IdentityViolation(f"Eigenspaces do not fill a {d}-dimensional space mod {p}")
    return pieces


def _lift_character(G, data, u, p):
    """Turn a normalized eigenvector mod p into an exact character"""
    n, e = G.order, data.exponent
    total = sum(size * u[k] * u[data.inverse_class[k]] for k, size in enumerate(data.sizes)) % p
    d_squared = n * pow(total, -1, p) % p
    root = sqrt_mod(d_squared, p)
    if root is None:
        raise IdentityViolation(f"Degree square {d_squared} has no root mod {p}")
    d = min(root, p - root)
    chi_mod = [d * x % p for x in u]

    zeta = pow(primitive_root(p), (p - 1) // e, p)
    e_inv = pow(e, -1, p)
    values = []
    for c in range(len(data)):
        along = [chi_mod[data.power_class(c, l)] for l in range(e)]
        # eigenvalue multiplicities of a representing matrix at the class rep
        raw = [e_inv * sum(along[l] * pow(zeta, (-j * l) % e, p) for l in range(e)) % p
               for j in range(e)]
        values.append(cyc_normalize(raw, e))
    return ClassFunction(G, values)


def dixon_table(G):
    """
    Irreducible characters by simultaneous diagonalization of class matrices mod p

    Args:
        G: FiniteGroup

    Returns:
        CharacterTable verified for orthogonality
    """
    data = G.conjugacy
    r, e = len(data), data.exponent
    p = dixon_prime(G.order, e)
    K = FF(p)
    logger.debug(f"{G.name}: Dixon prime {p} for order {G.order}, exponent {e}, {r} classes")

    spaces = [DomainMatrix.eye(r, K).rref()]
    for M in _class_matrices(G, data, K):
        if all(space[0].shape[0] == 1 for space in spaces):
            break
        spaces = [piece for space in spaces for piece in _split_space(space, M, K, p)]
    if len(spaces) != r:
        raise IdentityViolation(f"{G.name}: found {len(spaces)} common eigenspaces, expected {r}")

    rows = []
    for basis, _ in spaces:
        vector = [int(x) % p for x in basis.to_list()[0]]
        lead = pow(vector[0], -1, p)
        rows.append(_lift_character(G, data, [x * lead % p for x in vector], p))
    table = CharacterTable(G, _ordered(rows), 'dixon')
    verify_orthogonality(table).require()
    return table


def _ordered(rows):
    trivial = [chi for chi in rows if all(v == 1 for v in chi.values)]
    rest = sorted((chi for chi in rows if chi not in trivial), key=lambda chi: (chi.degree, chi.sort_key()))
    return tuple(trivial + rest)


# -- closed forms ----------------------------------------------------------

def _cyclic_rows(G):
    n = G.params[0]
    return [ClassFunction(G, [Cyclotomic.root_of_unity(j * G.coordinates[rep], n)
                              for rep in G.conjugacy.representatives])
            for j in range(n)]


def _dihedral_rows(G):
    n = G.params[0]
    coords = [G.coordinates[rep] for rep in G.conjugacy.representatives]
    signs = [(1, 1), (1, -1)] + ([(-1, 1), (-1, -1)] if n % 2 == 0 else [])
    rows = [ClassFunction(G, [e1 ** a * e2 ** b for a, b in coords]) for e1, e2 in signs]
    for h in range(1, (n - 1) // 2 + 1):
        values = []
        for a, b in coords:
            if b:
                values.append(0)
            else:
                values.append(Cyclotomic.root_of_unity(h * a, n) + Cyclotomic.root_of_unity(-h * a, n))
        rows.append(ClassFunction(G, values))
    return rows


def _quaternion_rows(G):
    units = [G.coordinates[rep] for rep in G.conjugacy.representatives]
    patterns = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    rows = []
    for pattern in patterns:
        values = []
        for unit in units:
            axis = next((i for i in range(3) if unit[i + 1]), None)
            values.append(1 if axis is None else pattern[axis])
        rows.append(ClassFunction(G, values))
    rows.append(ClassFunction(G, [2 * unit[0] for unit in units]))
    return rows


def _cycle_type(perm):
    return tuple(sorted((len(c) for c in Permutation(list(perm)).full_cyclic_form), reverse=True))


def _symmetric_rows(G):
    n = G.params[0]
    if n > 4:
        raise ValueError(f"No closed-form table for S{n}")
    perms = [G.points[rep] for rep in G.conjugacy.representatives]
    sign = [Permutation(list(p)).signature() for p in perms]
    fixed = [sum(1 for i, x in enumerate(p) if i == x) for p in perms]
    rows = [ClassFunction.constant(G, 1)]
    if n >= 2:
        rows.append(ClassFunction(G, sign))
    if n >= 3:
        rows.append(ClassFunction(G, [f - 1 for f in fixed]))
    if n == 4:
        rows.append(ClassFunction(G, [(f - 1) * s for f, s in zip(fixed, sign)]))
        two_dim = {(1, 1, 1, 1): 2, (2, 1, 1): 0, (2, 2): 2, (3, 1): -1, (4,): 0}
        rows.append(ClassFunction(G, [two_dim[_cycle_type(p)] for p in perms]))
    return rows


def _alternating_rows(G):
    index = {p: i for i, p in enumerate(G.points)}
    c = index[(1, 2, 0, 3)]
    klein = {g for g in range(G.order) if _cycle_type(G.points[g]) in ((1, 1, 1, 1), (2, 2))}

    def coset(g):
        for t in range(3):
            if G.multiply(G.inverses[G.power(c, t)], g) in klein:
                return t
        raise IdentityViolation("Element outside the Klein cosets")

    reps = G.conjugacy.representatives
    rows = [ClassFunction(G, [Cyclotomic.root_of_unity(j * coset(g), 3) for g in reps]) for j in range(3)]
    rows.append(ClassFunction(G, [sum(1 for i, x in enumerate(G.points[g]) if i == x) - 1 for g in reps]))
    return rows


def _product_rows(G):
    left, right = G.params
    m = right.order
    first, second = closed_form_table(left), closed_form_table(right)
    rows = []
    for chi, theta in cartesian(first.characters, second.characters):
        values = []
        for rep in G.conjugacy.representatives:
            g, h = divmod(rep, m)
            values.append(chi[left.conjugacy.class_of[g]] * theta[right.conjugacy.class_of[h]])
        rows.append(ClassFunction(G, values))
    return rows


_CLOSED_FORMS = {
    'cyclic': _cyclic_rows,
    'dihedral': _dihedral_rows,
    'quaternion8': _quaternion_rows,
    'symmetric': _symmetric_rows,
    'alternating': _alternating_rows,
    'product': _product_rows,
}


@lru_cache(maxsize=None)
def closed_form_table(G):
    """
    Table written down from the structure of a catalog group

    Raises:
        ValueError: No closed form for this group
    """
    if G.kind not in _CLOSED_FORMS:
        raise ValueError(f"No closed-form table for {G.name}")
    return CharacterTable(G, _ordered(_CLOSED_FORMS[G.kind](G)), 'closed-form')


@lru_cache(maxsize=None)
def character_table(G, method='dixon'):
    """
    Complete irreducible character table

    Args:
        G: FiniteGroup
        method: 'dixon' or 'closed-form'

    Returns:
        CharacterTable
    """
    started = time.perf_counter()
    if method == 'dixon':
        table = dixon_table(G)
    elif method == 'closed-form':
        table = closed_form_table(G)
    else:
        raise ValueError(f"Unknown table method {method!r}")
    logger.info(f"Character table of {G.name} ({method}): degrees {table.degrees} "
                f"in {time.perf_counter() - started:.3f}s")
    return table


# -- operations ------------------------------------------------------------

def adams(chi, k):
    """psi^k(chi)(g) = chi(g^k)"""
    if k < 1:
        raise ValueError(f"Adams operations need k >= 1, got {k}")
    chi = _as_class_function(chi)
    data = chi.group.conjugacy
    return ClassFunction(chi.group, [chi[data.power_class(c, k)] for c in range(len(data))])


def adams_adjoint(chi, k):
    """Sum of chi over all k-th roots of each class representative"""
    if k < 1:
        raise ValueError(f"Adams operations need k >= 1, got {k}")
    chi = _as_class_function(chi)
    G = chi.group
    values = []
    for c in range(len(G.conjugacy)):
        total = Cyclotomic.zero(G.conjugacy.exponent)
        for d, count in kth_root_counts(G, k, c).items():
            total = total + chi[d] * count
        values.append(total)
    return ClassFunction(G, values)


def newton_lambda(chi, i):
    """lambda^0..lambda^i of any virtual class function by the Newton recursion"""
    chi = _as_class_function(chi)
    psi = [None] + [adams(chi, r) for r in range(1, i + 1)]
    lam = [ClassFunction.constant(chi.group, 1)]
    for m in range(1, i + 1):
        total = ClassFunction.constant(chi.group, 0)
        for r in range(1, m + 1):
            total = total + psi[r] * lam[m - r] * (-1) ** (r - 1)
        lam.append(total.exact_divide(m))
    return lam


def newton_sigma(chi, i):
    """sigma^0..sigma^i of any virtual class function by the Newton recursion"""
    chi = _as_class_function(chi)
    psi = [None] + [adams(chi, r) for r in range(1, i + 1)]
    sigma = [ClassFunction.constant(chi.group, 1)]
    for m in range(1, i + 1):
        total = ClassFunction.constant(chi.group, 0)
        for r in range(1, m + 1):
            total = total + psi[r] * sigma[m - r]
        sigma.append(total.exact_divide(m))
    return sigma


def power_operations(chi, i):
    """
    Exterior and symmetric powers of a genuine character

    Args:
        chi: ClassFunction or VirtualCharacter with nonnegative coordinates
        i: Highest power, at least 1

    Returns:
        (lambdas, sigmas): lists of ClassFunctions for powers 1..i

    Raises:
        PreconditionError: chi is not a genuine character
    """
    if i < 1:
        raise ValueError(f"Power operations need i >= 1, got {i}")
    chi = _as_class_function(chi)
    table = character_table(chi.group)
    if not decompose(table, chi).is_genuine:
        raise PreconditionError(f"{chi} is not a genuine character; use virtual_sigma")
    lambdas = newton_lambda(chi, i)[1:]
    sigmas = newton_sigma(chi, i)[1:]
    for name, powers in (('lambda', lambdas), ('sigma', sigmas)):
        for m, cf in enumerate(powers, start=1):
            if not decompose(table, cf).is_genuine:
                raise IdentityViolation(f"{name}^{m} of a genuine character is not genuine: {cf}")
    return lambdas, sigmas


def _compositions(total):
    # all tuples of positive integers summing to total
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _compositions(total - first):
            yield (first,) + rest


def _genuine_powers(part, i):
    # lambda^0..lambda^i and sigma^0..sigma^i of a genuine character (zero above degree 0 for the empty one)
    G = part.table.group
    one = trivial_character(G)
    if not part.degree:
        zero = [ClassFunction.constant(G, 0)] * i
        return [one] + zero, [one] + zero
    lambdas, sigmas = power_operations(part, i)
    return [one] + lambdas, [one] + sigmas


def virtual_sigma(x, i):
    """
    sigma^i([M] - [N]) as an alternating sum of products of genuine symmetric powers

    The sum runs over a + b_1 + ... + b_u = i with every b_j >= 1, each term
    (-1)^u Sym^a(M) Sym^b_1(N) ... Sym^b_u(N).
    """
    if i < 1:
        raise ValueError(f"virtual_sigma needs i >= 1, got {i}")
    _, sig_m = _genuine_powers(x.positive_part(), i)
    _, sig_n = _genuine_powers(x.negative_part(), i)
    total = ClassFunction.constant(x.table.group, 0)
    for a in range(i + 1):
        for parts in _compositions(i - a):
            term = sig_m[a]
            for b in parts:
                term = term * sig_n[b]
            total = total + term * (-1) ** len(parts)
    return decompose(x.table, total)


def virtual_lambda(x, i):
    """lambda^i([M] - [N]) = sum over a + b = i of (-1)^b lambda^a(M) sigma^b(N)"""
    if i < 1:
        raise ValueError(f"virtual_lambda needs i >= 1, got {i}")
    lam_m, _ = _genuine_powers(x.positive_part(), i)
    _, sig_n = _genuine_powers(x.negative_part(), i)
    total = ClassFunction.constant(x.table.group, 0)
    for a in range(i + 1):
        total = total + lam_m[a] * sig_n[i - a] * (-1) ** (i - a)
    return decompose(x.table, total)


def quotient_character(G, normal):
    """Permutation character of G acting on the cosets of a normal subgroup"""
    index = G.order // len(normal)
    return ClassFunction(G, [index if rep in normal else 0 for rep in G.conjugacy.representatives])


# -- Frobenius-Schur -------------------------------------------------------

@dataclass(frozen=True)
class FSClassification:
    """Real, complex or quaternionic type of each irreducible"""
    table: CharacterTable
    indicators: tuple
    types: tuple
    conjugate_pairs: tuple

    def to_json(self):
        return {
            'group': self.table.group.name,
            'indicators': list(self.indicators),
            'types': list(self.types),
            'conjugate_pairs': [list(pair) for pair in self.conjugate_pairs],
        }


def fs_classify(table):
    """
    Frobenius-Schur indicators <psi^2 chi, 1> of every irreducible

    Returns:
        FSClassification; complex irreducibles are paired with their conjugates
    """
    triv = trivial_character(table.group)
    indicators, types = [], []
    for chi in table.characters:
        nu = pairing(adams(chi, 2), triv)
        if not nu.is_rational() or nu.rational_value() not in (1, 0, -1):
            raise IdentityViolation(f"Frobenius-Schur indicator out of range: {nu}")
        nu = int(nu)
        indicators.append(nu)
        types.append({1: REAL, 0: COMPLEX, -1: QUATERNIONIC}[nu])

    pairs = []
    for i, chi in enumerate(table.characters):
        if types[i] != COMPLEX:
            continue
        conj = chi.conjugate()
        j = next(j for j, theta in enumerate(table.characters) if theta == conj)
        if i < j:
            pairs.append((i, j))
    return FSClassification(table, tuple(indicators), tuple(types), tuple(pairs))


def in_symplectic_subgroup(x, classification=None):
    """
    Membership in 2 K^R + (1 + j) K^C + K^H

    Returns:
        (member, witness) where witness lists the violating coordinates
    """
    classification = classification or fs_classify(x.table)
    violations = []
    for i, (kind, a) in enumerate(zip(classification.types, x.coefficients)):
        if kind == REAL and a % 2:
            violations.append({'index': i, 'type': REAL, 'coefficient': a})
    for i, j in classification.conjugate_pairs:
        if x.coefficients[i] != x.coefficients[j]:
            violations.append({'pair': [i, j], 'type': COMPLEX,
                               'coefficients': [x.coefficients[i], x.coefficients[j]]})
    return not violations, {'coefficients': list(x.coefficients), 'violations': violations}


# -- verification ----------------------------------------------------------

def verify_orthogonality(table):
    started = time.perf_counter()
    chars = table.characters
    bad = []
    for a in range(len(chars)):
        for b in range(a, len(chars)):
            if pairing(chars[a], chars[b]) != (1 if a == b else 0):
                bad.append([a, b])
    square_sum = sum(d * d for d in table.degrees)
    passed = not bad and square_sum == table.group.order and len(chars) == len(table.group.conjugacy)
    witness = {'non_orthogonal': bad, 'degree_square_sum': square_sum, 'degrees': list(table.degrees)}
    return VerificationReport.build(
        'orthogonality', 'Irreducible characters are orthonormal and their degrees square-sum to the order',
        {'group': table.group.name, 'method': table.method}, passed, witness, started)


def verify_character_table(G):
    """Dixon table agrees with the closed form when one exists"""
    started = time.perf_counter()
    dixon = character_table(G)
    witness = {'degrees': list(dixon.degrees)}
    try:
        closed = closed_form_table(G)
    except ValueError:
        closed = None
    passed = verify_orthogonality(dixon).ok
    if closed is not None:
        passed = passed and verify_orthogonality(closed).ok
        same = set(dixon.characters) == set(closed.characters)
        witness['closed_form_agrees'] = same
        passed = passed and same
    return VerificationReport.build(
        'character-tables', 'Modular character table is orthonormal and matches the closed form',
        {'group': G.name}, passed, witness, started)


def verify_regular_fixed(G, k):
    """psi^k fixes the regular character; expected to fail when gcd(k, |G|) > 1"""
    started = time.perf_counter()
    reg = regular_character(G)
    image = adams(reg, k)
    passed = image == reg
    return VerificationReport.build(
        'regular-fixed', 'Adams operation coprime to the order fixes the regular character',
        {'group': G.name, 'k': k}, passed, {'image': image.to_json()}, started,
        expected_failure=gcd(k, G.order) != 1)


def inverse_exponent(k, e):
    """k' with k k' = 1 mod e (1 for the trivial exponent)"""
    return 1 if e == 1 else pow(k, -1, e)


def verify_adjoint_is_inverse_adams(G, k, k_prime=None):
    """
    The root-sum adjoint of psi^k equals psi^k' for coprime k

    Raises:
        PreconditionError: gcd(k, |G|) > 1 or k k' is not 1 mod the exponent
    """
    e = G.conjugacy.exponent
    if gcd(k, G.order) != 1:
        raise PreconditionError(f"k={k} is not coprime to |{G.name}|={G.order}")
    if k_prime is None:
        k_prime = inverse_exponent(k, e)
    if (k * k_prime) % e != 1 % e:
        raise PreconditionError(f"{k}*{k_prime} is not 1 mod {e}")
    started = time.perf_counter()
    mismatches = []
    for idx, chi in enumerate(character_table(G).characters):
        if adams_adjoint(chi, k) != adams(chi, k_prime):
            mismatches.append(idx)
    return VerificationReport.build(
        'adjoint-adams', 'Root-sum adjoint of an invertible Adams operation is the inverse Adams operation',
        {'group': G.name, 'k': k, 'k_prime': k_prime}, not mismatches, {'mismatched_rows': mismatches}, started)


def verify_adjoint_pairing(G, k):
    """<adjoint psi^k chi, theta> == <chi, psi^k theta> over all irreducible pairs"""
    started = time.perf_counter()
    chars = character_table(G).characters
    bad = [[a, b] for a, chi in enumerate(chars) for b, theta in enumerate(chars)
           if pairing(adams_adjoint(chi, k), theta) != pairing(chi, adams(theta, k))]
    return VerificationReport.build(
        'adjoint-pairing', 'Root-sum operation is the pairing adjoint of the Adams operation',
        {'group': G.name, 'k': k}, not bad, {'bad_pairs': bad}, started)


def verify_periodicity(G, k):
    started = time.perf_counter()
    e = G.conjugacy.exponent
    bad = [idx for idx, chi in enumerate(character_table(G).characters) if adams(chi, k) != adams(chi, k + e)]
    return VerificationReport.build(
        'periodicity', 'Adams operations are periodic in k with period the exponent',
        {'group': G.name, 'k': k, 'exponent': e}, not bad, {'mismatched_rows': bad}, started)


def verify_adams_composition(G, k, l):
    started = time.perf_counter()
    bad = [idx for idx, chi in enumerate(character_table(G).characters)
           if adams(adams(chi, l), k) != adams(chi, k * l)]
    return VerificationReport.build(
        'adams-composition', 'Adams operations compose multiplicatively',
        {'group': G.name, 'k': k, 'l': l}, not bad, {'mismatched_rows': bad}, started)


def verify_quaternion_symplectic(G, max_k=None):
    """The root-sum operations send quaternionic irreducibles into the symplectic subgroup"""
    started = time.perf_counter()
    table = character_table(G)
    classification = fs_classify(table)
    max_k = max_k or 2 * G.conjugacy.exponent
    failures = []
    checked = 0
    plain_adams = []
    for idx, kind in enumerate(classification.types):
        if kind != QUATERNIONIC:
            continue
        for k in range(1, max_k + 1):
            member, witness = in_symplectic_subgroup(decompose(table, adams_adjoint(table[idx], k)), classification)
            checked += 1
            if not member:
                failures.append({'row': idx, 'k': k, **witness})
        # the trivial coefficient of psi^2 chi is the indicator -1, so plain Adams leaves the subgroup
        member, witness = in_symplectic_subgroup(decompose(table, adams(table[idx], 2)), classification)
        plain_adams.append({'row': idx, 'coefficients': witness['coefficients'], 'leaves_symplectic': not member})
    leaves = all(entry['leaves_symplectic'] for entry in plain_adams)
    return VerificationReport.build(
        'quaternion-symplectic',
        'Root-sum images of quaternionic characters are symplectic while psi^2 images are not',
        {'group': G.name, 'max_k': max_k}, not failures and leaves,
        {'checked': checked, 'failures': failures, 'plain_adams': plain_adams,
         'plain_adams_leaves_symplectic': leaves},
        started)


def verify_koszul(chi, i):
    """sum_j (-1)^j lambda^j sigma^(i-j) vanishes"""
    started = time.perf_counter()
    chi = _as_class_function(chi)
    lambdas, sigmas = power_operations(chi, i)
    lam = [trivial_character(chi.group)] + lambdas
    sig = [trivial_character(chi.group)] + sigmas
    total = ClassFunction.constant(chi.group, 0)
    for j in range(i + 1):
        total = total + lam[j] * sig[i - j] * (-1) ** j
    return VerificationReport.build(
        'koszul', 'Alternating sum of exterior times symmetric powers vanishes',
        {'group': chi.group.name, 'chi': chi.to_json(), 'i': i}, total.is_zero(),
        {'sum': total.to_json()}, started)


def verify_virtual_sigma(x, i):
    """Alternating-sum formula for sigma^i of a virtual class against the Newton recursion"""
    started = time.perf_counter()
    by_formula = virtual_sigma(x, i)
    by_newton = decompose(x.table, newton_sigma(x, i)[i])
    return VerificationReport.build(
        'virtual-sigma', 'Symmetric power of a difference matches the Newton recursion',
        {'group': x.table.group.name, 'x': list(x.coefficients), 'i': i}, by_formula == by_newton,
        {'formula': list(by_formula.coefficients), 'newton': list(by_newton.coefficients)}, started)


def verify_virtual_lambda(x, i):
    started = time.perf_counter()
    by_formula = virtual_lambda(x, i)
    by_newton = decompose(x.table, newton_lambda(x, i)[i])
    return VerificationReport.build(
        'virtual-lambda', 'Exterior power of a difference matches the Newton recursion',
        {'group': x.table.group.name, 'x': list(x.coefficients), 'i': i}, by_formula == by_newton,
        {'formula': list(by_formula.coefficients), 'newton': list(by_newton.coefficients)}, started)


def verify_multiplicativity(chi, theta, i):
    started = time.perf_counter()
    chi, theta = _as_class_function(chi), _as_class_function(theta)
    lhs = adams(chi * theta, i)
    rhs = adams(chi, i) * adams(theta, i)
    return VerificationReport.build(
        'multiplicativity', 'Adams operations are multiplicative',
        {'group': chi.group.name, 'i': i}, lhs == rhs,
        {'lhs': lhs.to_json(), 'rhs': rhs.to_json()}, started)


def verify_newton_adams(chi, k):
    """psi^k equals the Newton polynomial evaluated at the exterior powers"""
    started = time.perf_counter()
    chi = _as_class_function(chi)
    lambdas, _ = power_operations(chi, k)
    via_newton = evaluate(newton_poly(k, 'e'), lambdas)
    if isinstance(via_newton, int):
        via_newton = ClassFunction.constant(chi.group, via_newton)
    direct = adams(chi, k)
    return VerificationReport.build(
        'newton-adams', 'Newton polynomial of the exterior powers is the Adams operation',
        {'group': chi.group.name, 'chi': chi.to_json(), 'k': k}, direct == via_newton,
        {'adams': direct.to_json(), 'newton': via_newton.to_json()}, started)


def verify_quotient_fixed(G, normal, k):
    """psi^k fixes the permutation character on G/N; expected to fail when gcd(k, [G:N]) > 1"""
    started = time.perf_counter()
    pi = quotient_character(G, normal)
    image = adams(pi, k)
    index = G.order // len(normal)
    return VerificationReport.build(
        'quotient-fixed', 'Coprime Adams operation fixes the quotient permutation character',
        {'group': G.name, 'normal_order': len(normal), 'k': k}, image == pi,
        {'image': image.to_json()}, started, expected_failure=gcd(k, index) != 1)
