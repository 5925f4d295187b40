"""
Integral lattices with a group action

Free Z[G]-modules of rank n have the permutation basis B = G x {0..n-1},
label t*|G| + g for (g, t), and G acts on labels by left multiplication.
Lattices C(beta) are modeled over Z localized at a prime p: every index
and basis is a finite computation with the same p-part.
"""
import os
import time
import logging
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from math import comb, gcd

from sympy import QQ, factorint
from sympy.polys.matrices import DomainMatrix

from characters import ClassFunction, newton_sigma, regular_character
from exact_core import IntMatrix, lattice_basis, lattice_index, smith_normal_form
from multilinear import from_dense, induced_columns, symmetric_basis, tensor_columns, to_dense
from reports import BudgetExceeded, PreconditionError, VerificationReport

logger = logging.getLogger(__name__)

DEFAULT_ORBIT_BUDGET = 1_000_000


def orbit_budget():
    """Ceiling on enumerated configurations, from WORKBENCH_ORBIT_BUDGET"""
    return int(os.environ.get('WORKBENCH_ORBIT_BUDGET', DEFAULT_ORBIT_BUDGET))


class GammaLattice:
    """
    Z^rank with one integral matrix per group element

    Args:
        group: FiniteGroup
        matrices: IntMatrix per element, in element order
        free_rank: n when the standard basis is the permutation basis of Z[G]^n
    """

    def __init__(self, group, matrices, free_rank=None):
        self.group = group
        self.matrices = tuple(matrices)
        if len(self.matrices) != group.order:
            raise ValueError(f"Expected {group.order} action matrices, got {len(self.matrices)}")
        self.rank = self.matrices[0].rows
        self.free_rank = free_rank

    def __repr__(self):
        return f"GammaLattice({self.group.name}, rank={self.rank})"

    @classmethod
    def free(cls, group, n):
        """Z[G]^n on its permutation basis"""
        size = group.order * n
        matrices = []
        for gamma in range(group.order):
            rows = [[0] * size for _ in range(size)]
            for label in range(size):
                t, g = divmod(label, group.order)
                rows[t * group.order + group.multiply(gamma, g)][label] = 1
            matrices.append(IntMatrix(rows))
        return cls(group, matrices, free_rank=n)

    def is_equivariant(self, beta):
        return all(beta @ m == m @ beta for m in self.matrices)

    def check_action(self):
        G = self.group
        return all(self.matrices[g] @ self.matrices[h] == self.matrices[G.multiply(g, h)]
                   for g in range(G.order) for h in range(G.order))


# -- orbit-stabilizer decompositions -----------------------------------------

@dataclass(frozen=True)
class OrbitRecord:
    representative: tuple
    stabilizer: tuple
    orbit_size: int


@dataclass
class OrbitDecomposition:
    """G-orbits on tuples of multisets over the permutation basis"""
    group: object
    n: int
    ks: tuple
    orbits: list = field(default_factory=list)
    total: int = 0

    @property
    def stabilizer_orders(self):
        return sorted({len(o.stabilizer) for o in self.orbits})

    @property
    def is_free(self):
        return all(len(o.stabilizer) == 1 for o in self.orbits)

    def permutation_character(self):
        """Number of configurations fixed by each class representative"""
        G = self.group
        values = []
        for gamma in G.conjugacy.representatives:
            fixed = 0
            for orbit in self.orbits:
                stab = set(orbit.stabilizer)
                # fixed points of gamma on G/S: #{x : x^-1 gamma x in S} / |S|
                hits = sum(1 for x in range(G.order)
                           if G.multiply(G.multiply(G.inverses[x], gamma), x) in stab)
                fixed += hits // len(stab)
            values.append(fixed)
        return ClassFunction(G, values)

    def to_json(self):
        summary = {}
        for orbit in self.orbits:
            key = str(len(orbit.stabilizer))
            summary[key] = summary.get(key, 0) + 1
        return {
            'group': self.group.name,
            'n': self.n,
            'ks': list(self.ks),
            'total': self.total,
            'orbit_count': len(self.orbits),
            'free': self.is_free,
            'orbits_by_stabilizer_order': summary,
            'orbits': [{
                'representative': [list(h) for h in o.representative],
                'stabilizer': [self.group.labels[g] for g in o.stabilizer],
                'orbit_size': o.orbit_size,
            } for o in self.orbits],
        }


def configuration_count(order, n, ks):
    size = order * n
    total = 1
    for k in ks:
        total *= comb(size + k - 1, k)
    return total


def sym_power_orbits(G, n, ks):
    """
    Orbits of G on the basis monomials of Sym^k1(Z[G]^n) x ... x Sym^kr(Z[G]^n)

    Args:
        G: FiniteGroup
        n: Free rank, at least 1
        ks: Powers k_1..k_r, each at least 1

    Returns:
        OrbitDecomposition with canonical (lexicographically least) representatives

    Raises:
        BudgetExceeded: The configuration count is above the budget
    """
    ks = tuple(int(k) for k in ks)
    if n < 1 or not ks or any(k < 1 for k in ks):
        raise ValueError(f"Need n >= 1 and all k >= 1, got n={n}, ks={ks}")
    total = configuration_count(G.order, n, ks)
    budget = orbit_budget()
    if total > budget:
        raise BudgetExceeded(f"{total} configurations exceed the budget of {budget}", total)

    size = G.order * n
    act = [[t * G.order + G.multiply(gamma, g) for t in range(n) for g in range(G.order)]
           for gamma in range(G.order)]

    def move(gamma, config):
        return tuple(tuple(sorted(act[gamma][b] for b in h)) for h in config)

    decomposition = OrbitDecomposition(G, n, ks, total=total)
    seen = set()
    for config in product(*(combinations_with_replacement(range(size), k) for k in ks)):
        if config in seen:
            continue
        orbit = set()
        stabilizer = []
        for gamma in range(G.order):
            image = move(gamma, config)
            orbit.add(image)
            if image == config:
                stabilizer.append(gamma)
        seen |= orbit
        decomposition.orbits.append(OrbitRecord(config, tuple(stabilizer), len(orbit)))
    logger.debug(f"{G.name} n={n} ks={ks}: {len(decomposition.orbits)} orbits over {total} configurations")
    return decomposition


def verify_orbit_stabilizers(G, n, ks):
    """
    Stabilizer orders divide gcd(k_1..k_r, |G|), with a free decomposition when it is 1
    """
    started = time.perf_counter()
    decomposition = sym_power_orbits(G, n, ks)
    g = gcd(*ks, G.order)
    orders = decomposition.stabilizer_orders
    divides = all(g % s == 0 for s in orders)
    conserved = sum(o.orbit_size for o in decomposition.orbits) == decomposition.total
    orbit_stabilizer = all(o.orbit_size * len(o.stabilizer) == G.order for o in decomposition.orbits)
    free_ok = g != 1 or (decomposition.is_free and len(decomposition.orbits) * G.order == decomposition.total)

    expected = ClassFunction.constant(G, 1)
    base = regular_character(G) * n
    for k in ks:
        expected = expected * newton_sigma(base, k)[k]
    shadow = decomposition.permutation_character() == expected

    passed = divides and conserved and orbit_stabilizer and free_ok and shadow
    witness = {
        'gcd': g,
        'stabilizer_orders': orders,
        'orbit_count': len(decomposition.orbits),
        'total': decomposition.total,
        'free': decomposition.is_free,
        'character_matches': shadow,
    }
    return VerificationReport.build(
        'orbit-stabilizer', 'Stabilizers of symmetric-power monomials divide gcd of the powers and the order',
        {'group': G.name, 'n': n, 'ks': list(ks)}, passed, witness, started)


# -- the lattices C(beta) ----------------------------------------------------

def p_part(value, p):
    value = abs(int(value))
    return p ** factorint(value).get(p, 0) if value else 0


def lattice_c_beta(F, beta, p):
    """
    Preimage lattice beta(F localized at p) intersected with F

    Args:
        F: GammaLattice
        beta: Equivariant IntMatrix with nonzero determinant
        p: Prime

    Returns:
        (basis, index): HNF basis as IntMatrix columns and [F : C(beta)]

    Raises:
        PreconditionError: beta is singular or does not commute with the action
    """
    if beta.det() == 0:
        raise PreconditionError("beta is singular")
    if not F.is_equivariant(beta):
        raise PreconditionError("beta does not commute with the group action")
    return _c_beta(beta, p)


def _c_beta(beta, p):
    U, D, _ = smith_normal_form(beta)
    scale = [p_part(D[i, i], p) for i in range(D.rows)]
    u_inv = U.inverse_unimodular()
    columns = [[u_inv[r, j] * scale[j] for r in range(u_inv.rows)] for j in range(u_inv.cols)]
    basis = lattice_basis(IntMatrix.from_columns(columns, beta.rows))
    index = lattice_index(basis)
    logger.debug(f"C(beta) at p={p}: SNF scales {scale}, index {index}")
    return basis, index


def restrict_action(F, basis):
    """
    Group action on a full-rank invariant sublattice in its own basis

    Raises:
        PreconditionError: The sublattice is not invariant
    """
    inverse = DomainMatrix.from_list(basis.tolist(), QQ).inv()
    matrices = []
    for m in F.matrices:
        moved = DomainMatrix.from_list((m @ basis).tolist(), QQ)
        rows = (inverse * moved).to_list()
        if any(x.denominator != 1 for row in rows for x in row):
            raise PreconditionError("Sublattice is not invariant under the group")
        matrices.append(IntMatrix([[int(x.numerator) for x in row] for row in rows]))
    return GammaLattice(F.group, matrices)


def sym_power_matrix(M, k):
    """Induced matrix on Sym^k in the monomial basis"""
    basis = symmetric_basis(M.cols, k)
    columns = induced_columns(from_dense(M.tolist()), basis, 'symmetric')
    return IntMatrix(to_dense(columns, len(basis)))


def kronecker(matrices):
    columns = tensor_columns([(from_dense(m.tolist()), m.rows) for m in matrices])
    size = 1
    for m in matrices:
        size *= m.rows
    return IntMatrix(to_dense(columns, size))


def verify_sym_lattice_compat(F, betas, ks, p):
    """
    Tensor of Sym^{k_i}(C(beta_i)) against C(tensor of Sym^{k_i}(beta_i))

    Raises:
        PreconditionError: gcd(k_1..k_r, |G|) > 1, or a beta is singular or not equivariant
    """
    ks = tuple(int(k) for k in ks)
    if len(betas) != len(ks):
        raise ValueError("Need one beta per power")
    if gcd(*ks, F.group.order) != 1:
        raise PreconditionError(f"gcd of {ks} and |{F.group.name}| is not 1")
    started = time.perf_counter()
    c_bases = [lattice_c_beta(F, beta, p)[0] for beta in betas]
    generated = lattice_basis(kronecker([sym_power_matrix(c, k) for c, k in zip(c_bases, ks)]))
    big_beta = kronecker([sym_power_matrix(beta, k) for beta, k in zip(betas, ks)])
    target, target_index = _c_beta(big_beta, p)
    generated_index = lattice_index(generated)
    expected_index = p_part(big_beta.det(), p)
    passed = generated == target and generated_index == target_index == expected_index
    witness = {
        'index': generated_index,
        'c_index': target_index,
        'det_p_part': expected_index,
        'same_lattice': generated == target,
    }
    if not passed:
        witness['generated'] = generated.tolist()
        witness['target'] = target.tolist()
    return VerificationReport.build(
        'lattice-sym-compat', 'Symmetric powers of C(beta) lattices are the C lattice of the symmetric power',
        {'group': F.group.name, 'betas': [b.tolist() for b in betas], 'ks': list(ks), 'p': p},
        passed, witness, started)


SUGGESTED_BETAS = {
    'C2': (([[2, 1], [1, 2]], 3), ([[3, 0], [0, 3]], 3), ([[1, 2], [2, 1]], 3)),
    'C3': (([[1, 0, 1], [1, 1, 0], [0, 1, 1]], 2),
           ([[2, 0, 1], [1, 2, 0], [0, 1, 2]], 3),
           ([[3, 0, 0], [0, 3, 0], [0, 0, 3]], 3)),
}


def suggested_betas(G):
    """Fixed equivariant (beta, p) pairs on Z[G] for the groups the suite covers"""
    if G.name not in SUGGESTED_BETAS:
        raise ValueError(f"No suggested beta matrices for {G.name}")
    return [(IntMatrix(rows), p) for rows, p in SUGGESTED_BETAS[G.name]]
