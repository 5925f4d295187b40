import json
import time
import logging
from functools import lru_cache
from itertools import permutations, product
from math import prod
from pathlib import Path

from sympy import QQ
from sympy.combinatorics import Permutation
from sympy.polys.matrices import DomainMatrix
from sympy.utilities.iterables import multiset_permutations

from characters import ClassFunction, character_table, newton_lambda, newton_sigma
from exact_core import Cyclotomic, as_cyclotomic, cyc_normalize
from multilinear import (apply, compose, exterior_basis, induced_columns, radix_index, sort_sign,
                         symmetric_basis, tensor_columns, trace)
from partitions import Partition, partitions_of, transpose
from reports import PreconditionError, VerificationReport
from symfunc import cauchy_p, evaluate, schur_in_e

logger = logging.getLogger(__name__)


class EquivariantModule:
    """
    Finite-dimensional representation over Q(zeta_e), one matrix per group element

    Matrices are sparse column lists computed on demand by `action` and
    cached, so characters only touch class representatives.
    """

    def __init__(self, group, dim, action, labels=None, name='V'):
        """
        Initialize the module

        Args:
            group: FiniteGroup
            dim: Dimension
            action: Callable g -> sparse columns of the matrix of g
            labels: Optional basis labels
            name: Display name
        """
        self.group = group
        self.dim = dim
        self.name = name
        self.labels = tuple(labels) if labels is not None else tuple(range(dim))
        self._action = action
        self._matrices = {}

    def __repr__(self):
        return f"EquivariantModule({self.name}, dim={self.dim}, group={self.group.name})"

    def matrix(self, g):
        if g not in self._matrices:
            self._matrices[g] = tuple(self._action(g))
        return self._matrices[g]

    def trace(self, g):
        return trace(self.matrix(g))

    def character(self):
        """Trace at each class representative"""
        return ClassFunction(self.group, [self.trace(rep) for rep in self.group.conjugacy.representatives])

    def check_action(self):
        """True if matrix(g) matrix(h) == matrix(gh) for every pair"""
        G = self.group
        if not all(self.matrix(G.identity)[j] == {j: 1} for j in range(self.dim)):
            return False
        for g in range(G.order):
            for h in range(G.order):
                if list(compose(self.matrix(g), self.matrix(h))) != list(self.matrix(G.multiply(g, h))):
                    return False
        return True

    def to_json(self):
        return {
            'group': self.group.name,
            'module': self.name,
            'dimension': self.dim,
            'character': self.character().to_json(),
        }


def zero_module(group, name='0'):
    return EquivariantModule(group, 0, lambda g: [], (), name)


def _check_group(V, W):
    if V.group is not W.group:
        raise ValueError(f"Modules over different groups: {V.group.name} vs {W.group.name}")


def tensor_many(modules, name=None):
    """Tensor product of several modules; labels are tuples of factor labels"""
    for other in modules[1:]:
        _check_group(modules[0], other)
    group = modules[0].group
    dims = [V.dim for V in modules]
    labels = list(product(*(V.labels for V in modules)))
    name = name or " ⊗ ".join(V.name for V in modules)

    def action(g):
        return tensor_columns([(V.matrix(g), V.dim) for V in modules])

    return EquivariantModule(group, prod(dims), action, labels, name)


def tensor(V, W):
    """
    Tensor product with the diagonal action

    Raises:
        ValueError: V and W belong to different groups
    """
    return tensor_many([V, W], f"{V.name} ⊗ {W.name}")


def direct_sum(modules, name=None):
    for other in modules[1:]:
        _check_group(modules[0], other)
    offsets, total = [], 0
    for V in modules:
        offsets.append(total)
        total += V.dim
    labels = [(n, label) for n, V in enumerate(modules) for label in V.labels]

    def action(g):
        columns = []
        for offset, V in zip(offsets, modules):
            for col in V.matrix(g):
                columns.append({offset + r: a for r, a in col.items()})
        return columns

    return EquivariantModule(modules[0].group, total, action, labels, name or " + ".join(V.name for V in modules))


def _power_module(V, i, kind):
    basis = exterior_basis(V.dim, i) if kind == 'exterior' else symmetric_basis(V.dim, i)
    prefix = 'Λ' if kind == 'exterior' else 'Sym'

    def action(g):
        return induced_columns(V.matrix(g), basis, kind)

    return EquivariantModule(V.group, len(basis), action, basis, f"{prefix}^{i}({V.name})")


def exterior_power(V, i):
    """
    Raises:
        ValueError: i outside 0..dim V
    """
    if not 0 <= i <= V.dim:
        raise ValueError(f"Exterior power {i} out of range for dimension {V.dim}")
    return _power_module(V, i, 'exterior')


def symmetric_power(V, i):
    if i < 0:
        raise ValueError(f"Symmetric power needs i >= 0, got {i}")
    return _power_module(V, i, 'symmetric')


# -- the map d_lambda --------------------------------------------------------

@lru_cache(maxsize=None)
def _signed_arrangements(k):
    return tuple((Permutation(list(p)).signature(), p) for p in permutations(range(k)))


def schur_map(d, lam):
    """
    Columns of d_lam: tensor of Λ^{lam_i} -> tensor of Sym^{lam~_j}

    Each row's wedge is comultiplied into its cells with signed shuffles;
    the cells of column j are multiplied into Sym^{lam~_j}.

    Returns:
        (columns, target_labels) with target labels tuples of multisets
    """
    conj = transpose(lam)
    target_bases = [symmetric_basis(d, k) for k in conj]
    target_index = [{b: n for n, b in enumerate(basis)} for basis in target_bases]
    target_dims = [len(basis) for basis in target_bases]
    source = product(*(exterior_basis(d, part) for part in lam))

    columns = []
    for rows in source:
        column = {}
        for choice in product(*(_signed_arrangements(len(subset)) for subset in rows)):
            sign = 1
            cells = []
            for subset, (s, perm) in zip(rows, choice):
                sign *= s
                cells.append([subset[p] for p in perm])
            key = []
            for j, height in enumerate(conj):
                key.append(target_index[j][tuple(sorted(cells[i][j] for i in range(height)))])
            position = radix_index(key, target_dims)
            column[position] = column.get(position, 0) + sign
        columns.append({r: a for r, a in column.items() if a})
    return columns, list(product(*target_bases))


def coschur_map(d, lam):
    """
    Columns of the dual map: tensor of Sym^{lam_i} -> tensor of Λ^{lam~_j}

    Rows are comultiplied by distinct arrangements of their multisets, and
    the cells of column j are wedged with the sign of the sorting permutation.
    """
    conj = transpose(lam)
    target_bases = [exterior_basis(d, k) for k in conj]
    target_index = [{b: n for n, b in enumerate(basis)} for basis in target_bases]
    target_dims = [len(basis) for basis in target_bases]
    source = product(*(symmetric_basis(d, part) for part in lam))

    columns = []
    for rows in source:
        column = {}
        for cells in product(*(list(multiset_permutations(list(multiset))) for multiset in rows)):
            sign = 1
            key = []
            for j, height in enumerate(conj):
                s, ordered = sort_sign(cells[i][j] for i in range(height))
                sign *= s
                if not sign:
                    break
                key.append(target_index[j][ordered])
            if not sign:
                continue
            position = radix_index(key, target_dims)
            column[position] = column.get(position, 0) + sign
        columns.append({r: a for r, a in column.items() if a})
    return columns, list(product(*target_bases))


def _rank_and_basis(columns, nrows):
    """Pivot columns and pivot rows of an integral sparse matrix over QQ"""
    if not columns or not nrows:
        return (), (), None
    dense = DomainMatrix.from_list([[col.get(r, 0) for col in columns] for r in range(nrows)], QQ)
    _, col_pivots = dense.rref()
    if not col_pivots:
        return (), (), None
    basis = dense.extract(list(range(nrows)), list(col_pivots))
    _, row_pivots = basis.transpose().rref()
    inverse = basis.extract(list(row_pivots), list(range(len(col_pivots)))).inv()
    return tuple(col_pivots), tuple(row_pivots), inverse.to_list()


def image_module(target, columns, name):
    """
    Submodule of `target` spanned by integral columns, with the restricted action

    The columns must span a submodule; the image is computed over QQ.
    """
    col_pivots, row_pivots, inverse = _rank_and_basis(columns, target.dim)
    if not col_pivots:
        return zero_module(target.group, name)
    basis = [columns[c] for c in col_pivots]
    rank = len(basis)

    def action(g):
        result = []
        for b in basis:
            moved = apply(target.matrix(g), b)
            restricted = [moved.get(r, 0) for r in row_pivots]
            col = {}
            for s in range(rank):
                total = 0
                for t in range(rank):
                    if inverse[s][t] and restricted[t]:
                        total = restricted[t] * inverse[s][t] + total
                if total:
                    col[s] = total
            result.append(col)
        return result

    return EquivariantModule(target.group, rank, action, None, name)


def schur_module(V, lam):
    """
    Image of d_lam, with the group acting through the target

    A row longer than dim V gives the zero module.
    """
    lam = _as_partition(lam)
    if lam.weight < 1:
        raise ValueError("Schur modules need a nonempty partition")
    name = f"L{lam}({V.name})"
    if lam[0] > V.dim:
        return zero_module(V.group, name)
    columns, _ = schur_map(V.dim, lam)
    target = tensor_many([symmetric_power(V, k) for k in transpose(lam)])
    module = image_module(target, columns, name)
    logger.debug(f"{name}: dimension {module.dim} inside {target.dim}")
    return module


def coschur_module(V, lam):
    """Image of the dual map into the tensor of exterior powers"""
    lam = _as_partition(lam)
    if lam.weight < 1:
        raise ValueError("coSchur modules need a nonempty partition")
    name = f"K{lam}({V.name})"
    if len(lam) > V.dim:
        return zero_module(V.group, name)
    columns, _ = coschur_map(V.dim, lam)
    target = tensor_many([exterior_power(V, k) for k in transpose(lam)])
    return image_module(target, columns, name)


@lru_cache(maxsize=None)
def schur_dimension(d, lam):
    if lam[0] > d:
        return 0
    columns, labels = schur_map(d, lam)
    return len(_rank_and_basis(columns, len(labels))[0])


@lru_cache(maxsize=None)
def coschur_dimension(d, lam):
    if len(lam) > d:
        return 0
    columns, labels = coschur_map(d, lam)
    return len(_rank_and_basis(columns, len(labels))[0])


def _as_partition(lam):
    if isinstance(lam, Partition):
        return lam
    if isinstance(lam, str):
        return Partition.parse(lam)
    return Partition(tuple(lam))


# -- catalog -----------------------------------------------------------------

def _permutation_module(G, images, name):
    return EquivariantModule(G, len(images[0]), lambda g: [{images[g][i]: 1} for i in range(len(images[0]))],
                             None, name)


def _linear_module(G, index):
    table = character_table(G)
    chi = table[index]
    if chi.degree != 1:
        raise ValueError(f"Character {index} of {G.name} has degree {chi.degree}, not 1")
    class_of = G.conjugacy.class_of
    return EquivariantModule(G, 1, lambda g: [{0: chi[class_of[g]]}], None, f"linear:{index}")


def _rotation_module(G, h):
    if G.kind != 'dihedral':
        raise ValueError(f"rotation modules need a dihedral group, got {G.name}")
    n, e = G.params[0], G.conjugacy.exponent

    def action(g):
        a, b = G.coordinates[g]
        up = as_cyclotomic(Cyclotomic.root_of_unity(h * a, n), e)
        down = as_cyclotomic(Cyclotomic.root_of_unity(-h * a, n), e)
        return [{0: up}, {1: down}] if b == 0 else [{1: down}, {0: up}]

    return EquivariantModule(G, 2, action, None, f"rotation:{h}")


def _quaternion_module(G):
    if G.kind != 'quaternion8':
        raise ValueError(f"the quaternion module needs Q8, got {G.name}")
    i4 = Cyclotomic.root_of_unity(1, 4)

    def action(g):
        a, b, c, d = G.coordinates[g]
        # a + b i + c j + d k with i -> diag(z, -z), j -> [[0, -1], [1, 0]]
        rows = [[i4 * b + a, i4 * (-d) - c], [i4 * (-d) + c, i4 * (-b) + a]]
        return [{r: rows[r][j] for r in range(2) if rows[r][j]} for j in range(2)]

    return EquivariantModule(G, 2, action, None, 'quaternion')


def _standard_module(G):
    if G.points is None or G.kind != 'symmetric':
        raise ValueError(f"the standard module needs a symmetric group, got {G.name}")
    n = len(G.points[0])
    last = n - 1

    def action(g):
        image = G.points[g]
        columns = []
        for i in range(last):
            col = {}
            # e_i - e_last -> e_g(i) - e_g(last), with e_last read as zero
            if image[i] != last:
                col[image[i]] = col.get(image[i], 0) + 1
            if image[last] != last:
                col[image[last]] = col.get(image[last], 0) - 1
            columns.append({r: a for r, a in col.items() if a})
        return columns

    return EquivariantModule(G, n - 1, action, None, 'standard')


def _parse_rational(value):
    if isinstance(value, str) and '/' in value:
        num, den = value.split('/')
        return QQ(int(num), int(den))
    return QQ(int(value))


def _parse_entry(value, e):
    # int, 'a/b', or {"conductor": m, "coeffs": [...]} in the power basis of Q(zeta_m)
    if isinstance(value, dict):
        raw = [_parse_rational(c) for c in value['coeffs']]
        return as_cyclotomic(cyc_normalize(raw, value['conductor']), e)
    return Cyclotomic.rational(_parse_rational(value), e)


def load_module_file(G, path):
    """
    Read a JSON list of per-element matrices (row-major, entries int, 'a/b'
    or {"conductor": m, "coeffs": [...]})

    Raises:
        ValueError: Wrong number of matrices or the matrices are not a representation
    """
    try:
        with open(path, 'r') as f:
            data = json.load(f)
    except FileNotFoundError:
        logger.error(f"Module file not found: {path}")
        raise
    except json.JSONDecodeError as e:
        logger.error(f"Invalid JSON in module file {path}: {e}")
        raise
    if len(data) != G.order:
        raise ValueError(f"Expected {G.order} matrices in {path}, got {len(data)}")
    e = G.conjugacy.exponent
    matrices = []
    for rows in data:
        dense = [[_parse_entry(v, e) for v in row] for row in rows]
        matrices.append([{r: dense[r][j] for r in range(len(dense)) if dense[r][j]} for j in range(len(dense))])
    module = EquivariantModule(G, len(data[0]), lambda g: matrices[g], None, f"file:{Path(path).name}")
    if not module.check_action():
        raise ValueError(f"Matrices in {path} do not form a representation of {G.name}")
    logger.info(f"Loaded {module.dim}-dimensional module for {G.name} from {path}")
    return module


def catalog_module(G, name):
    """
    Named representation of a group

    Args:
        G: FiniteGroup
        name: trivial, regular, natural, standard, linear:<i>, rotation:<h>,
            quaternion, file:<path>, or '+'-joined sums of these

    Returns:
        EquivariantModule
    """
    name = name.strip()
    if '+' in name:
        return direct_sum([catalog_module(G, part) for part in name.split('+')], name)
    if name == 'trivial':
        return EquivariantModule(G, 1, lambda g: [{0: 1}], None, 'trivial')
    if name == 'regular':
        return _permutation_module(G, [tuple(int(x) for x in G.table[g]) for g in range(G.order)], 'regular')
    if name == 'natural':
        if G.points is None:
            raise ValueError(f"{G.name} has no permutation realization")
        return _permutation_module(G, G.points, 'natural')
    if name == 'standard':
        return _standard_module(G)
    if name == 'quaternion':
        return _quaternion_module(G)
    if name.startswith('linear:'):
        return _linear_module(G, int(name.split(':', 1)[1]))
    if name.startswith('rotation:'):
        return _rotation_module(G, int(name.split(':', 1)[1]))
    if name.startswith('file:'):
        return load_module_file(G, name.split(':', 1)[1])
    raise ValueError(f"Unknown module name {name!r}")


def catalog_modules(G, max_dim=3):
    """Named irreducible realizations of dimension at most max_dim"""
    names = ['trivial']
    table = character_table(G)
    names += [f"linear:{i}" for i, d in enumerate(table.degrees) if d == 1 and i > 0]
    if G.kind == 'symmetric' and G.params[0] >= 3:
        names.append('standard')
    if G.kind == 'dihedral':
        names += [f"rotation:{h}" for h in range(1, (G.params[0] - 1) // 2 + 1)]
    if G.kind == 'quaternion8':
        names.append('quaternion')
    modules = [catalog_module(G, name) for name in names]
    return [V for V in modules if V.dim <= max_dim]


# -- verification ------------------------------------------------------------

def exterior_characters(V, count):
    """lambda^1..lambda^count of the character of V"""
    return newton_lambda(V.character(), count)[1:]


def _as_class_function(value, G):
    return value if isinstance(value, ClassFunction) else ClassFunction.constant(G, value)


def verify_schur_character(V, lam):
    """
    Characters of L_lam(V) and K_lam(V) against Schur classes of the exterior powers

    L_lam has class schur_in_e(lam) and K_lam has class schur_in_e(lam~).
    """
    started = time.perf_counter()
    lam = _as_partition(lam)
    G = V.group
    lambdas = exterior_characters(V, lam.weight)
    expected_l = _as_class_function(evaluate(schur_in_e(lam), lambdas), G)
    expected_k = _as_class_function(evaluate(schur_in_e(transpose(lam)), lambdas), G)
    actual_l = schur_module(V, lam).character()
    actual_k = coschur_module(V, lam).character()
    passed = actual_l == expected_l and actual_k == expected_k
    witness = {
        'schur': actual_l.to_json(), 'schur_expected': expected_l.to_json(),
        'coschur': actual_k.to_json(), 'coschur_expected': expected_k.to_json(),
    }
    return VerificationReport.build(
        'schur-character', 'Schur and coSchur module characters are Schur classes of the exterior powers',
        {'group': G.name, 'module': V.name, 'lambda': str(lam)}, passed, witness, started)


def verify_power_traces(V, i):
    """Traces on Λ^i and Sym^i agree with the Newton recursion on the character"""
    started = time.perf_counter()
    chi = V.character()
    passed = True
    witness = {}
    if i <= V.dim:
        ext = exterior_power(V, i).character()
        passed = ext == newton_lambda(chi, i)[i]
        witness['exterior'] = ext.to_json()
    sym = symmetric_power(V, i).character()
    passed = passed and sym == newton_sigma(chi, i)[i]
    witness['symmetric'] = sym.to_json()
    return VerificationReport.build(
        'power-traces', 'Induced traces on exterior and symmetric powers match the Newton recursion',
        {'group': V.group.name, 'module': V.name, 'i': i}, passed, witness, started)


def verify_cauchy(V, W, i):
    """
    Λ^i(V ⊗ W) against the exterior Cauchy polynomial, plus the dimension shadow

    Raises:
        PreconditionError: i exceeds dim V * dim W
    """
    _check_group(V, W)
    if i > V.dim * W.dim:
        raise PreconditionError(f"i={i} exceeds dim V * dim W = {V.dim * W.dim}")
    started = time.perf_counter()
    G = V.group
    lhs = exterior_power(tensor(V, W), i).character()
    rhs = _as_class_function(
        evaluate(cauchy_p(i), exterior_characters(V, i), exterior_characters(W, i)), G)
    filtration = sum(schur_dimension(V.dim, lam) * coschur_dimension(W.dim, lam) for lam in partitions_of(i))
    passed = lhs == rhs and filtration == lhs.degree
    witness = {'lhs': lhs.to_json(), 'rhs': rhs.to_json(), 'graded_dimension': filtration}
    return VerificationReport.build(
        'cauchy-exterior', 'Exterior power of a tensor product is the Cauchy polynomial of the factors',
        {'group': G.name, 'V': V.name, 'W': W.name, 'i': i}, passed, witness, started)


def verify_koszul_dimensions(d, i):
    """sum_j (-1)^j dim Λ^j dim Sym^(i-j) vanishes for a d-dimensional space"""
    started = time.perf_counter()
    total = sum((-1) ** j * len(exterior_basis(d, j)) * len(symmetric_basis(d, i - j)) for j in range(i + 1))
    return VerificationReport.build(
        'koszul-dimensions', 'Koszul complex has vanishing Euler characteristic',
        {'d': d, 'i': i}, total == 0, {'sum': total}, started)
