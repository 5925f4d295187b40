"""
Sparse multilinear algebra shared by the module and lattice layers

A sparse vector is a dict {index: coefficient} with zero coefficients
dropped; a sparse matrix is a sequence of sparse columns.  Coefficients can
be ints, rationals or Cyclotomic values.
"""
import logging
from bisect import bisect_left, bisect_right
from itertools import combinations, combinations_with_replacement, product

logger = logging.getLogger(__name__)


def exterior_basis(d, i):
    """Increasing i-subsets of range(d)"""
    return tuple(combinations(range(d), i))


def symmetric_basis(d, i):
    """Weakly increasing i-multisets of range(d)"""
    return tuple(combinations_with_replacement(range(d), i))


def accumulate(target, key, value):
    """target[key] += value, dropping the key when the sum vanishes"""
    if not value:
        return
    total = target.get(key)
    total = value if total is None else total + value
    if total:
        target[key] = total
    else:
        target.pop(key, None)


def wedge(vectors):
    """
    Exterior product of sparse vectors

    Returns:
        Sparse vector keyed by increasing index tuples
    """
    current = {(): 1}
    for vec in vectors:
        nxt = {}
        for key, coeff in current.items():
            for r, a in vec.items():
                pos = bisect_left(key, r)
                if pos < len(key) and key[pos] == r:
                    continue
                # moving e_r past the larger entries of key
                sign = -1 if (len(key) - pos) % 2 else 1
                accumulate(nxt, key[:pos] + (r,) + key[pos:], coeff * a * sign)
        current = nxt
    return current


def sym_product(vectors):
    """Symmetric product of sparse vectors, keyed by weakly increasing tuples"""
    current = {(): 1}
    for vec in vectors:
        nxt = {}
        for key, coeff in current.items():
            for r, a in vec.items():
                pos = bisect_right(key, r)
                accumulate(nxt, key[:pos] + (r,) + key[pos:], coeff * a)
        current = nxt
    return current


def tensor_vectors(vectors):
    """Tensor product of sparse vectors, keyed by index tuples"""
    current = {(): 1}
    for vec in vectors:
        nxt = {}
        for key, coeff in current.items():
            for r, a in vec.items():
                accumulate(nxt, key + (r,), coeff * a)
        current = nxt
    return current


def sort_sign(entries):
    """
    Sort a list and return (sign of the sorting permutation, sorted tuple)

    Sign is 0 when an entry repeats.
    """
    entries = list(entries)
    if len(set(entries)) != len(entries):
        return 0, None
    inversions = sum(1 for a, b in combinations(entries, 2) if a > b)
    return (-1) ** inversions, tuple(sorted(entries))


def induced_columns(columns, basis, kind):
    """
    Induced action on an exterior or symmetric power

    Args:
        columns: Sparse columns of the action on the underlying space
        basis: exterior_basis or symmetric_basis of the power
        kind: 'exterior' or 'symmetric'

    Returns:
        List of sparse columns indexed like basis
    """
    combine = wedge if kind == 'exterior' else sym_product
    index = {b: n for n, b in enumerate(basis)}
    result = []
    for element in basis:
        image = combine([columns[s] for s in element])
        result.append({index[key]: value for key, value in image.items()})
    return result


def radix_index(indices, dims):
    """Mixed-radix position of an index tuple in a tensor product"""
    position = 0
    for i, d in zip(indices, dims):
        position = position * d + i
    return position


def tensor_columns(factors):
    """
    Kronecker product of sparse matrices

    Args:
        factors: List of (columns, dim) pairs

    Returns:
        Sparse columns of the product, rows and columns in mixed-radix order
    """
    dims = [d for _, d in factors]
    result = []
    for multi in product(*(range(d) for d in dims)):
        image = tensor_vectors([cols[j] for (cols, _), j in zip(factors, multi)])
        result.append({radix_index(key, dims): value for key, value in image.items()})
    return result


def apply(columns, vector):
    """Matrix times sparse vector"""
    out = {}
    for k, b in vector.items():
        for r, a in columns[k].items():
            accumulate(out, r, a * b)
    return out


def compose(left, right):
    """Matrix product left * right of sparse matrices"""
    return [apply(left, col) for col in right]


def trace(columns):
    total = 0
    for j, col in enumerate(columns):
        value = col.get(j)
        if value:
            total = value + total
    return total


def to_dense(columns, nrows, zero=0):
    """Row-major nested list"""
    return [[col.get(r, zero) for col in columns] for r in range(nrows)]


def from_dense(rows):
    """Sparse columns of a nested row list"""
    if not rows:
        return []
    ncols = len(rows[0])
    return [{r: row[j] for r, row in enumerate(rows) if row[j]} for j in range(ncols)]
