import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np
from sympy import QQ, ZZ, cyclotomic_poly, mobius, totient
from sympy.polys.densearith import dup_mul, dup_rem
from sympy.polys.densebasic import dup_strip
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)


def _to_qq(value):
    """Convert an int, Fraction or sympy rational into a QQ element"""
    if QQ.of_type(value):
        return value
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if hasattr(value, 'p') and hasattr(value, 'q'):
        return QQ(int(value.p), int(value.q))
    return QQ(int(value))


@lru_cache(maxsize=None)
def _phi_dense(m):
    # high-first coefficients, the layout sympy's dup_* functions expect
    return [QQ(int(c)) for c in cyclotomic_poly(m, polys=True).all_coeffs()]


@lru_cache(maxsize=None)
def degree_of(m):
    """Euler phi of m, the dimension of Q(zeta_m) over Q"""
    return int(totient(m))


@lru_cache(maxsize=None)
def _trace_weights(m):
    # Tr(zeta^j)/phi(m) = mu(m/g)/phi(m/g) with g = gcd(j, m); independent
    # of the conductor the value is written in
    weights = []
    for j in range(degree_of(m)):
        d = m // gcd(j, m)
        weights.append(QQ(int(mobius(d)), degree_of(d)))
    return tuple(weights)


def _lcm(a, b):
    return a * b // gcd(a, b)


@dataclass(frozen=True, eq=False)
class Cyclotomic:
    """
    Exact element of Q(zeta_m)

    Coefficients are stored low-first in the power basis 1, z, ..., z^(phi(m)-1)
    reduced modulo the m-th cyclotomic polynomial, so equal values written in
    the same conductor have identical vectors.
    """
    conductor: int
    coeffs: tuple

    # -- constructors -------------------------------------------------------

    @classmethod
    def rational(cls, value, m=1):
        zero = QQ(0)
        return cls(m, (_to_qq(value),) + (zero,) * (degree_of(m) - 1))

    @classmethod
    def zero(cls, m=1):
        return cls.rational(0, m)

    @classmethod
    def one(cls, m=1):
        return cls.rational(1, m)

    @classmethod
    def root_of_unity(cls, j, m):
        """zeta_m ** j"""
        raw = [0] * m
        raw[j % m] = 1
        return cyc_normalize(raw, m)

    # -- predicates and views -----------------------------------------------

    def is_rational(self):
        return not any(self.coeffs[1:])

    def is_integral(self):
        """True if every power-basis coordinate is an integer"""
        return all(c.denominator == 1 for c in self.coeffs)

    def rational_value(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __int__(self):
        value = self.rational_value()
        if value.denominator != 1:
            raise ValueError(f"{self} is not an integer")
        return int(value.numerator)

    def __bool__(self):
        return any(self.coeffs)

    def sort_key(self):
        return self.coeffs

    def to_json(self):
        """Integer, 'a/b' string, or conductor plus coefficient vector"""
        def enc(c):
            return int(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"

        if self.is_rational():
            return enc(self.coeffs[0])
        return {'conductor': self.conductor, 'coeffs': [enc(c) for c in self.coeffs]}

    def __repr__(self):
        if self.is_rational():
            return str(self.coeffs[0])
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if j == 0 else f"{c}*z{self.conductor}^{j}")
        return " + ".join(terms)

    # -- conductor changes --------------------------------------------------

    def embed(self, target):
        """Rewrite this value in Q(zeta_target); target must be a multiple of the conductor"""
        m = self.conductor
        if target == m:
            return self
        if target % m:
            raise ValueError(f"Cannot embed conductor {m} into {target}")
        if self.is_rational():
            return Cyclotomic.rational(self.coeffs[0], target)
        step = target // m
        raw = [QQ(0)] * ((len(self.coeffs) - 1) * step + 1)
        for j, c in enumerate(self.coeffs):
            raw[j * step] = c
        return cyc_normalize(raw, target)

    def _align(self, other):
        other = _coerce(other, self.conductor)
        if other is NotImplemented:
            return None, None
        if other.conductor == self.conductor:
            return self, other
        if other.is_rational():
            return self, Cyclotomic.rational(other.coeffs[0], self.conductor)
        if self.is_rational():
            return Cyclotomic.rational(self.coeffs[0], other.conductor), other
        target = _lcm(self.conductor, other.conductor)
        return self.embed(target), other.embed(target)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        return Cyclotomic(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.conductor, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        return Cyclotomic(a.conductor, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        if b.is_rational():
            s = b.coeffs[0]
            return Cyclotomic(a.conductor, tuple(c * s for c in a.coeffs))
        if a.is_rational():
            s = a.coeffs[0]
            return Cyclotomic(a.conductor, tuple(c * s for c in b.coeffs))
        product = dup_mul(dup_strip(list(a.coeffs[::-1])), dup_strip(list(b.coeffs[::-1])), QQ)
        return _from_dense(product, a.conductor)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            other = other.rational_value()
        s = _to_qq(other)
        if not s:
            raise ZeroDivisionError("division of a cyclotomic by zero")
        return Cyclotomic(self.conductor, tuple(c / s for c in self.coeffs))

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = Cyclotomic.one(self.conductor)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self):
        """Image under z -> z^-1"""
        if self.is_rational():
            return self
        m = self.conductor
        raw = [QQ(0)] * m
        for j, c in enumerate(self.coeffs):
            raw[(-j) % m] += c
        return cyc_normalize(raw, m)

    # -- equality -----------------------------------------------------------

    def __eq__(self, other):
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __hash__(self):
        trace = sum((c * w for c, w in zip(self.coeffs, _trace_weights(self.conductor))), QQ(0))
        return hash(trace)


def _coerce(value, m):
    if isinstance(value, Cyclotomic):
        return value
    if isinstance(value, (int, Fraction)) or QQ.of_type(value) or ZZ.of_type(value):
        return Cyclotomic.rational(value, m)
    return NotImplemented


def _from_dense(dense, m):
    remainder = dup_rem(dup_strip(dense), _phi_dense(m), QQ)
    low = list(remainder[::-1])
    low += [QQ(0)] * (degree_of(m) - len(low))
    return Cyclotomic(m, tuple(low))


def cyc_normalize(raw, m):
    """
    Reduce a raw low-first coefficient vector modulo the m-th cyclotomic polynomial

    Args:
        raw: Coefficients of 1, z, z^2, ... (ints, Fractions or QQ elements)
        m: Conductor, at least 1

    Returns:
        Canonical Cyclotomic
    """
    if m < 1:
        raise ValueError(f"Conductor must be positive, got {m}")
    dense = [_to_qq(c) for c in reversed(list(raw))]
    return _from_dense(dense, m)


def cyc_conjugate(z):
    return z.conjugate()


def as_cyclotomic(value, m):
    """Coerce an int/rational/Cyclotomic to a Cyclotomic written in conductor m"""
    if isinstance(value, Cyclotomic):
        if value.conductor == m:
            return value
        if value.is_rational():
            return Cyclotomic.rational(value.coeffs[0], m)
        return value.embed(m)
    return Cyclotomic.rational(value, m)


class IntMatrix:
    """
    Integer matrix backed by a numpy object array (arbitrary precision entries)
    """

    def __init__(self, rows, shape=None):
        """
        Initialize the matrix

        Args:
            rows: Nested sequence of integers, or a 2-d numpy array
            shape: Required when rows is empty
        """
        if isinstance(rows, np.ndarray) and rows.ndim == 2:
            data = np.empty(rows.shape, dtype=object)
            for (i, j), x in np.ndenumerate(rows):
                data[i, j] = int(x)
        else:
            rows = [list(r) for r in rows]
            if shape is None:
                shape = (len(rows), len(rows[0]) if rows else 0)
            data = np.empty(shape, dtype=object)
            for i, row in enumerate(rows):
                if len(row) != shape[1]:
                    raise ValueError(f"Row {i} has {len(row)} entries, expected {shape[1]}")
                for j, x in enumerate(row):
                    data[i, j] = int(x)
        self.entries = data

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], shape=(n, n))

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)], shape=(rows, cols))

    @classmethod
    def from_columns(cls, columns, nrows):
        columns = [list(c) for c in columns]
        return cls([[c[i] for c in columns] for i in range(nrows)], shape=(nrows, len(columns)))

    @property
    def shape(self):
        return self.entries.shape

    @property
    def rows(self):
        return self.entries.shape[0]

    @property
    def cols(self):
        return self.entries.shape[1]

    def __getitem__(self, key):
        return self.entries[key]

    def tolist(self):
        return [[int(x) for x in row] for row in self.entries]

    def columns(self):
        return [[int(x) for x in self.entries[:, j]] for j in range(self.cols)]

    def transpose(self):
        return IntMatrix(self.entries.T.copy())

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"Shape mismatch {self.shape} @ {other.shape}")
        result = np.empty((self.rows, other.cols), dtype=object)
        for i in range(self.rows):
            for j in range(other.cols):
                result[i, j] = sum((self.entries[i, k] * other.entries[k, j]
                                    for k in range(self.cols)), 0)
        return IntMatrix(result) if result.size else IntMatrix([], shape=result.shape)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.tolist() == other.tolist()

    def __repr__(self):
        return f"IntMatrix({self.tolist()})"

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("hstack needs equal row counts")
        return IntMatrix.from_columns(self.columns() + other.columns(), self.rows)

    def det(self):
        if self.rows != self.cols:
            raise ValueError("Determinant of a non-square matrix")
        if self.rows == 0:
            return 1
        return int(DomainMatrix.from_list(self.tolist(), ZZ).det())

    def inverse_unimodular(self):
        """Exact inverse of a matrix with determinant +-1"""
        inverse = DomainMatrix.from_list(self.tolist(), QQ).inv().to_list()
        out = []
        for row in inverse:
            if any(x.denominator != 1 for x in row):
                raise ValueError("Matrix is not unimodular")
            out.append([int(x.numerator) for x in row])
        return IntMatrix(out, shape=self.shape)


def _swap_rows(M, a, b):
    if a != b:
        M[[a, b], :] = M[[b, a], :]


def _swap_cols(M, a, b):
    if a != b:
        M[:, [a, b]] = M[:, [b, a]]


def smith_normal_form(A):
    """
    Smith normal form with transforms

    Args:
        A: IntMatrix

    Returns:
        (U, D, V) with U @ A @ V == D, U and V unimodular, D diagonal with
        nonnegative entries forming a divisibility chain
    """
    D = A.entries.copy()
    m, n = D.shape
    U = IntMatrix.identity(m).entries
    V = IntMatrix.identity(n).entries

    t = 0
    while t < min(m, n):
        candidates = [(abs(D[i, j]), i, j) for i in range(t, m) for j in range(t, n) if D[i, j] != 0]
        if not candidates:
            break
        _, i, j = min(candidates)
        _swap_rows(D, t, i)
        _swap_rows(U, t, i)
        _swap_cols(D, t, j)
        _swap_cols(V, t, j)

        while True:
            pivot = D[t, t]
            for i in range(t + 1, m):
                q = D[i, t] // pivot
                if q:
                    D[i, :] = D[i, :] - q * D[t, :]
                    U[i, :] = U[i, :] - q * U[t, :]
            for j in range(t + 1, n):
                q = D[t, j] // pivot
                if q:
                    D[:, j] = D[:, j] - q * D[:, t]
                    V[:, j] = V[:, j] - q * V[:, t]

            leftovers = [(abs(D[i, t]), i, 'row') for i in range(t + 1, m) if D[i, t] != 0]
            leftovers += [(abs(D[t, j]), j, 'col') for j in range(t + 1, n) if D[t, j] != 0]
            if leftovers:
                # a remainder smaller than the pivot takes its place
                _, k, kind = min(leftovers)
                if kind == 'row':
                    _swap_rows(D, t, k)
                    _swap_rows(U, t, k)
                else:
                    _swap_cols(D, t, k)
                    _swap_cols(V, t, k)
                continue

            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i, j] % pivot != 0), None)
            if bad is None:
                break
            D[t, :] = D[t, :] + D[bad[0], :]
            U[t, :] = U[t, :] + U[bad[0], :]

        if D[t, t] < 0:
            D[t, :] = -D[t, :]
            U[t, :] = -U[t, :]
        t += 1

    logger.debug(f"SNF diagonal: {[D[i, i] for i in range(min(m, n))]}")
    return IntMatrix(U), IntMatrix(D), IntMatrix(V)


def snf_diagonal(A):
    _, D, _ = smith_normal_form(A)
    return [int(D[i, i]) for i in range(min(D.shape))]


def hermite_normal_form(A):
    """
    Column Hermite normal form

    Pivots are processed from the bottom row upwards; zero columns end up on
    the left, pivots are positive and the entries to the right of a pivot are
    reduced into [0, pivot).

    Args:
        A: IntMatrix

    Returns:
        (H, U) with H == A @ U and U unimodular
    """
    H = A.entries.copy()
    m, n = H.shape
    U = IntMatrix.identity(n).entries

    k = n - 1
    for i in range(m - 1, -1, -1):
        if k < 0:
            break
        while True:
            nonzero = [j for j in range(k + 1) if H[i, j] != 0]
            if not nonzero:
                break
            j0 = min(nonzero, key=lambda j: (abs(H[i, j]), j))
            _swap_cols(H, j0, k)
            _swap_cols(U, j0, k)
            others = [j for j in range(k) if H[i, j] != 0]
            if not others:
                break
            for j in others:
                q = H[i, j] // H[i, k]
                H[:, j] = H[:, j] - q * H[:, k]
                U[:, j] = U[:, j] - q * U[:, k]
        if H[i, k] == 0:
            continue
        if H[i, k] < 0:
            H[:, k] = -H[:, k]
            U[:, k] = -U[:, k]
        for j in range(k + 1, n):
            q = H[i, j] // H[i, k]
            if q:
                H[:, j] = H[:, j] - q * H[:, k]
                U[:, j] = U[:, j] - q * U[:, k]
        k -= 1

    return IntMatrix(H), IntMatrix(U)


def lattice_basis(A):
    """Canonical basis (nonzero HNF columns) of the lattice spanned by the columns of A"""
    H, _ = hermite_normal_form(A)
    cols = [c for c in H.columns() if any(c)]
    return IntMatrix.from_columns(cols, A.rows)


def same_lattice(A, B):
    return lattice_basis(A) == lattice_basis(B)


def contains_lattice(outer, inner):
    """True if every column of inner lies in the lattice spanned by outer"""
    return same_lattice(outer, outer.hstack(inner))


def lattice_index(A):
    """Index of a full-rank sublattice of Z^rows spanned by the columns of A"""
    basis = lattice_basis(A)
    if basis.cols != basis.rows:
        raise ValueError(f"Lattice has rank {basis.cols} in Z^{basis.rows}, index is infinite")
    return abs(basis.det())


def kernel_basis(A):
    """Basis of the integer kernel of A as columns"""
    H, U = hermite_normal_form(A)
    cols = [U.columns()[j] for j in range(H.cols) if not any(H.columns()[j])]
    return IntMatrix.from_columns(cols, A.cols)
