import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import lcm
from pathlib import Path

import numpy as np
from sympy import Quaternion
from sympy.combinatorics import Permutation
from sympy.combinatorics.named_groups import AlternatingGroup, SymmetricGroup

logger = logging.getLogger(__name__)

# exhaustive associativity check up to this order, random triples above
EXHAUSTIVE_CHECK_ORDER = 24
RANDOM_TRIPLES = 4000


class FiniteGroup:
    """
    Finite group given by its multiplication table

    Element i times element j is table[i][j].  Optional realizations are
    kept alongside the table so representations can be written down:
    `points` holds the image tuple of each element in a faithful
    permutation action (composition is table multiplication), and
    `coordinates` holds a kind-specific description such as (a, b) for
    r^a s^b in a dihedral group.
    """

    def __init__(self, table, labels=None, name='G', kind='table', params=(),
                 points=None, coordinates=None, validate=True):
        """
        Initialize the group

        Args:
            table: n x n nested sequence of 0-based indices
            labels: Optional element names
            name: Display name (the group spec when built from one)
            kind: Catalog kind or 'table'
            params: Catalog parameters
            points: Optional permutation realization
            coordinates: Optional kind-specific element descriptions
            validate: Check the group axioms
        """
        table = np.array(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise ValueError(f"Multiplication table must be a nonempty square, got shape {table.shape}")
        table.setflags(write=False)
        self.table = table
        self.order = table.shape[0]
        self.labels = tuple(labels) if labels else tuple(str(i) for i in range(self.order))
        if len(self.labels) != self.order:
            raise ValueError(f"Expected {self.order} labels, got {len(self.labels)}")
        self.name = name
        self.kind = kind
        self.params = tuple(params)
        self.points = tuple(tuple(p) for p in points) if points is not None else None
        self.coordinates = tuple(coordinates) if coordinates is not None else None

        self.identity = self._find_identity()
        if validate:
            self._validate()
        self.inverses = tuple(int(np.where(table[g] == self.identity)[0][0]) for g in range(self.order))

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    def _find_identity(self):
        target = np.arange(self.order)
        for e in range(self.order):
            if np.array_equal(self.table[e], target) and np.array_equal(self.table[:, e], target):
                return e
        raise ValueError("Multiplication table has no identity element")

    def _validate(self):
        n = self.order
        T = self.table
        if T.min() < 0 or T.max() >= n:
            raise ValueError("Multiplication table entries out of range")
        full = np.arange(n)
        for i in range(n):
            if not np.array_equal(np.sort(T[i]), full) or not np.array_equal(np.sort(T[:, i]), full):
                raise ValueError(f"Row or column {i} of the table is not a permutation")
        if n <= EXHAUSTIVE_CHECK_ORDER:
            lhs = T[T]
            rhs = T[np.arange(n)[:, None, None], T[None, :, :]]
            if not np.array_equal(lhs, rhs):
                raise ValueError("Multiplication table is not associative")
        else:
            rng = np.random.default_rng(n)
            a, b, c = rng.integers(0, n, size=(3, RANDOM_TRIPLES))
            if not np.array_equal(T[T[a, b], c], T[a, T[b, c]]):
                raise ValueError("Multiplication table is not associative")

    def multiply(self, a, b):
        return int(self.table[a, b])

    def power(self, g, k):
        """g**k for k >= 0"""
        return self.powers(g)[k % self.element_order(g)]

    @cached_property
    def power_table(self):
        """Per element, the tuple g^0, g^1, ..., g^(ord g - 1)"""
        table = []
        for g in range(self.order):
            seq = [self.identity]
            x = g
            while x != self.identity:
                seq.append(x)
                x = int(self.table[x, g])
            table.append(tuple(seq))
        return tuple(table)

    def powers(self, g):
        return self.power_table[g]

    def element_order(self, g):
        return len(self.powers(g))

    @cached_property
    def exponent(self):
        return exponent(self)

    @cached_property
    def conjugacy(self):
        return conjugacy_classes(self)

    def subgroup_generated(self, generators):
        """Closure of a set of elements under multiplication"""
        elements = {self.identity}
        frontier = [self.identity]
        generators = list(generators)
        while frontier:
            x = frontier.pop()
            for g in generators:
                y = int(self.table[x, g])
                if y not in elements:
                    elements.add(y)
                    frontier.append(y)
        return frozenset(elements)


@dataclass(frozen=True)
class ConjugacyData:
    """
    Conjugacy classes with class-level power maps

    Classes are ordered by their smallest element index, so the identity
    class comes first.  power_map[c][k] is the class of rep^k for
    0 <= k < exponent.
    """
    classes: tuple
    representatives: tuple
    sizes: tuple
    class_of: tuple
    power_map: tuple
    inverse_class: tuple
    exponent: int

    def __len__(self):
        return len(self.classes)

    def power_class(self, c, k):
        return self.power_map[c][k % self.exponent]


def exponent(G):
    """lcm of all element orders"""
    return lcm(*(G.element_order(g) for g in range(G.order)))


def conjugacy_classes(G):
    """
    Partition G into conjugacy classes and compute class power maps

    Args:
        G: FiniteGroup

    Returns:
        ConjugacyData
    """
    T = G.table
    inv = [int(np.where(T[g] == G.identity)[0][0]) for g in range(G.order)]
    class_of = [-1] * G.order
    classes = []
    for x in range(G.order):
        if class_of[x] >= 0:
            continue
        members = sorted({int(T[T[g, x], inv[g]]) for g in range(G.order)})
        for y in members:
            class_of[y] = len(classes)
        classes.append(tuple(members))

    e = exponent(G)
    reps = tuple(c[0] for c in classes)
    power_map = []
    for c, rep in enumerate(reps):
        row = tuple(class_of[G.power(rep, k)] for k in range(e))
        power_map.append(row)
    inverse_class = tuple(class_of[inv[rep]] for rep in reps)

    logger.debug(f"{G.name}: {len(classes)} classes of sizes {[len(c) for c in classes]}")
    return ConjugacyData(
        classes=tuple(classes),
        representatives=reps,
        sizes=tuple(len(c) for c in classes),
        class_of=tuple(class_of),
        power_map=tuple(power_map),
        inverse_class=inverse_class,
        exponent=e,
    )


def kth_root_counts(G, k, c):
    """
    Classes of all k-th roots of the representative of class c

    Returns:
        Counter mapping class index to the number of roots in that class
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    data = G.conjugacy
    target = data.representatives[c]
    counts = Counter()
    for tau in range(G.order):
        if G.power(tau, k) == target:
            counts[data.class_of[tau]] += 1
    return counts


def normal_subgroups(G):
    """
    All normal subgroups as frozensets of element indices, sorted by (order, elements)

    Every normal subgroup is a join of normal closures of single classes.
    """
    data = G.conjugacy
    closures = {G.subgroup_generated(cls) for cls in data.classes}
    found = set(closures) | {frozenset([G.identity])}
    changed = True
    while changed:
        changed = False
        for a in list(found):
            for b in list(found):
                joined = G.subgroup_generated(a | b)
                if joined not in found:
                    found.add(joined)
                    changed = True
    return sorted(found, key=lambda s: (len(s), sorted(s)))


# -- catalog ---------------------------------------------------------------

def _cyclic(n):
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    labels = ['e'] + [f"r^{a}" if a > 1 else 'r' for a in range(1, n)]
    points = [tuple((i + a) % n for i in range(n)) for a in range(n)]
    return FiniteGroup(table, labels, f"C{n}", 'cyclic', (n,), points, list(range(n)))


def _dihedral(n):
    # element a + n*b is r^a s^b with s r s^-1 = r^-1
    elements = [(a, b) for b in range(2) for a in range(n)]
    index = {x: i for i, x in enumerate(elements)}
    table = []
    for a, b in elements:
        row = []
        for c, d in elements:
            row.append(index[((a + (-1) ** b * c) % n, (b + d) % 2)])
        table.append(row)
    labels = []
    for a, b in elements:
        rot = '' if a == 0 else ('r' if a == 1 else f"r^{a}")
        name = (rot + (' s' if rot else 's')) if b else (rot or 'e')
        labels.append(name)
    points = [tuple((a + (-1) ** b * i) % n for i in range(n)) for a, b in elements]
    return FiniteGroup(table, labels, f"D{n}", 'dihedral', (n,), points, elements)


def _quaternion8():
    units = [(1, 0, 0, 0), (-1, 0, 0, 0), (0, 1, 0, 0), (0, -1, 0, 0),
             (0, 0, 1, 0), (0, 0, -1, 0), (0, 0, 0, 1), (0, 0, 0, -1)]
    index = {u: i for i, u in enumerate(units)}
    quats = [Quaternion(*u) for u in units]
    table = []
    for p in quats:
        row = []
        for q in quats:
            r = p * q
            row.append(index[(int(r.a), int(r.b), int(r.c), int(r.d))])
        table.append(row)
    labels = ['1', '-1', 'i', '-i', 'j', '-j', 'k', '-k']
    return FiniteGroup(table, labels, 'Q8', 'quaternion8', (), None, units)


def _cycle_label(perm):
    cycles = Permutation(list(perm)).cyclic_form
    if not cycles:
        return 'e'
    return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycles)


def _from_permutations(perms, name, kind, params):
    # composition (a o b)(i) = a(b(i)) so that points give a left action
    perms = sorted(tuple(p) for p in perms)
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(a[x] for x in b)] for b in perms] for a in perms]
    labels = [_cycle_label(p) for p in perms]
    return FiniteGroup(table, labels, name, kind, params, perms, perms)


def _symmetric(n):
    if not 1 <= n <= 5:
        raise ValueError(f"Symmetric groups are supported for 1 <= n <= 5, got {n}")
    perms = [tuple(p.array_form) for p in SymmetricGroup(n).generate()]
    return _from_permutations(perms, f"S{n}", 'symmetric', (n,))


def _alternating4():
    perms = [tuple(p.array_form) for p in AlternatingGroup(4).generate()]
    return _from_permutations(perms, 'A4', 'alternating', (4,))


def direct_product(G, H):
    """Table product G x H; element (g, h) has index g * |H| + h"""
    n, m = G.order, H.order
    table = [[G.multiply(a // m, b // m) * m + H.multiply(a % m, b % m) for b in range(n * m)]
             for a in range(n * m)]
    labels = [f"({G.labels[a // m]},{H.labels[a % m]})" for a in range(n * m)]
    points = None
    if G.points is not None and H.points is not None:
        shift = len(G.points[0])
        points = [G.points[a // m] + tuple(shift + x for x in H.points[a % m]) for a in range(n * m)]
    coordinates = [(a // m, a % m) for a in range(n * m)]
    return FiniteGroup(table, labels, f"prod({G.name},{H.name})", 'product', (G, H), points, coordinates)


def make_catalog(kind, parameter=None):
    """
    Build a catalog group

    Args:
        kind: 'cyclic', 'dihedral', 'quaternion8', 'symmetric', 'alternating'
            or 'product'
        parameter: n for the numbered families, a pair of groups for 'product'

    Returns:
        FiniteGroup
    """
    if kind == 'cyclic':
        if parameter < 1:
            raise ValueError(f"Cyclic group needs n >= 1, got {parameter}")
        return _cyclic(parameter)
    if kind == 'dihedral':
        if parameter < 1:
            raise ValueError(f"Dihedral group needs n >= 1, got {parameter}")
        return _dihedral(parameter)
    if kind == 'quaternion8':
        return _quaternion8()
    if kind == 'symmetric':
        return _symmetric(parameter)
    if kind == 'alternating':
        if parameter != 4:
            raise ValueError(f"Only the alternating group A4 is in the catalog, got A{parameter}")
        return _alternating4()
    if kind == 'product':
        return direct_product(*parameter)
    raise ValueError(f"Unsupported catalog kind: {kind}")


def load_table_file(path):
    """
    Read a group from the text table format

    First line n, then n rows of n 0-based indices, then optionally a line
    'labels' followed by whitespace-separated labels.
    """
    try:
        lines = [ln.strip() for ln in Path(path).read_text().splitlines()]
    except FileNotFoundError:
        logger.error(f"Group table file not found: {path}")
        raise
    lines = [ln for ln in lines if ln and not ln.startswith('#')]
    if not lines:
        raise ValueError(f"Empty group table file: {path}")
    n = int(lines[0])
    rows = [[int(x) for x in ln.split()] for ln in lines[1:n + 1]]
    if len(rows) != n:
        raise ValueError(f"Expected {n} table rows in {path}, found {len(rows)}")
    labels = None
    rest = lines[n + 1:]
    if rest:
        if rest[0].lower() == 'labels':
            rest = rest[1:]
        labels = " ".join(rest).split()
    logger.info(f"Loaded group table of order {n} from {path}")
    return FiniteGroup(rows, labels, f"table:{path}")


def _split_top_level(text):
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == '(':
            depth += 1
        elif ch == ')':
            depth -= 1
        elif ch == ',' and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [p.strip() for p in parts]


@lru_cache(maxsize=None)
def group_from_spec(spec):
    """
    Parse a group spec: C<n>, D<n>, Q8, S<n>, A4, prod(<spec>,<spec>) or table:<path>
    """
    spec = spec.strip()
    if spec.startswith('table:'):
        return load_table_file(spec[len('table:'):])
    if spec.startswith('prod(') and spec.endswith(')'):
        parts = _split_top_level(spec[5:-1])
        if len(parts) != 2:
            raise ValueError(f"prod() takes exactly two group specs: {spec}")
        return make_catalog('product', (group_from_spec(parts[0]), group_from_spec(parts[1])))
    if spec == 'Q8':
        return make_catalog('quaternion8')
    kinds = {'C': 'cyclic', 'D': 'dihedral', 'S': 'symmetric', 'A': 'alternating'}
    if spec[:1] in kinds and spec[1:].isdigit():
        return make_catalog(kinds[spec[0]], int(spec[1:]))
    raise ValueError(f"Unrecognized group spec: {spec!r}")
