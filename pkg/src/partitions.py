import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from sympy.utilities.iterables import partitions as _sympy_partitions

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Partition:
    """
    Weakly decreasing tuple of positive parts

    Tuple comparison is the lexicographic order used throughout: two
    partitions agree up to some index and the larger one has the larger next
    part (implicit zeros pad the shorter one).
    """
    parts: tuple = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"Parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"Parts must be weakly decreasing: {parts}")
        object.__setattr__(self, 'parts', parts)

    @classmethod
    def parse(cls, text):
        """Parse '2,1', '(2,1)' or '2 1' (empty string gives the empty partition)"""
        text = text.strip('() ').replace(',', ' ')
        return cls(tuple(sorted((int(x) for x in text.split()), reverse=True)))

    @property
    def weight(self):
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        """Part i (0-based) with implicit trailing zeros"""
        return self.parts[i] if i < len(self.parts) else 0

    def __iter__(self):
        return iter(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


@lru_cache(maxsize=None)
def transpose(lam):
    """
    Conjugate partition

    Args:
        lam: Partition

    Returns:
        Partition with part j equal to the number of parts of lam that are >= j
    """
    if not lam.parts:
        return lam
    return Partition(tuple(sum(1 for p in lam.parts if p >= j) for j in range(1, lam.parts[0] + 1)))


@lru_cache(maxsize=None)
def partitions_of(n):
    """All partitions of n in increasing lexicographic order"""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n == 0:
        return (Partition(()),)
    found = []
    for multiplicities in _sympy_partitions(n):
        parts = []
        for part, count in sorted(multiplicities.items(), reverse=True):
            parts.extend([part] * count)
        found.append(Partition(tuple(parts)))
    found.sort()
    return tuple(found)


def pieri_index_set(mu, p, max_rows=None):
    """
    Partitions obtained from mu by adding at most one box to each row

    Args:
        mu: Partition
        p: Number of boxes to add, at least 1
        max_rows: Optional cap on the number of rows of the result

    Returns:
        List of partitions nu with mu_i <= nu_i <= mu_i + 1 and
        |nu| = |mu| + p, in decreasing lexicographic order (the first entry
        adds a box to each of the first p rows)
    """
    if p < 1:
        raise ValueError(f"p must be at least 1, got {p}")
    rows = len(mu) + p
    if max_rows is not None:
        rows = min(rows, max_rows)
    if p > rows:
        logger.warning(f"Cannot add {p} boxes to {mu} within {rows} rows")
        return []

    result = set()
    for chosen in combinations(range(rows), p):
        parts = [mu[i] for i in range(rows)]
        for i in chosen:
            parts[i] += 1
        if all(a >= b for a, b in zip(parts, parts[1:])):
            result.add(Partition(tuple(x for x in parts if x)))
    return sorted(result, reverse=True)
