import sys
import os
import gc
import weakref
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

import pytest

from groups import (
    FiniteGroup, conjugacy_classes, direct_product, exponent, group_from_spec, kth_root_counts,
    load_table_file, make_catalog, normal_subgroups,
)


def test_trivial_group():
    G = make_catalog('cyclic', 1)
    assert G.order == 1
    assert exponent(G) == 1
    assert len(conjugacy_classes(G)) == 1


def test_cyclic_classes_are_singletons():
    data = conjugacy_classes(make_catalog('cyclic', 4))
    assert data.sizes == (1, 1, 1, 1)
    assert data.exponent == 4


def test_symmetric_three():
    G = make_catalog('symmetric', 3)
    data = conjugacy_classes(G)
    assert G.order == 6
    assert data.sizes == (1, 3, 2)
    assert exponent(G) == 6
    # transpositions square to the identity, 3-cycles cube to it
    assert data.power_class(1, 2) == 0
    assert data.power_class(2, 3) == 0


def test_quaternion_classes():
    G = make_catalog('quaternion8')
    data = conjugacy_classes(G)
    assert G.order == 8
    assert len(data) == 5
    assert exponent(G) == 4
    labels = [sorted(G.labels[x] for x in cls) for cls in data.classes]
    assert labels == [['1'], ['-1'], ['-i', 'i'], ['-j', 'j'], ['-k', 'k']]


def test_quaternion_square_roots():
    G = make_catalog('quaternion8')
    data = G.conjugacy
    minus_one = data.class_of[G.labels.index('-1')]
    roots = kth_root_counts(G, 2, minus_one)
    assert sum(roots.values()) == 6
    assert set(roots) == {2, 3, 4}
    i_class = data.class_of[G.labels.index('i')]
    assert not kth_root_counts(G, 2, i_class)


def test_first_roots_are_the_representative():
    G = make_catalog('dihedral', 4)
    data = G.conjugacy
    for c in range(len(data)):
        assert kth_root_counts(G, 1, c) == {c: 1}


@pytest.mark.parametrize('kind,params', [('dihedral', (4,)), ('quaternion8', ()), ('symmetric', (4,)), ('alternating', (4,))])
def test_root_counts_cover_the_group(kind, params):
    # every element is the k-th root of exactly one element, so weighting
    # the root counts of each representative by its class size gives |G|
    G = make_catalog(kind, *params)
    data = G.conjugacy
    for k in range(1, 2 * data.exponent + 1):
        total = sum(data.sizes[c] * sum(kth_root_counts(G, k, c).values()) for c in range(len(data)))
        assert total == G.order


def test_power_table_lives_on_the_group():
    G = make_catalog('cyclic', 6)
    assert G.power(1, 4) == G.multiply(G.multiply(1, 1), G.multiply(1, 1))
    assert 'power_table' in G.__dict__
    assert [len(seq) for seq in G.power_table] == [G.element_order(g) for g in range(G.order)]
    ref = weakref.ref(G)
    del G
    gc.collect()
    assert ref() is None


def test_power_maps_are_homomorphic():
    G = make_catalog('alternating', 4)
    for g in range(G.order):
        for k in range(1, 7):
            assert G.power(g, k) == G.power(G.power(g, 1), k)
        assert G.power(g, G.element_order(g)) == G.identity


def test_normal_subgroups():
    assert len(normal_subgroups(make_catalog('symmetric', 3))) == 3
    assert len(normal_subgroups(make_catalog('quaternion8'))) == 6
    assert [len(N) for N in normal_subgroups(make_catalog('alternating', 4))] == [1, 4, 12]


def test_direct_product():
    G = direct_product(make_catalog('cyclic', 2), make_catalog('cyclic', 3))
    assert G.order == 6
    assert len(G.conjugacy) == 6
    assert exponent(G) == 6
    assert G.points is not None


def test_group_specs():
    assert group_from_spec('D4').order == 8
    assert group_from_spec('S4').order == 24
    assert group_from_spec('prod(C2,prod(C2,C2))').order == 8
    with pytest.raises(ValueError):
        group_from_spec('X9')
    with pytest.raises(ValueError):
        make_catalog('alternating', 5)


def test_invalid_table_rejected():
    with pytest.raises(ValueError):
        FiniteGroup([[0, 1], [0, 1]])


def test_table_file(tmp_path):
    path = tmp_path / 'c3.txt'
    path.write_text("# cyclic of order 3\n3\n0 1 2\n1 2 0\n2 0 1\nlabels\ne a b\n")
    G = load_table_file(str(path))
    assert G.order == 3
    assert G.labels == ('e', 'a', 'b')
    assert group_from_spec(f"table:{path}").order == 3
