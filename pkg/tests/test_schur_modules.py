import sys
import os
import json
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

import pytest
from sympy import binomial

from characters import character_table
from groups import group_from_spec
from partitions import Partition
from reports import PreconditionError
from schur_modules import (
    catalog_module, catalog_modules, coschur_dimension, coschur_module, direct_sum, exterior_power,
    schur_dimension, schur_module, symmetric_power, tensor, verify_cauchy, verify_koszul_dimensions,
    verify_power_traces, verify_schur_character,
)


def values(chi):
    return [v.to_json() for v in chi]


@pytest.fixture
def s3():
    return group_from_spec('S3')


@pytest.fixture
def q8():
    return group_from_spec('Q8')


def test_tensor_examples(s3):
    std = catalog_module(s3, 'standard')
    sgn = catalog_module(s3, 'linear:1')
    assert tensor(std, std).dim == 4
    assert values(tensor(std, std).character()) == [4, 0, 1]
    assert values(tensor(sgn, sgn).character()) == [1, 1, 1]
    triv = catalog_module(s3, 'trivial')
    assert tensor(std, triv).character() == std.character()


def test_power_examples(s3):
    C2 = group_from_spec('C2')
    assert values(exterior_power(catalog_module(C2, 'regular'), 2).character()) == [1, -1]
    std = catalog_module(s3, 'standard')
    assert values(symmetric_power(std, 2).character()) == [3, 1, 0]
    top = exterior_power(catalog_module(s3, 'natural'), 3)
    assert top.dim == 1
    assert values(top.character()) == [1, -1, 1]
    with pytest.raises(ValueError):
        exterior_power(std, 3)


def test_catalog_modules_are_representations(s3, q8):
    for G in (s3, q8, group_from_spec('D5'), group_from_spec('C6')):
        for V in catalog_modules(G):
            assert V.check_action(), V.name
    assert values(catalog_module(s3, 'natural').character()) == [3, 1, 0]
    assert catalog_module(q8, 'quaternion').character() == character_table(q8)[4]


def test_direct_sum_by_name(s3):
    V = catalog_module(s3, 'trivial+standard')
    assert V.dim == 3
    assert V.character() == catalog_module(s3, 'natural').character()
    assert direct_sum([catalog_module(s3, 'trivial')] * 2).dim == 2


def test_module_file(tmp_path):
    C2 = group_from_spec('C2')
    path = tmp_path / 'sign.json'
    path.write_text(json.dumps([[[1]], [[-1]]]))
    V = catalog_module(C2, f"file:{path}")
    assert values(V.character()) == [1, -1]
    bad = tmp_path / 'bad.json'
    bad.write_text(json.dumps([[[1]], [[2]]]))
    with pytest.raises(ValueError):
        catalog_module(C2, f"file:{bad}")


def test_schur_module_examples(s3):
    std = catalog_module(s3, 'standard')
    assert schur_module(std, Partition((1,))).character() == std.character()
    natural = catalog_module(s3, 'natural')
    assert schur_module(natural, Partition((2,))).dim == binomial(3, 2)
    assert schur_module(natural, Partition((2,))).character() == exterior_power(natural, 2).character()
    assert schur_dimension(2, Partition((1, 1))) == 3
    assert schur_module(std, Partition((3,))).dim == 0


def test_coschur_dimensions():
    # K_(k) is Sym^k and K_(1^k) is the exterior power
    assert coschur_dimension(2, Partition((3,))) == 4
    assert coschur_dimension(3, Partition((1, 1))) == 3
    assert coschur_dimension(2, Partition((1, 1, 1))) == 0


def test_coschur_of_row_is_symmetric_power(s3):
    std = catalog_module(s3, 'standard')
    assert coschur_module(std, Partition((2,))).character() == symmetric_power(std, 2).character()


@pytest.mark.parametrize('lam', ['1', '2', '1,1', '2,1', '3', '1,1,1'])
def test_schur_character_on_standard(s3, lam):
    assert verify_schur_character(catalog_module(s3, 'standard'), lam).status == 'pass'


def test_schur_character_on_quaternion(q8):
    assert verify_schur_character(catalog_module(q8, 'quaternion'), Partition((2, 2))).status == 'pass'


def test_cauchy_examples(s3, q8):
    std = catalog_module(s3, 'standard')
    assert verify_cauchy(std, std, 1).status == 'pass'
    assert verify_cauchy(std, std, 2).status == 'pass'
    assert verify_cauchy(catalog_module(q8, 'quaternion'), catalog_module(q8, 'linear:1'), 2).status == 'pass'
    with pytest.raises(PreconditionError):
        verify_cauchy(std, catalog_module(s3, 'linear:1'), 3)


def test_power_traces(q8):
    for V in catalog_modules(q8):
        for i in (1, 2, 3):
            assert verify_power_traces(V, i).status == 'pass'


def test_koszul_dimensions():
    for d in range(1, 5):
        for i in range(1, 5):
            assert verify_koszul_dimensions(d, i).status == 'pass'
