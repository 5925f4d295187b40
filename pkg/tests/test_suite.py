import sys
import os
import json
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

import pytest

from characters import regular_character
from groups import group_from_spec
from suite import CHECKS, _characters, expand_grid, plan, run_check, run_suite

PROJECT_ROOT = os.path.join(os.path.dirname(__file__), '..')


def test_grid_expansion_order():
    grid = {'group': ['C2', 'S3'], 'k': [1, 5], 'mode': 'x'}
    assert expand_grid(grid) == [
        {'group': 'C2', 'k': 1, 'mode': 'x'},
        {'group': 'C2', 'k': 5, 'mode': 'x'},
        {'group': 'S3', 'k': 1, 'mode': 'x'},
        {'group': 'S3', 'k': 5, 'mode': 'x'},
    ]


def test_grid_list_of_grids():
    assert expand_grid([{'m': [1, 2]}, {'m': 3, 'k': 2}]) == [{'m': 1}, {'m': 2}, {'m': 3, 'k': 2}]


def test_empty_config():
    assert run_suite({}) == []
    assert run_suite({'checks': {}}) == []


def test_unknown_check():
    with pytest.raises(ValueError):
        plan({'checks': {'no-such-check': {}}})
    with pytest.raises(ValueError):
        run_check('no-such-check', {})


def test_negative_control_is_expected_failure():
    reports = run_suite({'checks': {'regular-fixed': {'group': 'C4', 'k': 2}}})
    assert [r.status for r in reports] == ['xfail']
    assert all(r.ok for r in reports)


def test_budget_overrun_becomes_skip(monkeypatch):
    monkeypatch.setenv('WORKBENCH_ORBIT_BUDGET', '2')
    reports = run_check('orbit-stabilizer', {'group': 'C2', 'n': 1, 'ks': '3'})
    assert [r.status for r in reports] == ['skip']
    assert reports[0].ok


def test_only_filter():
    config = {'checks': {'bott-inverse': {'m': 3, 'k': 2}, 'newton-cauchy': {'i': 2}}}
    reports = run_suite(config, only={'newton-cauchy'})
    assert [r.check for r in reports] == ['newton-cauchy']


def test_every_check_has_a_handler():
    with open(os.path.join(PROJECT_ROOT, 'config', 'settings.json')) as f:
        config = json.load(f)
    assert set(config['checks']) <= set(CHECKS)
    assert len(plan(config)) > 0


def test_quick_config_passes():
    with open(os.path.join(PROJECT_ROOT, 'config', 'quick.json')) as f:
        config = json.load(f)
    reports = run_suite(config, workers=1)
    assert reports
    assert all(r.ok for r in reports), [r.to_text() for r in reports if not r.ok]


def test_reports_are_deterministic():
    config = {'checks': {'quad-different': {'D': [-1, 5]}, 'bott-multiplier': {'m': 4, 'k': 3}}}
    first = [r.to_json(timing=False) for r in run_suite(config)]
    second = [r.to_json(timing=False) for r in run_suite(config)]
    assert first == second


def test_worker_pool_keeps_config_order():
    config = {'checks': {'bott-inverse': {'m': [3, 4, 5], 'k': 1}, 'newton-cauchy': {'i': [1, 2]}}}
    reports = run_suite(config, workers=2)
    assert [(r.check, r.params.get('m', r.params.get('i'))) for r in reports] == [
        ('bott-inverse', 3), ('bott-inverse', 4), ('bott-inverse', 5), ('newton-cauchy', 1), ('newton-cauchy', 2)]


def test_koszul_inputs_include_the_regular_character():
    D4 = group_from_spec('D4')
    chars = _characters(D4)
    assert regular_character(D4) in chars
    assert max(chi.degree for chi in chars) == 8
    assert regular_character(group_from_spec('S4')) not in _characters(group_from_spec('S4'))
    reports = run_check('koszul', {'group': 'Q8', 'i': 3})
    assert len(reports) == 7
    assert all(r.status == 'pass' for r in reports)


def test_koszul_grid_covers_the_catalog():
    with open(os.path.join(PROJECT_ROOT, 'config', 'settings.json')) as f:
        groups = json.load(f)['checks']['koszul']['group']
    assert {'C2', 'D3', 'D5', 'Q8', 'S4', 'A4', 'prod(C2,S3)'} <= set(groups)
