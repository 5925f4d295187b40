"""
Batch verification driver

Each check id maps to a handler taking one parameter dict and returning a
list of reports.  A config section maps check ids to parameter grids.
"""
import time
import logging
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from math import gcd

from bott_ring import verify_bott_inverse, verify_bott_multiplier
from characters import (
    character_table, regular_character, verify_adams_composition, verify_adjoint_is_inverse_adams, verify_adjoint_pairing,
    verify_character_table, verify_koszul, verify_multiplicativity, verify_newton_adams, verify_periodicity,
    verify_quaternion_symplectic, verify_quotient_fixed, verify_regular_fixed, verify_virtual_lambda,
    verify_virtual_sigma,
)
from gamma_lattices import GammaLattice, suggested_betas, verify_orbit_stabilizers, verify_sym_lattice_compat
from groups import group_from_spec, normal_subgroups
from partitions import Partition, partitions_of
from quad_fields import (
    build, squarefree_range, verify_differential_sequence, verify_graded_layers, verify_quad_different,
)
from reports import BudgetExceeded, PreconditionError, VerificationReport
from schur_modules import (
    catalog_modules, verify_cauchy, verify_koszul_dimensions, verify_power_traces, verify_schur_character,
)
from symfunc import verify_cauchy_oracle, verify_newton_cauchy, verify_q_specialization, verify_schur_pieri

logger = logging.getLogger(__name__)


def _k_range(params, bound, coprime_to=None):
    """Explicit k from params, else 1..bound (coprime to coprime_to when given)"""
    if 'k' in params:
        return [int(params['k'])]
    return [k for k in range(1, bound + 1) if coprime_to is None or gcd(k, coprime_to) == 1]


def _characters(G, max_degree=8):
    """Irreducibles, the sum of the two smallest nontrivial ones and the regular character, up to max_degree"""
    table = character_table(G)
    chars = [chi for chi in table.characters if chi.degree <= max_degree]
    if len(table) > 2:
        chars.append(table[1] + table[2])
    chars.append(regular_character(G))
    return [chi for chi in chars if chi.degree <= max_degree]


def _differences(G):
    table = character_table(G)
    n = len(table)
    return [table.irreducible(a) - table.irreducible(b) for a in range(n) for b in range(n) if a != b]


def _partitions(params):
    if 'lambda' in params:
        return [Partition.parse(str(params['lambda']))]
    return partitions_of(int(params['weight']))


def _ks(value):
    if isinstance(value, str):
        return tuple(int(k) for k in value.split(','))
    return (int(value),)


def _fields(params):
    if 'D' in params:
        return [build(params['D'])]
    bound = int(params['bound'])
    return [build(D) for D in squarefree_range(-bound, bound)]


def _newton_cauchy(params):
    return [verify_newton_cauchy(int(params['i']))]


def _q_specialization(params):
    return [verify_q_specialization(int(params['j']))]


def _cauchy_oracle(params):
    return [verify_cauchy_oracle(int(params['i']), params.get('kind', 'exterior'), int(params.get('rank', 3)))]


def _schur_pieri(params):
    return [verify_schur_pieri(lam) for lam in _partitions(params)]


def _character_tables(params):
    return [verify_character_table(group_from_spec(params['group']))]


def _regular_fixed(params):
    G = group_from_spec(params['group'])
    return [verify_regular_fixed(G, k) for k in _k_range(params, 2 * G.order, G.order)]


def _adjoint_adams(params):
    G = group_from_spec(params['group'])
    e = G.conjugacy.exponent
    return [verify_adjoint_is_inverse_adams(G, k) for k in _k_range(params, 2 * e, G.order)]


def _adjoint_pairing(params):
    G = group_from_spec(params['group'])
    return [verify_adjoint_pairing(G, k) for k in _k_range(params, 2 * G.conjugacy.exponent)]


def _periodicity(params):
    G = group_from_spec(params['group'])
    return [verify_periodicity(G, k) for k in _k_range(params, 2 * G.conjugacy.exponent)]


def _quaternion_symplectic(params):
    G = group_from_spec(params['group'])
    return [verify_quaternion_symplectic(G, params.get('max_k'))]


def _koszul(params):
    G = group_from_spec(params['group'])
    return [verify_koszul(chi, int(params['i'])) for chi in _characters(G)]


def _virtual_sigma(params):
    G = group_from_spec(params['group'])
    return [verify_virtual_sigma(x, int(params['i'])) for x in _differences(G)]


def _virtual_lambda(params):
    G = group_from_spec(params['group'])
    return [verify_virtual_lambda(x, int(params['i'])) for x in _differences(G)]


def _multiplicativity(params):
    G = group_from_spec(params['group'])
    chars = character_table(G).characters
    i = int(params['i'])
    return [verify_multiplicativity(chars[a], chars[b], i)
            for a in range(len(chars)) for b in range(a, len(chars))]


def _adams_composition(params):
    G = group_from_spec(params['group'])
    e = G.conjugacy.exponent
    if 'k' in params and 'l' in params:
        pairs = [(int(params['k']), int(params['l']))]
    else:
        pairs = [(k, l) for k in range(1, e + 1) for l in range(1, e + 1)]
    return [verify_adams_composition(G, k, l) for k, l in pairs]


def _newton_adams(params):
    G = group_from_spec(params['group'])
    k = int(params['k'])
    return [verify_newton_adams(chi, k) for chi in character_table(G).characters]


def _quotient_fixed(params):
    G = group_from_spec(params['group'])
    reports = []
    for normal in normal_subgroups(G):
        index = G.order // len(normal)
        for k in _k_range(params, 2 * index):
            reports.append(verify_quotient_fixed(G, normal, k))
    return reports


def _cauchy_exterior(params):
    G = group_from_spec(params['group'])
    modules = catalog_modules(G, int(params.get('max_dim', 3)))
    max_i = int(params.get('max_i', 4))
    reports = []
    for a, V in enumerate(modules):
        for W in modules[a:]:
            for i in range(1, min(max_i, V.dim * W.dim) + 1):
                reports.append(verify_cauchy(V, W, i))
    return reports


def _schur_character(params):
    G = group_from_spec(params['group'])
    modules = catalog_modules(G, int(params.get('max_dim', 3)))
    return [verify_schur_character(V, lam) for V in modules for lam in _partitions(params)]


def _power_traces(params):
    G = group_from_spec(params['group'])
    modules = catalog_modules(G, int(params.get('max_dim', 3)))
    return [verify_power_traces(V, int(params['i'])) for V in modules]


def _koszul_dimensions(params):
    return [verify_koszul_dimensions(int(params['d']), int(params['i']))]


def _orbit_stabilizer(params):
    G = group_from_spec(params['group'])
    return [verify_orbit_stabilizers(G, int(params['n']), _ks(params['ks']))]


def _lattice_sym_compat(params):
    G = group_from_spec(params['group'])
    F = GammaLattice.free(G, 1)
    k = int(params['k'])
    return [verify_sym_lattice_compat(F, [beta], [k], p) for beta, p in suggested_betas(G)]


def _quad_different(params):
    return [verify_quad_different(Q) for Q in _fields(params)]


def _differential_sequence(params):
    return [verify_differential_sequence(Q) for Q in _fields(params)]


def _graded_layers(params):
    reports = []
    for Q in _fields(params):
        primes = [int(params['p'])] if 'p' in params else [prime.p for prime in Q.ramified_primes]
        reports += [verify_graded_layers(Q, p) for p in primes]
    return reports


def _bott_inverse(params):
    m = int(params['m'])
    if 'k' in params:
        return [verify_bott_inverse(m, int(params['k']), params.get('k_prime'))]
    bound = int(params.get('max_k', 12))
    return [verify_bott_inverse(m, k) for k in range(1, bound + 1) if gcd(k, m) == 1]


def _bott_multiplier(params):
    m = int(params['m'])
    ks = [int(params['k'])] if 'k' in params else range(1, int(params.get('max_k', 12)) + 1)
    return [verify_bott_multiplier(m, k) for k in ks]


CHECKS = {
    'newton-cauchy': _newton_cauchy,
    'q-specialization': _q_specialization,
    'cauchy-oracle': _cauchy_oracle,
    'schur-pieri': _schur_pieri,
    'character-tables': _character_tables,
    'regular-fixed': _regular_fixed,
    'adjoint-adams': _adjoint_adams,
    'adjoint-pairing': _adjoint_pairing,
    'periodicity': _periodicity,
    'quaternion-symplectic': _quaternion_symplectic,
    'koszul': _koszul,
    'virtual-sigma': _virtual_sigma,
    'virtual-lambda': _virtual_lambda,
    'multiplicativity': _multiplicativity,
    'adams-composition': _adams_composition,
    'newton-adams': _newton_adams,
    'quotient-fixed': _quotient_fixed,
    'cauchy-exterior': _cauchy_exterior,
    'schur-character': _schur_character,
    'power-traces': _power_traces,
    'koszul-dimensions': _koszul_dimensions,
    'orbit-stabilizer': _orbit_stabilizer,
    'lattice-sym-compat': _lattice_sym_compat,
    'quad-different': _quad_different,
    'differential-sequence': _differential_sequence,
    'graded-layers': _graded_layers,
    'bott-inverse': _bott_inverse,
    'bott-multiplier': _bott_multiplier,
}


def expand_grid(grid):
    """
    Cartesian product of a parameter grid in key order

    Non-list values count as a single value.  A list of grids expands each
    in turn.
    """
    if isinstance(grid, list):
        return [params for sub in grid for params in expand_grid(sub)]
    keys = list(grid)
    values = [v if isinstance(v, list) else [v] for v in grid.values()]
    return [dict(zip(keys, combo)) for combo in product(*values)]


def run_check(check, params):
    """
    Run one check instance

    Returns:
        List of VerificationReport; a budget overrun becomes a single skip
    """
    if check not in CHECKS:
        raise ValueError(f"Unknown check id: {check}")
    try:
        return CHECKS[check](params)
    except BudgetExceeded as e:
        logger.warning(f"Skipping {check} {params}: {e}")
        return [VerificationReport.skipped(check, params, f"budget exceeded ({e.attempted} configurations)")]
    except PreconditionError as e:
        logger.error(f"Precondition failed for {check} {params}: {e}")
        raise


def _run_task(task):
    return run_check(*task)


def plan(config, only=None):
    """(check, params) tasks in config order"""
    checks = config.get('checks', {})
    tasks = []
    for check, grid in checks.items():
        if only and check not in only:
            continue
        if check not in CHECKS:
            raise ValueError(f"Unknown check id in config: {check}")
        tasks += [(check, params) for params in expand_grid(grid)]
    return tasks


def run_suite(config, workers=None, only=None):
    """
    Run every check of a config

    Args:
        config: Dict with a 'checks' section and an optional 'suite' section
        workers: Process count, overriding config['suite']['workers']
        only: Optional collection of check ids to keep

    Returns:
        List of VerificationReport in config order
    """
    tasks = plan(config, only)
    if workers is None:
        workers = config.get('suite', {}).get('workers', 1)
    logger.info("=" * 60)
    logger.info(f"Verification suite: {len(tasks)} tasks on {workers} worker(s)")
    logger.info("=" * 60)
    started = time.perf_counter()

    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(_run_task, tasks))
    else:
        batches = [_run_task(task) for task in tasks]

    reports = [report for batch in batches for report in batch]
    failed = [r for r in reports if not r.ok]
    logger.info(f"Suite finished in {time.perf_counter() - started:.2f}s: "
                f"{len(reports)} reports, {len(failed)} not ok")
    return reports
