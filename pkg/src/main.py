# src/main.py

import sys
import os
import json
import logging
import argparse
from pathlib import Path

# Add src to path
sys.path.insert(0, os.path.dirname(__file__))

from bott_ring import CyclicQuotientRing, bott_element, verify_bott_inverse, verify_bott_multiplier
from characters import adams, adams_adjoint, character_table, closed_form_table, decompose, fs_classify
from gamma_lattices import sym_power_orbits
from groups import group_from_spec
from partitions import Partition
from quad_fields import build, cotangent_element, verify_graded_layers
from schur_modules import catalog_module, coschur_module, schur_module
from suite import CHECKS, run_check, run_suite
from symfunc import cauchy_p, newton_poly, schur_in_e, sym_cauchy_q

logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).parent.parent
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logging(level='INFO', log_file='workbench.log'):
    """Root logging: a log file plus stderr, leaving stdout to reports"""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format=LOG_FORMAT,
        handlers=[
            logging.FileHandler(log_file),
            logging.StreamHandler(sys.stderr)
        ],
        force=True
    )


def _parse_value(text):
    try:
        return int(text)
    except ValueError:
        return text


class Workbench:
    """
    Command front end
    Loads settings, runs one subcommand and writes its output to stdout
    """

    def __init__(self, config_path='config/settings.json', output_format=None):
        """
        Args:
            config_path: Settings file, relative to the project root unless absolute
            output_format: 'json' or 'text', overriding the settings file
        """
        self.config = self._load_config(config_path)
        suite_config = self.config.get('suite', {})
        self.format = output_format or suite_config.get('format', 'json')
        self.workers = suite_config.get('workers', 1)

    def _load_config(self, config_path):
        """Load configuration from JSON file"""
        try:
            config_file = Path(config_path)
            if not config_file.is_absolute():
                config_file = PROJECT_ROOT / config_path
            with open(config_file, 'r') as f:
                config = json.load(f)
            logger.info(f"Configuration loaded from {config_path}")
            return config
        except FileNotFoundError:
            logger.error(f"Config file not found: {config_path}")
            raise
        except json.JSONDecodeError as e:
            logger.error(f"Invalid JSON in config file: {e}")
            raise

    # -- output --------------------------------------------------------------

    def emit(self, data):
        print(json.dumps(data, sort_keys=True, indent=None if self.format == 'json' else 2))

    def emit_reports(self, reports):
        """Print reports and return the exit status"""
        for report in reports:
            print(report.to_json() if self.format == 'json' else report.to_text())
        if self.format == 'text':
            counts = {}
            for report in reports:
                counts[report.status] = counts.get(report.status, 0) + 1
            print(", ".join(f"{n} {status}" for status, n in sorted(counts.items())) or "no checks")
        return 0 if all(r.ok for r in reports) else 1

    # -- subcommands ---------------------------------------------------------

    def symfunc(self, args):
        if args.kind == 'newton':
            expr = newton_poly(args.i, args.basis)
        elif args.kind == 'schur':
            expr = schur_in_e(Partition.parse(args.partition))
        elif args.kind == 'cauchy-p':
            expr = cauchy_p(args.i)
        else:
            expr = sym_cauchy_q(args.i)
        self.emit({'kind': args.kind, 'i': args.i, 'expression': str(expr)})
        return 0

    def chartable(self, args):
        G = group_from_spec(args.group)
        table = closed_form_table(G) if args.method == 'closed' else character_table(G)
        self.emit(table.to_json())
        return 0

    def adams(self, args):
        G = group_from_spec(args.group)
        table = character_table(G)
        op = adams_adjoint if args.adjoint else adams
        rows = range(len(table)) if args.char is None else [args.char]
        out = []
        for idx in rows:
            image = op(table[idx], args.k)
            out.append({'char': idx, 'values': image.to_json(), 'decomposition': decompose(table, image).to_json()})
        self.emit({'group': G.name, 'k': args.k, 'adjoint': args.adjoint, 'images': out})
        return 0

    def classify_fs(self, args):
        G = group_from_spec(args.group)
        self.emit(fs_classify(character_table(G)).to_json())
        return 0

    def orbits(self, args):
        G = group_from_spec(args.group)
        ks = [int(k) for k in args.ks.split(',')]
        self.emit(sym_power_orbits(G, args.n, ks).to_json())
        return 0

    def schur(self, args):
        G = group_from_spec(args.group)
        V = catalog_module(G, args.module)
        lam = Partition.parse(args.partition)
        module = coschur_module(V, lam) if args.co else schur_module(V, lam)
        self.emit(module.to_json())
        return 0

    def quad(self, args):
        Q = build(args.D)
        if args.p is not None:
            return self.emit_reports([verify_graded_layers(Q, args.p)])
        if args.cotangent:
            self.emit(cotangent_element(Q).to_json())
            return 0
        self.emit(Q.to_json())
        return 0

    def bott(self, args):
        if args.action == 'element':
            ring = CyclicQuotientRing(args.m)
            theta = bott_element(ring, args.k)
            self.emit({'m': args.m, 'k': args.k, 'coefficients': ring.to_json(theta), 'text': ring.format(theta)})
            return 0
        if args.action == 'verify':
            return self.emit_reports([verify_bott_multiplier(args.m, args.k)])
        return self.emit_reports([verify_bott_inverse(args.m, args.k, args.kprime)])

    def verify(self, args):
        params = {}
        for pair in args.params:
            key, _, value = pair.partition('=')
            if not value:
                raise ValueError(f"Expected key=value, got {pair!r}")
            params[key] = _parse_value(value)
        return self.emit_reports(run_check(args.check, params))

    def suite(self, args):
        config = self._load_config(args.config) if args.config else self.config
        only = set(args.only.split(',')) if args.only else None
        workers = args.workers if args.workers is not None else self.workers
        return self.emit_reports(run_suite(config, workers=workers, only=only))


def build_parser():
    parser = argparse.ArgumentParser(prog='workbench', description='Exact verification of power-operation identities')
    parser.add_argument('--settings', default='config/settings.json', help='Settings file')
    parser.add_argument('--verbose', action='store_true', help='DEBUG logging')
    parser.add_argument('--log-file', help='Log file (default from settings)')
    parser.add_argument('--workers', type=int, help='Worker processes for the suite')
    parser.add_argument('--format', choices=['json', 'text'], help='Output format')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('symfunc', help='Print a symmetric-function polynomial')
    p.add_argument('kind', choices=['newton', 'schur', 'cauchy-p', 'cauchy-q'])
    p.add_argument('--i', type=int, default=1)
    p.add_argument('--basis', choices=['e', 'h'], default='e')
    p.add_argument('--lambda', dest='partition', default='1')

    p = sub.add_parser('chartable', help='Character table of a group')
    p.add_argument('--group', required=True)
    p.add_argument('--method', choices=['dixon', 'closed'], default='dixon')

    p = sub.add_parser('adams', help='Adams operation on irreducible characters')
    p.add_argument('--group', required=True)
    p.add_argument('--k', type=int, required=True)
    p.add_argument('--char', type=int)
    p.add_argument('--adjoint', action='store_true', help='Root-sum adjoint instead')

    p = sub.add_parser('classify-fs', help='Real, complex and quaternionic irreducibles')
    p.add_argument('--group', required=True)

    p = sub.add_parser('orbits', help='Orbit decomposition of symmetric powers of Z[G]^n')
    p.add_argument('--group', required=True)
    p.add_argument('--n', type=int, default=1)
    p.add_argument('--ks', required=True, help='Comma-separated powers')

    p = sub.add_parser('schur', help='Schur or coSchur module of a catalog module')
    p.add_argument('--group', required=True)
    p.add_argument('--module', required=True)
    p.add_argument('--lambda', dest='partition', required=True)
    p.add_argument('--co', action='store_true', help='coSchur module')

    p = sub.add_parser('quad', help='Different and differentials of a quadratic field')
    p.add_argument('--D', type=int, required=True)
    p.add_argument('--p', type=int, help='Graded layers at a ramified prime')
    p.add_argument('--cotangent', action='store_true')

    p = sub.add_parser('bott', help='Bott elements in Z[x]/(x^m - 1)')
    p.add_argument('action', choices=['element', 'verify', 'verify-inverse'])
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--k', type=int, required=True)
    p.add_argument('--kprime', type=int)

    p = sub.add_parser('verify', help='Run one check with key=value parameters')
    p.add_argument('check', choices=sorted(CHECKS))
    p.add_argument('params', nargs='*')

    p = sub.add_parser('suite', help='Run a verification grid')
    p.add_argument('--config', help='Grid file (default: the settings file)')
    p.add_argument('--only', help='Comma-separated check ids')
    return parser


def main(argv=None):
    """Main entry point"""
    args = build_parser().parse_args(argv)
    try:
        settings_path = Path(args.settings)
        if not settings_path.is_absolute():
            settings_path = PROJECT_ROOT / settings_path
        with open(settings_path, 'r') as f:
            log_config = json.load(f).get('logging', {})
    except (FileNotFoundError, json.JSONDecodeError):
        log_config = {}
    setup_logging('DEBUG' if args.verbose else log_config.get('level', 'INFO'),
                  args.log_file or log_config.get('file', 'workbench.log'))

    try:
        bench = Workbench(args.settings, args.format)
        handler = getattr(bench, args.command.replace('-', '_'))
        sys.exit(handler(args))
    except Exception as e:
        logger.error(f"Fatal error: {e}", exc_info=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
