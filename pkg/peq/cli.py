"""
Command-line interface for peq.

All results are JSON on standard output; diagnostics go to standard error.
"""

from typing import Any, List, Optional, Sequence
import argparse
import json
import logging
import sys

from .basis import diagram_basis_dense, orbit_basis, verify_basis
from .bench import run_bench
from .config import PEQConfig
from .constants import (
    BASIS_KINDS,
    BENCH_DEFAULT_REPS,
    EXIT_CAPACITY,
    EXIT_ERROR,
    EXIT_OK,
    FIELD_NAMES,
    VERIFY_FIELDS,
)
from .errors import CapacityError, InputDomainError, PEQError
from .fastapply import apply_dense_oracle
from .layers import EquivariantLayer, layer_apply
from .partitions import SetPartition, enumerate_partitions, partition_of_tuple
from .tensor import DenseTensor

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    """Argument parser reporting usage errors as JSON instead of exiting."""

    def error(self, message):
        raise InputDomainError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="peq",
        description="Permutation equivariant linear layers in the diagram basis",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  peq enumerate --l 2 --n 3                          Partitions indexing the basis
  peq partition-of --tuple "2 1 2"                   Equality pattern of an index tuple
  peq basis --kind diagram --partition "0 1" --n 2   d_P as a tensor file
  peq apply --m 1 --mprime 1 --layer L.json --input v.json [--oracle]
  peq verify --l 4 --n 4 --field rational            Exact basis check
  peq bench --m 2 --mprime 2 --n 32 --partition "0 1 2 3" --reps 5
        """
    )
    parser.add_argument('--max-entries', type=int, default=None,
                        help='Dense materialization bound (default: $PEQ_MAX_ENTRIES or 2^26)')
    parser.add_argument('--verbose', action='store_true',
                        help='Log progress to stderr')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('enumerate', help='List partitions with at most n blocks')
    p.add_argument('--l', type=int, required=True, help='Ground-set size')
    p.add_argument('--n', type=int, required=True, help='Maximum number of blocks')

    p = sub.add_parser('partition-of', help='Partition induced by an index tuple')
    p.add_argument('--tuple', required=True, help='Space-separated values in 1..n')
    p.add_argument('--n', type=int, default=None, help='Optional range check')

    p = sub.add_parser('basis', help='Orbit or diagram basis tensor')
    p.add_argument('--kind', choices=BASIS_KINDS, required=True)
    p.add_argument('--partition', required=True, help='rgs, e.g. "0 1 0"')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--scalar', choices=FIELD_NAMES, default='int')
    p.add_argument('--out', metavar='FILE', help='Write the tensor file here instead of stdout')

    p = sub.add_parser('apply', help='Apply a layer file to a tensor file')
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--mprime', type=int, required=True)
    p.add_argument('--layer', required=True, metavar='FILE')
    p.add_argument('--input', required=True, metavar='FILE')
    p.add_argument('--oracle', action='store_true',
                   help='Use the dense oracle instead of the fast path')

    p = sub.add_parser('verify', help='Check the diagram basis exactly')
    p.add_argument('--l', type=int, required=True)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--field', choices=VERIFY_FIELDS, default='rational')

    p = sub.add_parser('bench', help='Operation counts and timings, fast vs dense')
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--mprime', type=int, required=True)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--partition', required=True)
    p.add_argument('--reps', type=int, default=BENCH_DEFAULT_REPS)
    p.add_argument('--seed', type=int, default=None)
    return parser


def _setup_logging(verbose: bool):
    """Configure logging."""
    level = logging.INFO if verbose else logging.WARNING
    logging.basicConfig(
        level=level,
        format='%(asctime)s [%(levelname)s] %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S',
        stream=sys.stderr,
    )


def _cmd_enumerate(args, config: PEQConfig) -> Any:
    return [str(p) for p in enumerate_partitions(args.l, args.n)]


def _cmd_partition_of(args, config: PEQConfig) -> Any:
    return str(partition_of_tuple(args.tuple.replace(",", " ").split(), args.n))


def _cmd_basis(args, config: PEQConfig) -> Any:
    p = SetPartition.parse(args.partition)
    build = orbit_basis if args.kind == 'orbit' else diagram_basis_dense
    tensor = build(p, args.n, args.scalar, config)
    if args.out:
        tensor.save(args.out)
        logger.info(f"wrote {args.kind} basis tensor [{p}] to {args.out}")
        return {"out": args.out}
    return tensor.to_json_dict()


def _cmd_apply(args, config: PEQConfig) -> Any:
    layer = EquivariantLayer.load(args.layer)
    if (layer.m, layer.mprime) != (args.m, args.mprime):
        raise InputDomainError(
            f"layer file maps order {layer.m} → {layer.mprime}, flags say {args.m} → {args.mprime}"
        )
    v = DenseTensor.load(args.input)
    if not args.oracle:
        return layer_apply(layer, v).to_json_dict()
    if v.n != layer.n or v.order != layer.m or v.field is not layer.field:
        raise InputDomainError(f"input {v!r} does not match layer {layer!r}")
    out = DenseTensor.zeros(layer.n, layer.mprime, layer.field)
    for p, c in layer.coeffs.items():
        out = out + apply_dense_oracle(p, layer.m, layer.mprime, layer.n, v, config).scale(c)
    return out.to_json_dict()


def _cmd_verify(args, config: PEQConfig) -> Any:
    return verify_basis(args.l, args.n, args.field, config).to_dict()


def _cmd_bench(args, config: PEQConfig) -> Any:
    p = SetPartition.parse(args.partition)
    return run_bench(p, args.m, args.mprime, args.n, args.reps, args.seed, config).to_dict()


_COMMANDS = {
    'enumerate': _cmd_enumerate,
    'partition-of': _cmd_partition_of,
    'basis': _cmd_basis,
    'apply': _cmd_apply,
    'verify': _cmd_verify,
    'bench': _cmd_bench,
}


def _emit(obj: Any):
    print(json.dumps(obj))


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command; returns the process exit status."""
    try:
        args = build_parser().parse_args(argv)
        _setup_logging(args.verbose)
        config = PEQConfig.from_env(max_entries=args.max_entries)
        result = _COMMANDS[args.command](args, config)
    except CapacityError as exc:
        _emit({"error": str(exc)})
        return EXIT_CAPACITY
    except (PEQError, ValueError, OSError) as exc:
        _emit({"error": str(exc)})
        return EXIT_ERROR
    _emit(result)
    if args.command == 'verify' and not result["is_basis"]:
        return EXIT_ERROR
    return EXIT_OK


def main(argv: Optional[List[str]] = None):
    """Command-line entry point."""
    sys.exit(run(argv))


if __name__ == '__main__':
    main()
