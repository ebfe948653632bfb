"""
Command-line interface for the Wave Packet SDK.

Usage:
    wavepacket gen --seed 7 --d 2 --out params.json
    wavepacket validate --params params.json
    wavepacket tables --params params.json --K 4 --method generating --out table.json
    wavepacket crosscheck --seed 7 --d 3 --K 4
    wavepacket crosscheck --params params.json --K 4 --verify table.json
    wavepacket eval --params params.json --k 1,0 --grid "-2:2:41,-2:2:41" --out phi.csv
    wavepacket gram --params params.json --K 3 --nodes 6 --out gram.csv

Exit status: 0 success, 1 failed numerical check, 2 usage or input error.
Data goes to stdout (or --out); reports and logs go to stderr.
"""

import functools
import sys
from typing import Optional

import click

from .. import __version__, configure_logging
from ..core.config import VALID_LOG_LEVELS, WavePacketConfig
from ..core.engine import WavePacketEngine
from ..core.exceptions import WavePacketError, handle_exception
from ..core.utils import parse_grid_spec, parse_index
from ..models.polynomial_model import ConstructionMethod

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2

__all__ = [
    "cli",
    "main",
]


def params_options(func):
    """``--params`` or the ``--seed``/``--d`` pair, plus generator knobs."""
    options = [
        click.option('--params', 'params_path', type=str, default=None,
                     help='PacketParams JSON file ("-" for stdin)'),
        click.option('--seed', type=click.IntRange(min=0), default=None,
                     help='Seed for generated parameters'),
        click.option('--d', 'dim', type=int, default=None, help='Dimension for generated parameters'),
        click.option('--spread', type=float, default=1.0, show_default=True,
                     help='Scale of the generated width matrix'),
        click.option('--hbar', type=float, default=1.0, show_default=True,
                     help='Semiclassical parameter for generated parameters'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def run_command(func):
    """Map SDK errors to exit status 2 with the error message on stderr."""
    guarded = handle_exception(func)

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            status = guarded(*args, **kwargs)
        except WavePacketError as e:
            click.echo(f"Error: {e.get_user_message()}", err=True)
            sys.exit(EXIT_INPUT_ERROR)
        sys.exit(status or EXIT_OK)
    return wrapper


def _engine(ctx: click.Context, **overrides) -> WavePacketEngine:
    config: WavePacketConfig = ctx.obj['config']
    return WavePacketEngine(config.with_overrides(**overrides))


@click.group()
@click.version_option(version=__version__, prog_name='wavepacket')
@click.option('--log-level', type=click.Choice(VALID_LOG_LEVELS, case_sensitive=False),
              default='WARNING', show_default=True, help='Logging level for stderr output')
@click.pass_context
def cli(ctx: click.Context, log_level: str):
    """Semiclassical wave-packet polynomials: build, evaluate and cross-check."""
    config = WavePacketConfig({'log_level': log_level.upper()})
    configure_logging(level=config.log_level, format_type='simple')
    ctx.ensure_object(dict)
    ctx.obj['config'] = config


@cli.command()
@params_options
@click.option('--tol', type=float, default=None, help='Admissibility tolerance')
@click.pass_context
@run_command
def validate(ctx, params_path, seed, dim, spread, hbar, tol):
    """Check the admissibility identities for a parameter set."""
    with _engine(ctx, admissibility_tol=tol) as engine:
        params = engine.resolve_params(params_path, seed, dim, spread, hbar)
        report = engine.validate(params)

    click.echo(f"residual1 {report.residual1:.17g}")
    click.echo(f"residual2 {report.residual2:.17g}")
    click.echo(f"tolerance {report.tolerance:.17g}")
    click.echo("admissible" if report.ok else "not admissible")
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


@cli.command()
@click.option('--seed', type=click.IntRange(min=0), required=True, help='Random seed')
@click.option('--d', 'dim', type=int, required=True, help='Dimension')
@click.option('--spread', type=float, default=1.0, show_default=True, help='Scale of the width matrix')
@click.option('--hbar', type=float, default=1.0, show_default=True, help='Semiclassical parameter')
@click.option('--out', 'output_path', type=str, default=None, help='Output file (default stdout)')
@click.pass_context
@run_command
def gen(ctx, seed, dim, spread, hbar, output_path):
    """Generate an admissible parameter set from a seed."""
    with _engine(ctx) as engine:
        params = engine.generate(seed, dim, spread, hbar)
        engine.file_service.save_params(params, output_path)
    return EXIT_OK


@cli.command()
@params_options
@click.option('--K', 'max_order', type=int, required=True, help='Maximum total degree')
@click.option('--method', type=click.Choice([m.value for m in ConstructionMethod]),
              default=ConstructionMethod.RECURRENCE.value, show_default=True,
              help='Construction used to build the table')
@click.option('--out', 'output_path', type=str, default=None, help='Output file (default stdout)')
@click.pass_context
@run_command
def tables(ctx, params_path, seed, dim, spread, hbar, max_order, method, output_path):
    """Build the polynomial table P_k for |k| <= K."""
    with _engine(ctx) as engine:
        params = engine.resolve_params(params_path, seed, dim, spread, hbar)
        table = engine.build_table(params, max_order, method)
        engine.file_service.save_table(table, output_path)
    return EXIT_OK


@cli.command()
@params_options
@click.option('--K', 'max_order', type=int, required=True, help='Maximum total degree')
@click.option('--verify', 'verify_path', type=str, default=None,
              help='Stored table JSON to compare against every construction')
@click.option('--tol', type=float, default=None, help='Cross-check tolerance')
@click.pass_context
@run_command
def crosscheck(ctx, params_path, seed, dim, spread, hbar, max_order, verify_path, tol):
    """Build all constructions and compare their coefficients."""
    with _engine(ctx, crosscheck_tol=tol) as engine:
        params = engine.resolve_params(params_path, seed, dim, spread, hbar)
        report = engine.crosscheck(params, max_order, verify_path)

    for line in report.get_summary():
        click.echo(line)
    click.echo(f"crosscheck {report.status.value} (tolerance {report.tolerance:g})")
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


@cli.command(name='eval')
@params_options
@click.option('--k', 'index', type=str, required=True, help='Multi-index, e.g. "1,0"')
@click.option('--K', 'max_order', type=int, default=None, help='Maximum total degree allowed for --k')
@click.option('--grid', type=str, required=True, help='Grid "min:max:count[,min:max:count...]"')
@click.option('--out', 'output_path', type=str, default=None, help='Output CSV (default stdout)')
@click.pass_context
@run_command
def evaluate(ctx, params_path, seed, dim, spread, hbar, index, max_order, grid, output_path):
    """Evaluate phi_k on a row-major grid and write CSV."""
    k = parse_index(index)
    if max_order is not None and sum(k) > max_order:
        click.echo(f"Error: |k| = {sum(k)} exceeds --K {max_order}", err=True)
        return EXIT_INPUT_ERROR
    axes = parse_grid_spec(grid)

    with _engine(ctx) as engine:
        params = engine.resolve_params(params_path, seed, dim, spread, hbar)
        frame = engine.evaluate(params, k, axes)
        engine.file_service.write_csv(frame, output_path)
    return EXIT_OK


@cli.command()
@params_options
@click.option('--K', 'max_order', type=int, required=True, help='Maximum total degree')
@click.option('--nodes', type=int, default=None, help='Gauss-Hermite nodes per dimension (default K + 3)')
@click.option('--out', 'output_path', type=str, default=None, help='Output CSV (default stdout)')
@click.option('--tol', type=float, default=None, help='Tolerance for max |G - I|')
@click.pass_context
@run_command
def gram(ctx, params_path, seed, dim, spread, hbar, max_order, nodes, output_path, tol):
    """Gram matrix of phi_k, |k| <= K, on a tensor Gauss-Hermite grid."""
    with _engine(ctx, gram_tol=tol) as engine:
        params = engine.resolve_params(params_path, seed, dim, spread, hbar)
        report = engine.gram(params, max_order, nodes)
        engine.file_service.write_csv(engine.gram_frame(report), output_path)

    click.echo(report.get_summary(), err=True)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def main(argv: Optional[list] = None):
    """Console-script entry point."""
    cli.main(args=argv, prog_name='wavepacket')


if __name__ == '__main__':
    main()
