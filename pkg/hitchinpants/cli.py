"""Command line front end: hitchin-pants coords|verify|sweep.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 degenerate computation.
"""
import concurrent.futures
import itertools

import click
import numpy

from . import checks, core, forms
from .geometry import bd_coordinates, pants_group
from .geometry.bd_coordinates import PositivityViolation
from .geometry.flag_algebra import DegenerateFlagsError, IndexRangeError
from .geometry.pants_group import DomainError, NotHyperbolicError, PantsLengths
from .geometry.scalar_field import Backend, MixedBackendError, NonPositiveLogError, NotRepresentableError
from .utils import documents

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3

USAGE_ERRORS = (DomainError, IndexRangeError)
COMPUTATION_ERRORS = (
	DegenerateFlagsError, PositivityViolation, NotHyperbolicError, NotRepresentableError,
	NonPositiveLogError, MixedBackendError, ZeroDivisionError)


def exit_code_for(error):
	if isinstance(error, USAGE_ERRORS):
		return EXIT_USAGE
	return EXIT_DEGENERATE


def build_coordinates(config):
	""" Coordinates of one parameter point as (document, one-row frame).
	"""
	params = config.params
	lengths = config.lengths or pants_group.lengths_from_params(params)
	coords = bd_coordinates.assemble_phi(config.n, params, config.method)
	tolerance = 0.0 if params.backend is Backend.EXACT else core.get_config().get("FLOAT_TOLERANCE", 1e-9)
	polytope = bd_coordinates.polytope_check(coords, config.n, params, tolerance)
	boundary = bd_coordinates.boundary_lengths(config.n, params, coords)
	document = documents.coordinates_document(
		config.n, params, lengths, coords, config.method,
		pants_group.check_domain(params), polytope, boundary)
	frame = documents.coordinates_frame([documents.coordinates_row(params, lengths, coords)], coords.column_names())
	return document, frame


def sweep_point(n, lengths, method):
	params = pants_group.params_from_lengths(lengths)
	coords = bd_coordinates.assemble_phi(n, params, method)
	return documents.coordinates_row(params, lengths, coords)


def _sweep_arguments(arguments):
	return sweep_point(*arguments)


def grid_points(grid):
	axes = [numpy.linspace(*grid[axis]) for axis in forms.GRID_AXES]
	for values in itertools.product(*axes):
		yield PantsLengths(*(float(v) for v in values))


def build_sweep(config):
	arguments = [(config.n, lengths, config.method) for lengths in grid_points(config.grid)]
	if config.workers > 1:
		with concurrent.futures.ProcessPoolExecutor(max_workers=config.workers) as executor:
			rows = list(executor.map(_sweep_arguments, arguments))
	else:
		rows = [_sweep_arguments(a) for a in arguments]
	return documents.coordinates_frame(rows, bd_coordinates.coordinate_columns(config.n))


def _validated(ctx, form):
	if not form.validate():
		click.echo("Error: {}".format(forms.first_error(form)), err=True)
		ctx.exit(EXIT_USAGE)
	return form.to_run_config()


def _emit(ctx, text, out):
	if not out:
		click.echo(text, nl=False)
		return
	try:
		path = documents.output_manager.store_text(out, text)
	except OSError as e:
		click.echo("Error: cannot write {}: {}".format(out, e), err=True)
		ctx.exit(EXIT_USAGE)
	click.echo("Wrote {}".format(path), err=True)


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Log debug output.")
def cli(verbose):
	""" Coordinates of the Fuchsian locus of the Hitchin component of a pair of pants.
	"""
	if verbose:
		core.get_logger().setLevel("DEBUG")


@cli.command()
@click.option("--n", type=int, help="Rank: coordinates of PSL_n(R) representations.")
@click.option("--abc", help="Exact parameters alpha,beta,gamma such as 2,1,1/2.")
@click.option("--lengths", help="Boundary lengths lA,lB,lC (float mode).")
@click.option("--mode", type=click.Choice([b.value for b in Backend]))
@click.option("--method", type=click.Choice([m.value for m in bd_coordinates.Method]))
@click.option("--format", "output_format", type=click.Choice(["json", "csv", "xml"]))
@click.option("--out", type=click.Path(dir_okay=False), help="Write to this file instead of stdout.")
@click.pass_context
def coords(ctx, n, abc, lengths, mode, method, output_format, out):
	""" Compute the coordinate vector of one representation.
	"""
	form = forms.make_form(forms.CoordinatesForm, dict(
		n=n, abc=abc, lengths=lengths, mode=mode, method=method, format=output_format,
		out=out or core.get_config().get("OUTPUT_PATH")))
	config = _validated(ctx, form)
	try:
		document, frame = build_coordinates(config)
	except USAGE_ERRORS + COMPUTATION_ERRORS as e:
		click.echo("Error: {}".format(e), err=True)
		ctx.exit(exit_code_for(e))
	_emit(ctx, documents.render(document, frame, config.output_format), config.out)
	ctx.exit(EXIT_OK)


@cli.command()
@click.option("--samples", type=int, help="Number of seeded random parameter triples.")
@click.option("--seed", type=int, help="Seed of the random parameters.")
@click.option("--max-n", "max_n", type=int, help="Check every rank from 2 to this one.")
@click.option("--mode", type=click.Choice([b.value for b in Backend]))
@click.option("--jobs", type=int, help="Worker processes.")
@click.option("--out", type=click.Path(dir_okay=False), help="Write the JSON report to this file.")
@click.pass_context
def verify(ctx, samples, seed, max_n, mode, jobs, out):
	""" Run the verification suite; exit 1 on the first failing relation.
	"""
	form = forms.make_form(forms.VerifyForm, dict(samples=samples, seed=seed, max_n=max_n, mode=mode, jobs=jobs))
	config = _validated(ctx, form)
	try:
		report = checks.run_verification(config.samples, config.seed, config.max_n, config.backend, workers=config.workers)
	except USAGE_ERRORS + COMPUTATION_ERRORS as e:
		click.echo("Error: {}".format(e), err=True)
		ctx.exit(exit_code_for(e))

	_emit(ctx, documents.to_json(report.to_document()), out)
	for category, (passed, failed) in report.counts.items():
		click.echo("{:<24} {:>8} passed {:>6} failed".format(category, passed, failed), err=True)
	if not report.passed:
		click.echo("Counterexample: {}".format(report.counterexample.to_document()), err=True)
		ctx.exit(EXIT_VERIFICATION_FAILED)
	ctx.exit(EXIT_OK)


@cli.command()
@click.option("--n", type=int, help="Rank.")
@click.option("--grid", help="lA:start:stop:steps,lB:...,lC:...")
@click.option("--method", type=click.Choice([m.value for m in bd_coordinates.Method]))
@click.option("--jobs", type=int, help="Worker processes.")
@click.option("--out", type=click.Path(dir_okay=False), help="CSV file to write.")
@click.pass_context
def sweep(ctx, n, grid, method, jobs, out):
	""" Coordinates over a grid of boundary lengths, one CSV row per point.
	"""
	form = forms.make_form(forms.SweepForm, dict(
		n=n, grid=grid, method=method, jobs=jobs, out=out or core.get_config().get("OUTPUT_PATH")))
	config = _validated(ctx, form)
	try:
		frame = build_sweep(config)
	except USAGE_ERRORS + COMPUTATION_ERRORS as e:
		click.echo("Error: {}".format(e), err=True)
		ctx.exit(exit_code_for(e))
	_emit(ctx, documents.to_csv(frame), config.out)
	core.get_logger().debug("Sweep wrote %d rows.", len(frame))
	ctx.exit(EXIT_OK)
