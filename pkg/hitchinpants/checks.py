"""Seeded verification of every relation the coordinates are expected to satisfy.

Each check is counted per (sample, n) and the first failure is kept as a
counterexample. Samples are independent and may run in a process pool; the
report is merged in sample order.
"""
import concurrent.futures
import dataclasses
import math

import numpy

from . import core
from .geometry import bd_coordinates, flag_algebra, pants_group, veronese
from .geometry.bd_coordinates import Method
from .geometry.pants_group import LEAVES, TRIANGLES, BOUNDARIES, LaminationData
from .geometry.scalar_field import Backend, one

CATEGORIES = (
	"domain",
	"group_relation",
	"fixed_points",
	"trace_length",
	"equivariance",
	"stable_flag",
	"genericity",
	"triple_ratio_symmetry",
	"rotation",
	"triangle_constancy",
	"oracle",
	"length_identity",
	"positivity",
	"dimension",
)

# Float mode compares trace and length through cosh.
TRACE_TOLERANCE = 1e-10


@dataclasses.dataclass
class Counterexample:
	category: str
	n: object
	params: str
	index: str
	expected: str
	actual: str

	def to_document(self):
		return dataclasses.asdict(self)


@dataclasses.dataclass
class VerificationReport:
	counts: dict = dataclasses.field(default_factory=lambda: {category: [0, 0] for category in CATEGORIES})
	counterexample: Counterexample = None

	@property
	def passed(self):
		return all(failed == 0 for _, failed in self.counts.values())

	@property
	def total_passed(self):
		return sum(ok for ok, _ in self.counts.values())

	@property
	def total_failed(self):
		return sum(failed for _, failed in self.counts.values())

	def record(self, category, ok, n=None, params=None, index=None, expected=None, actual=None):
		self.counts[category][0 if ok else 1] += 1
		if not ok and self.counterexample is None:
			self.counterexample = Counterexample(category, n, str(params), str(index), str(expected), str(actual))

	def merge(self, other):
		for category, (ok, failed) in other.counts.items():
			self.counts[category][0] += ok
			self.counts[category][1] += failed
		if self.counterexample is None:
			self.counterexample = other.counterexample
		return self

	def to_document(self):
		return {
			"passed": self.passed,
			"categories": {category: {"passed": ok, "failed": failed} for category, (ok, failed) in self.counts.items()},
			"total": {"passed": self.total_passed, "failed": self.total_failed},
			"counterexample": self.counterexample.to_document() if self.counterexample is not None else None,
		}


class _SampleChecker():
	def __init__(self, params, max_n, tolerance, flag_seed):
		self.params = params
		self.max_n = max_n
		self.tolerance = tolerance
		self.flag_seed = flag_seed
		self.report = VerificationReport()

	def close(self, left, right):
		return left.isclose(right, self.tolerance)

	def check(self, category, n, index, compute):
		""" Runs `compute`, which returns (ok, expected, actual); errors count as failures.
		"""
		try:
			ok, expected, actual = compute()
		except (ArithmeticError, ValueError, TypeError, KeyError) as e:
			ok, expected, actual = False, "no error", "{}: {}".format(type(e).__name__, e)
		self.report.record(category, ok, n, self.params, index, expected, actual)
		return ok

	def run(self):
		domain = pants_group.check_domain(self.params)
		self.report.record("domain", domain.passed, None, self.params, None, "all inequalities", ", ".join(domain.failures()) or "all inequalities")
		if not domain.passed:
			return self.report
		self.rep = pants_group.build_rep(self.params)
		self.lamination = LaminationData(self.params)
		self.check_group()
		for n in range(2, self.max_n + 1):
			self.check_rank(n)
		return self.report

	def check_group(self):
		rep = self.rep
		self.check("group_relation", None, "abc", lambda: (
			rep.relation().is_identity(self.tolerance)
			and all(self.close(rep.generator(g).determinant(), one(self.params.backend)) for g in "abc"),
			"identity", rep.relation().to_document()))

		formulas = self.attempt("fixed_points", None, "formulas", lambda: pants_group.fix_formulas(self.params))
		if formulas is not None:
			self.check_fixed_points(formulas)

		special = self.attempt("fixed_points", None, "special points", lambda: pants_group.special_points(self.params))
		if special is not None:
			self.check_special_points(special)

		lengths = self.attempt("trace_length", None, "lengths", lambda: pants_group.lengths_from_params(self.params))
		if lengths is None:
			return
		for name, length in zip("abc", lengths.as_tuple()):
			def trace(name=name, length=length):
				expected = 2 * math.cosh(length / 2)
				actual = abs(rep.generator(name).trace()).to_float()
				return math.isclose(expected, actual, rel_tol=TRACE_TOLERANCE), expected, actual
			self.check("trace_length", None, name, trace)

	def check_fixed_points(self, formulas):
		rep = self.rep
		for name in "abc":
			def fixed(name=name):
				actual = pants_group.fixed_points(rep.generator(name))
				expected = formulas[name]
				ok = actual.attracting.isclose(expected.attracting, self.tolerance) and actual.repelling.isclose(expected.repelling, self.tolerance)
				return ok, [str(p) for p in expected], [str(p) for p in actual]
			self.check("fixed_points", None, name, fixed)

		def ordering():
			values = [formulas[name].repelling.value() for name in "abc"]
			ok = values[0] < 0 < values[1] < 1 < values[2]
			return ok, "rep(a) < 0 < rep(b) < 1 < rep(c)", [str(v) for v in values]
		self.check("fixed_points", None, "ordering", ordering)

	def check_special_points(self, special):
		expected_points = {
			"minus_beta_gamma": self.lamination.leaf_quadruple("h_AB")[2],
			"beta_over_beta_plus_gamma": self.lamination.leaf_quadruple("h_BC")[2],
			"alpha_squared_beta_gamma_plus_one": self.lamination.leaf_quadruple("h_CA")[2],
		}
		for key, point in special.items():
			self.check("fixed_points", None, key, lambda key=key, point=point: (
				point.isclose(expected_points[key], self.tolerance), str(expected_points[key]), str(point)))

	def lamination_points(self):
		points = {}
		for triangle in TRIANGLES:
			for point in self.lamination.triangle_vertices(triangle):
				points[str(point)] = point
		for leaf in LEAVES:
			for point in self.lamination.leaf_quadruple(leaf):
				points[str(point)] = point
		return points

	def attempt(self, category, n, index, build):
		""" Runs `build`; an error is recorded as a failure of `category` and gives None.
		"""
		try:
			return build()
		except (ArithmeticError, ValueError, TypeError, KeyError) as e:
			self.report.record(category, False, n, self.params, index, "no error", "{}: {}".format(type(e).__name__, e))
			return None

	def curve_flags(self, points, n):
		return [veronese.flag_curve(point, n) for point in points]

	def check_rank(self, n):
		params = self.params
		points = self.lamination_points()

		for name in "abc":
			matrix = self.rep.generator(name)
			lifted = veronese.sym_power(matrix, n)
			for label, point in points.items():
				def equivariant(matrix=matrix, lifted=lifted, point=point):
					moved = veronese.flag_curve(point, n).transformed(lifted)
					image = pants_group.mobius_apply(matrix, point)
					return flag_algebra.same_flag(moved, veronese.flag_curve(image, n), self.tolerance), str(image), "flag differs"
				self.check("equivariance", n, "{} at {}".format(name, label), equivariant)

			def stable(matrix=matrix, lifted=lifted):
				flag, values = veronese.stable_flag(matrix, n)
				eigen_ok = all(
					all(self.close(x, value * y) for x, y in zip(flag_algebra.apply_matrix(lifted, vector), vector))
					for vector, value in zip(flag.basis, values))
				decreasing = all(abs(values[k]) > abs(values[k + 1]) for k in range(n - 1))
				attracting = pants_group.fixed_points(matrix).attracting
				matches = flag_algebra.same_flag(flag, veronese.flag_curve(attracting, n), self.tolerance)
				return eigen_ok and decreasing and matches, "stable flag at {}".format(attracting), [str(v) for v in values]
			self.check("stable_flag", n, name, stable)

		for triangle in TRIANGLES:
			vertices = self.lamination.triangle_vertices(triangle)
			self.check("genericity", n, triangle, lambda vertices=vertices: (
				flag_algebra.is_generic(self.curve_flags(vertices, n)), True, False))
		for leaf in LEAVES:
			quadruple = self.lamination.leaf_quadruple(leaf)
			self.check("genericity", n, leaf, lambda quadruple=quadruple: (
				flag_algebra.is_generic(self.curve_flags(quadruple, n)), True, False))

		rng = numpy.random.default_rng([self.flag_seed, n])
		triples = [("random", self.attempt(
			"triple_ratio_symmetry", n, "random flags",
			lambda: flag_algebra.random_generic_flags(rng, n, 3, backend=params.backend)))]
		for triangle in TRIANGLES:
			vertices = self.lamination.triangle_vertices(triangle)
			triples.append((triangle, self.attempt(
				"triple_ratio_symmetry", n, triangle, lambda vertices=vertices: self.curve_flags(vertices, n))))
		for label, triple in triples:
			if triple is None:
				continue
			e, f, g = triple
			for p, q, r in bd_coordinates.triangle_indices(n):
				def symmetric(e=e, f=f, g=g, p=p, q=q, r=r):
					value = flag_algebra.triple_ratio_exp(e, f, g, p, q, r)
					rotated = flag_algebra.triple_ratio_exp(f, g, e, q, r, p)
					swapped = flag_algebra.triple_ratio_exp(f, e, g, q, p, r)
					return self.close(value, rotated) and self.close(value * swapped, one(value.backend)), str(value), [str(rotated), str(1 / swapped)]
				self.check("triple_ratio_symmetry", n, "{} {},{},{}".format(label, p, q, r), symmetric)

		for triangle in TRIANGLES:
			for p, q, r in bd_coordinates.triangle_indices(n):
				def rotation(triangle=triangle, p=p, q=q, r=r):
					e, f, g = self.curve_flags(self.lamination.triangle_vertices(triangle), n)
					first = flag_algebra.triple_ratio_exp(e, f, g, p, q, r)
					second = flag_algebra.triple_ratio_exp(f, g, e, q, r, p)
					third = flag_algebra.triple_ratio_exp(g, e, f, r, p, q)
					return self.close(first, second) and self.close(first, third), str(first), [str(second), str(third)]
				self.check("rotation", n, "{} {},{},{}".format(triangle, p, q, r), rotation)

		generic = self.attempt("oracle", n, Method.GENERIC.value, lambda: bd_coordinates.assemble_phi(n, params, Method.GENERIC))
		closed = self.attempt("oracle", n, Method.CLOSED_FORM.value, lambda: bd_coordinates.assemble_phi(n, params, Method.CLOSED_FORM))
		assembled = [coords for coords in (generic, closed) if coords is not None]

		if generic is not None:
			for index in bd_coordinates.triangle_indices(n):
				expected, actual = generic.tau[("T0", index)].exp_value, generic.tau[("T1", index)].exp_value
				self.report.record("triangle_constancy", self.close(expected, actual), n, params, index, expected, actual)

		if generic is not None and closed is not None:
			for key, value in generic.sigma.items():
				actual = closed.sigma[key].exp_value
				self.report.record("oracle", self.close(value.exp_value, actual), n, params, key, value.exp_value, actual)
			for key, value in generic.tau.items():
				actual = closed.tau[key].exp_value
				self.report.record("oracle", self.close(value.exp_value, actual), n, params, key, value.exp_value, actual)

		for boundary in BOUNDARIES:
			generator = self.rep.generator(LaminationData.boundary_generator(boundary))
			ratios = self.attempt("length_identity", n, boundary, lambda generator=generator: veronese.eigen_lengths(generator, n))
			if ratios is None:
				continue
			for p in bd_coordinates.shearing_indices(n):
				for coords in assembled:
					actual = self.attempt(
						"length_identity", n, (boundary, p),
						lambda coords=coords, p=p: bd_coordinates.boundary_sum_from_coordinates(coords, boundary, p).exp_value)
					if actual is None:
						continue
					expected = ratios[p - 1]
					self.report.record("length_identity", self.close(expected, actual), n, params, (boundary, p), expected, actual)
					self.report.record("positivity", actual > 1, n, params, (boundary, p), "> 1", actual)

		if closed is not None:
			for name, value in closed.entries():
				self.report.record("positivity", value.exp_value.sign() > 0, n, params, name, "> 0", value.exp_value)
			count = closed.entry_count
			self.report.record("dimension", count == n * n - 1 == bd_coordinates.polytope_dimension(n), n, params, None, n * n - 1, count)
		core.get_logger().debug("Verified n=%d at (%s).", n, params)


def verify_sample(params, max_n, tolerance=0.0, flag_seed=0):
	return _SampleChecker(params, max_n, tolerance, flag_seed).run()


def _verify_arguments(arguments):
	return verify_sample(*arguments)


def sample_parameters(samples, seed, backend=Backend.EXACT, bound=12):
	""" The seeded parameters of a run, each with its own seed for random flags.
	"""
	rng = numpy.random.default_rng(seed)
	result = []
	for _ in range(samples):
		params = pants_group.random_params(rng, bound, backend)
		result.append((params, int(rng.integers(0, 2**32))))
	return result


def run_verification(samples, seed, max_n, backend=Backend.EXACT, tolerance=None, workers=1, bound=None):
	config = core.get_config()
	backend = Backend(backend)
	if tolerance is None:
		tolerance = 0.0 if backend is Backend.EXACT else config.get("FLOAT_TOLERANCE", 1e-9)
	if bound is None:
		bound = config.get("RANDOM_PARAM_BOUND", 12)
	if samples < 1:
		raise ValueError("At least one sample is required.")
	flag_algebra.check_rank(max_n)

	arguments = [(params, max_n, tolerance, flag_seed) for params, flag_seed in sample_parameters(samples, seed, backend, bound)]
	if workers > 1:
		with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as executor:
			reports = list(executor.map(_verify_arguments, arguments))
	else:
		reports = [_verify_arguments(a) for a in arguments]

	report = VerificationReport()
	for sample_report in reports:
		report.merge(sample_report)
	logger = core.get_logger()
	logger.debug("Verification of %d samples up to n=%d: %d passed, %d failed.", samples, max_n, report.total_passed, report.total_failed)
	if not report.passed:
		logger.warning("Verification failed, first counterexample: %s", report.counterexample)
	return report
