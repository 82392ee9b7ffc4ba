"""Triangle and shearing invariants of the Fuchsian locus of the pants.

Every invariant is kept as its exponentiated value (a triple or a double
ratio). Two independent evaluations exist: the generic one through wedge
determinants of flag curve values, and the closed binomial determinant
formulas. They share only the determinant kernel.
"""
import dataclasses
import enum
import math

from .. import core
from .flag_algebra import check_p, check_pqr, check_rank, determinant, double_ratio_exp, triple_ratio_exp
from .pants_group import BOUNDARIES, LEAVES, TRIANGLES, LaminationData, build_rep
from .scalar_field import Scalar, log_to_float
from .veronese import eigen_lengths, flag_curve


class PositivityViolation(ArithmeticError):
	pass


class Method(enum.Enum):
	GENERIC = "generic"
	CLOSED_FORM = "closed_form"


@dataclasses.dataclass(frozen=True)
class InvariantValue:
	exp_value: Scalar

	@property
	def log_value(self):
		return log_to_float(self.exp_value)

	def to_document(self):
		return {"exp": self.exp_value.to_json(), "log": self.log_value}


def binom_ext(m, p):
	""" Binomial coefficient, extended by zero outside 0 <= p <= m.
	"""
	if p < 0 or p > m:
		return 0
	return math.comb(m, p)


def shearing_indices(n):
	return list(range(1, n))


def triangle_indices(n):
	return [(p, q, n - p - q) for p in range(1, n - 1) for q in range(1, n - p)]


def triangle_invariant_generic(n, params, triangle, p, q, r):
	check_rank(n)
	check_pqr(n, p, q, r)
	params.require_valid()
	vertices = LaminationData(params).triangle_vertices(triangle)
	e, f, g = (flag_curve(vertex, n) for vertex in vertices)
	return InvariantValue(triple_ratio_exp(e, f, g, p, q, r))


def shearing_invariant_generic(n, params, leaf, p):
	check_rank(n)
	check_p(n, p)
	params.require_valid()
	terminal, starting, left, right = LaminationData(params).leaf_quadruple(leaf)
	flags = [flag_curve(point, n) for point in (terminal, starting, left, right)]
	return InvariantValue(double_ratio_exp(*flags, p))


def _matrix(size, entry):
	return [[entry(i, j) for j in range(size)] for i in range(size)]


def _double_ratio(y, y_prime, p):
	return -(y(p) / y_prime(p)) * (y_prime(p - 1) / y(p - 1))


def cf_sigma_hAB(n, params, p):
	check_rank(n)
	check_p(n, p)
	backend = params.backend
	beta_gamma = params.beta * params.gamma

	def y(i):
		return Scalar(binom_ext(n - 1, i), backend) * beta_gamma ** (n - i - 1)

	def y_prime(i):
		return Scalar((-1) ** (n - i - 1) * binom_ext(n - 1, i), backend)

	return InvariantValue(_double_ratio(y, y_prime, p))


def cf_sigma_hBC(n, params, p):
	check_rank(n)
	check_p(n, p)
	backend = params.backend
	s = params.beta / (params.beta + params.gamma)

	def y(i):
		if i == n - 1:
			return (-1) ** (n - 1) * s ** (n - 1)
		size = n - i

		def entry(row, column):
			if column < size - 1:
				return Scalar(binom_ext(i + 1, row - column), backend)
			return binom_ext(n - 1, row) * s ** (n - 1 - row)

		return (-1) ** ((n - i) * i) * determinant(_matrix(size, entry), backend)

	def y_prime(i):
		if i == n - 1:
			return Scalar((-1) ** (n - 1), backend)
		size = n - i - 1
		matrix = _matrix(size, lambda row, column: Scalar(binom_ext(i + 1, 1 + row - column), backend))
		return (-1) ** (n * i + n + 1) * determinant(matrix, backend)

	return InvariantValue(_double_ratio(y, y_prime, p))


def cf_sigma_hCA(n, params, p):
	check_rank(n)
	check_p(n, p)
	backend = params.backend
	alpha, beta, gamma = params.as_tuple()
	t = alpha * alpha * beta * gamma + 1

	def y(i):
		if i == 0:
			return Scalar(1, backend)

		def entry(row, column):
			if column < i:
				return Scalar(binom_ext(n - i, n - i + row - column - 1), backend)
			return binom_ext(n - 1, n - i + row - 1) * t ** (i - row)

		return (-1) ** (n * i) * determinant(_matrix(i + 1, entry), backend)

	def y_prime(i):
		if i == 0:
			return Scalar(1, backend)
		matrix = _matrix(i, lambda row, column: Scalar(binom_ext(n - i, n - i + row - column - 1), backend))
		return (-1) ** (n * i) * determinant(matrix, backend)

	return InvariantValue(_double_ratio(y, y_prime, p))


def _assemble_triple(x, p, q, r):
	numerator = x(p + 1, q, r - 1) * x(p, q - 1, r + 1) * x(p - 1, q + 1, r)
	denominator = x(p - 1, q, r + 1) * x(p, q + 1, r - 1) * x(p + 1, q - 1, r)
	return numerator / denominator


def x_T0(params, p, q, r):
	""" X_{T0}(p, q, r): the q x q Toeplitz determinant of C(p + r, p + i - j).
	"""
	backend = params.backend
	if q == 0:
		return Scalar(1, backend)
	matrix = _matrix(q, lambda row, column: Scalar(binom_ext(p + r, p + row - column), backend))
	return determinant(matrix, backend)


def x_T1(params, p, q, r):
	""" X_{T1}(p, q, r): signed r x r Toeplitz determinant in powers of -beta*gamma.
	"""
	backend = params.backend
	if r == 0:
		return Scalar((-1) ** q, backend)
	minus_beta_gamma = -(params.beta * params.gamma)

	def entry(row, column):
		coefficient = binom_ext(p + q, p + row - column)
		if coefficient == 0:
			return Scalar(0, backend)
		return coefficient * minus_beta_gamma ** (q - row + column)

	return (-1) ** (q * (r + 1)) * determinant(_matrix(r, entry), backend)


def cf_tau_T0(n, params, p, q, r):
	check_rank(n)
	check_pqr(n, p, q, r)
	return InvariantValue(_assemble_triple(lambda i, j, k: x_T0(params, i, j, k), p, q, r))


def cf_tau_T1(n, params, p, q, r):
	check_rank(n)
	check_pqr(n, p, q, r)
	value = _assemble_triple(lambda i, j, k: x_T1(params, i, j, k), p, q, r)
	# Single factors may be negative; the assembled triple ratio may not.
	if value.sign() <= 0:
		raise PositivityViolation("positivity violation")
	return InvariantValue(value)


CLOSED_FORM_SHEARING = {"h_AB": cf_sigma_hAB, "h_BC": cf_sigma_hBC, "h_CA": cf_sigma_hCA}
CLOSED_FORM_TRIANGLE = {"T0": cf_tau_T0, "T1": cf_tau_T1}


def shearing_invariant(n, params, leaf, p, method=Method.CLOSED_FORM):
	if Method(method) is Method.GENERIC:
		return shearing_invariant_generic(n, params, leaf, p)
	if leaf not in CLOSED_FORM_SHEARING:
		raise KeyError("Unknown leaf {!r}.".format(leaf))
	return CLOSED_FORM_SHEARING[leaf](n, params, p)


def triangle_invariant(n, params, triangle, p, q, r, method=Method.CLOSED_FORM):
	if Method(method) is Method.GENERIC:
		return triangle_invariant_generic(n, params, triangle, p, q, r)
	if triangle not in CLOSED_FORM_TRIANGLE:
		raise KeyError("Unknown triangle {!r}.".format(triangle))
	return CLOSED_FORM_TRIANGLE[triangle](n, params, p, q, r)


def sigma_column(leaf, p):
	return "sigma_{}_p{}".format(leaf.replace("_", ""), p)


def tau_column(triangle, index):
	return "tau_{}_p{}q{}r{}".format(triangle, *index)


def coordinate_columns(n):
	""" CSV column names in the fixed order: shearing blocks, then triangles.
	"""
	names = [sigma_column(leaf, p) for leaf in LEAVES for p in shearing_indices(n)]
	return names + [tau_column(triangle, index) for triangle in TRIANGLES for index in triangle_indices(n)]


@dataclasses.dataclass(frozen=True)
class CoordinateVector:
	""" The image of a Fuchsian representation under the coordinate map.

	`sigma` is keyed by (leaf, p), `tau` by (triangle, (p, q, r)); iteration
	order is shearing blocks first (h_AB, h_BC, h_CA, p ascending) and then the
	triangles (T0, T1, indices lexicographic).
	"""
	n: int
	sigma: dict
	tau: dict

	@property
	def entry_count(self):
		return len(self.sigma) + len(self.tau)

	def entries(self):
		for leaf in LEAVES:
			for p in shearing_indices(self.n):
				if (leaf, p) in self.sigma:
					yield sigma_column(leaf, p), self.sigma[(leaf, p)]
		for triangle in TRIANGLES:
			for index in triangle_indices(self.n):
				if (triangle, index) in self.tau:
					yield tau_column(triangle, index), self.tau[(triangle, index)]

	def column_names(self):
		return [name for name, _ in self.entries()]

	def logs(self):
		return [value.log_value for _, value in self.entries()]

	def to_document(self):
		sigma = {}
		for leaf in LEAVES:
			sigma[leaf] = [
				dict(p=p, **self.sigma[(leaf, p)].to_document())
				for p in shearing_indices(self.n) if (leaf, p) in self.sigma]
		tau = {}
		for triangle in TRIANGLES:
			tau[triangle] = {
				"{},{},{}".format(*index): self.tau[(triangle, index)].to_document()
				for index in triangle_indices(self.n) if (triangle, index) in self.tau}
		return {"sigma": sigma, "tau": tau}


def coordinate_count(n):
	return 3 * (n - 1) + 2 * ((n - 1) * (n - 2) // 2)


def ambient_dimension(n):
	""" Invariants before the rotation relations: every vertex of both triangles
	plus one shearing block per spiraling leaf.
	"""
	return 2 * 3 * ((n - 1) * (n - 2) // 2) + 3 * (n - 1)


def rotation_relation_count(n):
	return 2 * 2 * ((n - 1) * (n - 2) // 2)


def polytope_dimension(n):
	return ambient_dimension(n) - rotation_relation_count(n)


def assemble_phi(n, params, method=Method.CLOSED_FORM):
	check_rank(n)
	params.require_valid()
	method = Method(method)
	sigma = {
		(leaf, p): shearing_invariant(n, params, leaf, p, method)
		for leaf in LEAVES for p in shearing_indices(n)}
	tau = {
		(triangle, index): triangle_invariant(n, params, triangle, *index, method=method)
		for triangle in TRIANGLES for index in triangle_indices(n)}
	coords = CoordinateVector(n, sigma, tau)
	core.get_logger().debug("Assembled %d coordinates for n=%d at (%s) by %s.", coords.entry_count, n, params, method.value)
	return coords


def boundary_terms(n, boundary, p):
	""" Keys of the invariants whose product is the exponentiated R_p of a boundary.

	sigma_p of a leaf oriented toward the boundary, sigma_(n-p) otherwise; both
	triangles spiral into every boundary and add their (p, q, r) invariants with
	q + r = n - p.
	"""
	check_rank(n)
	check_p(n, p)
	if boundary not in BOUNDARIES:
		raise KeyError("Unknown boundary {!r}.".format(boundary))
	sigma_keys = [
		(leaf, p if toward else n - p)
		for leaf, toward in LaminationData.boundary_leaves(boundary)]
	tau_keys = [
		(triangle, (p, q, n - p - q))
		for triangle in TRIANGLES for q in range(1, n - p)]
	return sigma_keys, tau_keys


def _product(values, start):
	result = start
	for value in values:
		result = result * value
	return result


def boundary_sum_from_coordinates(coords, boundary, p):
	sigma_keys, tau_keys = boundary_terms(coords.n, boundary, p)
	values = [coords.sigma[key].exp_value for key in sigma_keys] + [coords.tau[key].exp_value for key in tau_keys]
	return InvariantValue(_product(values[1:], values[0]))


def boundary_sum_R(n, params, boundary, p, method=Method.CLOSED_FORM):
	sigma_keys, tau_keys = boundary_terms(n, boundary, p)
	params.require_valid()
	values = [shearing_invariant(n, params, leaf, index, method).exp_value for leaf, index in sigma_keys]
	values += [triangle_invariant(n, params, triangle, *index, method=method).exp_value for triangle, index in tau_keys]
	return InvariantValue(_product(values[1:], values[0]))


def boundary_lengths(n, params, coords=None, method=Method.CLOSED_FORM):
	""" R_p for every boundary and p, read from `coords` when given.
	"""
	lengths = {}
	for boundary in BOUNDARIES:
		if coords is not None:
			lengths[boundary] = [boundary_sum_from_coordinates(coords, boundary, p) for p in shearing_indices(n)]
		else:
			lengths[boundary] = [boundary_sum_R(n, params, boundary, p, method) for p in shearing_indices(n)]
	return lengths


@dataclasses.dataclass(frozen=True)
class PolytopeReport:
	checks: dict

	@property
	def passed(self):
		return all(self.checks.values())

	def failures(self):
		return [key for key, ok in self.checks.items() if not ok]

	def to_document(self):
		return dict(self.checks)


def polytope_check(coords, n, params, tolerance=0.0):
	""" Positivity, length-positivity, entry count and the length identity
	against the eigenvalues of the boundary generators.
	"""
	expected_sigma = set((leaf, p) for leaf in LEAVES for p in shearing_indices(n))
	expected_tau = set((triangle, index) for triangle in TRIANGLES for index in triangle_indices(n))
	checks = {}
	checks["count"] = (
		coords.n == n
		and coords.entry_count == n * n - 1
		and set(coords.sigma) == expected_sigma
		and set(coords.tau) == expected_tau)
	checks["positivity"] = all(value.exp_value.sign() > 0 for _, value in coords.entries())

	length_positive = True
	length_identity = True
	try:
		rep = build_rep(params)
		for boundary in BOUNDARIES:
			generator = rep.generator(LaminationData.boundary_generator(boundary))
			ratios = eigen_lengths(generator, n)
			for p in shearing_indices(n):
				value = boundary_sum_from_coordinates(coords, boundary, p).exp_value
				length_positive = length_positive and value > 1
				length_identity = length_identity and value.isclose(ratios[p - 1], tolerance)
	except (KeyError, ZeroDivisionError, IndexError):
		length_positive = length_identity = False
	checks["length_positivity"] = length_positive
	checks["length_identity"] = length_identity
	report = PolytopeReport(checks)
	if not report.passed:
		core.get_logger().warning("Polytope check failed for n=%d at (%s): %s", n, params, ", ".join(report.failures()))
	return report
