"""Fuchsian representations of the pair of pants with boundary A, B, C.

The fundamental group is <a, b, c | abc = 1>; a, b, c go around A, B, C. A
representation is fixed by three parameters (alpha, beta, gamma) so that the
attracting fixed points of a, b, c are infinity, 0 and 1.
"""
import collections
import dataclasses
from fractions import Fraction

import numpy

from .scalar_field import Backend, NotRepresentableError, Scalar, common_backend, exp_float, log_to_float, zero


class DomainError(ValueError):
	pass


class NotHyperbolicError(ValueError):
	pass


@dataclasses.dataclass(frozen=True)
class PantsLengths:
	l_a: float
	l_b: float
	l_c: float

	def __post_init__(self):
		for name, value in (("l_A", self.l_a), ("l_B", self.l_b), ("l_C", self.l_c)):
			if not numpy.isfinite(value) or value <= 0:
				raise DomainError("Boundary length {} must be positive, got {}.".format(name, value))

	@classmethod
	def parse(cls, text):
		parts = [part.strip().replace("−", "-") for part in text.split(",")]
		if len(parts) != 3:
			raise DomainError("Expected three lengths 'lA,lB,lC', got {!r}.".format(text))
		try:
			return cls(*(float(part) for part in parts))
		except ValueError as e:
			raise DomainError("Lengths must be numbers: {!r}.".format(text)) from e

	def as_tuple(self):
		return (self.l_a, self.l_b, self.l_c)

	def to_document(self):
		return {"lA": self.l_a, "lB": self.l_b, "lC": self.l_c}


@dataclasses.dataclass(frozen=True)
class PantsParams:
	""" Note that the constructor does not check the domain; call require_valid().
	"""
	alpha: Scalar
	beta: Scalar
	gamma: Scalar

	def __post_init__(self):
		common_backend(self.alpha, self.beta, self.gamma)

	@classmethod
	def parse(cls, text, backend=Backend.EXACT):
		parts = text.split(",")
		if len(parts) != 3:
			raise DomainError("Expected three parameters 'alpha,beta,gamma', got {!r}.".format(text))
		try:
			return cls(*(Scalar.parse(part, backend) for part in parts))
		except ValueError as e:
			raise DomainError(str(e)) from e

	@property
	def backend(self):
		return self.alpha.backend

	def as_tuple(self):
		return (self.alpha, self.beta, self.gamma)

	def require_valid(self):
		report = check_domain(self)
		if not report.passed:
			raise DomainError("Parameters ({}) violate: {}".format(self, ", ".join(report.failure_labels())))
		return self

	def to_backend(self, backend):
		return PantsParams(*(value.to_backend(backend) for value in self.as_tuple()))

	def to_document(self):
		return {"alpha": self.alpha.to_json(), "beta": self.beta.to_json(), "gamma": self.gamma.to_json()}

	def __str__(self):
		return ",".join(str(value) for value in self.as_tuple())


@dataclasses.dataclass(frozen=True)
class PSL2Mat:
	a: Scalar
	b: Scalar
	c: Scalar
	d: Scalar

	@property
	def rows(self):
		return ((self.a, self.b), (self.c, self.d))

	@property
	def backend(self):
		return self.a.backend

	def __matmul__(self, other):
		return PSL2Mat(
			self.a * other.a + self.b * other.c,
			self.a * other.b + self.b * other.d,
			self.c * other.a + self.d * other.c,
			self.c * other.b + self.d * other.d)

	def determinant(self):
		return self.a * self.d - self.b * self.c

	def trace(self):
		return self.a + self.d

	def inverse(self):
		det = self.determinant()
		return PSL2Mat(self.d / det, -self.b / det, -self.c / det, self.a / det)

	def is_identity(self, tolerance=0.0):
		return (self.a.isclose(1, tolerance) and self.b.isclose(0, tolerance)
			and self.c.isclose(0, tolerance) and self.d.isclose(1, tolerance))

	def is_hyperbolic(self):
		return abs(self.trace()) > 2

	def to_document(self):
		return [[x.to_json() for x in row] for row in self.rows]


@dataclasses.dataclass(frozen=True)
class PantsRep:
	a: PSL2Mat
	b: PSL2Mat
	c: PSL2Mat

	def generator(self, name):
		if name not in ("a", "b", "c"):
			raise KeyError("Unknown generator {!r}.".format(name))
		return getattr(self, name)

	def relation(self):
		return self.a @ self.b @ self.c


@dataclasses.dataclass(frozen=True, eq=False)
class ProjPoint:
	u: Scalar
	v: Scalar

	def __post_init__(self):
		common_backend(self.u, self.v)
		if self.u.is_zero() and self.v.is_zero():
			raise ValueError("invalid point: [0:0]")

	@classmethod
	def infinity(cls, backend=Backend.EXACT):
		return cls(Scalar(1, backend), Scalar(0, backend))

	@classmethod
	def finite(cls, value):
		return cls(value, Scalar(1, value.backend))

	@property
	def backend(self):
		return self.u.backend

	def is_infinity(self):
		return self.v.is_zero()

	def value(self):
		""" The affine coordinate u/v, or None at infinity.
		"""
		if self.is_infinity():
			return None
		return self.u / self.v

	def isclose(self, other, tolerance=0.0):
		return (self.u * other.v - self.v * other.u).isclose(0, tolerance)

	def __eq__(self, other):
		if not isinstance(other, ProjPoint):
			return NotImplemented
		return (self.u * other.v - self.v * other.u).is_zero()

	def __hash__(self):
		return hash(self.value())

	def __str__(self):
		if self.is_infinity():
			return "inf"
		return str(self.value())

	def to_json(self):
		if self.is_infinity():
			return "inf"
		return self.value().to_json()


FixedPoints = collections.namedtuple("FixedPoints", ["attracting", "repelling"])


def params_from_lengths(lengths):
	""" Float only: the parameters are transcendental in the lengths.
	"""
	if not isinstance(lengths, PantsLengths):
		lengths = PantsLengths(*lengths)
	try:
		alpha = exp_float(lengths.l_a / 2)
		# alpha * beta = cosh(l_C / 2) + sinh(l_C / 2)
		beta = exp_float(lengths.l_c / 2) / alpha
		gamma = exp_float(-lengths.l_b / 2)
	except OverflowError as e:
		raise DomainError("Lengths {} are too large for float mode.".format(lengths.as_tuple())) from e
	return PantsParams(alpha, beta, gamma).require_valid()


def lengths_from_params(params):
	params.require_valid()
	alpha, beta, gamma = params.as_tuple()
	return PantsLengths(
		2 * log_to_float(alpha),
		-2 * log_to_float(gamma),
		2 * log_to_float(alpha * beta))


def build_rep(params):
	params.require_valid()
	alpha, beta, gamma = params.as_tuple()
	a = PSL2Mat(alpha, alpha * beta * gamma + 1 / alpha, zero(params.backend), 1 / alpha)
	b = PSL2Mat(gamma, zero(params.backend), -1 / beta - 1 / gamma, 1 / gamma)
	# abc = 1
	c = (a @ b).inverse()
	return PantsRep(a, b, c)


def mobius_apply(matrix, point):
	return ProjPoint(matrix.a * point.u + matrix.b * point.v, matrix.c * point.u + matrix.d * point.v)


def _eigenvector(matrix, eigenvalue):
	u, v = matrix.b, eigenvalue - matrix.a
	if u.is_zero() and v.is_zero():
		u, v = eigenvalue - matrix.d, matrix.c
	return ProjPoint(u, v)


def eigenvalues(matrix):
	""" Eigenvalues of a hyperbolic matrix, larger modulus first.
	"""
	trace = matrix.trace()
	if abs(trace) <= 2:
		raise NotHyperbolicError("not hyperbolic")
	discriminant = trace * trace - 4 * matrix.determinant()
	try:
		root = discriminant.sqrt()
	except NotRepresentableError as e:
		raise NotRepresentableError("Eigenvalues of {} are irrational; use float mode.".format(matrix.to_document())) from e
	if trace.sign() > 0:
		return (trace + root) / 2, (trace - root) / 2
	return (trace - root) / 2, (trace + root) / 2


def fixed_points(matrix):
	large, small = eigenvalues(matrix)
	# The derivative at the eigenline of the dominant eigenvalue is small/large < 1.
	return FixedPoints(_eigenvector(matrix, large), _eigenvector(matrix, small))


def translation_length(matrix):
	trace = abs(matrix.trace()).to_float()
	if trace <= 2:
		raise NotHyperbolicError("not hyperbolic")
	return 2 * float(numpy.arccosh(trace / 2))


def fix_formulas(params):
	""" The fixed point sets of a, b, c as written in the parametrization proof.
	"""
	alpha, beta, gamma = params.as_tuple()
	backend = params.backend
	return {
		"a": FixedPoints(
			ProjPoint.infinity(backend),
			ProjPoint.finite((alpha * alpha * beta * gamma + 1) / (1 - alpha * alpha))),
		"b": FixedPoints(
			ProjPoint.finite(Scalar(0, backend)),
			ProjPoint.finite((gamma - 1 / gamma) / (-1 / beta - 1 / gamma))),
		"c": FixedPoints(
			ProjPoint.finite(Scalar(1, backend)),
			ProjPoint.finite((alpha * beta + 1 / (alpha * gamma)) / (1 / (alpha * gamma) + 1 / (alpha * beta)))),
	}


def special_points(params):
	""" Lamination vertices obtained as images under the covering translations.
	"""
	rep = build_rep(params)
	backend = params.backend
	return {
		"minus_beta_gamma": mobius_apply(rep.a.inverse(), ProjPoint.finite(Scalar(1, backend))),
		"beta_over_beta_plus_gamma": mobius_apply(rep.b.inverse(), ProjPoint.infinity(backend)),
		"alpha_squared_beta_gamma_plus_one": mobius_apply(rep.a, ProjPoint.finite(Scalar(0, backend))),
	}


DOMAIN_LABELS = collections.OrderedDict([
	("fix_a_negative", "(α²βγ+1)/(1−α²) < 0"),
	("fix_b_in_unit_interval", "0 < (γ−γ⁻¹)/(−β⁻¹−γ⁻¹) < 1"),
	("fix_c_beyond_one", "1 < (αβ+α⁻¹γ⁻¹)/(α⁻¹γ⁻¹+α⁻¹β⁻¹)"),
	("beta_gamma_sums_positive", "β⁻¹+γ⁻¹ > 0 and β⁻¹+γ > 0"),
	("alpha_squared_beta_exceeds_inverse_beta", "α²β > β⁻¹"),
	("alpha_greater_than_one", "α > 1"),
	("beta_positive", "β > 0"),
	("gamma_in_unit_interval", "0 < γ < 1"),
])


@dataclasses.dataclass(frozen=True)
class DomainReport:
	checks: dict

	@property
	def passed(self):
		return all(self.checks.values())

	def failures(self):
		return [key for key, ok in self.checks.items() if not ok]

	def failure_labels(self):
		return [DOMAIN_LABELS[key] for key in self.failures()]

	def to_document(self):
		return dict(self.checks)


def check_domain(params):
	alpha, beta, gamma = params.as_tuple()

	def holds(predicate):
		try:
			return bool(predicate())
		except ZeroDivisionError:
			return False

	checks = collections.OrderedDict()
	checks["fix_a_negative"] = holds(lambda: (alpha * alpha * beta * gamma + 1) / (1 - alpha * alpha) < 0)
	checks["fix_b_in_unit_interval"] = holds(lambda: 0 < (gamma - 1 / gamma) / (-1 / beta - 1 / gamma) < 1)
	checks["fix_c_beyond_one"] = holds(
		lambda: 1 < (alpha * beta + 1 / (alpha * gamma)) / (1 / (alpha * gamma) + 1 / (alpha * beta)))
	checks["beta_gamma_sums_positive"] = holds(lambda: 1 / beta + 1 / gamma > 0 and 1 / beta + gamma > 0)
	checks["alpha_squared_beta_exceeds_inverse_beta"] = holds(lambda: alpha * alpha * beta > 1 / beta)
	checks["alpha_greater_than_one"] = alpha > 1
	checks["beta_positive"] = beta > 0
	checks["gamma_in_unit_interval"] = 0 < gamma < 1
	return DomainReport(checks)


def random_params(rng, bound=12, backend=Backend.EXACT):
	""" Seeded valid parameters with small numerators and denominators.

	alpha = 1 + i/j, gamma = k/m with k < m, beta = 1/alpha + s/t, so that
	alpha*beta > 1 holds by construction.
	"""
	def draw(low, high):
		return int(rng.integers(low, high, endpoint=True))

	alpha = 1 + Fraction(draw(1, bound), draw(1, bound))
	denominator = draw(2, bound)
	gamma = Fraction(draw(1, denominator - 1), denominator)
	beta = 1 / alpha + Fraction(draw(1, bound), draw(1, bound))
	params = PantsParams(*(Scalar(x, Backend.EXACT) for x in (alpha, beta, gamma)))
	return params.to_backend(backend)


LEAVES = ("h_AB", "h_BC", "h_CA")
TRIANGLES = ("T0", "T1")
BOUNDARIES = ("A", "B", "C")
BOUNDARY_GENERATORS = {"A": "a", "B": "b", "C": "c"}

# Incident biinfinite leaves per boundary, and whether the leaf is oriented
# toward that boundary (terminal point at the generator's attracting point).
BOUNDARY_LEAVES = {
	"A": (("h_AB", True), ("h_CA", False)),
	"B": (("h_AB", False), ("h_BC", True)),
	"C": (("h_BC", False), ("h_CA", True)),
}


@dataclasses.dataclass(frozen=True)
class LaminationData:
	""" Lifts of the ideal triangles and of the spiraling leaves.

	Leaf quadruples are (terminal, starting, left vertex, right vertex);
	triangle vertices are listed clockwise starting at the vertex at infinity.
	"""
	params: PantsParams

	def _point(self, value):
		if value is None:
			return ProjPoint.infinity(self.params.backend)
		return ProjPoint.finite(Scalar(value, self.params.backend) if isinstance(value, int) else value)

	def leaf_quadruple(self, leaf):
		alpha, beta, gamma = self.params.as_tuple()
		points = {
			"h_AB": (None, 0, -beta * gamma, 1),
			"h_BC": (0, 1, beta / (beta + gamma), None),
			"h_CA": (1, None, alpha * alpha * beta * gamma + 1, 0),
		}
		if leaf not in points:
			raise KeyError("Unknown leaf {!r}.".format(leaf))
		return tuple(self._point(value) for value in points[leaf])

	def triangle_vertices(self, triangle):
		beta, gamma = self.params.beta, self.params.gamma
		vertices = {
			"T0": (None, 1, 0),
			"T1": (None, 0, -beta * gamma),
		}
		if triangle not in vertices:
			raise KeyError("Unknown triangle {!r}.".format(triangle))
		return tuple(self._point(value) for value in vertices[triangle])

	@staticmethod
	def boundary_leaves(boundary):
		return BOUNDARY_LEAVES[boundary]

	@staticmethod
	def boundary_generator(boundary):
		return BOUNDARY_GENERATORS[boundary]
