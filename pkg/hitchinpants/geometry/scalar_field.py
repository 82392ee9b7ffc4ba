"""Scalars of the exact (rational) and float64 fields.

Every value in the geometry package is a Scalar tagged with its backend.
Invariants that are logarithms in the literature are kept exponentiated so
that exact mode can test equalities without rounding; logarithms only appear
on output through log_to_float.
"""
import enum
import functools
import math
from fractions import Fraction


class Backend(enum.Enum):
	EXACT = "exact"
	FLOAT = "float"


class MixedBackendError(TypeError):
	pass


class NonPositiveLogError(ValueError):
	pass


class NotRepresentableError(ValueError):
	pass


def _normalize_text(text):
	# Accept the typographic minus sign as well.
	return text.strip().replace("−", "-")


@functools.total_ordering
class Scalar():
	__slots__ = ("_value", "_backend")

	def __init__(self, value, backend=Backend.EXACT):
		backend = Backend(backend)
		if isinstance(value, Scalar):
			if value._backend is not backend:
				raise MixedBackendError("Cannot rebuild a {} scalar as {}.".format(value._backend.value, backend.value))
			value = value._value
		if backend is Backend.EXACT:
			if isinstance(value, float):
				raise TypeError("Exact scalars are built from integers, fractions or 'p/q' strings.")
			if isinstance(value, str):
				value = _normalize_text(value)
			# Fraction keeps the denominator positive and coprime to the numerator.
			self._value = Fraction(value)
		else:
			if isinstance(value, str):
				value = Fraction(_normalize_text(value))
			self._value = float(value)
		self._backend = backend

	@classmethod
	def exact(cls, value):
		return cls(value, Backend.EXACT)

	@classmethod
	def floating(cls, value):
		return cls(value, Backend.FLOAT)

	@classmethod
	def parse(cls, text, backend=Backend.EXACT):
		""" Parses the canonical "p/q" form (or a decimal literal in float mode).
		"""
		text = _normalize_text(text)
		if not text:
			raise ValueError("Empty scalar literal.")
		if Backend(backend) is Backend.FLOAT:
			try:
				return cls(float(text), Backend.FLOAT)
			except ValueError:
				pass
		try:
			return cls(Fraction(text), backend)
		except (ValueError, ZeroDivisionError) as e:
			raise ValueError("Not a rational literal: {!r}".format(text)) from e

	@property
	def value(self):
		return self._value

	@property
	def backend(self):
		return self._backend

	@property
	def is_exact(self):
		return self._backend is Backend.EXACT

	def _other_value(self, other):
		if isinstance(other, Scalar):
			if other._backend is not self._backend:
				raise MixedBackendError("Mixed backends: {} and {}.".format(self._backend.value, other._backend.value))
			return other._value
		# Plain integers are valid in both fields.
		if isinstance(other, int) and not isinstance(other, bool):
			return other
		return NotImplemented

	def _wrap(self, value):
		result = Scalar.__new__(Scalar)
		result._value = value
		result._backend = self._backend
		return result

	def __add__(self, other):
		other = self._other_value(other)
		if other is NotImplemented:
			return other
		return self._wrap(self._value + other)

	__radd__ = __add__

	def __sub__(self, other):
		other = self._other_value(other)
		if other is NotImplemented:
			return other
		return self._wrap(self._value - other)

	def __rsub__(self, other):
		other = self._other_value(other)
		if other is NotImplemented:
			return other
		return self._wrap(other - self._value)

	def __mul__(self, other):
		other = self._other_value(other)
		if other is NotImplemented:
			return other
		return self._wrap(self._value * other)

	__rmul__ = __mul__

	def __truediv__(self, other):
		other = self._other_value(other)
		if other is NotImplemented:
			return other
		if other == 0:
			raise ZeroDivisionError("division by zero")
		if self.is_exact:
			return self._wrap(Fraction(self._value) / other)
		return self._wrap(self._value / other)

	def __rtruediv__(self, other):
		other = self._other_value(other)
		if other is NotImplemented:
			return other
		return self._wrap(other) / self

	def __pow__(self, exponent):
		if not isinstance(exponent, int) or isinstance(exponent, bool):
			return NotImplemented
		if exponent < 0:
			if self.is_zero():
				raise ZeroDivisionError("division by zero")
			return self._wrap(1) / self._wrap(self._value ** -exponent)
		return self._wrap(self._value ** exponent)

	def __neg__(self):
		return self._wrap(-self._value)

	def __pos__(self):
		return self

	def __abs__(self):
		return self._wrap(abs(self._value))

	def __eq__(self, other):
		other = self._other_value(other)
		if other is NotImplemented:
			return other
		return self._value == other

	def __lt__(self, other):
		other = self._other_value(other)
		if other is NotImplemented:
			return other
		return self._value < other

	def __hash__(self):
		return hash((self._backend, self._value))

	def __bool__(self):
		return not self.is_zero()

	def is_zero(self):
		return self._value == 0

	def sign(self):
		return (self._value > 0) - (self._value < 0)

	def reciprocal(self):
		return self._wrap(1) / self

	def isclose(self, other, tolerance=0.0):
		other = self._other_value(other)
		if other is NotImplemented:
			raise TypeError("Cannot compare a scalar with {!r}.".format(other))
		if self.is_exact:
			return self._value == other
		return math.isclose(self._value, float(other), rel_tol=tolerance, abs_tol=tolerance)

	def sqrt(self):
		if self._value < 0:
			raise NotRepresentableError("Square root of a negative value.")
		if not self.is_exact:
			return self._wrap(math.sqrt(self._value))
		numerator, denominator = self._value.numerator, self._value.denominator
		root_n, root_d = math.isqrt(numerator), math.isqrt(denominator)
		if root_n * root_n != numerator or root_d * root_d != denominator:
			raise NotRepresentableError("{} is not the square of a rational.".format(self))
		return self._wrap(Fraction(root_n, root_d))

	def to_float(self):
		return float(self._value)

	def to_backend(self, backend):
		backend = Backend(backend)
		if backend is self._backend:
			return self
		if backend is Backend.FLOAT:
			return Scalar(float(self._value), backend)
		# Floats convert through their exact binary value.
		return Scalar(Fraction(self._value), backend)

	def __float__(self):
		return self.to_float()

	def __str__(self):
		if self.is_exact:
			if self._value.denominator == 1:
				return str(self._value.numerator)
			return "{}/{}".format(self._value.numerator, self._value.denominator)
		return repr(self._value)

	def __repr__(self):
		return "Scalar({!r}, {})".format(str(self), self._backend.value)

	def to_json(self):
		""" Exact values are emitted as "p/q" strings, float values as numbers.
		"""
		if self.is_exact:
			return str(self)
		return self._value


def zero(backend):
	return Scalar(0, backend)


def one(backend):
	return Scalar(1, backend)


def log_to_float(value):
	if not isinstance(value, Scalar):
		raise TypeError("Expected a Scalar.")
	if value.sign() <= 0:
		raise NonPositiveLogError("log of non-positive value")
	if value.is_exact:
		# Split numerator and denominator so huge rationals do not overflow float().
		return math.log(value.value.numerator) - math.log(value.value.denominator)
	return math.log(value.value)


def exp_float(x):
	return Scalar(math.exp(x), Backend.FLOAT)


def common_backend(*values):
	backends = set(v.backend for v in values)
	if len(backends) != 1:
		raise MixedBackendError("Mixed backends: {}.".format(", ".join(sorted(b.value for b in backends))))
	return backends.pop()
