"""Flags in R^n and their projective invariants.

Vectors are tuples of Scalars in the monomial basis X^(n-1), X^(n-2)Y, ..., Y^(n-1);
matrices are tuples of rows. The top wedge power is identified with the field
through the determinant, so e^(p) ^ f^(q) ^ g^(r) is the determinant of the
matrix with those vectors as columns.
"""
import dataclasses
import itertools
import math

import numpy

from .scalar_field import Backend, Scalar, common_backend, one, zero


class DegenerateFlagsError(ArithmeticError):
	pass


class IndexRangeError(ValueError):
	pass


def _backend_of(rows, backend=None):
	for row in rows:
		for entry in row:
			return entry.backend
	return Backend(backend) if backend is not None else Backend.EXACT


def _bareiss(m):
	""" Fraction-free elimination on a square integer matrix (modified in place).
	"""
	size = len(m)
	sign = 1
	previous = 1
	for k in range(size - 1):
		if m[k][k] == 0:
			swap = next((i for i in range(k + 1, size) if m[i][k] != 0), None)
			if swap is None:
				return 0
			m[k], m[swap] = m[swap], m[k]
			sign = -sign
		for i in range(k + 1, size):
			for j in range(k + 1, size):
				m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // previous
		previous = m[k][k]
	return sign * m[size - 1][size - 1]


def determinant(rows, backend=None):
	rows = [tuple(row) for row in rows]
	size = len(rows)
	backend = _backend_of(rows, backend)
	if size == 0:
		return one(backend)
	if any(len(row) != size for row in rows):
		raise ValueError("Determinant of a non-square {}x{} matrix.".format(size, len(rows[0])))
	common_backend(*itertools.chain.from_iterable(rows))

	if backend is Backend.EXACT:
		# Clear denominators row by row and work over the integers.
		integer_rows = []
		scale = 1
		for row in rows:
			multiplier = math.lcm(*(entry.value.denominator for entry in row))
			integer_rows.append([int(entry.value * multiplier) for entry in row])
			scale *= multiplier
		return Scalar(_bareiss(integer_rows), Backend.EXACT) / scale

	matrix = numpy.array([[entry.value for entry in row] for row in rows], dtype=numpy.float64)
	# Raw value; near-zero decisions take a tolerance (see same_flag).
	return Scalar(float(numpy.linalg.det(matrix)), Backend.FLOAT)


def wedge_det(vectors):
	vectors = [tuple(vector) for vector in vectors]
	if not vectors:
		raise ValueError("wedge_det needs at least one vector.")
	dimension = len(vectors)
	for vector in vectors:
		if len(vector) != dimension:
			raise ValueError("wedge_det needs {0} vectors of dimension {0}, got one of dimension {1}.".format(dimension, len(vector)))
	# det(M) = det(M^T): the vectors may be used as rows.
	return determinant(vectors)


def identity_matrix(n, backend=Backend.EXACT):
	return tuple(tuple(one(backend) if i == j else zero(backend) for j in range(n)) for i in range(n))


def matrix_product(left, right):
	columns = list(zip(*right))
	return tuple(tuple(sum((a * b for a, b in zip(row, column)), zero(row[0].backend)) for column in columns) for row in left)


def apply_matrix(matrix, vector):
	if len(matrix[0]) != len(vector):
		raise ValueError("Matrix and vector sizes differ.")
	return tuple(sum((a * x for a, x in zip(row, vector)), zero(vector[0].backend)) for row in matrix)


@dataclasses.dataclass(frozen=True)
class Flag:
	""" A full flag given by an adapted basis; F^(i) is the span of the first i vectors.
	"""
	basis: tuple

	def __post_init__(self):
		basis = tuple(tuple(vector) for vector in self.basis)
		object.__setattr__(self, "basis", basis)
		if not basis:
			raise ValueError("A flag needs at least one basis vector.")
		if any(len(vector) != len(basis) for vector in basis):
			raise ValueError("A flag in R^{0} needs {0} vectors of dimension {0}.".format(len(basis)))
		if wedge_det(basis).is_zero():
			raise DegenerateFlagsError("degenerate flags")

	@property
	def dimension(self):
		return len(self.basis)

	@property
	def backend(self):
		return self.basis[0][0].backend

	def subspace(self, i):
		return self.basis[:i]

	def transformed(self, matrix):
		return Flag(tuple(apply_matrix(matrix, vector) for vector in self.basis))

	def scaled(self, factors):
		return Flag(tuple(tuple(factor * x for x in vector) for factor, vector in zip(factors, self.basis)))


def _common_dimension(flags, n=None):
	dimensions = set(flag.dimension for flag in flags)
	if n is not None:
		dimensions.add(n)
	if len(dimensions) != 1:
		raise ValueError("Flags of different dimensions: {}".format(sorted(dimensions)))
	return dimensions.pop()


def compositions(total, parts):
	""" All tuples of `parts` non-negative integers summing to `total`.
	"""
	if parts == 1:
		yield (total,)
		return
	for head in range(total + 1):
		for tail in compositions(total - head, parts - 1):
			yield (head,) + tail


def is_generic(flags, n=None):
	flags = list(flags)
	if not flags:
		raise ValueError("is_generic needs at least one flag.")
	n = _common_dimension(flags, n)
	for parts in compositions(n, len(flags)):
		vectors = [v for flag, size in zip(flags, parts) for v in flag.subspace(size)]
		if wedge_det(vectors).is_zero():
			return False
	return True


def _negligible(value, vectors, tolerance):
	if value.is_exact or tolerance <= 0:
		return value.is_zero()
	bound = 1.0
	for vector in vectors:
		bound *= math.sqrt(sum(x.to_float() ** 2 for x in vector))
	return abs(value.to_float()) <= tolerance * bound


def same_flag(first, second, tolerance=0.0):
	""" True when both bases span the same nested subspaces.

	The j-th vector of `first` lies in second^(j) iff its Cramer coordinates
	past position j vanish.
	"""
	n = _common_dimension([first, second])
	for j, vector in enumerate(first.basis):
		for k in range(j + 1, n):
			replaced = list(second.basis)
			replaced[k] = vector
			if not _negligible(wedge_det(replaced), replaced, tolerance):
				return False
	return True


def _is_index(value):
	return isinstance(value, int) and not isinstance(value, bool)


def check_rank(n):
	if not _is_index(n) or n < 2:
		raise ValueError("Rank n must be an integer >= 2, got {!r}.".format(n))


def check_p(n, p):
	if not _is_index(p) or not 1 <= p <= n - 1:
		raise IndexRangeError("p out of range")


def check_pqr(n, p, q, r):
	if not all(_is_index(x) for x in (p, q, r)):
		raise IndexRangeError("invalid (p,q,r)")
	if min(p, q, r) < 1 or p + q + r != n:
		raise IndexRangeError("invalid (p,q,r): ({},{},{}) for n={}".format(p, q, r, n))


def triple_ratio_exp(e, f, g, p, q, r):
	n = _common_dimension([e, f, g])
	check_pqr(n, p, q, r)

	def x(i, j, k):
		return wedge_det(e.subspace(i) + f.subspace(j) + g.subspace(k))

	numerator = x(p + 1, q, r - 1) * x(p, q - 1, r + 1) * x(p - 1, q + 1, r)
	denominator = x(p - 1, q, r + 1) * x(p, q + 1, r - 1) * x(p + 1, q - 1, r)
	if denominator.is_zero():
		raise DegenerateFlagsError("degenerate flags")
	return numerator / denominator


def double_ratio_exp(e, f, g, g_prime, p):
	n = _common_dimension([e, f, g, g_prime])
	check_p(n, p)

	def y(flag, i):
		return wedge_det(e.subspace(i) + f.subspace(n - i - 1) + flag.subspace(1))

	y_p, y_prime_p = y(g, p), y(g_prime, p)
	y_prev, y_prime_prev = y(g, p - 1), y(g_prime, p - 1)
	if y_prime_p.is_zero() or y_prev.is_zero():
		raise DegenerateFlagsError("degenerate flags")
	return -(y_p / y_prime_p) * (y_prime_prev / y_prev)


def random_generic_flags(rng, n, count, bound=5, backend=Backend.EXACT):
	""" Seeded generic tuple of flags with integer basis entries in [-bound, bound].

	Genericity is decided in exact arithmetic before the flags are converted
	to `backend`.
	"""
	backend = Backend(backend)
	while True:
		flags = []
		for _ in range(count):
			basis = tuple(
				tuple(Scalar(int(x), Backend.EXACT) for x in rng.integers(-bound, bound, size=n, endpoint=True))
				for _ in range(n))
			try:
				flags.append(Flag(basis))
			except DegenerateFlagsError:
				break
		if len(flags) == count and is_generic(flags):
			if backend is Backend.EXACT:
				return flags
			return [Flag(tuple(tuple(x.to_backend(backend) for x in vector) for vector in flag.basis)) for flag in flags]
