"""The irreducible representation of SL_2 on homogeneous polynomials of degree n-1.

Polynomials are coefficient tuples indexed by the Y-degree, so index 0 is
X^(n-1) and index n-1 is Y^(n-1).
"""
from .flag_algebra import Flag, check_rank
from .pants_group import eigenvalues, fixed_points
from .scalar_field import log_to_float, one, zero


def _multiply(left, right):
	backend = left[0].backend
	product = [zero(backend)] * (len(left) + len(right) - 1)
	for i, x in enumerate(left):
		for j, y in enumerate(right):
			product[i + j] = product[i + j] + x * y
	return product


def _power(linear_form, exponent, backend):
	result = [one(backend)]
	for _ in range(exponent):
		result = _multiply(result, linear_form)
	return result


def _monomial_product(first, first_power, second, second_power, backend):
	return tuple(_multiply(_power(first, first_power, backend), _power(second, second_power, backend)))


def sym_power(matrix, n):
	""" Matrix of f(X, Y) -> f(aX + cY, bX + dY) on the monomial basis.
	"""
	check_rank(n)
	backend = matrix.backend
	image_x, image_y = (matrix.a, matrix.c), (matrix.b, matrix.d)
	columns = [_monomial_product(image_x, n - 1 - j, image_y, j, backend) for j in range(n)]
	return tuple(zip(*columns))


def linear_form(point):
	return (point.u, point.v)


def flag_curve(point, n):
	""" The osculating flag at [u:v]: W^(i) is the polynomials divisible by (uX + vY)^(n-i).
	"""
	check_rank(n)
	backend = point.backend
	line = linear_form(point)
	if point.v.is_zero():
		complement = (zero(backend), one(backend))
	else:
		complement = (one(backend), zero(backend))
	return Flag(tuple(_monomial_product(line, n - i, complement, i - 1, backend) for i in range(1, n + 1)))


def eigenvector_forms(matrix):
	return fixed_points(matrix)


def lifted_eigenvalues(matrix, n):
	check_rank(n)
	large, _ = eigenvalues(matrix)
	weight = abs(large)
	return [weight ** (n - 1 - 2 * k) for k in range(n)]


def eigen_lengths(matrix, n):
	""" Exponentiated length functions lambda_k / lambda_(k+1); all equal lambda^2 here.
	"""
	values = lifted_eigenvalues(matrix, n)
	return [values[k] / values[k + 1] for k in range(n - 1)]


def length_functions(matrix, n):
	return [log_to_float(ratio) for ratio in eigen_lengths(matrix, n)]


def stable_flag(matrix, n):
	""" Flag of eigenvectors of sym_power(matrix, n), largest modulus first.

	Powers of the eigenvector forms of the 2x2 matrix are the eigenvectors of
	its symmetric power, with eigenvalue mu_+^(n-k) mu_-^(k-1).
	"""
	check_rank(n)
	backend = matrix.backend
	attracting, repelling = eigenvector_forms(matrix)
	large, small = eigenvalues(matrix)
	vectors = [
		_monomial_product(linear_form(attracting), n - k, linear_form(repelling), k - 1, backend)
		for k in range(1, n + 1)]
	values = [large ** (n - k) * small ** (k - 1) for k in range(1, n + 1)]
	return Flag(tuple(vectors)), values
