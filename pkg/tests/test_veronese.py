import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hitchinpants.geometry import pants_group, veronese
from hitchinpants.geometry.flag_algebra import determinant, matrix_product, same_flag
from hitchinpants.geometry.pants_group import NotHyperbolicError, PSL2Mat, ProjPoint

from strategies import exact, rationals, valid_params


def matrix(a, b, c, d):
	return PSL2Mat(*(exact(x) for x in (a, b, c, d)))


def as_rows(*rows):
	return tuple(tuple(exact(x) for x in row) for row in rows)


def test_sym_power_of_rank_two_is_the_matrix():
	m = matrix(2, "3/2", 0, "1/2")
	assert veronese.sym_power(m, 2) == m.rows


def test_sym_power_of_diagonal():
	assert veronese.sym_power(matrix(3, 0, 0, "1/3"), 3) == as_rows((9, 0, 0), (0, 1, 0), (0, 0, "1/9"))


def test_sym_power_of_unipotent():
	assert veronese.sym_power(matrix(1, 1, 0, 1), 3) == as_rows((1, 1, 1), (0, 1, 2), (0, 0, 1))


def test_sym_power_rank_check():
	with pytest.raises(ValueError):
		veronese.sym_power(matrix(1, 1, 0, 1), 1)


@given(st.lists(rationals, min_size=8, max_size=8), st.integers(min_value=2, max_value=5))
@settings(max_examples=40, deadline=None)
def test_sym_power_is_a_homomorphism(entries, n):
	m, k = matrix(*entries[:4]), matrix(*entries[4:])
	assert veronese.sym_power(m @ k, n) == matrix_product(veronese.sym_power(m, n), veronese.sym_power(k, n))


@pytest.mark.parametrize("n", range(2, 7))
def test_sym_power_has_determinant_one(sample_params, n):
	rep = pants_group.build_rep(sample_params)
	for name in "abc":
		assert determinant(veronese.sym_power(rep.generator(name), n)) == 1


def test_flag_curve_examples():
	at_infinity = veronese.flag_curve(ProjPoint.infinity(), 3)
	assert at_infinity.basis == as_rows((1, 0, 0), (0, 1, 0), (0, 0, 1))
	assert veronese.flag_curve(ProjPoint.finite(exact(0)), 3).basis[0] == as_rows((0, 0, 1))[0]
	assert veronese.flag_curve(ProjPoint.finite(exact(1)), 2).basis[0] == as_rows((1, 1))[0]
	# (rX + Y)^2 for r = -1/2
	assert veronese.flag_curve(ProjPoint.finite(exact("-1/2")), 3).basis[0] == as_rows(("1/4", -1, 1))[0]


def test_eigen_lengths(sample_params):
	rep = pants_group.build_rep(sample_params)
	assert veronese.lifted_eigenvalues(rep.a, 4) == [exact(8), exact(2), exact("1/2"), exact("1/8")]
	assert veronese.eigen_lengths(rep.a, 4) == [exact(4)] * 3
	assert veronese.eigen_lengths(rep.a, 2) == [exact(4)]
	assert veronese.eigen_lengths(rep.b, 3) == [exact(4)] * 2
	assert veronese.eigen_lengths(rep.c, 3) == [exact(4)] * 2
	assert veronese.length_functions(rep.c, 3) == pytest.approx([2 * math.log(2)] * 2)
	with pytest.raises(NotHyperbolicError):
		veronese.eigen_lengths(matrix(1, 1, 0, 1), 3)


@pytest.mark.parametrize("n", range(2, 6))
def test_flag_curve_is_equivariant(sample_params, n):
	rep = pants_group.build_rep(sample_params)
	points = [ProjPoint.infinity()] + [ProjPoint.finite(exact(x)) for x in (0, 1, "-1/2", "2/3", 3, -5)]
	for name in "abc":
		m = rep.generator(name)
		lifted = veronese.sym_power(m, n)
		for x in points:
			moved = veronese.flag_curve(x, n).transformed(lifted)
			assert same_flag(moved, veronese.flag_curve(pants_group.mobius_apply(m, x), n))


@given(valid_params(), st.integers(min_value=2, max_value=5), rationals)
@settings(max_examples=30, deadline=None)
def test_flag_curve_is_equivariant_for_random_params(params, n, x):
	rep = pants_group.build_rep(params)
	point = ProjPoint.finite(exact(x))
	for name in "abc":
		m = rep.generator(name)
		moved = veronese.flag_curve(point, n).transformed(veronese.sym_power(m, n))
		assert same_flag(moved, veronese.flag_curve(pants_group.mobius_apply(m, point), n))


@pytest.mark.parametrize("n", range(2, 6))
def test_stable_flag_is_the_flag_at_the_attracting_point(sample_params, n):
	rep = pants_group.build_rep(sample_params)
	for name in "abc":
		m = rep.generator(name)
		flag, values = veronese.stable_flag(m, n)
		lifted = veronese.sym_power(m, n)
		for vector, value in zip(flag.basis, values):
			image = tuple(sum((a * x for a, x in zip(row, vector)), exact(0)) for row in lifted)
			assert image == tuple(value * x for x in vector)
		assert [abs(v) for v in values] == sorted((abs(v) for v in values), reverse=True)
		assert same_flag(flag, veronese.flag_curve(pants_group.fixed_points(m).attracting, n))
