import pytest

from hitchinpants import forms
from hitchinpants.geometry.bd_coordinates import Method
from hitchinpants.geometry.scalar_field import Backend


def test_parse_grid():
	grid = forms.parse_grid("lA:0.5:3:5, lB:1:1:1,lC:2:4:3")
	assert grid == {"lA": (0.5, 3.0, 5), "lB": (1.0, 1.0, 1), "lC": (2.0, 4.0, 3)}


@pytest.mark.parametrize("text, message", [
	("lA:1:2:2,lB:1:2:2", "missing"),
	("lA:1:2:2,lA:1:2:2,lB:1:2:2,lC:1:2:2", "twice"),
	("lA:1:2:0,lB:1:2:2,lC:1:2:2", "at least one"),
	("lA:-1:2:2,lB:1:2:2,lC:1:2:2", "positive"),
	("lD:1:2:2", "Unknown"),
])
def test_parse_grid_errors(text, message):
	with pytest.raises(ValueError, match=message):
		forms.parse_grid(text)


def test_coordinates_form_defaults(app):
	form = forms.make_form(forms.CoordinatesForm, dict(abc="2,1,1/2", n=None))
	assert form.validate()
	config = form.to_run_config()
	assert config.n == app.config["DEFAULT_RANK"]
	assert config.backend is Backend.EXACT
	assert config.method is Method.CLOSED_FORM
	assert config.output_format == "json"
	assert config.lengths is None
	assert str(config.params) == "2,1,1/2"


def test_lengths_force_float_mode(app):
	form = forms.make_form(forms.CoordinatesForm, dict(lengths="1,1,1", n=2))
	assert form.validate()
	config = form.to_run_config()
	assert config.backend is Backend.FLOAT
	assert config.params.backend is Backend.FLOAT
	assert config.lengths.as_tuple() == (1.0, 1.0, 1.0)


def test_exact_mode_with_lengths_is_rejected(app):
	form = forms.make_form(forms.CoordinatesForm, dict(lengths="1,1,1", mode="exact"))
	assert not form.validate()
	assert "lengths" in form.errors
	assert forms.first_error(form).startswith("lengths: Exact mode")


def test_domain_form_accepts_invalid_parameters(app):
	form = forms.make_form(forms.DomainForm, dict(abc="1/2,1,1/2"))
	assert form.validate()
	params, lengths = form.parameters()
	assert str(params) == "1/2,1,1/2"
	assert lengths is None


def test_sweep_form(app):
	form = forms.make_form(forms.SweepForm, dict(n=4, grid="lA:1:2:2,lB:1:2:2,lC:1:2:2", jobs=2))
	assert form.validate()
	config = form.to_run_config()
	assert config.workers == 2
	assert config.output_format == "csv"
	assert config.grid["lC"] == (1.0, 2.0, 2)


def test_verify_form_defaults(app):
	form = forms.make_form(forms.VerifyForm, {})
	assert form.validate()
	config = form.to_run_config()
	assert (config.samples, config.seed, config.max_n) == (25, 42, 7)
