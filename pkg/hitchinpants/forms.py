import dataclasses

import werkzeug.datastructures
from wtforms import Form, IntegerField, SelectField, StringField, validators, ValidationError

from . import core
from .geometry.bd_coordinates import Method
from .geometry.pants_group import DomainError, PantsLengths, PantsParams, params_from_lengths
from .geometry.scalar_field import Backend

app = core.create_flask_application()

MODE_CHOICES = [(backend.value, backend.value) for backend in Backend]
METHOD_CHOICES = [(method.value, method.value) for method in Method]
GRID_AXES = ("lA", "lB", "lC")


@dataclasses.dataclass
class RunConfig:
	n: int = None
	params: PantsParams = None
	lengths: PantsLengths = None
	backend: Backend = Backend.EXACT
	output_format: str = "json"
	method: Method = Method.CLOSED_FORM
	samples: int = None
	seed: int = None
	max_n: int = None
	grid: dict = None
	out: str = None
	workers: int = 1


def parse_grid(text):
	""" "lA:start:stop:steps,lB:...,lC:..." -> {axis: (start, stop, steps)}
	"""
	grid = {}
	for part in text.split(","):
		pieces = [piece.strip() for piece in part.split(":")]
		if len(pieces) != 4:
			raise ValueError("Grid axes are written axis:start:stop:steps, got {!r}.".format(part))
		axis, start, stop, steps = pieces
		if axis not in GRID_AXES:
			raise ValueError("Unknown grid axis {!r}; use lA, lB and lC.".format(axis))
		if axis in grid:
			raise ValueError("Grid axis {} given twice.".format(axis))
		start, stop, steps = float(start), float(stop), int(steps)
		if steps < 1:
			raise ValueError("Grid axis {} needs at least one point.".format(axis))
		if start <= 0 or stop <= 0:
			raise ValueError("Boundary lengths on axis {} must be positive.".format(axis))
		grid[axis] = (start, stop, steps)
	missing = [axis for axis in GRID_AXES if axis not in grid]
	if missing:
		raise ValueError("Grid is missing the axes {}.".format(", ".join(missing)))
	return grid


def make_form(form_class, values):
	""" Builds a form from plain keyword values, the way a request would submit them.
	"""
	formdata = werkzeug.datastructures.MultiDict()
	for key, value in values.items():
		if value is None:
			continue
		formdata.add(key, str(value))
	return form_class(formdata=formdata)


class ParameterForm(Form):
	require_valid = True

	abc = StringField("alpha,beta,gamma")
	lengths = StringField("lA,lB,lC")
	mode = SelectField("Scalar mode", choices=MODE_CHOICES, default=app.config.get("DEFAULT_SCALAR_MODE", "exact"))

	def validate_abc(self, field):
		if not field.data and not self.lengths.data:
			raise ValidationError("Either abc or lengths is required.")
		if field.data and self.lengths.data:
			raise ValidationError("Give either abc or lengths, not both.")
		if not field.data:
			return
		try:
			params = PantsParams.parse(field.data, Backend(self.mode.data))
			if self.require_valid:
				params.require_valid()
		except (DomainError, ValueError) as e:
			raise ValidationError(str(e))

	def validate_lengths(self, field):
		if not field.data:
			return
		# Lengths force float mode; asking for exact explicitly is an error.
		if self.mode.raw_data and self.mode.data == Backend.EXACT.value:
			raise ValidationError("Exact mode needs abc parameters; lengths are only supported in float mode.")
		try:
			params_from_lengths(PantsLengths.parse(field.data))
		except (DomainError, ValueError) as e:
			raise ValidationError(str(e))

	@property
	def backend(self):
		if self.lengths.data:
			return Backend.FLOAT
		return Backend(self.mode.data)

	def parameters(self):
		if self.lengths.data:
			lengths = PantsLengths.parse(self.lengths.data)
			return params_from_lengths(lengths), lengths
		params = PantsParams.parse(self.abc.data, self.backend)
		if self.require_valid:
			params.require_valid()
		return params, None


class DomainForm(ParameterForm):
	# The domain report also describes parameters outside the domain.
	require_valid = False


class CoordinatesForm(ParameterForm):
	n = IntegerField("n", [validators.NumberRange(min=2, max=app.config.get("MAX_RANK", 16))], default=app.config.get("DEFAULT_RANK", 3))
	method = SelectField("Method", choices=METHOD_CHOICES, default=app.config.get("DEFAULT_METHOD", "closed_form"))
	format = SelectField("Output format", choices=[("json", "json"), ("csv", "csv"), ("xml", "xml")], default=app.config.get("DEFAULT_OUTPUT_FORMAT", "json"))
	out = StringField("Output file")

	def to_run_config(self):
		params, lengths = self.parameters()
		return RunConfig(
			n=self.n.data, params=params, lengths=lengths, backend=self.backend,
			output_format=self.format.data, method=Method(self.method.data), out=self.out.data or None)


class VerifyForm(Form):
	samples = IntegerField("Samples", [validators.NumberRange(min=1)], default=app.config.get("VERIFY_SAMPLES", 25))
	seed = IntegerField("Seed", [validators.NumberRange(min=0)], default=app.config.get("VERIFY_SEED", 42))
	max_n = IntegerField("Largest n", [validators.NumberRange(min=2, max=app.config.get("MAX_RANK", 16))], default=app.config.get("VERIFY_MAX_N", 7))
	mode = SelectField("Scalar mode", choices=MODE_CHOICES, default=app.config.get("DEFAULT_SCALAR_MODE", "exact"))
	jobs = IntegerField("Worker processes", [validators.NumberRange(min=1)], default=app.config.get("WORKERS", 1))

	def to_run_config(self):
		return RunConfig(
			samples=self.samples.data, seed=self.seed.data, max_n=self.max_n.data,
			backend=Backend(self.mode.data), workers=self.jobs.data)


class SweepForm(Form):
	n = IntegerField("n", [validators.NumberRange(min=2, max=app.config.get("MAX_RANK", 16))], default=app.config.get("DEFAULT_RANK", 3))
	grid = StringField("Grid")
	method = SelectField("Method", choices=METHOD_CHOICES, default=app.config.get("DEFAULT_METHOD", "closed_form"))
	out = StringField("Output file")
	jobs = IntegerField("Worker processes", [validators.NumberRange(min=1)], default=app.config.get("WORKERS", 1))

	def validate_grid(self, field):
		if not field.data:
			raise ValidationError("A grid such as lA:0.5:3:5,lB:0.5:3:5,lC:0.5:3:5 is required.")
		try:
			parse_grid(field.data)
		except ValueError as e:
			raise ValidationError(str(e))

	def to_run_config(self):
		return RunConfig(
			n=self.n.data, backend=Backend.FLOAT, output_format="csv", method=Method(self.method.data),
			grid=parse_grid(self.grid.data), out=self.out.data or None, workers=self.jobs.data)


def first_error(form):
	for name, errors in form.errors.items():
		if errors:
			return "{}: {}".format(name, errors[0])
	return "invalid input"
