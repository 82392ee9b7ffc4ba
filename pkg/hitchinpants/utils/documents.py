import json
import pathlib

import dicttoxml
import pandas

from .. import core

PARAMETER_COLUMNS = ["lA", "lB", "lC", "alpha", "beta", "gamma"]


def coordinates_document(n, params, lengths, coords, method, domain_report, polytope_report, boundary_lengths):
	""" The document emitted by the coords command and the coordinates API.
	"""
	return {
		"n": n,
		"mode": params.backend.value,
		"method": method.value,
		"params": params.to_document(),
		"lengths": lengths.to_document(),
		"coordinates": coords.to_document(),
		"boundary_lengths": {
			boundary: [dict(p=p, **value.to_document()) for p, value in enumerate(values, start=1)]
			for boundary, values in boundary_lengths.items()},
		"checks": {
			"domain": domain_report.to_document(),
			"polytope": polytope_report.to_document(),
		},
	}


def coordinates_row(params, lengths, coords):
	row = list(lengths.as_tuple()) + [value.to_float() for value in params.as_tuple()]
	return row + coords.logs()


def coordinates_frame(rows, coordinate_columns):
	return pandas.DataFrame(rows, columns=PARAMETER_COLUMNS + list(coordinate_columns))


def to_json(document):
	return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def to_csv(frame):
	# Round-trippable float formatting.
	return frame.to_csv(index=False, float_format="%.17g")


def to_xml(document):
	return dicttoxml.dicttoxml(document, attr_type=False).decode("utf-8")


def render(document, frame, output_format):
	if output_format == "json":
		return to_json(document)
	if output_format == "csv":
		return to_csv(frame)
	if output_format == "xml":
		return to_xml(document)
	raise ValueError("Unknown output format {!r}.".format(output_format))


class OutputManager():
	def __init__(self, config):
		if config is not None:
			self.set_config(config)

	def set_config(self, config):
		self.base_path = config.get("OUTPUT_PATH")

	def get_output_path(self, name):
		path = pathlib.Path(name)
		# Relative names land below OUTPUT_PATH when one is configured.
		if self.base_path and not path.is_absolute():
			path = pathlib.Path(self.base_path, path)
		return path

	def ensure_output_path_valid(self, name):
		path = self.get_output_path(name)
		if path.is_dir():
			raise IsADirectoryError("Output path {} is a directory.".format(path))
		path.parent.mkdir(parents=True, exist_ok=True)
		return path

	def store_text(self, name, text):
		path = self.ensure_output_path_valid(name)
		with open(path, "w", encoding="utf-8") as f:
			f.write(text)
		core.get_logger().debug("Wrote %d characters to %s.", len(text), path)
		return path


output_manager = OutputManager(core.create_flask_application().config)
