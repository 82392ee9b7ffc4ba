import flask

from . import checks, cli, core, forms
from .geometry import pants_group
from .geometry.scalar_field import Backend
from .utils import documents

app = core.create_flask_application()
cache = core.get_cache()

app.cli.add_command(cli.cli, name="pants")


def validation_failed(form):
	return flask.jsonify(errors=form.errors), 400


def computation_failed(error):
	app.logger.warning("Request %s failed: %s", flask.request.full_path, error)
	return flask.jsonify(error=str(error)), 422


@cache.memoize()
def get_coordinates(n, abc, lengths, mode, method):
	form = forms.make_form(forms.CoordinatesForm, dict(n=n, abc=abc, lengths=lengths, mode=mode, method=method))
	form.validate()
	document, frame = cli.build_coordinates(form.to_run_config())
	return document, documents.to_csv(frame)


@app.route("/api/coordinates", methods=["GET"])
def coordinates():
	form = forms.CoordinatesForm(flask.request.args)
	if not form.validate():
		return validation_failed(form)
	if form.n.data > app.config.get("API_MAX_RANK", 10):
		return flask.jsonify(errors=dict(n=["At most n={} over HTTP.".format(app.config.get("API_MAX_RANK", 10))])), 400

	try:
		document, csv_text = get_coordinates(
			form.n.data, form.abc.data or None, form.lengths.data or None, form.backend.value, form.method.data)
	except cli.USAGE_ERRORS + cli.COMPUTATION_ERRORS as e:
		return computation_failed(e)

	if form.format.data == "xml":
		return flask.Response(documents.to_xml(document), mimetype="text/xml")
	if form.format.data == "csv":
		return flask.Response(csv_text, mimetype="text/csv")
	return flask.jsonify(document)


@app.route("/api/domain", methods=["GET"])
def domain():
	form = forms.DomainForm(flask.request.args)
	if not form.validate():
		return validation_failed(form)

	params, _ = form.parameters()
	report = pants_group.check_domain(params)
	reply = {
		"params": params.to_document(),
		"passed": report.passed,
		"domain": report.to_document(),
		"failures": report.failure_labels(),
		"fixed_points": None,
	}
	if report.passed:
		try:
			rep = pants_group.build_rep(params)
			reply["fixed_points"] = {
				name: {
					"attracting": fixed.attracting.to_json(),
					"repelling": fixed.repelling.to_json(),
				}
				for name, fixed in ((name, pants_group.fixed_points(rep.generator(name))) for name in "abc")}
		except cli.COMPUTATION_ERRORS as e:
			return computation_failed(e)
	return flask.jsonify(reply)


@app.route("/api/verify", methods=["GET"])
def verify():
	form = forms.VerifyForm(flask.request.args)
	if not form.validate():
		return validation_failed(form)

	samples = min(form.samples.data, app.config.get("API_MAX_SAMPLES", 5))
	max_n = min(form.max_n.data, app.config.get("API_MAX_RANK", 10))
	try:
		report = checks.run_verification(samples, form.seed.data, max_n, Backend(form.mode.data))
	except cli.USAGE_ERRORS + cli.COMPUTATION_ERRORS as e:
		return computation_failed(e)
	reply = report.to_document()
	reply["samples"] = samples
	reply["max_n"] = max_n
	return flask.jsonify(reply)
