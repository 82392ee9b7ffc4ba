import pytest

from hitchinpants import app as flask_app
from hitchinpants.geometry.pants_group import PantsParams
from hitchinpants.geometry.scalar_field import Backend, Scalar

TEST_CONFIG = {
	"TESTING": True,
	"LOG_LEVEL": "WARNING",
	"OUTPUT_PATH": None,
	"WORKERS": 1,
}


@pytest.fixture
def app():
	flask_app.config.update(TEST_CONFIG)
	yield flask_app


@pytest.fixture
def runner(app):
	return app.test_cli_runner()


@pytest.fixture
def client(app):
	return app.test_client()


@pytest.fixture
def sample_params():
	""" alpha=2, beta=1, gamma=1/2: every boundary has length 2 log 2.
	"""
	return PantsParams(*(Scalar(x, Backend.EXACT) for x in (2, 1, "1/2")))
