import flask
import flask_caching

app_singleton = None

def create_flask_application(test_config=None):
    global app_singleton
    if app_singleton is not None:
        return app_singleton

    # create and configure the app
    app = flask.Flask(__name__, instance_relative_config=False)

    if test_config is None:
        # defaults first, then the optional local config and the file named in the environment
        app.config.from_pyfile('defaultconfig.py', silent=True)
        app.config.from_pyfile('config.py', silent=True)
        app.config.from_envvar('HITCHINPANTS_SETTINGS', silent=True)
    else:
        # load the test config if passed in
        app.config.from_mapping(test_config)

    app.logger.setLevel(app.config.get("LOG_LEVEL", "WARNING"))

    app_singleton = app
    return app_singleton

def get_config():
	return create_flask_application().config

def get_logger():
	return create_flask_application().logger

cache_singleton = None
def get_cache():
	global cache_singleton
	if cache_singleton is not None:
		return cache_singleton
	cache_singleton = flask_caching.Cache(create_flask_application())
	return cache_singleton
