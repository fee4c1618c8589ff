"""
ldaapp/__init__.py - Application factory for the lda web API

The computations live in the library modules (field, ring, janet, oracle,
reduction, scheme); this factory only exposes them as JSON endpoints.
"""

import logging

from flask import Flask, jsonify

from .config import get_config
from .routes.basis import basis_bp
from .routes.reduction import reduction_bp
from .routes.scheme import scheme_bp


def create_app(config_name='default'):
    """
    Application factory function.
    Creates and configures the Flask app instance.
    """
    app = Flask(__name__)
    app.config.from_object(get_config(config_name))
    app.json.sort_keys = app.config['JSON_SORT_KEYS']

    logging.basicConfig(format='%(asctime)s %(levelname)s %(name)s: %(message)s')
    logging.getLogger('ldaapp').setLevel(app.config['LOG_LEVEL'])

    app.register_blueprint(basis_bp, url_prefix='/api')
    app.register_blueprint(reduction_bp, url_prefix='/api')
    app.register_blueprint(scheme_bp, url_prefix='/api')

    @app.route('/api/health')
    def health():
        return jsonify(status='ok', max_iterations=app.config['MAX_ITERATIONS'])

    return app
