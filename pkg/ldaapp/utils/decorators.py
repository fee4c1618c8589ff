"""
ldaapp/utils/decorators.py - Custom Flask decorators for the JSON API

Contains:
- api_errors: Turn LdaError into a JSON error response with its HTTP status
- system_required: Load the request's difference system and pass it to the view
- pde_required: Same for a PDE document
"""

from functools import wraps

from flask import current_app, jsonify

from ..errors import LdaError
from ..system import pde_from_dict, system_from_dict
from .helpers import request_document


def api_errors(f):
    """
    Decorator: Report library errors as JSON.
    InputError -> 400, MathError -> 422; the body names the error class.
    """
    @wraps(f)
    def decorated_function(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except LdaError as e:
            current_app.logger.info('%s on %s: %s', type(e).__name__, f.__name__, e)
            return jsonify(error=type(e).__name__, message=str(e)), e.http_status
    return decorated_function


def system_required(f):
    """
    Decorator: Require a difference system in the request.
    The view receives `spec` (SystemSpec) and `options` (dict) keyword arguments.
    """
    @wraps(f)
    @api_errors
    def decorated_function(*args, **kwargs):
        document, options = request_document('system')
        spec = system_from_dict(document, source='request')
        return f(*args, spec=spec, options=options, **kwargs)
    return decorated_function


def pde_required(f):
    """
    Decorator: Require a PDE document in the request (field `pde`).
    The view receives `spec` (PdeSpec) and `options` (dict) keyword arguments.
    """
    @wraps(f)
    @api_errors
    def decorated_function(*args, **kwargs):
        document, options = request_document('pde')
        spec = pde_from_dict(document, source='request')
        return f(*args, spec=spec, options=options, **kwargs)
    return decorated_function
