"""
ldaapp/utils/helpers.py - Request helpers for the web API

Contains:
- allowed_file: Validate file extensions for uploaded system files
- request_document: The JSON document of a request, from the body or an upload
- flag: Read a boolean option from query string, form or JSON body
"""

import json

from flask import current_app, request

from ..errors import ValidationError


def allowed_file(filename):
    """
    Check if the uploaded file has an allowed extension.

    Args:
        filename (str): Name of the uploaded file

    Returns:
        bool: True if extension is allowed, False otherwise
    """
    if not filename:
        return False

    return '.' in filename and \
        filename.rsplit('.', 1)[1].lower() in current_app.config['ALLOWED_EXTENSIONS']


def request_document(field='system'):
    """
    The system (or PDE) document and the remaining options of a request.

    Accepts a JSON body {"system": {...}, ...options} or a multipart upload
    whose file field `field` holds the document and whose form fields are
    the options.
    """
    upload = request.files.get(field)
    if upload is not None:
        if not allowed_file(upload.filename):
            raise ValidationError(field, f"'{upload.filename}' is not a .json file")
        try:
            document = json.load(upload.stream)
        except (ValueError, UnicodeDecodeError) as e:
            raise ValidationError(field, f"uploaded file is not valid JSON: {e}") from None
        return document, request.form.to_dict()

    body = request.get_json(silent=True)
    if not isinstance(body, dict) or field not in body:
        raise ValidationError(field, 'missing: send JSON {"%s": {...}} or upload a file' % field)
    options = {k: v for k, v in body.items() if k != field}
    return body[field], options


def flag(options, name):
    value = request.args.get(name, options.get(name, False))
    if isinstance(value, str):
        return value.lower() in ('1', 'true', 'yes', 'on')
    return bool(value)
