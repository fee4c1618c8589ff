"""
ldaapp/config.py - Configuration classes for the lda toolkit

Every environment the app runs in picks one of the classes below by name
(see create_app and the `lda` CLI).

Values can be overridden with environment variables:
- LDA_MAX_ITERATIONS: safety cap on the completion loop
- LDA_LOG_LEVEL: root log level
"""

import os


class Config:
    MAX_ITERATIONS = int(os.environ.get('LDA_MAX_ITERATIONS', 20000))
    ORACLE_DEGREE_MARGIN = 2
    LOG_LEVEL = os.environ.get('LDA_LOG_LEVEL', 'INFO')

    # Uploaded system files (web API)
    ALLOWED_EXTENSIONS = {'json'}
    MAX_CONTENT_LENGTH = 1024 * 1024  # 1MB max upload size
    JSON_SORT_KEYS = False

    DEBUG = False
    TESTING = False


class DevelopmentConfig(Config):
    DEBUG = True
    LOG_LEVEL = os.environ.get('LDA_LOG_LEVEL', 'DEBUG')


class TestingConfig(Config):
    TESTING = True
    MAX_ITERATIONS = 5000
    LOG_LEVEL = os.environ.get('LDA_LOG_LEVEL', 'WARNING')


class ProductionConfig(Config):
    LOG_LEVEL = os.environ.get('LDA_LOG_LEVEL', 'WARNING')


config_by_name = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'production': ProductionConfig,
    'default': Config,
}


def get_config(name=None):
    """Look up a configuration class; falls back to LDA_ENV, then 'default'."""
    name = name or os.environ.get('LDA_ENV', 'default')
    try:
        return config_by_name[name]
    except KeyError:
        raise ValueError(f"unknown configuration '{name}'; "
                         f"expected one of {sorted(config_by_name)}") from None
