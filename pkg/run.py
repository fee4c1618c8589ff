# run.py
"""
run.py - Development server launcher for the lda web API

This file should be placed in the project ROOT directory (same level as 'ldaapp/' folder).
Do NOT put application logic here; it only starts the dev server.
`lda serve` does the same from an installed package.

Usage:
    python run.py
"""

import os
import sys

# Ensure the project root is in sys.path (helps when running from subdirectories)
project_root = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, project_root)

try:
    from ldaapp import create_app
except ImportError as e:
    print("Error: Cannot import 'create_app' from 'ldaapp'.", file=sys.stderr)
    print("Install the dependencies with `pip install -r requirements.txt` "
          "and run from the project root.", file=sys.stderr)
    print(f"Detailed error: {e}", file=sys.stderr)
    sys.exit(1)

# LDA_ENV selects 'development', 'testing', 'production' or 'default'
app = create_app(os.environ.get('LDA_ENV', 'development'))

if __name__ == '__main__':
    app.logger.info('Starting lda API on http://127.0.0.1:5000 (debug=%s)', app.config['DEBUG'])
    app.run(
        debug=app.config['DEBUG'],
        host='127.0.0.1',
        port=5000,
        use_reloader=app.config['DEBUG'],
        threaded=True
    )
