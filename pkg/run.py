"""
Application entry point
Runs the Weyl superalgebra toolkit: the command line, or the web API
"""

import sys

from config import Config


def main(argv=None):
    """Main entry point"""
    argv = sys.argv[1:] if argv is None else argv

    if argv[:1] == ['web']:
        if not Config.validate():
            print("\n❌ Please fix the configuration in your .env file first!\n")
            return 1

        print("🌐 Starting Flask web application...")
        from web.app import app
        app.run(
            host='0.0.0.0',
            port=Config.FLASK_PORT,
            debug=(Config.FLASK_ENV == 'development')
        )
        return 0

    from src.cli import run_command
    return run_command(argv)


if __name__ == '__main__':
    sys.exit(main())
