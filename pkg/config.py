"""
Centralized configuration management
Loads environment variables and provides defaults
"""

import logging
import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


class Config:
    """Toolkit configuration"""

    # Signature validation
    TAU_SEARCH_BOUND = int(os.getenv('WEYL_TAU_SEARCH_BOUND', 3))

    # Cohomology machinery
    PROBE_MAX_UNKNOWNS = int(os.getenv('WEYL_PROBE_MAX_UNKNOWNS', 5000))
    NORMALIZE_MAX_DEPTH = int(os.getenv('WEYL_NORMALIZE_MAX_DEPTH', 200))

    # Memo sizes (entries); the web process keeps them across requests
    CACHE_SIZE = int(os.getenv('WEYL_CACHE_SIZE', 100000))
    FUNCTIONAL_CACHE_SIZE = int(os.getenv('WEYL_FUNCTIONAL_CACHE_SIZE', 32))

    # Unknown cap for probes served over HTTP
    WEB_PROBE_MAX_UNKNOWNS = int(os.getenv('WEYL_WEB_PROBE_MAX_UNKNOWNS', 400))

    # Verification suites
    SELFTEST_SAMPLES = int(os.getenv('WEYL_SELFTEST_SAMPLES', 200))
    SELFTEST_SEED = int(os.getenv('WEYL_SELFTEST_SEED', 0))

    # Logging (stderr only; stdout is reserved for results)
    LOG_LEVEL = os.getenv('WEYL_LOG_LEVEL', 'WARNING').upper()

    # Flask
    FLASK_ENV = os.getenv('FLASK_ENV', 'production')
    FLASK_PORT = int(os.getenv('FLASK_PORT', 5050))

    @classmethod
    def validate(cls):
        """Validate numeric bounds and the log level"""
        positive = {
            'WEYL_TAU_SEARCH_BOUND': cls.TAU_SEARCH_BOUND,
            'WEYL_PROBE_MAX_UNKNOWNS': cls.PROBE_MAX_UNKNOWNS,
            'WEYL_NORMALIZE_MAX_DEPTH': cls.NORMALIZE_MAX_DEPTH,
            'WEYL_CACHE_SIZE': cls.CACHE_SIZE,
            'WEYL_FUNCTIONAL_CACHE_SIZE': cls.FUNCTIONAL_CACHE_SIZE,
            'WEYL_WEB_PROBE_MAX_UNKNOWNS': cls.WEB_PROBE_MAX_UNKNOWNS,
            'WEYL_SELFTEST_SAMPLES': cls.SELFTEST_SAMPLES,
        }

        bad = [key for key, value in positive.items() if value <= 0]
        if not isinstance(logging.getLevelName(cls.LOG_LEVEL), int):
            bad.append('WEYL_LOG_LEVEL')

        if bad:
            print(f"⚠️  Warning: Invalid configuration: {', '.join(bad)}")
            print(f"   Please fix these in your .env file")
            return False

        return True
