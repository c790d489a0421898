# backend/utils/config.py - Centralized Configuration
import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


def _env_bool(name: str, default: str) -> bool:
    return os.environ.get(name, default).lower() == 'true'


class Config:
    """Application configuration class"""

    DEBUG = _env_bool('LORENTZ_DEBUG', 'False')
    TESTING = False

    # Logging
    LOG_LEVEL = os.environ.get('LORENTZ_LOG_LEVEL', 'INFO')
    LOG_FILE = os.environ.get('LORENTZ_LOG_FILE') or None

    # Suite defaults
    DEFAULT_TRIALS = int(os.environ.get('LORENTZ_DEFAULT_TRIALS', '1000'))
    DEFAULT_SEED = int(os.environ.get('LORENTZ_DEFAULT_SEED', '0'))
    MAX_ATOMS = int(os.environ.get('LORENTZ_MAX_ATOMS', '12'))
    SHOW_PROGRESS = _env_bool('LORENTZ_SHOW_PROGRESS', 'False')

    # Tolerances: inequality checks pass when lhs <= rhs * (1 + REL) + ABS
    REL_TOLERANCE = float(os.environ.get('LORENTZ_REL_TOLERANCE', '1e-9'))
    ABS_TOLERANCE = float(os.environ.get('LORENTZ_ABS_TOLERANCE', '1e-12'))
    IDENTITY_TOLERANCE = float(os.environ.get('LORENTZ_IDENTITY_TOLERANCE', '1e-12'))
    ORACLE_TOLERANCE = float(os.environ.get('LORENTZ_ORACLE_TOLERANCE', '1e-4'))
    ORACLE_SUBDIVISIONS = int(os.environ.get('LORENTZ_ORACLE_SUBDIVISIONS', '100000'))

    @classmethod
    def validate_config(cls):
        """Validate numeric configuration"""
        problems = []

        if cls.LOG_LEVEL.upper() not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
            problems.append(f"LORENTZ_LOG_LEVEL={cls.LOG_LEVEL}")
        if cls.DEFAULT_TRIALS < 1:
            problems.append(f"LORENTZ_DEFAULT_TRIALS={cls.DEFAULT_TRIALS}")
        if not 0 <= cls.DEFAULT_SEED < 2 ** 64:
            problems.append(f"LORENTZ_DEFAULT_SEED={cls.DEFAULT_SEED}")
        if cls.MAX_ATOMS < 1:
            problems.append(f"LORENTZ_MAX_ATOMS={cls.MAX_ATOMS}")
        if cls.ORACLE_SUBDIVISIONS < 1:
            problems.append(f"LORENTZ_ORACLE_SUBDIVISIONS={cls.ORACLE_SUBDIVISIONS}")
        for name in ('IDENTITY_TOLERANCE', 'ORACLE_TOLERANCE'):
            if getattr(cls, name) <= 0:
                problems.append(f"LORENTZ_{name}={getattr(cls, name)}")

        if problems:
            raise ValueError(f"Invalid configuration values: {', '.join(problems)}")

        return True


class DevelopmentConfig(Config):
    """Development configuration"""
    DEBUG = True
    LOG_LEVEL = 'DEBUG'


class TestingConfig(Config):
    """Testing configuration"""
    DEBUG = True
    TESTING = True
    LOG_LEVEL = 'WARNING'
    LOG_FILE = None
    DEFAULT_TRIALS = 50
    ORACLE_SUBDIVISIONS = 20000
    SHOW_PROGRESS = False


CONFIGS = {
    'default': Config,
    'development': DevelopmentConfig,
    'testing': TestingConfig,
}


def get_config(name: str = None):
    """Resolve a configuration class by name (LORENTZ_ENV when omitted)"""
    name = (name or os.environ.get('LORENTZ_ENV', 'default')).lower()
    if name not in CONFIGS:
        raise ValueError(f"Unknown configuration '{name}'. Must be one of: {', '.join(CONFIGS)}")
    return CONFIGS[name]


# Process exit codes
EXIT_SUCCESS = 0
EXIT_CHECK_FAILURE = 1
EXIT_USAGE_ERROR = 2
