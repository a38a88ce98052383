"""
Application Settings and Configuration
Loads environment variables and provides application-wide constants.
"""

import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name, str(default))
    try:
        return int(raw)
    except ValueError:
        return default


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name, str(default))
    try:
        return float(raw)
    except ValueError:
        return default


# Numeric variables and their parsers; unparsable values fall back to the
# default at load time and are reported by Settings.validate()
NUMERIC_VARIABLES = {
    'DLPQ_DEFAULT_SEED': int,
    'DLPQ_EXHAUSTIVE_MAX_VARS': int,
    'DLPQ_AUTO_EXHAUSTIVE_LIMIT': int,
    'DLPQ_MAX_STORED_ARGMINS': int,
    'DLPQ_SA_READS': int,
    'DLPQ_SA_SWEEPS': int,
    'DLPQ_SA_RESTARTS': int,
    'DLPQ_SA_BETA_MIN': float,
    'DLPQ_SA_BETA_MAX': float,
    'DLPQ_MAX_RETRIES': int,
    'DLPQ_SIGNIFICANCE_LEVEL': float,
}


def unparsable_variables() -> list:
    """Names of numeric DLPQ_ variables whose current value does not parse."""
    bad = []
    for name, parse in NUMERIC_VARIABLES.items():
        raw = os.getenv(name)
        if raw is None:
            continue
        try:
            parse(raw)
        except ValueError:
            bad.append(name)
    return bad


class Settings:
    """
    Centralized application settings.
    All configuration is loaded from environment variables (prefix DLPQ_).
    """

    # Application Settings
    APP_NAME: str = os.getenv('DLPQ_APP_NAME', 'dlp-qubo')
    APP_ENV: str = os.getenv('DLPQ_APP_ENV', 'development')
    LOG_LEVEL: str = os.getenv('DLPQ_LOG_LEVEL', 'INFO')
    LOG_FILE: str = os.getenv('DLPQ_LOG_FILE', '')

    # Reproducibility
    DEFAULT_SEED: int = _env_int('DLPQ_DEFAULT_SEED', 20240601)

    # Exhaustive solver
    EXHAUSTIVE_MAX_VARS: int = _env_int('DLPQ_EXHAUSTIVE_MAX_VARS', 28)
    AUTO_EXHAUSTIVE_LIMIT: int = _env_int('DLPQ_AUTO_EXHAUSTIVE_LIMIT', 24)
    MAX_STORED_ARGMINS: int = _env_int('DLPQ_MAX_STORED_ARGMINS', 1024)

    # Simulated annealing defaults
    SA_READS: int = _env_int('DLPQ_SA_READS', 1000)
    SA_SWEEPS: int = _env_int('DLPQ_SA_SWEEPS', 200)
    SA_RESTARTS: int = _env_int('DLPQ_SA_RESTARTS', 32)
    SA_BETA_MIN: float = _env_float('DLPQ_SA_BETA_MIN', 0.1)
    SA_BETA_MAX: float = _env_float('DLPQ_SA_BETA_MAX', 10.0)

    # Escalation of annealing reads when verification fails
    MAX_RETRIES: int = _env_int('DLPQ_MAX_RETRIES', 2)

    # Statistics
    SIGNIFICANCE_LEVEL: float = _env_float('DLPQ_SIGNIFICANCE_LEVEL', 0.05)

    @classmethod
    def validate(cls) -> bool:
        """
        Validate that all configuration values are usable.
        Returns True if valid, raises ValueError listing every bad value.
        """
        checks = [
            ('DLPQ_EXHAUSTIVE_MAX_VARS', 1 <= cls.EXHAUSTIVE_MAX_VARS <= 40),
            ('DLPQ_AUTO_EXHAUSTIVE_LIMIT', 0 <= cls.AUTO_EXHAUSTIVE_LIMIT <= cls.EXHAUSTIVE_MAX_VARS),
            ('DLPQ_MAX_STORED_ARGMINS', cls.MAX_STORED_ARGMINS >= 1),
            ('DLPQ_SA_READS', cls.SA_READS >= 1),
            ('DLPQ_SA_SWEEPS', cls.SA_SWEEPS >= 1),
            ('DLPQ_SA_RESTARTS', cls.SA_RESTARTS >= 1),
            ('DLPQ_SA_BETA_MIN', 0 < cls.SA_BETA_MIN <= cls.SA_BETA_MAX),
            ('DLPQ_MAX_RETRIES', cls.MAX_RETRIES >= 0),
            ('DLPQ_SIGNIFICANCE_LEVEL', 0 < cls.SIGNIFICANCE_LEVEL < 1),
        ]

        invalid = unparsable_variables()
        invalid.extend(name for name, ok in checks if not ok and name not in invalid)

        if invalid:
            raise ValueError(
                f"Invalid configuration values: {', '.join(invalid)}. "
                "Please check your .env file."
            )

        return True

    @classmethod
    def is_production(cls) -> bool:
        """Check if running in production environment."""
        return cls.APP_ENV.lower() == 'production'


# Create a singleton instance
settings = Settings()
