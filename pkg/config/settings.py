import logging
import os

logger = logging.getLogger(__name__)


def _env_threads(default: int = 1) -> int:
    """CM_SPACES_THREADS as a positive int; anything else falls back to the default."""
    raw = os.getenv("CM_SPACES_THREADS")
    if raw is None:
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        logger.warning("ignoring CM_SPACES_THREADS=%r: not an integer, using %d", raw, default)
        return default


def _env_log_level(default: str = "WARNING") -> str:
    raw = os.getenv("CM_SPACES_LOG_LEVEL", default).upper()
    if not isinstance(logging.getLevelName(raw), int):
        logger.warning("ignoring CM_SPACES_LOG_LEVEL=%r: unknown level, using %s", raw, default)
        return default
    return raw


# Worker threads for batch verification (flex-check)
THREADS = _env_threads()

# Log level for library loggers when driven from the CLI
LOG_LEVEL = _env_log_level()

# Numerical tolerances (all dimensionless, strictly positive)
DEFAULT_TOLERANCES = {
    'rank_tol': 1e-8,              # relative singular-value cutoff sigma2/sigma1
    'sep_tol': 1e-6,               # eigenvalue separation on normalized data
    'fd_step': 1e-6,               # finite-difference / complex-step size
    'invertibility_floor': 1e-12,  # |det G| / ||G||^n below this is singular
    'flow_fit_tol': 1e-7,          # relative tolerance of the flow-profile fit
    'equiv_tol': 1e-6,             # fingerprint comparison
    'min_gap': 1e3,                # singular-value gap for a reliable rank
    'orbit_tol': 1e-8,             # Z2 x Z2 orbit comparison in the C2 model
}

# Sampling settings
SAMPLING_CONFIG = {
    'max_rejections': 1000,        # draws rejected before giving up
    'max_condition': 1e3,          # cap on cond(G) for random conjugators
}

# Equivalence test settings
EQUIVALENCE_CONFIG = {
    'word_length': 4,              # trace words up to this length
    'kernel_attempts': 10,         # random kernel combinations tried
}

# CLI settings
CLI_CONFIG = {
    'float_digits': 17,            # significant digits in JSON output
    'default_seed': 0,
    'default_count': 10,
    'default_samples': 100,
    'flex_pass_fraction': 0.99,    # flex-check passes when this share of samples span
    'compat_points': 125,          # floating-point grid of cm2 compat-check
}
