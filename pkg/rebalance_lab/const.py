"""General rebalance_lab constants."""
from fractions import Fraction
from logging import Logger, getLogger
from typing import Final

_LOGGER: Logger = getLogger(__package__)

DOMAIN: Final = "rebalance_lab"

CONF_SCHEME: Final = "scheme"
CONF_SEQUENCE: Final = "sequence"
CONF_N: Final = "n"
CONF_P: Final = "p"
CONF_P_PLUS: Final = "p_plus"
CONF_TRIALS: Final = "trials"
CONF_TREES: Final = "trees"
CONF_COUNTERS: Final = "counters"
CONF_SEED: Final = "seed"
CONF_OUT: Final = "out"
CONF_WORKERS: Final = "workers"
CONF_KEYS: Final = "keys"
CONF_TRAJECTORY: Final = "trajectory"
CONF_HEIGHT_CHANGES: Final = "height_changes"
CONF_CRITERIA: Final = "criteria"
CONF_EQUIVALENCE_TRIALS: Final = "equivalence_trials"
CONF_LINEAR_TRIALS: Final = "linear_trials"
CONF_WALK_EVENTS: Final = "walk_events"
CONF_HEIGHT_EVENTS: Final = "height_events"
CONF_PROCESS_STEPS: Final = "process_steps"
CONF_SIZE_SHIFT: Final = "size_shift"
CONF_RANDOM_ORDER: Final = "random_order"
CONF_LOGGER: Final = "logger"
CONF_LOGGER_DEFAULT: Final = "default"
CONF_LOGGER_LOGS: Final = "logs"

# Config file sections, one per subcommand
SECTION_SWEEP: Final = "sweep"
SECTION_PROFILE: Final = "profile"
SECTION_PROCESS: Final = "process"
SECTION_PAIRS_STUDY: Final = "pairs_study"
SECTION_DISTRIBUTION: Final = "distribution"
SECTION_ACCEPT: Final = "accept"

ACCEPTANCE_CRITERIA: Final = tuple(range(1, 14))

# Default values
DEFAULT_TRIALS: Final = 25
DEFAULT_SEED: Final = 0
DEFAULT_WORKERS: Final = 1
DEFAULT_OUT: Final = "-"
DEFAULT_SWEEP_N: Final = (1024,)
DEFAULT_SWEEP_P: Final = tuple(round(0.05 * i, 2) for i in range(21))
DEFAULT_PROFILE_N: Final = 1000
DEFAULT_PROFILE_P: Final = 0.5
DEFAULT_PROFILE_TREES: Final = 100
DEFAULT_PROCESS_N: Final = 1_000_000
DEFAULT_PROCESS_COUNTERS: Final = 1_000
DEFAULT_PROCESS_P_PLUS: Final = (0.4, 0.45, 0.5, 0.55, 0.6)
DEFAULT_PAIRS_STUDY_N: Final = tuple(2**k for k in range(4, 15))
DEFAULT_PAIRS_STUDY_P: Final = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))
DEFAULT_DISTRIBUTION_P: Final = Fraction(1, 2)
DEFAULT_TRAJECTORY_SAMPLES: Final = 1_000
DEFAULT_EQUIVALENCE_TRIALS: Final = 100_000
DEFAULT_LINEAR_TRIALS: Final = 5
DEFAULT_WALK_EVENTS: Final = 10_000
DEFAULT_HEIGHT_EVENTS: Final = 100_000
DEFAULT_SIZE_SHIFT: Final = 0

# Limits
MAX_PERMUTATION_N: Final = 2**16
MAX_BRANCHES: Final = 10**7
# acceptance tree sizes may be halved at most this many times
MAX_SIZE_SHIFT: Final = 5
COIN_BLOCK_SIZE: Final = 4096
PROCESS_CHUNK_STEPS: Final = 1 << 20
PROBABILITY_TOLERANCE: Final = 1e-12

# Tree encoding
ABSENT_CHILD: Final = "·"
