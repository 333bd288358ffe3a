"""Runtime configuration, read from the environment at import time."""
import os
from importlib import metadata
from pathlib import Path

import toml

# Persistent memo cache (JSON lines); empty means in-memory only
WEIGHTSYS_CACHE = os.environ.get('WEIGHTSYS_CACHE') or None
LOG_LEVEL = os.environ.get('WEIGHTSYS_LOG_LEVEL', 'INFO')
# Largest m accepted by exhaustive commands (relations, Table 1)
DEFAULT_BOUND = int(os.environ.get('WEIGHTSYS_BOUND', '7'))
DEFAULT_THREADS = int(os.environ.get('WEIGHTSYS_THREADS', '1'))

# Rotational tables are plain enumeration and go further than Table 1
ROTATIONAL_BOUND = 10
# Averages over S_m enumerate every permutation
AVERAGE_BOUND = 6
# Dense operator checks: dimension of the tensor power, and number of index tuples
ORACLE_DIM_LIMIT = 64
ORACLE_TERM_LIMIT = 4096

CACHE_FORMAT = 'weightsys-cache/1'
PYPROJECT = Path(__file__).resolve().parents[2] / 'pyproject.toml'


def get_version() -> str:
    try:
        with open(PYPROJECT, 'r') as f:
            pyproject_data = toml.load(f)
        return pyproject_data['tool']['poetry']['version']
    except FileNotFoundError:
        return metadata.version('weightsys')
