# Finite witnesses for groups arising in dynamics
import os
from functools import partial
from tqdm import tqdm as _tqdm


__version__ = "2026.10.19"

FORGE_ROOT = os.path.dirname(os.path.abspath(__file__))
FORGE_TEST_FILES = os.path.join(FORGE_ROOT, "tests", "test_files")
FORGE_DATA = os.path.join(FORGE_ROOT, "data")

# Environment-based settings
TQDM_OFF = os.environ.get("TQDM_OFF", None)
FORGE_BUDGET_SCALE = os.environ.get("FORGE_BUDGET_SCALE", None)
FORGE_LONG_TESTS = os.environ.get("FORGE_LONG_TESTS", False)

if TQDM_OFF:
    tqdm = partial(_tqdm, disable=TQDM_OFF)
else:
    tqdm = _tqdm
