"""
Application settings and configuration
"""
import os

from dotenv import load_dotenv

env_path = os.path.join(os.path.dirname(__file__), '.env')
if os.path.exists(env_path):
    load_dotenv(env_path)

# Logging
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_DIR = os.getenv("LOG_DIR", "")  # empty: console only

# Construction limits
MAX_TOP_FACES = int(os.getenv("MAX_TOP_FACES", "10000000"))
RANDOM_REGULAR_RETRIES = int(os.getenv("RANDOM_REGULAR_RETRIES", "1000"))
DEFAULT_SEED = int(os.getenv("DEFAULT_SEED", "7"))

# Numerical tolerances
MAX_EIGEN_SIZE = int(os.getenv("MAX_EIGEN_SIZE", "20000"))
EIGEN_TOLERANCE = float(os.getenv("EIGEN_TOLERANCE", "1e-9"))
SYMMETRY_TOLERANCE = float(os.getenv("SYMMETRY_TOLERANCE", "1e-10"))
SPECTRA_MATCH_TOLERANCE = float(os.getenv("SPECTRA_MATCH_TOLERANCE", "1e-8"))
NONZERO_CUTOFF = float(os.getenv("NONZERO_CUTOFF", "1e-8"))
TV_SLACK = float(os.getenv("TV_SLACK", "1e-12"))

# Link sweep
SWEEP_WORKERS = int(os.getenv("SWEEP_WORKERS", "4"))

# Mixing traces
MIX_THRESHOLD = float(os.getenv("MIX_THRESHOLD", "0.01"))
MAX_MIX_STEPS = int(os.getenv("MAX_MIX_STEPS", "20000"))

# Report output
FLOAT_DIGITS = int(os.getenv("FLOAT_DIGITS", "17"))
REPORT_FORMAT_VERSION = "hdx-report/1"
COMPLEX_FORMAT_VERSION = "hdx-complex/1"

# Supported graph generators (CLI spelling -> generator kind)
GRAPH_KINDS = {
    "cycle": "cycle",
    "complete": "complete",
    "random-regular": "random_regular",
}

# Supported complex constructions
COMPLEX_KINDS = ["Z", "Q"]

# Walk operators
WALK_KINDS = ["up", "down", "updown", "downup"]
