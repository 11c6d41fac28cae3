"""
Configuration module for the MFH fronthaul compression toolkit
Loads environment variables (optionally from a .env file) and validates them
"""
import os
import tempfile
from pathlib import Path
from dotenv import load_dotenv

from errors import ConfigurationError

# Get project root directory (parent of src/)
PROJECT_ROOT = Path(__file__).parent.parent

# Load environment variables from .env file (if exists - local dev only)
env_file = PROJECT_ROOT / '.env'
if env_file.exists():
    load_dotenv(env_file)

# ═══════════════════════════════════════════════════════════════════
# WRITABLE PATHS
# ═══════════════════════════════════════════════════════════════════

def get_writable_path(folder: str) -> str:
    """
    Resolve a writable directory, creating it when missing.

    Relative paths are anchored at the project root; if that location is
    read-only the folder is created under the system temp directory instead.
    """
    path = Path(folder)
    if not path.is_absolute():
        path = PROJECT_ROOT / folder

    try:
        path.mkdir(parents=True, exist_ok=True)
    except (PermissionError, OSError):
        path = Path(tempfile.gettempdir()) / 'mfh_toolkit' / Path(folder).name
        path.mkdir(parents=True, exist_ok=True)

    return str(path)


def _optional_float(name: str):
    raw = os.getenv(name)
    if raw is None or raw.strip() == '':
        return None
    return float(raw)

# ═══════════════════════════════════════════════════════════════════
# CONFIGURATION VALUES
# ═══════════════════════════════════════════════════════════════════

# Monitoring Configuration
LOG_LEVEL = os.getenv('MFH_LOG_LEVEL', 'INFO')
LOG_DIR = os.getenv('MFH_LOG_DIR', 'logs')
LOG_FILE_MAX_MB = int(os.getenv('MFH_LOG_FILE_MAX_MB', '10'))
LOG_FILE_BACKUP_COUNT = int(os.getenv('MFH_LOG_FILE_BACKUP_COUNT', '5'))
LOG_TO_CONSOLE = os.getenv('MFH_LOG_TO_CONSOLE', 'true').lower() == 'true'

# Output / reproducibility
OUTPUT_DIR = os.getenv('MFH_OUTPUT_DIR', 'output')
DEFAULT_SEED = int(os.getenv('MFH_SEED', '2020'))
SWEEP_MAX_WORKERS = int(os.getenv('MFH_SWEEP_MAX_WORKERS', '1'))

# 100 MHz 5G NR carrier (60 kHz SCS, 135 RBs, 2048-point FFT at 122.88 MSa/s)
OFDM_FFT_SIZE = int(os.getenv('MFH_OFDM_FFT_SIZE', '2048'))
OFDM_SAMPLE_RATE = float(os.getenv('MFH_OFDM_SAMPLE_RATE', '122.88e6'))
OFDM_OCCUPIED_SUBCARRIERS = int(os.getenv('MFH_OFDM_OCCUPIED_SUBCARRIERS', '1620'))
OFDM_CYCLIC_PREFIX_LEN = int(os.getenv('MFH_OFDM_CYCLIC_PREFIX_LEN', '144'))
OFDM_NUM_SYMBOLS = int(os.getenv('MFH_OFDM_NUM_SYMBOLS', '100'))
OFDM_QAM_ORDER = int(os.getenv('MFH_OFDM_QAM_ORDER', '16'))

# Sample budget: generated signals must carry at least this many I/Q samples
MIN_SAMPLE_BUDGET = int(os.getenv('MFH_MIN_SAMPLE_BUDGET', '200000'))

SUPPORTED_QAM_ORDERS = (4, 16, 64, 256, 1024, 4096)

# Quantizer defaults
QB_MIN = 1
QB_MAX = 16
SWEEP_QB_MIN = 2
CLIP_SIGMA = float(os.getenv('MFH_CLIP_SIGMA', '4.0'))
DPCM_PREDICTOR_ORDER = int(os.getenv('MFH_DPCM_PREDICTOR_ORDER', '4'))
DPCM_ADAPTATION_STEP = float(os.getenv('MFH_DPCM_ADAPTATION_STEP', '0.01'))

# Entropy coding
# Arithmetic-coder blocks end before the interval width drops below 2^-AC_BLOCK_BITS
AC_BLOCK_BITS = int(os.getenv('MFH_AC_BLOCK_BITS', '8192'))
BENCH_RUNS = int(os.getenv('MFH_BENCH_RUNS', '5'))

# EVM limits in percent (3GPP TS 36.104 transmitter limits)
EVM_THRESHOLDS = {
    4: 17.5,
    16: 12.5,
    64: 8.0,
    256: 3.5,
}

# 1024/4096-QAM have no standard limit; only user-supplied values are used
EVM_THRESHOLD_OVERRIDES = {
    order: value
    for order, value in (
        (1024, _optional_float('MFH_EVM_THRESHOLD_1024')),
        (4096, _optional_float('MFH_EVM_THRESHOLD_4096')),
    )
    if value is not None
}

# Link budget (28 GBd 16-QAM per core, 6 cores, 2x2 MIMO)
BUDGET_SYMBOL_RATE = float(os.getenv('MFH_BUDGET_SYMBOL_RATE', '28e9'))
BUDGET_BITS_PER_SYMBOL = int(os.getenv('MFH_BUDGET_BITS_PER_SYMBOL', '4'))
BUDGET_CORE_COUNT = int(os.getenv('MFH_BUDGET_CORE_COUNT', '6'))
BUDGET_FS_GSPS = float(os.getenv('MFH_BUDGET_FS_GSPS', '0.12288'))
BUDGET_FEC_OVERHEAD = float(os.getenv('MFH_BUDGET_FEC_OVERHEAD', '0.0'))

# ═══════════════════════════════════════════════════════════════════
# OUTPUT COLUMN REGISTRIES
# ═══════════════════════════════════════════════════════════════════

SWEEP_COLUMNS = [
    'qam_order',
    'scheme',
    'qb',
    'effective_qb',
    'evm_percent',
    'passes_threshold',
    'channels',
    'rate_tbps',
    'error',
]

TABLE1_COLUMNS = [
    'qam_order',
    'scheme',
    'effective_qb',
    'channels',
    'rate_tbps',
]

HISTOGRAM_COLUMNS = [
    'codeword',
    'count',
    'probability',
]

EVM_COLUMNS = [
    'symbol_index',
    'evm_percent',
]

BENCH_COLUMNS = [
    'coder',
    'median_seconds',
    'seconds_per_symbol',
    'symbols_per_second',
    'payload_bits',
]

# Figure-analog output file names
SWEEP_CSV_NAME = 'fig4a.csv'
SWEEP_JSON_NAME = 'sweep.json'
TABLE1_CSV_NAME = 'table1.csv'
TABLE1_JSON_NAME = 'table1.json'
PCM_HISTOGRAM_CSV_NAME = 'fig3b.csv'
DPCM_HISTOGRAM_CSV_NAME = 'fig3c.csv'


def validate_config():
    """
    Validate environment-supplied settings

    Raises:
        ConfigurationError: listing every invalid setting
    """
    errors = []

    if LOG_LEVEL.upper() not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
        errors.append(f"MFH_LOG_LEVEL must be a logging level name, got '{LOG_LEVEL}'")

    if OFDM_QAM_ORDER not in SUPPORTED_QAM_ORDERS:
        errors.append(f"MFH_OFDM_QAM_ORDER must be one of {SUPPORTED_QAM_ORDERS}")

    if not 0 < OFDM_OCCUPIED_SUBCARRIERS < OFDM_FFT_SIZE:
        errors.append("MFH_OFDM_OCCUPIED_SUBCARRIERS must be in (0, fft_size)")

    if CLIP_SIGMA <= 0:
        errors.append("MFH_CLIP_SIGMA must be positive")

    if DPCM_PREDICTOR_ORDER < 1:
        errors.append("MFH_DPCM_PREDICTOR_ORDER must be at least 1")

    if not 0 < DPCM_ADAPTATION_STEP < 2:
        errors.append("MFH_DPCM_ADAPTATION_STEP must be in (0, 2)")

    if AC_BLOCK_BITS < 1:
        errors.append("MFH_AC_BLOCK_BITS must be positive")

    if BENCH_RUNS < 5:
        errors.append("MFH_BENCH_RUNS must be at least 5")

    if not 0 <= BUDGET_FEC_OVERHEAD < 1:
        errors.append("MFH_BUDGET_FEC_OVERHEAD must be in [0, 1)")

    for order, value in EVM_THRESHOLD_OVERRIDES.items():
        if value <= 0:
            errors.append(f"MFH_EVM_THRESHOLD_{order} must be positive")

    if errors:
        raise ConfigurationError(
            "Configuration errors:\n" + "\n".join(f"  - {e}" for e in errors)
        )

    return True
