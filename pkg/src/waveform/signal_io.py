"""
Signal export: little-endian float64 interleaved I/Q plus a JSON sidecar
"""
from pathlib import Path
from typing import Tuple

import numpy as np

from errors import FramingError
from waveform.models import OfdmConfig, OfdmSignal

SAMPLES_SUFFIX = '.iq'
SIDECAR_SUFFIX = '.json'


def signal_paths(stem) -> Tuple[Path, Path]:
    stem = Path(stem)
    return stem.with_name(stem.name + SAMPLES_SUFFIX), stem.with_name(stem.name + SIDECAR_SUFFIX)


def write_signal(stem, signal: OfdmSignal) -> Tuple[Path, Path]:
    """Write <stem>.iq and <stem>.json, returning both paths"""
    samples_path, sidecar_path = signal_paths(stem)
    samples_path.parent.mkdir(parents=True, exist_ok=True)

    np.asarray(signal.samples, dtype='<c16').tofile(samples_path)
    sidecar_path.write_text(signal.config.model_dump_json(indent=2), encoding='utf-8')

    print(f"[SIGNAL] Wrote {signal.samples.size} samples to {samples_path}")
    return samples_path, sidecar_path


def read_signal(stem) -> Tuple[np.ndarray, OfdmConfig]:
    """
    Read samples and their OfdmConfig.

    Raises:
        FramingError: sample file length disagrees with the sidecar
    """
    samples_path, sidecar_path = signal_paths(stem)
    ofdm_config = OfdmConfig.model_validate_json(sidecar_path.read_text(encoding='utf-8'))

    raw = np.fromfile(samples_path, dtype='<f8')
    if raw.size % 2:
        raise FramingError(f"{samples_path} holds an odd number of float64 values")
    samples = raw.view('<c16').astype(np.complex128)

    if samples.size != ofdm_config.sample_count:
        raise FramingError(
            f"{samples_path} holds {samples.size} samples, sidecar expects {ofdm_config.sample_count}"
        )
    return samples, ofdm_config
