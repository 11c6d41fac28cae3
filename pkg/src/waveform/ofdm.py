"""
CP-OFDM modulator and demodulator for the 100 MHz NR carrier
"""
import numpy as np

from errors import FramingError
from waveform.models import OfdmConfig, OfdmSignal
from waveform.qam import bits_to_symbols, qam_map


def generate_ofdm(ofdm_config: OfdmConfig) -> OfdmSignal:
    """
    Build a deterministic OFDM baseband signal.

    Random payload bits (seeded) are Gray-mapped onto QAM points, placed on
    the occupied subcarriers around a nulled DC bin, converted with an
    orthonormal IFFT and prefixed with a cyclic prefix.

    Raises:
        ConfigurationError: invalid numerology or QAM order
    """
    ofdm_config.check()

    rng = np.random.default_rng(ofdm_config.rng_seed)
    k = ofdm_config.bits_per_symbol
    bits = rng.integers(
        0, 2,
        size=(ofdm_config.num_symbols, ofdm_config.occupied_subcarriers, k),
        dtype=np.uint8,
    )
    grid = qam_map(bits_to_symbols(bits, k), ofdm_config.qam_order)

    spectrum = np.zeros((ofdm_config.num_symbols, ofdm_config.fft_size), dtype=np.complex128)
    spectrum[:, ofdm_config.subcarrier_bins] = grid

    body = np.fft.ifft(spectrum, axis=1, norm="ortho") * ofdm_config.power_scale
    cp = ofdm_config.cyclic_prefix_len
    if cp:
        body = np.concatenate([body[:, -cp:], body], axis=1)

    samples = body.reshape(-1)
    samples.setflags(write=False)
    grid.setflags(write=False)
    return OfdmSignal(samples=samples, reference_grid=grid, config=ofdm_config)


def demodulate(samples: np.ndarray, ofdm_config: OfdmConfig) -> np.ndarray:
    """
    Recover the subcarrier grid (num_symbols x occupied_subcarriers).

    Raises:
        FramingError: sample count differs from num_symbols * (fft_size + cp)
    """
    ofdm_config.check()
    samples = np.asarray(samples, dtype=np.complex128)
    if samples.ndim != 1 or samples.size != ofdm_config.sample_count:
        raise FramingError(
            f"Expected {ofdm_config.sample_count} samples "
            f"({ofdm_config.num_symbols} symbols x {ofdm_config.symbol_length}), got {samples.size}"
        )

    frames = samples.reshape(ofdm_config.num_symbols, ofdm_config.symbol_length)
    frames = frames[:, ofdm_config.cyclic_prefix_len:]
    spectrum = np.fft.fft(frames, axis=1, norm="ortho") / ofdm_config.power_scale
    return spectrum[:, ofdm_config.subcarrier_bins]
