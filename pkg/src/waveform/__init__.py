"""
5G NR OFDM waveform generation, demodulation and EVM
"""
from waveform.models import OfdmConfig, OfdmSignal, EvmReport
from waveform.qam import qam_constellation, qam_map, qam_demap
from waveform.ofdm import generate_ofdm, demodulate
from waveform.evm import compute_evm, evm_threshold, symbol_error_rate
from waveform.signal_io import write_signal, read_signal

__all__ = [
    'OfdmConfig',
    'OfdmSignal',
    'EvmReport',
    'qam_constellation',
    'qam_map',
    'qam_demap',
    'generate_ofdm',
    'demodulate',
    'compute_evm',
    'evm_threshold',
    'symbol_error_rate',
    'write_signal',
    'read_signal',
]
