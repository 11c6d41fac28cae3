"""
Exception hierarchy for the MFH toolkit

Every error raised by the toolkit derives from MFHError so callers (the CLI
in particular) can map failures to exit codes.
"""


class MFHError(Exception):
    """Base class for toolkit errors"""


class ConfigurationError(MFHError, ValueError):
    """Invalid or missing configuration value"""


class ThresholdUnsetError(ConfigurationError):
    """EVM threshold requested for a QAM order with no configured limit"""

    def __init__(self, qam_order: int):
        self.qam_order = qam_order
        super().__init__(
            f"No EVM threshold configured for {qam_order}-QAM; "
            f"set MFH_EVM_THRESHOLD_{qam_order} or evm_thresholds in the run config"
        )


class FramingError(MFHError):
    """Sample count inconsistent with the OFDM framing"""


class EvmInputError(MFHError):
    """Grids of mismatched shape or a zero-power reference"""


class QuantizerInputError(MFHError):
    """Empty or zero-RMS quantizer input"""


class CorruptStreamError(MFHError):
    """Codeword or coded payload that cannot be valid"""


class MetadataError(MFHError):
    """Stream metadata missing or inconsistent with its payload"""


class UnseenSymbolError(MFHError):
    """Codeword absent from the probability model"""

    def __init__(self, codeword: int):
        self.codeword = codeword
        super().__init__(f"Codeword {codeword} is not in the probability model")


class TruncatedPayloadError(CorruptStreamError):
    """Payload shorter than its header promises"""


class CorruptBlockError(CorruptStreamError):
    """Arithmetic-coded block whose bits do not decode consistently"""


class StageError(MFHError):
    """Pipeline stage failure, tagged with the stage name"""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"Stage '{stage}' failed: {type(cause).__name__}: {cause}")


class RoundtripMismatchError(MFHError):
    """Entropy decode did not reproduce the quantizer output"""
