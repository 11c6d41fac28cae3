"""
MFHQ codeword stream files

Header (big-endian): magic "MFHQ", version u8, mode u8, qb u8, channel u8,
full_scale f64, predictor_order u8, adaptation_step f64, sample_count u64.
Codewords follow, qb bits each, MSB-first, zero-padded to a byte boundary.
"""
import struct
from pathlib import Path

import numpy as np

import config
from errors import MetadataError, TruncatedPayloadError
from quantization.models import ChannelTag, CodewordStream, QuantizerConfig, QuantizerMode

MAGIC = b'MFHQ'
VERSION = 1
_HEADER = struct.Struct('>4sBBBBdBdQ')

_MODE_CODES = {QuantizerMode.PCM: 1, QuantizerMode.DPCM: 2}
_CHANNEL_CODES = {ChannelTag.I: 0, ChannelTag.Q: 1}


def pack_codewords(codewords: np.ndarray, qb: int) -> bytes:
    """Pack codewords at qb bits each, MSB-first"""
    codewords = np.asarray(codewords, dtype=np.uint32)
    shifts = np.arange(qb - 1, -1, -1, dtype=np.uint32)
    bits = ((codewords[:, None] >> shifts) & 1).astype(np.uint8)
    return np.packbits(bits.reshape(-1)).tobytes()


def unpack_codewords(payload: bytes, qb: int, count: int) -> np.ndarray:
    """
    Raises:
        TruncatedPayloadError: fewer than count * qb bits available
    """
    needed = count * qb
    if len(payload) * 8 < needed:
        raise TruncatedPayloadError(f"Payload holds {len(payload) * 8} bits, need {needed}")
    bits = np.unpackbits(np.frombuffer(payload, dtype=np.uint8), count=needed)
    weights = (1 << np.arange(qb - 1, -1, -1)).astype(np.uint32)
    return (bits.reshape(count, qb).astype(np.uint32) @ weights).astype(np.uint32)


def encode_codeword_stream(stream: CodewordStream) -> bytes:
    quantizer_config = stream.config
    if quantizer_config is None:
        raise MetadataError("Stream carries no quantizer metadata")
    dpcm = quantizer_config.mode == QuantizerMode.DPCM
    header = _HEADER.pack(
        MAGIC,
        VERSION,
        _MODE_CODES[quantizer_config.mode],
        stream.qb,
        _CHANNEL_CODES[stream.channel_tag],
        stream.full_scale,
        quantizer_config.predictor_order if dpcm else 0,
        quantizer_config.adaptation_step if dpcm else 0.0,
        stream.sample_count,
    )
    return header + pack_codewords(stream.codewords, stream.qb)


def decode_codeword_stream(data: bytes) -> CodewordStream:
    """
    Raises:
        MetadataError: bad magic/version/mode, qb outside [QB_MIN, QB_MAX],
            or DPCM fields on a PCM header (and the reverse)
        TruncatedPayloadError: payload shorter than the header promises
    """
    if len(data) < _HEADER.size:
        raise TruncatedPayloadError("File shorter than the MFHQ header")
    magic, version, mode_code, qb, channel_code, full_scale, order, step, count = (
        _HEADER.unpack_from(data)
    )
    if magic != MAGIC:
        raise MetadataError(f"Bad magic {magic!r}")
    if version != VERSION:
        raise MetadataError(f"Unsupported MFHQ version {version}")
    if not config.QB_MIN <= qb <= config.QB_MAX:
        raise MetadataError(f"qb {qb} outside [{config.QB_MIN}, {config.QB_MAX}]")

    modes = {code: mode for mode, code in _MODE_CODES.items()}
    channels = {code: tag for tag, code in _CHANNEL_CODES.items()}
    if mode_code not in modes or channel_code not in channels:
        raise MetadataError(f"Unknown mode {mode_code} or channel {channel_code}")

    mode = modes[mode_code]
    if mode == QuantizerMode.PCM and (order or step):
        raise MetadataError("PCM header carries predictor fields")
    if mode == QuantizerMode.DPCM and (order == 0 or step <= 0):
        raise MetadataError("DPCM header lacks predictor_order or adaptation_step")

    if mode == QuantizerMode.PCM:
        quantizer_config = QuantizerConfig.pcm(qb)
    else:
        quantizer_config = QuantizerConfig.dpcm(qb, predictor_order=order, adaptation_step=step)

    codewords = unpack_codewords(data[_HEADER.size:], qb, count)
    return CodewordStream(
        codewords=codewords,
        qb=qb,
        config=quantizer_config,
        full_scale=full_scale,
        sample_count=count,
        channel_tag=channels[channel_code],
    )


def write_codeword_stream(path, stream: CodewordStream) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_codeword_stream(stream))
    return path


def read_codeword_stream(path) -> CodewordStream:
    return decode_codeword_stream(Path(path).read_bytes())
