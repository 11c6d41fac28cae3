"""
Coded bitstream record and MFHC file format

Header (big-endian): magic "MFHC", version u8, coder u8 (1=HC, 2=AC),
original_qb u8, original_count u64, model_entry_count u32, then entries
(codeword u32, count u64). Arithmetic-coded files add block_count u32 and
(symbol_count u32, bit_length u32) pairs. The payload bits follow,
MSB-first and zero-padded to a byte boundary.
"""
import struct
from enum import Enum
from pathlib import Path
from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

import config
from entropy.model import ProbabilityModel
from errors import MetadataError, TruncatedPayloadError

MAGIC = b'MFHC'
VERSION = 1
_HEADER = struct.Struct('>4sBBBQI')
_ENTRY = np.dtype([('codeword', '>u4'), ('count', '>u8')])
_BLOCK = np.dtype([('symbols', '>u4'), ('bits', '>u4')])
_COUNT = struct.Struct('>I')


class Coder(str, Enum):
    NONE = "NONE"
    HUFFMAN = "HC"
    ARITHMETIC = "AC"


_CODER_CODES = {Coder.HUFFMAN: 1, Coder.ARITHMETIC: 2}


class CodedBitstream(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coder: Coder
    model: ProbabilityModel
    original_qb: int
    original_count: int
    payload: bytes
    payload_bits: int
    blocks: List[Tuple[int, int]] = Field(default_factory=list)


def header_bytes(bitstream: CodedBitstream) -> bytes:
    if bitstream.coder not in _CODER_CODES:
        raise MetadataError(f"Coder {bitstream.coder.value} has no bitstream format")
    model = bitstream.model
    entries = np.empty(len(model), dtype=_ENTRY)
    entries['codeword'] = model.codewords
    entries['count'] = model.counts

    parts = [
        _HEADER.pack(
            MAGIC, VERSION, _CODER_CODES[bitstream.coder],
            bitstream.original_qb, bitstream.original_count, len(model),
        ),
        entries.tobytes(),
    ]
    if bitstream.coder == Coder.ARITHMETIC:
        blocks = np.array(bitstream.blocks, dtype=np.int64).reshape(-1, 2)
        table = np.empty(len(blocks), dtype=_BLOCK)
        table['symbols'] = blocks[:, 0]
        table['bits'] = blocks[:, 1]
        parts.append(_COUNT.pack(len(blocks)))
        parts.append(table.tobytes())
    return b''.join(parts)


def effective_qbs(bitstream: CodedBitstream, include_header: bool = False) -> float:
    """
    Average coded bits per original codeword.

    The model and block table are excluded unless include_header is set.
    """
    if bitstream.original_count == 0:
        return 0.0
    bits = bitstream.payload_bits
    if include_header:
        bits += 8 * len(header_bytes(bitstream))
    return bits / bitstream.original_count


def encode_coded_bitstream(bitstream: CodedBitstream) -> bytes:
    return header_bytes(bitstream) + bitstream.payload


def decode_coded_bitstream(data: bytes) -> CodedBitstream:
    """
    Raises:
        MetadataError: bad magic, version, coder code or original_qb, or a
            model entry outside the codeword alphabet
        TruncatedPayloadError: data ends inside the header or payload

    Huffman files carry no exact bit count, so payload_bits is the padded
    length; the decoder accepts up to 7 zero padding bits.
    """
    if len(data) < _HEADER.size:
        raise TruncatedPayloadError("File shorter than the MFHC header")
    magic, version, coder_code, qb, count, entry_count = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise MetadataError(f"Bad magic {magic!r}")
    if version != VERSION:
        raise MetadataError(f"Unsupported MFHC version {version}")
    coders = {code: coder for coder, code in _CODER_CODES.items()}
    if coder_code not in coders:
        raise MetadataError(f"Unknown coder code {coder_code}")
    coder = coders[coder_code]
    if not config.QB_MIN <= qb <= config.QB_MAX:
        raise MetadataError(f"original_qb {qb} outside [{config.QB_MIN}, {config.QB_MAX}]")

    offset = _HEADER.size
    entries_end = offset + entry_count * _ENTRY.itemsize
    if len(data) < entries_end:
        raise TruncatedPayloadError("File ends inside the model table")
    entries = np.frombuffer(data, dtype=_ENTRY, count=entry_count, offset=offset)
    offset = entries_end

    try:
        model = ProbabilityModel.from_counts(
            dict(zip(entries['codeword'].astype(np.int64).tolist(), entries['count'].astype(np.int64).tolist())),
            alphabet_bits=qb,
        )
    except ValidationError as e:
        raise MetadataError(f"Invalid model table: {e.errors()[0]['msg']}") from e
    if len(model) != entry_count:
        raise MetadataError("Model table holds duplicate or zero-count entries")

    blocks = []
    if coder == Coder.ARITHMETIC:
        if len(data) < offset + _COUNT.size:
            raise TruncatedPayloadError("File ends before the block table")
        (block_count,) = _COUNT.unpack_from(data, offset)
        offset += _COUNT.size
        table_end = offset + block_count * _BLOCK.itemsize
        if len(data) < table_end:
            raise TruncatedPayloadError("File ends inside the block table")
        table = np.frombuffer(data, dtype=_BLOCK, count=block_count, offset=offset)
        blocks = [(int(s), int(b)) for s, b in zip(table['symbols'].tolist(), table['bits'].tolist())]
        offset = table_end

    payload = data[offset:]
    if coder == Coder.ARITHMETIC:
        payload_bits = sum(bits for _, bits in blocks)
    else:
        payload_bits = 8 * len(payload)

    return CodedBitstream(
        coder=coder,
        model=model,
        original_qb=qb,
        original_count=count,
        payload=payload,
        payload_bits=payload_bits,
        blocks=blocks,
    )


def write_coded_bitstream(path, bitstream: CodedBitstream) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_coded_bitstream(bitstream))
    return path


def read_coded_bitstream(path) -> CodedBitstream:
    return decode_coded_bitstream(Path(path).read_bytes())
