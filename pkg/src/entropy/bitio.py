"""
MSB-first bit packing for entropy-coded payloads
"""
from typing import List, Tuple

import numpy as np


class BitWriter:
    """Collects bit strings and packs them into zero-padded bytes"""

    def __init__(self):
        self._chunks: List[str] = []
        self.bit_count = 0

    def write_bits(self, bits: str):
        self._chunks.append(bits)
        self.bit_count += len(bits)

    def write(self, value: int, width: int):
        if width:
            self.write_bits(format(value, f'0{width}b'))

    def getvalue(self) -> Tuple[bytes, int]:
        """(packed bytes, exact bit count)"""
        return pack_bit_string(''.join(self._chunks)), self.bit_count


def pack_bit_string(bits: str) -> bytes:
    if not bits:
        return b''
    array = np.frombuffer(bits.encode('ascii'), dtype=np.uint8) - ord('0')
    return np.packbits(array).tobytes()


def unpack_bits(payload: bytes, bit_count: int = None) -> np.ndarray:
    """Bits of payload as a uint8 array (first bit_count bits if given)"""
    bits = np.unpackbits(np.frombuffer(payload, dtype=np.uint8))
    if bit_count is not None:
        bits = bits[:bit_count]
    return bits


class BitReader:
    """Sequential reader over a packed payload, held as a '0'/'1' string"""

    def __init__(self, payload: bytes, bit_count: int = None):
        bits = unpack_bits(payload, bit_count)
        self.text = (bits + ord('0')).tobytes().decode('ascii')
        self.position = 0

    @property
    def remaining(self) -> int:
        return len(self.text) - self.position

    def read_bits(self, width: int) -> str:
        """
        Raises:
            EOFError: fewer than width bits left
        """
        if width > self.remaining:
            raise EOFError(f"Requested {width} bits, {self.remaining} left")
        bits = self.text[self.position:self.position + width]
        self.position += width
        return bits

    def read(self, width: int) -> int:
        bits = self.read_bits(width)
        return int(bits, 2) if bits else 0
