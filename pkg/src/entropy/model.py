"""
Static probability model over a codeword alphabet

Entries are ordered by descending probability, ties by ascending codeword.
That order fixes the arithmetic-coder subintervals and the Huffman tie
breaks, so encoder and decoder derive identical tables from the counts.
"""
from functools import cached_property
from typing import Dict, List, Mapping, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from errors import ConfigurationError


class ProbabilityModel(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    alphabet_bits: int
    codewords: np.ndarray
    counts: np.ndarray

    @model_validator(mode="after")
    def _check_entries(self):
        if self.codewords.shape != self.counts.shape or self.codewords.ndim != 1:
            raise ValueError("codewords and counts must be 1-D arrays of equal length")
        if self.counts.size and int(self.counts.min()) <= 0:
            raise ValueError("model entries must have positive counts")
        if self.codewords.size and int(self.codewords.max()) >= (1 << self.alphabet_bits):
            raise ValueError("codeword outside the alphabet")
        order = np.lexsort((self.codewords, -self.counts))
        if not np.array_equal(order, np.arange(self.codewords.size)):
            raise ValueError("entries must be sorted by descending count, then ascending codeword")
        return self

    @classmethod
    def from_counts(cls, counts, alphabet_bits: int) -> "ProbabilityModel":
        """
        Build from a codeword->count mapping or a dense count array
        (index = codeword). Zero counts are dropped.
        """
        if not 1 <= alphabet_bits <= 32:
            raise ConfigurationError(f"alphabet_bits must be in [1, 32], got {alphabet_bits}")
        if isinstance(counts, Mapping):
            codewords = np.fromiter(counts.keys(), dtype=np.int64, count=len(counts))
            values = np.fromiter(counts.values(), dtype=np.int64, count=len(counts))
        else:
            values = np.asarray(counts, dtype=np.int64)
            codewords = np.arange(values.size, dtype=np.int64)
        if values.size and int(values.min()) < 0:
            raise ConfigurationError("counts must be non-negative")

        keep = values > 0
        codewords, values = codewords[keep], values[keep]
        order = np.lexsort((codewords, -values))
        return cls(
            alphabet_bits=alphabet_bits,
            codewords=codewords[order],
            counts=values[order],
        )

    @classmethod
    def empty(cls, alphabet_bits: int) -> "ProbabilityModel":
        """Model of an empty stream"""
        return cls(
            alphabet_bits=alphabet_bits,
            codewords=np.empty(0, dtype=np.int64),
            counts=np.empty(0, dtype=np.int64),
        )

    @cached_property
    def total_count(self) -> int:
        return int(self.counts.sum())

    @cached_property
    def probabilities(self) -> np.ndarray:
        if not self.total_count:
            return np.empty(0)
        return self.counts / self.total_count

    @cached_property
    def count_list(self) -> List[int]:
        return [int(c) for c in self.counts.tolist()]

    @cached_property
    def codeword_list(self) -> List[int]:
        return [int(c) for c in self.codewords.tolist()]

    @cached_property
    def cumulative_counts(self) -> List[int]:
        """Exact cumulative counts; entry i is the lower edge of entry i"""
        cumulative = [0]
        for count in self.count_list:
            cumulative.append(cumulative[-1] + count)
        return cumulative

    @cached_property
    def index_of(self) -> Dict[int, int]:
        return {codeword: i for i, codeword in enumerate(self.codeword_list)}

    @property
    def entries(self) -> List[Tuple[int, int, float]]:
        """(codeword, count, probability) in model order"""
        return list(zip(self.codeword_list, self.count_list, self.probabilities.tolist()))

    def __len__(self) -> int:
        return int(self.codewords.size)

    def entropy(self) -> float:
        """Shannon entropy in bits per codeword"""
        p = self.probabilities
        if p.size == 0:
            return 0.0
        return float(-(p * np.log2(p)).sum())


def entropy(model: ProbabilityModel) -> float:
    return model.entropy()
