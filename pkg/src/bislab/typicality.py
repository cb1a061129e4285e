"""Strong typicality tests for sequences and tuples of sequences.

A length-n sequence is strongly typical for a pmf when every symbol's
empirical frequency is within delta of its probability and no zero-probability
symbol occurs.  Tuples are tested as one sequence over the product alphabet
against a joint pmf, which is strictly stronger than testing each marginal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ContractViolation
from .probability import FiniteDistribution, JointDistribution


@dataclass(frozen=True)
class TypicalityParams:
    """Per-symbol slack delta for the empirical-frequency test."""

    delta: float

    def __post_init__(self):
        if not self.delta > 0.0:
            raise ContractViolation("delta must be positive")


@dataclass(frozen=True)
class SymbolSequence:
    """A sequence of symbol indices over a finite alphabet."""

    alphabet_size: int
    symbols: np.ndarray

    def __post_init__(self):
        sym = np.asarray(self.symbols, dtype=np.int64).ravel().copy()
        sym.flags.writeable = False
        object.__setattr__(self, "symbols", sym)
        if self.alphabet_size <= 0:
            raise ContractViolation("alphabet_size must be positive")
        if sym.size and (sym.min() < 0 or sym.max() >= self.alphabet_size):
            raise ContractViolation("symbol index out of range")

    def __len__(self) -> int:
        return int(self.symbols.size)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SymbolSequence)
            and self.alphabet_size == other.alphabet_size
            and np.array_equal(self.symbols, other.symbols)
        )


def empirical_counts(seq: SymbolSequence) -> np.ndarray:
    """Occurrence count of each symbol; entries sum to len(seq)."""
    if len(seq) == 0:
        raise ContractViolation("empirical_counts of an empty sequence")
    return np.bincount(seq.symbols, minlength=seq.alphabet_size)


def _frequencies_typical(counts: np.ndarray, n: int, probs: np.ndarray, delta: float) -> bool:
    freq = counts / n
    if np.any(np.abs(freq - probs) > delta):
        return False
    # zero-probability symbols must not occur at all
    return not np.any((probs == 0.0) & (counts > 0))


def is_strongly_typical(
    seq: SymbolSequence, dist: FiniteDistribution, params: TypicalityParams
) -> bool:
    if seq.alphabet_size != dist.alphabet_size:
        raise ContractViolation("sequence and distribution alphabets differ")
    counts = empirical_counts(seq)
    return _frequencies_typical(counts, len(seq), dist.probs, params.delta)


def flatten_tuple(seqs: Sequence[SymbolSequence], axis_sizes: Sequence[int]) -> np.ndarray:
    """Map a tuple of aligned sequences to one sequence over the product alphabet.

    Cell indices follow C order of axis_sizes, matching JointDistribution.mass.ravel().
    """
    if len(seqs) != len(axis_sizes):
        raise ContractViolation("number of sequences must match joint dimensionality")
    n = len(seqs[0])
    flat = np.zeros(n, dtype=np.int64)
    for seq, size in zip(seqs, axis_sizes):
        if seq.alphabet_size != size:
            raise ContractViolation("sequence alphabet does not match joint axis")
        if len(seq) != n:
            raise ContractViolation("sequences must share one length")
        flat = flat * size + seq.symbols
    return flat


def is_jointly_typical(
    seqs: Sequence[SymbolSequence], joint: JointDistribution, params: TypicalityParams
) -> bool:
    """Strong typicality of an aligned tuple against a joint pmf."""
    flat = flatten_tuple(seqs, joint.axis_sizes)
    n = flat.size
    if n == 0:
        raise ContractViolation("cannot test empty sequences")
    counts = np.bincount(flat, minlength=int(np.prod(joint.axis_sizes)))
    return _frequencies_typical(counts, n, joint.mass.ravel(), params.delta)


def default_delta(joint: JointDistribution) -> float:
    """Default simulation slack: a tenth of the smallest nonzero joint mass.

    Keeps the zero-probability clause meaningful at tiny block lengths.
    """
    flat = joint.mass.ravel()
    nz = flat[flat > 0.0]
    return 0.1 * float(nz.min())
