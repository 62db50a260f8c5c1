"""Text model shared by every stage of the compressor.

Input bytes are shifted up by one so symbol 0 is free to act as the
terminator: the internal alphabet is {1..256} plus a single trailing 0
that is strictly smaller than everything else.  Reduced strings produced
by deeper levels keep the same shape, except there the terminator is the
name 1 (the factor covering the terminator is always the smallest rule,
occurs once, and sits last).  All positions in this module are 0-based.
"""

from __future__ import annotations

import numpy as np

from . import _kernels

SENTINEL = 0

# types[] values
L_TYPE = 0
S_TYPE = 1


def index_dtype(n: int):
    """Position dtype: 32-bit indices below 2**31, 64-bit beyond."""
    return np.int32 if n < 2**31 else np.int64


def to_internal(data: bytes) -> np.ndarray:
    """Map raw bytes to the internal alphabet and append the terminator."""
    out = np.empty(len(data) + 1, dtype=np.int32)
    if len(data):
        out[:-1] = np.frombuffer(data, dtype=np.uint8)
        out[:-1] += 1
    out[-1] = SENTINEL
    return out


def from_internal(symbols: np.ndarray) -> bytes:
    """Inverse of to_internal; the trailing terminator must be present."""
    if symbols.size == 0 or symbols[-1] != SENTINEL:
        raise ValueError("corrupt grammar")
    body = symbols[:-1]
    if body.size and (body.min() <= 0 or body.max() > 256):
        raise ValueError("corrupt grammar")
    return (body - 1).astype(np.uint8).tobytes()


def take_spans(arr: np.ndarray, starts: np.ndarray, lens: np.ndarray) -> np.ndarray:
    """Concatenate arr[starts[i] : starts[i] + lens[i]] for every i.

    Vectorized gather for ragged spans; empty spans are fine.
    """
    lens = np.asarray(lens, dtype=np.int64)
    total = int(lens.sum())
    if total == 0:
        return np.empty(0, dtype=arr.dtype)
    cum = np.cumsum(lens)
    # offset within each span, then shift every span to its start
    idx = np.arange(total, dtype=np.int64) - np.repeat(cum - lens, lens)
    idx += np.repeat(np.asarray(starts, dtype=np.int64), lens)
    return arr[idx]


def classify_types(text: np.ndarray) -> np.ndarray:
    """Suffix types, 1 for S and 0 for L; the last position is S.

    A position is S when its suffix is smaller than the next one, which
    reduces to a right-to-left scan: strict symbol comparison decides,
    equal symbols inherit the type to their right.
    """
    return _kernels.classify(np.ascontiguousarray(text, dtype=np.int32))


def lms_positions(types: np.ndarray) -> np.ndarray:
    """Ascending positions that are S-type with an L-type predecessor.

    Position 0 is never included.  For "banana" + terminator the result
    is [1, 3, 6] and the types read L S L S L L S.
    """
    t = types
    return (np.flatnonzero((t[1:] == S_TYPE) & (t[:-1] == L_TYPE)) + 1).astype(
        index_dtype(t.size)
    )


def lms_factorize(text: np.ndarray, types: np.ndarray | None = None):
    """Cut the text into a prefix plus factors starting at each LMS position.

    Returns (prefix_len, starts).  Factor i spans [starts[i], starts[i+1])
    and the last factor runs to the end of the text, so the factors tile
    text[prefix_len:] without overlap.  The suffix starting at the
    terminator is always a factor; for a text of length 1 that is the
    only factor and the prefix is empty.
    """
    n = len(text)
    if n == 0:
        return 0, np.empty(0, dtype=index_dtype(0))
    if types is None:
        types = classify_types(text)
    starts = lms_positions(types)
    if starts.size == 0:
        # length-1 text: no position qualifies, but the terminator still
        # forms the single factor
        starts = np.array([n - 1], dtype=index_dtype(n))
    return int(starts[0]), starts


def factor_cut_lengths(n: int, starts: np.ndarray) -> np.ndarray:
    """Length of each cut factor given the factor start positions."""
    if starts.size == 0:
        return np.empty(0, dtype=np.int64)
    ends = np.empty(starts.size, dtype=np.int64)
    ends[:-1] = starts[1:]
    ends[-1] = n
    return ends - starts
