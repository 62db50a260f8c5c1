"""Integer codecs backing the container format.

Four families: word-aligned Simple8b for small-integer sequences,
Elias-Fano for monotone sequences, byte-less DACs for skewed length
arrays, and plain fixed-width packing.  A small bitvector with rank and
select rounds them out; only raw bitmaps ever hit the disk, the
rank/select support is rebuilt when a structure is loaded.

Bit layout conventions (shared with the serialized form): all words are
64-bit little-endian and bit streams fill each word starting at the
least significant bit.  All indices taken and returned here are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels


def _pack_width(values: np.ndarray, width: int) -> np.ndarray:
    """Pack values into width-bit cells, LSB-first, returning u64 words."""
    values = np.ascontiguousarray(values, dtype=np.uint64)
    if width == 0 or values.size == 0:
        return np.empty(0, dtype=np.uint64)
    shifts = np.arange(width, dtype=np.uint64)
    bits = ((values[:, None] >> shifts) & np.uint64(1)).astype(np.uint8)
    packed = np.packbits(bits.ravel(), bitorder="little")
    out = np.zeros(-(-packed.size // 8) * 8, dtype=np.uint8)
    out[: packed.size] = packed
    return np.frombuffer(out.tobytes(), dtype="<u8").astype(np.uint64)


def _unpack_width(words: np.ndarray, width: int, count: int) -> np.ndarray:
    if count == 0 or width == 0:
        return np.zeros(count, dtype=np.uint64)
    raw = np.unpackbits(
        words.astype("<u8").view(np.uint8), bitorder="little", count=count * width
    )
    bits = raw.reshape(count, width).astype(np.uint64)
    return (bits << np.arange(width, dtype=np.uint64)).sum(axis=1, dtype=np.uint64)


def _get_bits(words: np.ndarray, width: int, i: int) -> int:
    if width == 0:
        return 0
    b = i * width
    w, off = divmod(b, 64)
    v = int(words[w]) >> off
    got = 64 - off
    if got < width:
        v |= int(words[w + 1]) << got
    return v & ((1 << width) - 1)


@dataclass
class BitVector:
    """Plain bitmap with rank/select; support is an in-memory extra.

    rank1(p) counts ones strictly before position p; select1(i) returns
    the position of the i-th one, both 0-based.
    """

    bits: np.ndarray
    _ones: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.bits = np.ascontiguousarray(self.bits, dtype=bool)
        self._ones = np.flatnonzero(self.bits).astype(np.int64)

    def rank1(self, p: int) -> int:
        return int(np.searchsorted(self._ones, p, side="left"))

    def select1(self, i: int) -> int:
        if not 0 <= i < self._ones.size:
            raise IndexError("index out of range")
        return int(self._ones[i])

    @property
    def ones(self) -> np.ndarray:
        return self._ones


# ---------------------------------------------------------------------------
# fixed width


@dataclass
class FixedWidthArray:
    width: int
    n: int
    words: np.ndarray


def fixed_pack(values, sigma: int) -> FixedWidthArray:
    """Pack values into cells just wide enough for the alphabet [0, sigma]."""
    width = int(sigma).bit_length()
    vals = np.ascontiguousarray(values, dtype=np.uint64)
    if vals.size and width < 64 and int(vals.max()) >> width:
        raise ValueError("value too large")
    return FixedWidthArray(width=width, n=vals.size, words=_pack_width(vals, width))


def fixed_get(arr: FixedWidthArray, i: int) -> int:
    if not 0 <= i < arr.n:
        raise IndexError("index out of range")
    return _get_bits(arr.words, arr.width, i)


def fixed_values(arr: FixedWidthArray) -> np.ndarray:
    return _unpack_width(arr.words, arr.width, arr.n)


# ---------------------------------------------------------------------------
# Simple8b


def simple8b_encode(values) -> np.ndarray:
    """Greedy longest-fit packing into 64-bit words, selector in low 4 bits.

    A trailing group shorter than its selector's slot count is padded
    with zeros; the decoder truncates by count, so the word stream alone
    does not determine the sequence length.
    """
    vals = np.ascontiguousarray(values, dtype=np.uint64)
    if vals.size == 0:
        return np.empty(0, dtype=np.uint64)
    words = np.empty(vals.size, dtype=np.uint64)
    ret = int(_kernels.simple8b_encode(vals, words))
    if ret < 0:
        raise ValueError("value too large")
    return words[:ret].copy()


def simple8b_decode(words, count: int) -> np.ndarray:
    vals = np.ascontiguousarray(words, dtype=np.uint64)
    out = np.empty(int(count), dtype=np.uint64)
    ret = int(_kernels.simple8b_decode(vals, out))
    # exactly the given words must be consumed: running short or leaving
    # unread words behind both mean the stream was not ours
    if ret < 0 or ret != vals.size:
        raise ValueError("corrupt stream")
    return out


# ---------------------------------------------------------------------------
# Elias-Fano


def _ef_low_width(n: int, m: int) -> int:
    if n == 0:
        return 0
    return max(0, ((m + n - 1) // n - 1).bit_length())


@dataclass
class EliasFanoSeq:
    """Monotone sequence split into low bits and a high-bucket bitmap.

    Core payload is low_words plus high.bits; that stays within
    2n + n*ceil(lg(m/n)) bits by construction.
    """

    n: int
    m: int
    low_width: int
    low_words: np.ndarray
    high: BitVector

    @property
    def core_bits(self) -> int:
        return self.n * self.low_width + self.high.bits.size


def ef_build(values, m: int) -> EliasFanoSeq:
    """Encode a non-decreasing sequence of integers < m."""
    vals = np.ascontiguousarray(values, dtype=np.int64)
    m = int(m)
    n = vals.size
    if n:
        if vals[0] < 0 or np.any(np.diff(vals) < 0):
            raise ValueError("non-monotone sequence")
        if int(vals[-1]) >= m:
            raise ValueError("value too large")
    width = _ef_low_width(n, m)
    low_words = _pack_width(vals & ((1 << width) - 1), width)
    high_len = n + ((m - 1) >> width) + 1 if n else 0
    bits = np.zeros(high_len, dtype=bool)
    if n:
        bits[(vals >> width) + np.arange(n, dtype=np.int64)] = True
    return EliasFanoSeq(n=n, m=m, low_width=width, low_words=low_words,
                        high=BitVector(bits))


def ef_access(seq: EliasFanoSeq, i: int) -> int:
    """Value i, via select on the high bitmap plus the packed low bits."""
    if not 0 <= i < seq.n:
        raise IndexError("index out of range")
    bucket = seq.high.select1(i) - i
    return (bucket << seq.low_width) | _get_bits(seq.low_words, seq.low_width, i)


def ef_values(seq: EliasFanoSeq) -> np.ndarray:
    """The whole sequence at once (bulk form of ef_access)."""
    if seq.high.ones.size != seq.n:
        raise ValueError("corrupt stream")
    buckets = (seq.high.ones - np.arange(seq.n, dtype=np.int64)).astype(np.uint64)
    lows = _unpack_width(seq.low_words, seq.low_width, seq.n)
    return (buckets << np.uint64(seq.low_width)) | lows


# ---------------------------------------------------------------------------
# DACs


@dataclass
class DacLayer:
    chunks: np.ndarray
    cont: BitVector


@dataclass
class DacArray:
    """Values split into block_width-bit chunks, one layer per chunk rank.

    Layer 0 holds every value's lowest chunk; an entry continues into
    the next layer exactly when its continuation bit is set, and its
    position there is the rank of that bit.
    """

    block_width: int
    layers: list

    @property
    def nvalues(self) -> int:
        return self.layers[0].chunks.size


def dac_build(values, block_width: int = 4) -> DacArray:
    if block_width < 1:
        raise ValueError("block width must be positive")
    vals = np.ascontiguousarray(values, dtype=np.uint64)
    mask = np.uint64((1 << block_width) - 1)
    shift = np.uint64(block_width)
    layers = []
    cur = vals
    while True:
        cont = cur > mask
        layers.append(DacLayer(chunks=(cur & mask), cont=BitVector(cont)))
        if not cont.any():
            break
        cur = cur[cont] >> shift
    return DacArray(block_width=block_width, layers=layers)


def dac_access(arr: DacArray, i: int) -> int:
    if not 0 <= i < arr.nvalues:
        raise IndexError("index out of range")
    idx = i
    val = 0
    shift = 0
    for layer in arr.layers:
        val |= int(layer.chunks[idx]) << shift
        if not layer.cont.bits[idx]:
            return val
        idx = layer.cont.rank1(idx)
        shift += arr.block_width
    raise ValueError("corrupt stream")


def dac_values(arr: DacArray) -> np.ndarray:
    """All values at once (bulk form of dac_access)."""
    out = arr.layers[0].chunks.astype(np.uint64)
    pos = arr.layers[0].cont.ones
    shift = arr.block_width
    for layer in arr.layers[1:]:
        if layer.chunks.size != pos.size:
            raise ValueError("corrupt stream")
        out[pos] |= layer.chunks << np.uint64(shift)
        pos = pos[layer.cont.bits]
        shift += arr.block_width
    if pos.size:
        raise ValueError("corrupt stream")
    return out