"""Container serialization for grammars (`.gcis` files).

Layout, all little-endian: a 20-byte header (magic "GCIS", version,
profile, flags carrying lg of the lcp reset period, reserved zero, the
original byte count as u64, the level count as u32), then the levels
deepest-first, then the final name sequence, then — in the random-access
profile only — the per-level expansion lengths and the top-level child
offsets.  Every variable-size piece is a *block*: a u64 byte count, the
payload, and zero padding to the next 8-byte boundary.

Profiles differ only in how the per-rule lcp and suffix-length arrays
are coded: the sequential profile packs the raw values with Simple8b,
the random-access profile stores their running totals with Elias-Fano.
Rule symbols and the final sequence are fixed-width packed in both.

An empty input serializes to the bare header.  Serialization is
deterministic, so any loaded container re-serializes byte-identically.
"""

from __future__ import annotations

import struct

import numpy as np

from . import codecs
from .extract import ExtractIndex, build_extract_index
from .grammar import BYTE_SIGMA, LCP_RESET, Grammar, GrammarLevel

MAGIC = b"GCIS"
VERSION = 1

PROFILE_S8B = 0
PROFILE_EF = 1
_PROFILE_IDS = {"s8b": PROFILE_S8B, "ef": PROFILE_EF}
_PROFILE_NAMES = {v: k for k, v in _PROFILE_IDS.items()}

_FLAGS = LCP_RESET.bit_length() - 1  # low 4 bits: lg of the reset period

_HEADER = struct.Struct("<4sBBBBQI")

# decode never chases more than this many levels; anything deeper cannot
# come from a real input and only wastes memory on corrupt files
_MAX_LEVELS = 64


class ContainerError(ValueError):
    """Structurally bad container bytes."""


def profile_id(profile) -> int:
    if isinstance(profile, str):
        try:
            return _PROFILE_IDS[profile]
        except KeyError:
            raise ValueError(f"unknown profile {profile!r}") from None
    p = int(profile)
    if p not in _PROFILE_NAMES:
        raise ValueError(f"unknown profile {profile!r}")
    return p


def profile_name(pid: int) -> str:
    return _PROFILE_NAMES[pid]


def _pad8(payload: bytes) -> bytes:
    return payload + b"\0" * (-len(payload) % 8)


def _block(payload: bytes) -> bytes:
    return struct.pack("<Q", len(payload)) + _pad8(payload)


def _u64_bytes(arr) -> bytes:
    return np.ascontiguousarray(arr, dtype=np.uint64).astype("<u8").tobytes()


def _bitmap_bytes(bits: np.ndarray) -> bytes:
    return np.packbits(bits, bitorder="little").tobytes()


# ---------------------------------------------------------------------------
# writing


def serialize(grammar: Grammar, profile="s8b") -> bytes:
    pid = profile_id(profile)
    out = [
        _HEADER.pack(
            MAGIC, VERSION, pid, _FLAGS, 0, grammar.original_len, grammar.nlevels
        )
    ]
    if grammar.original_len == 0:
        return b"".join(out)
    for level in reversed(grammar.levels):
        out.append(struct.pack("<QQ", level.sigma, level.nrules))
        out.append(_block(_int_payload(level.lcps, pid)))
        out.append(_block(_int_payload(level.suffix_lens, pid)))
        packed = codecs.fixed_pack(level.suffix_syms, level.sigma)
        out.append(
            _block(struct.pack("<Q", packed.n) + _u64_bytes(packed.words))
        )
    packed = codecs.fixed_pack(grammar.final_string, grammar.final_sigma)
    out.append(
        _block(
            struct.pack("<QQ", grammar.final_sigma, packed.n)
            + _u64_bytes(packed.words)
        )
    )
    if pid == PROFILE_EF:
        index = build_extract_index(grammar)
        for lens in reversed(index.level_lens):
            out.append(_block(_dac_payload(codecs.dac_build(lens))))
        out.append(
            _block(
                struct.pack("<Q", index.child_offsets.size)
                + _u64_bytes(index.child_offsets)
            )
        )
    return b"".join(out)


def _int_payload(values: np.ndarray, pid: int) -> bytes:
    if pid == PROFILE_S8B:
        return _u64_bytes(codecs.simple8b_encode(values))
    totals = np.cumsum(values, dtype=np.int64)
    seq = codecs.ef_build(totals, int(totals[-1]) + 1)
    return (
        struct.pack("<QQ", seq.n, seq.m)
        + _u64_bytes(seq.low_words)
        + _pad8(_bitmap_bytes(seq.high.bits))
    )


def _dac_payload(dac: codecs.DacArray) -> bytes:
    parts = [struct.pack("<B", len(dac.layers))]
    for layer in dac.layers:
        chunk_words = codecs.fixed_pack(layer.chunks, (1 << dac.block_width) - 1)
        parts.append(_block(_u64_bytes(chunk_words.words)))
        parts.append(_block(_bitmap_bytes(layer.cont.bits)))
    return b"".join(parts)


# ---------------------------------------------------------------------------
# reading


class _Reader:
    """Cursor over container bytes; `err` names the active failure mode."""

    def __init__(self, data: bytes, pos: int = 0):
        self.data = data
        self.pos = pos
        self.err = "corrupt stream"

    def fail(self):
        raise ContainerError(self.err)

    def take(self, count: int) -> bytes:
        end = self.pos + count
        if count < 0 or end > len(self.data):
            self.fail()
        out = self.data[self.pos : end]
        self.pos = end
        return out

    def u64(self) -> int:
        return struct.unpack("<Q", self.take(8))[0]

    def u8(self) -> int:
        return self.take(1)[0]

    def block(self) -> bytes:
        length = self.u64()
        payload = self.take(length)
        pad = self.take(-length % 8)
        if pad.count(0) != len(pad):
            self.fail()
        return payload

    def skip_block(self) -> int:
        """Byte size of the next block (length word + padded payload)."""
        length = self.u64()
        self.take(-(-length // 8) * 8)
        return 8 + -(-length // 8) * 8

    def done(self):
        if self.pos != len(self.data):
            self.fail()


def _check_header(data: bytes):
    if len(data) < _HEADER.size or data[:4] != MAGIC:
        raise ContainerError("not a GCIS container")
    _, version, pid, flags, reserved, n, nlevels = _HEADER.unpack_from(data)
    if version != VERSION:
        raise ContainerError("unsupported container version")
    if pid not in _PROFILE_NAMES or flags != _FLAGS or reserved != 0:
        raise ContainerError("corrupt stream")
    if nlevels > _MAX_LEVELS or (n == 0 and nlevels != 0):
        raise ContainerError("corrupt stream")
    return pid, n, nlevels


def deserialize(data: bytes):
    """(Grammar, ExtractIndex) from container bytes.

    The index is None for the sequential profile.  Rank/select and other
    in-memory support never travels in the file; it is rebuilt here.
    """
    pid, n, nlevels = _check_header(data)
    reader = _Reader(data, _HEADER.size)
    if n == 0:
        reader.done()
        grammar = Grammar(levels=[], final_string=np.empty(0, dtype=np.int32),
                          original_len=0)
        index = build_extract_index(grammar) if pid == PROFILE_EF else None
        return grammar, index

    reader.err = "truncated level"
    deepest_first = [_read_level(reader, pid) for _ in range(nlevels)]
    levels = deepest_first[::-1]
    for j, level in enumerate(levels):
        want = BYTE_SIGMA if j == 0 else levels[j - 1].nrules - 1
        if level.sigma != want:
            raise ContainerError("corrupt stream")

    reader.err = "corrupt stream"
    final_sigma, final_string = _read_final(reader)
    grammar = Grammar(levels=levels, final_string=final_string, original_len=n)
    if final_sigma != grammar.final_sigma or final_string.size == 0:
        raise ContainerError("corrupt stream")

    index = None
    if pid == PROFILE_EF:
        level_lens = [
            _read_dac_values(reader, levels[j].nrules)
            for j in range(nlevels - 1, -1, -1)
        ][::-1]
        offsets = _read_child_offsets(reader)
        want = n + 2 if nlevels == 0 else final_string.size + 2
        if offsets.size != want or offsets[0] != 0 or offsets[-1] != n + 1:
            raise ContainerError("corrupt stream")
        index = ExtractIndex(child_offsets=offsets, level_lens=level_lens)
    reader.done()
    return grammar, index


def _read_level(reader: _Reader, pid: int) -> GrammarLevel:
    sigma = reader.u64()
    nrules = reader.u64()
    if not 1 <= sigma < 2**31 or not 2 <= nrules < 2**31:
        reader.fail()
    lcps = _read_ints(reader.block(), pid, nrules)
    suffix_lens = _read_ints(reader.block(), pid, nrules)
    payload = reader.block()
    if len(payload) < 8:
        reader.fail()
    count = struct.unpack_from("<Q", payload)[0]
    if count != int(suffix_lens.sum()):
        reader.fail()
    symbols = _read_packed(reader, payload[8:], sigma, count)
    if symbols.size and int(symbols.max()) > sigma:
        reader.fail()
    return GrammarLevel(
        sigma=sigma,
        lcps=lcps,
        suffix_lens=suffix_lens,
        suffix_syms=symbols.astype(np.int32),
    )


def _read_packed(reader, payload: bytes, sigma: int, count: int) -> np.ndarray:
    width = int(sigma).bit_length()
    if len(payload) != -(-count * width // 64) * 8:
        reader.fail()
    words = np.frombuffer(payload, dtype="<u8")
    return codecs._unpack_width(words, width, count)


def _read_ints(payload: bytes, pid: int, count: int) -> np.ndarray:
    if pid == PROFILE_S8B:
        if len(payload) % 8:
            raise ContainerError("corrupt stream")
        try:
            values = codecs.simple8b_decode(np.frombuffer(payload, "<u8"), count)
        except ValueError as exc:
            raise ContainerError(str(exc)) from None
        if values.size and int(values.max()) >= 2**62:
            raise ContainerError("corrupt stream")
        return values.astype(np.int64)

    if len(payload) < 16:
        raise ContainerError("corrupt stream")
    n, m = struct.unpack_from("<QQ", payload)
    if n != count or not 1 <= m < 2**62:
        raise ContainerError("corrupt stream")
    width = codecs._ef_low_width(n, m)
    low_bytes = -(-n * width // 64) * 8
    high_len = n + ((m - 1) >> width) + 1
    high_bytes = _pad_len(-(-high_len // 8))
    if len(payload) != 16 + low_bytes + high_bytes:
        raise ContainerError("corrupt stream")
    low_words = np.frombuffer(payload, "<u8", count=low_bytes // 8, offset=16)
    high_raw = np.frombuffer(
        payload, np.uint8, count=-(-high_len // 8), offset=16 + low_bytes
    )
    bits = np.unpackbits(high_raw, bitorder="little", count=high_len).astype(bool)
    seq = codecs.EliasFanoSeq(
        n=n, m=m, low_width=width,
        low_words=low_words.astype(np.uint64), high=codecs.BitVector(bits),
    )
    try:
        totals = codecs.ef_values(seq).astype(np.int64)
    except ValueError as exc:
        raise ContainerError(str(exc)) from None
    if totals.size == 0 or int(totals[-1]) + 1 != m:
        raise ContainerError("corrupt stream")
    values = np.diff(totals, prepend=0)
    if values.size and int(values.min()) < 0:
        raise ContainerError("corrupt stream")
    return values


def _pad_len(length: int) -> int:
    return -(-length // 8) * 8


def _read_final(reader: _Reader):
    payload = reader.block()
    if len(payload) < 16:
        reader.fail()
    sigma, count = struct.unpack_from("<QQ", payload)
    if not 1 <= sigma < 2**31:
        reader.fail()
    symbols = _read_packed(reader, payload[16:], sigma, count)
    if symbols.size and int(symbols.max()) > sigma:
        reader.fail()
    return sigma, symbols.astype(np.int32)


def _read_dac_values(reader: _Reader, count: int) -> np.ndarray:
    payload = reader.block()
    inner = _Reader(payload)
    nlayers = inner.u8()
    if nlayers < 1 or nlayers > 16:
        reader.fail()
    layers = []
    expect = count
    for _ in range(nlayers):
        chunk_payload = inner.block()
        if len(chunk_payload) != -(-expect * 4 // 64) * 8:
            reader.fail()
        chunks = codecs._unpack_width(
            np.frombuffer(chunk_payload, "<u8"), 4, expect
        )
        cont_payload = inner.block()
        if len(cont_payload) != -(-expect // 8):
            reader.fail()
        bits = np.unpackbits(
            np.frombuffer(cont_payload, np.uint8), bitorder="little", count=expect
        ).astype(bool)
        layers.append(codecs.DacLayer(chunks=chunks, cont=codecs.BitVector(bits)))
        expect = int(bits.sum())
    if expect != 0:
        reader.fail()
    inner.done()
    try:
        values = codecs.dac_values(
            codecs.DacArray(block_width=4, layers=layers)
        ).astype(np.int64)
    except ValueError as exc:
        raise ContainerError(str(exc)) from None
    return values


def _read_child_offsets(reader: _Reader) -> np.ndarray:
    payload = reader.block()
    if len(payload) < 8:
        reader.fail()
    count = struct.unpack_from("<Q", payload)[0]
    if len(payload) != 8 + 8 * count:
        reader.fail()
    offsets = np.frombuffer(payload, "<u8", count=count, offset=8).astype(np.int64)
    if offsets.size and (offsets[0] != 0 or np.any(np.diff(offsets) < 0)):
        reader.fail()
    return offsets


# ---------------------------------------------------------------------------
# inspection


def describe(data: bytes):
    """Header facts plus every block's on-disk size, for `info`.

    Returns (summary dict, [(label, nbytes), ...]); the sizes add up to
    len(data) exactly.
    """
    pid, n, nlevels = _check_header(data)
    reader = _Reader(data, _HEADER.size)
    blocks = [("header", _HEADER.size)]
    level_meta = []
    if n > 0:
        reader.err = "truncated level"
        for i in range(nlevels):
            lv = nlevels - 1 - i  # file order is deepest-first
            sigma = reader.u64()
            nrules = reader.u64()
            level_meta.append({"level": lv, "sigma": sigma, "rules": nrules})
            blocks.append((f"level {lv} meta", 16))
            for part in ("lcp", "suffix lengths", "symbols"):
                blocks.append((f"level {lv} {part}", reader.skip_block()))
        reader.err = "corrupt stream"
        blocks.append(("final sequence", reader.skip_block()))
        if pid == PROFILE_EF:
            for i in range(nlevels):
                lv = nlevels - 1 - i
                blocks.append((f"level {lv} expansion lengths", reader.skip_block()))
            blocks.append(("child offsets", reader.skip_block()))
    reader.done()
    level_meta.sort(key=lambda m: m["level"])
    summary = {
        "n": n,
        "levels": nlevels,
        "profile": profile_name(pid),
        "reset": LCP_RESET,
        "level_meta": level_meta,
    }
    return summary, blocks