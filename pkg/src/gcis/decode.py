"""Level-wise decompression.

Each level's front-coded rules are expanded once into a flat store, then
the name sequence of the level above is rewritten through it.  Work runs
from the deepest level back to bytes, with only the current text and the
current level's store alive at any point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .textcore import from_internal, take_spans


@dataclass
class DecodedLevel:
    """Full rule strings of one level, concatenated.

    Rule i occupies flat[starts[i] : starts[i+1]]; starts carries one
    trailing entry so every rule is a plain slice.  Only rule 0 (the
    unfactored head) may be empty.
    """

    flat: np.ndarray
    starts: np.ndarray


def expand_level_rules(level) -> DecodedLevel:
    """Undo the front coding of one rule table."""
    starts = np.empty(level.nrules + 1, dtype=np.int64)
    starts[0] = 0
    np.cumsum(level.full_lens(), out=starts[1:])
    flat = np.empty(int(starts[-1]), dtype=np.int32)
    ok = _kernels.expand_rules(
        np.ascontiguousarray(level.lcps, dtype=np.int64),
        np.ascontiguousarray(level.suffix_lens, dtype=np.int64),
        np.ascontiguousarray(level.suffix_syms, dtype=np.int32),
        flat,
        starts,
    )
    if not ok:
        raise ValueError("corrupt front coding")
    return DecodedLevel(flat=flat, starts=starts)


def rewrite_names(level, decoded: DecodedLevel, names: np.ndarray) -> np.ndarray:
    """Lower a name sequence one level: head rule, then every name's string."""
    if names.size and (int(names.min()) < 1 or int(names.max()) >= level.nrules):
        raise ValueError("corrupt grammar")
    starts = decoded.starts
    span_starts = starts[names]
    body = take_spans(decoded.flat, span_starts, starts[names + 1] - span_starts)
    return np.concatenate((decoded.flat[: starts[1]], body))


def decompress(grammar) -> bytes:
    """Expand a grammar back to the exact original bytes."""
    if grammar.original_len == 0:
        return b""
    cur = grammar.final_string
    for level in reversed(grammar.levels):
        cur = rewrite_names(level, expand_level_rules(level), cur)
    out = from_internal(cur)
    if len(out) != grammar.original_len:
        raise ValueError("corrupt grammar")
    return out