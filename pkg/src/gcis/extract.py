"""Random-access substring extraction without full decompression.

The deepest name sequence is treated as a list of children of one start
rule: a pseudo-child 0 for the chained unfactored heads, then one child
per name.  child_offsets locates the child window covering [l, r];
the window is then pushed down one level at a time, decoding only the
rules inside it and trimming both ends against the per-rule expansion
lengths until plain bytes remain.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decode import expand_level_rules


@dataclass
class ExtractIndex:
    """child_offsets: bytes generated before each top-level child (one
    leading 0, one trailing grand total, terminator included); level_lens:
    per level, the expanded byte length of every rule, rule 0 counting
    the whole chain of unfactored heads below it.
    """

    child_offsets: np.ndarray
    level_lens: list


@dataclass
class ExpansionWindow:
    """A level's symbol run generating original-text span [gen_start, gen_end].

    The requested [l, r] stays inside that span through every expansion
    and trim, so the window always generates a superstring of the answer.
    """

    symbols: np.ndarray
    gen_start: int
    gen_end: int


def build_extract_index(grammar) -> ExtractIndex:
    """Expansion lengths per rule per level plus top-level child offsets."""
    if not grammar.levels:
        return ExtractIndex(
            child_offsets=np.arange(grammar.original_len + 2, dtype=np.int64),
            level_lens=[],
        )
    level_lens: list = []
    below: np.ndarray | None = None
    for level in grammar.levels:
        decoded = expand_level_rules(level)
        starts = decoded.starts
        if below is None:
            # byte level: every cell is one text position
            lens = level.full_lens().astype(np.int64)
        else:
            flat = decoded.flat
            if flat.size and (int(flat.min()) < 1 or int(flat.max()) >= below.size):
                raise ValueError("corrupt grammar")
            cum = np.concatenate(
                ([0], np.cumsum(below[flat], dtype=np.int64))
            )
            lens = cum[starts[1:]] - cum[starts[:-1]]
            lens[0] += below[0]
        level_lens.append(lens)
        below = lens
    final = grammar.final_string
    if final.size and (int(final.min()) < 1 or int(final.max()) >= below.size):
        raise ValueError("corrupt grammar")
    parts = np.concatenate(([below[0]], below[final]))
    return ExtractIndex(
        child_offsets=np.concatenate(([0], np.cumsum(parts, dtype=np.int64))),
        level_lens=level_lens,
    )


def expand_rule(level, name: int) -> np.ndarray:
    """Full right-hand side of one rule, decoded in isolation."""
    return _expand_rule_depth(level, name)[0]


def _expand_rule_depth(level, name: int):
    # walk back to the nearest rule stored in full, then compose forward;
    # the build zeroes every LCP_RESET-th lcp, so the walk is bounded
    if not 0 <= name < level.nrules:
        raise ValueError("corrupt grammar")
    lcps = level.lcps
    start = name
    while lcps[start]:
        start -= 1
    zoff = level.suffix_starts()
    syms = level.suffix_syms
    cur = syms[zoff[start] : zoff[start + 1]]
    for t in range(start + 1, name + 1):
        shared = int(lcps[t])
        if shared > cur.size:
            raise ValueError("corrupt front coding")
        cur = np.concatenate((cur[:shared], syms[zoff[t] : zoff[t + 1]]))
    return cur, name - start


def extract(index: ExtractIndex, grammar, l: int, r: int) -> bytes:
    """The original bytes at 1-based inclusive positions [l, r]."""
    n = grammar.original_len
    l, r = int(l), int(r)
    if not 1 <= l <= r <= n:
        raise ValueError("range out of bounds")
    final = grammar.final_string
    if not grammar.levels:
        return bytes((final[l - 1 : r] - 1).astype(np.uint8))

    offs = index.child_offsets
    # child a generates positions (offs[a], offs[a+1]]
    a = int(np.searchsorted(offs, l, side="left")) - 1
    b = int(np.searchsorted(offs, r, side="left")) - 1
    children = np.concatenate((np.zeros(1, dtype=np.int32), final))
    window = ExpansionWindow(
        symbols=children[a : b + 1],
        gen_start=int(offs[a]) + 1,
        gen_end=int(offs[b + 1]),
    )
    for j in range(len(grammar.levels) - 1, -1, -1):
        window = _push_down(window, grammar, index, j, l, r)
    flat = window.symbols
    out = flat[l - window.gen_start : r - window.gen_start + 1] - 1
    return bytes(out.astype(np.uint8))


def _push_down(window, grammar, index, j, l, r) -> ExpansionWindow:
    level = grammar.levels[j]
    parts = []
    for sym in window.symbols:
        sym = int(sym)
        if sym == 0:
            head = expand_rule(level, 0)
            if j:
                # keep a pseudo-symbol for the still-deeper heads
                head = np.concatenate((np.zeros(1, dtype=np.int32), head))
            parts.append(head)
        else:
            parts.append(expand_rule(level, sym))
    syms = np.concatenate(parts) if parts else np.empty(0, dtype=np.int32)

    if j:
        # level_lens[j-1][0] is exactly the pseudo-symbol's width
        widths = index.level_lens[j - 1][syms]
    else:
        widths = np.ones(syms.size, dtype=np.int64)
    gs, ge = window.gen_start, window.gen_end
    cum = np.cumsum(widths)
    drop_l = int(np.searchsorted(cum, l - gs, side="right"))
    if drop_l:
        gs += int(cum[drop_l - 1])
    rcum = np.cumsum(widths[::-1])
    drop_r = int(np.searchsorted(rcum, ge - r, side="right"))
    if drop_r:
        ge -= int(rcum[drop_r - 1])
    end = syms.size - drop_r
    return ExpansionWindow(symbols=syms[drop_l:end], gen_start=gs, gen_end=ge)