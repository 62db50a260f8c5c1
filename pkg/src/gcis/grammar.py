"""Multi-level grammar construction (compression front end).

Each round factors the current text into an unfactored head plus
factors starting at every leftmost-S position, names the distinct
factors by sorted order, and recurses on the name sequence, which is at
most half as long.  Rounds stop when the text is too short to factor
again or every factor occurred exactly once.

Rule tables are kept front-coded: rules sit in sorted order and each one
stores only (shared-prefix length with the previous rule, remaining
suffix).  Rule 0 is always the unfactored head; name i maps to rule i.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sais import name_lms, sort_lms_substrings
from .textcore import classify_types, lms_factorize, take_spans, to_internal

BYTE_SIGMA = 256

# every LCP_RESET-th rule stores its string in full, so decoding one rule
# never chains more than LCP_RESET - 1 predecessors
LCP_RESET = 8


@dataclass
class GrammarLevel:
    """Front-coded rules of one reduction round.

    sigma is the alphabet bound of the symbols appearing on rule
    right-hand sides (256 at the byte level, the previous round's name
    count deeper).  lcps[i] symbols are shared with rule i-1's full
    string and suffix_syms holds every rule's remaining suffix
    back-to-back.  reduced_len is the length of the name sequence this
    round produced; it is not stored in containers, so it is None on
    loaded grammars.
    """

    sigma: int
    lcps: np.ndarray
    suffix_lens: np.ndarray
    suffix_syms: np.ndarray
    reduced_len: int | None = None

    @property
    def nrules(self) -> int:
        return self.lcps.size

    def full_lens(self) -> np.ndarray:
        return self.lcps + self.suffix_lens

    def suffix_starts(self) -> np.ndarray:
        """Offset of each rule's suffix inside suffix_syms (memoized)."""
        cached = getattr(self, "_suffix_starts", None)
        if cached is None:
            cached = np.empty(self.nrules + 1, dtype=np.int64)
            cached[0] = 0
            np.cumsum(self.suffix_lens, out=cached[1:])
            self._suffix_starts = cached
        return cached


@dataclass
class Grammar:
    """Everything needed to reproduce one input.

    levels[0] is the byte level, levels[-1] the deepest round;
    final_string is the last name sequence (or, when the input was too
    short to factor at all, the internal form of the input itself).
    """

    levels: list
    final_string: np.ndarray
    original_len: int

    @property
    def nlevels(self) -> int:
        return len(self.levels)

    @property
    def final_sigma(self) -> int:
        if self.levels:
            return self.levels[-1].nrules - 1
        return BYTE_SIGMA


def reduce_level(level_text: np.ndarray, sigma: int):
    """One round: factor, name, front-code.  Returns (level, names).

    level_text must end with its unique smallest symbol.  The returned
    name sequence is in text order and ends with name 1, the factor
    covering that terminator.
    """
    text = np.ascontiguousarray(level_text, dtype=np.int32)
    types = classify_types(text)
    prefix_len, starts = lms_factorize(text, types)
    order = sort_lms_substrings(text, sigma, types, starts)
    naming = name_lms(text, types, order, (prefix_len, starts))

    nrules = naming.sigma_next + 1
    lcps = np.empty(nrules, dtype=np.int64)
    lcps[0] = 0
    lcps[1:] = naming.sorted_lcp
    lcps[::LCP_RESET] = 0

    fstarts = np.empty(nrules, dtype=np.int64)
    fstarts[0] = 0
    fstarts[1:] = naming.rule_starts
    flens = np.empty(nrules, dtype=np.int64)
    flens[0] = prefix_len
    flens[1:] = naming.rule_cut_lens

    suffix_lens = flens - lcps
    level = GrammarLevel(
        sigma=sigma,
        lcps=lcps,
        suffix_lens=suffix_lens,
        suffix_syms=take_spans(text, fstarts + lcps, suffix_lens),
        reduced_len=naming.names.size,
    )
    return level, naming.names


def compress(data: bytes) -> Grammar:
    """Build the grammar of a byte string (empty input allowed)."""
    n = len(data)
    if n == 0:
        return Grammar(levels=[], final_string=np.empty(0, dtype=np.int32),
                       original_len=0)
    cur = to_internal(data)
    sigma = BYTE_SIGMA
    levels = []
    while cur.size >= 3:
        level, reduced = reduce_level(cur, sigma)
        levels.append(level)
        sigma = level.nrules - 1
        cur = reduced
        if sigma == cur.size:
            # every factor was unique; another round cannot shrink this
            break
    return Grammar(levels=levels, final_string=cur, original_len=n)