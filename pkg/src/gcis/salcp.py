"""Suffix-array (and optionally LCP) construction during decompression.

The deepest name sequence has pairwise-distinct symbols, so its suffix
order is just the symbol order.  Walking back down, the suffix order of
each name sequence is exactly the order of the factor-start suffixes of
the text below it, so one seeded induction pass per level recovers the
full suffix array; the text itself is decoded level-wise along the way.

The LCP array is built only at the byte level: pairwise lcps of the
factor-start suffixes come from a sparse predecessor pass over the
text, and the induction sweeps then carry lcp values along using one
running minimum per bucket symbol.

In-memory results are 1-based and include the terminator position, so
they cover every suffix of text+terminator; the CLI strips the
terminator and rebases to 0 when writing files.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .decode import expand_level_rules, rewrite_names
from .sais import _buckets, induce_from_sorted_lms
from .textcore import classify_types, from_internal, index_dtype, lms_positions


def decompress_with_sa(grammar):
    """(text, suffix array) — the array is a byproduct, not a re-sort."""
    text, sa, _ = _expand_with_sa(grammar, want_lcp=False)
    return text, sa


def decompress_with_sa_lcp(grammar):
    """(text, suffix array, lcp array), lcp[i] pairing entries i-1 and i."""
    return _expand_with_sa(grammar, want_lcp=True)


def _expand_with_sa(grammar, want_lcp: bool):
    if grammar.original_len == 0:
        return b"", np.array([1], dtype=np.int64), np.array([0], dtype=np.int64)
    cur = grammar.final_string
    # all symbols distinct at the deepest level, so argsort is the SA
    sa = np.argsort(cur).astype(index_dtype(cur.size))
    lcp = None
    for j in range(len(grammar.levels) - 1, -1, -1):
        level = grammar.levels[j]
        txt = rewrite_names(level, expand_level_rules(level), cur)
        types = classify_types(txt)
        starts = lms_positions(types)
        if starts.size != sa.size:
            raise ValueError("corrupt grammar")
        sorted_lms = starts[sa]
        if j == 0 and want_lcp:
            sa, lcp = _induce_with_lcp(txt, types, sorted_lms, level.sigma)
        else:
            sa = induce_from_sorted_lms(txt, types, sorted_lms, level.sigma)
        cur = txt
    text = from_internal(cur)
    if len(text) != grammar.original_len:
        raise ValueError("corrupt grammar")
    if want_lcp and lcp is None:
        # inputs of at most one byte skip the loop; nothing repeats
        lcp = np.zeros(cur.size, dtype=np.int64)
    sa = sa.astype(np.int64) + 1
    return text, sa, lcp


def _induce_with_lcp(text, types, sorted_lms, sigma):
    """Seeded induction that fills lcp alongside sa.

    Placement seeds pairwise lcps of the factor-start suffixes; the two
    sweeps then combine them with running bucket minima.  Entries still
    pending when a sweep reads them are settled by direct comparison.
    """
    n = text.size
    heads, tails = _buckets(text, sigma)
    lms_lcp = np.zeros(sorted_lms.size, dtype=np.int64)
    _kernels.sparse_phi_lms_lcp(text, np.ascontiguousarray(sorted_lms), lms_lcp)

    sa = np.full(n, -1, dtype=index_dtype(n))
    lcp = np.full(n, -1, dtype=np.int64)
    lcp[heads[heads < n]] = 0  # a bucket's first entry shares nothing upward
    _kernels.lcp_place_lms(text, sorted_lms, lms_lcp, sa, lcp, tails.copy())
    l_ends = _kernels.lcp_induce_l(text, types, sa, lcp, heads.copy(), heads)
    _kernels.lcp_induce_s(
        text, types, sa, lcp, tails.copy(), heads, tails, l_ends
    )
    return sa, lcp