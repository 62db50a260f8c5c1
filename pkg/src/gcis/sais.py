"""Induced suffix sorting over integer texts.

All entry points take an int array whose last symbol is the unique
minimum — the byte level uses the terminator 0 from textcore, deeper
reduced strings use the name 1, and the machinery is identical for
both.  Positions are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .textcore import (
    classify_types,
    factor_cut_lengths,
    index_dtype,
    lms_positions,
    to_internal,
)


def _buckets(text: np.ndarray, sigma: int):
    counts = np.bincount(text, minlength=sigma + 1)
    ends = np.cumsum(counts, dtype=np.int64)
    return ends - counts, ends - 1


def _seeded_pass(text, sigma, types, seed):
    # one full induction round: seed entries at their bucket tails, then
    # the left-to-right L sweep and the right-to-left S sweep
    sa = np.full(text.size, -1, dtype=index_dtype(text.size))
    heads, tails = _buckets(text, sigma)
    _kernels.place_lms_text_order(text, seed, sa, tails.copy())
    _kernels.induce_l(text, types, sa, heads)
    _kernels.induce_s(text, types, sa, tails)
    return sa


def sort_lms_substrings(text, sigma, types=None, starts=None):
    """Factor start positions ordered by their substrings.

    A single seeded induction round sorts the substrings no matter how
    the seeds were ordered within their buckets; equal substrings come
    out adjacent and are merged later by naming.
    """
    if types is None:
        types = classify_types(text)
    if starts is None:
        starts = lms_positions(types)
    sa = _seeded_pass(text, sigma, types, starts)
    keep = np.zeros(text.size, dtype=bool)
    keep[starts] = True
    return sa[keep[sa]]


def induce_from_sorted_lms(text, types, sorted_lms, sigma=None):
    """Full suffix array given the final order of the factor starts."""
    if sigma is None:
        sigma = int(text.max())
    return _seeded_pass(text, sigma, types, sorted_lms)


@dataclass
class NamingResult:
    """Names for every factor plus the front-coding data of the rules.

    names is in text order and doubles as the next level's text.
    sorted_lcp, rule_starts and rule_cut_lens have one entry per
    distinct name, in name (= sorted) order; sorted_lcp[i] is the lcp
    between the cut strings of rules i and i-1, with sorted_lcp[0] = 0.
    """

    names: np.ndarray
    sorted_lcp: np.ndarray
    sigma_next: int
    rule_starts: np.ndarray
    rule_cut_lens: np.ndarray


def name_lms(text, types, sorted_lms, factorization) -> NamingResult:
    """Assign names to sorted factors, collapsing equal ones.

    Two factors share a name exactly when their substrings (extended one
    symbol past the cut, except for the final factor) are identical;
    equal symbols over equal lengths already force equal types, so the
    types argument never tips the comparison and is kept only for
    symmetry with the other passes.
    """
    del types
    prefix_len, starts = factorization
    del prefix_len
    order = sorted_lms
    fidx = np.searchsorted(starts, order).astype(np.int64)
    names_sorted = np.empty(order.size, dtype=np.int32)
    cut_lcp = np.empty(order.size, dtype=np.int64)
    nnames = int(
        _kernels.name_factors(text, order, fidx, starts, names_sorted, cut_lcp)
    )
    names = np.empty(order.size, dtype=np.int32)
    names[fidx] = names_sorted
    first = np.empty(order.size, dtype=bool)
    first[0] = True
    np.not_equal(names_sorted[1:], names_sorted[:-1], out=first[1:])
    ks = np.flatnonzero(first)
    cut_lens = factor_cut_lengths(text.size, starts)
    return NamingResult(
        names=names,
        sorted_lcp=cut_lcp[ks],
        sigma_next=nnames,
        rule_starts=order[ks].astype(np.int64),
        rule_cut_lens=cut_lens[fidx[ks]],
    )


def build_suffix_array(text) -> np.ndarray:
    """Suffix array of a terminated integer text, 0-based.

    Bytes are accepted for convenience and converted with to_internal
    first, so the result then covers the terminator position too.
    """
    if isinstance(text, (bytes, bytearray, memoryview)):
        text = to_internal(bytes(text))
    text = np.ascontiguousarray(text, dtype=np.int32)
    sigma = int(text.max()) if text.size else 0
    return _sa_rec(text, sigma)


def _sa_rec(text, sigma):
    n = text.size
    dt = index_dtype(n)
    if n == 0:
        return np.empty(0, dtype=dt)
    if n == 1:
        return np.zeros(1, dtype=dt)
    if n == 2:
        # the last symbol is the unique minimum
        return np.array([1, 0], dtype=dt)
    types = classify_types(text)
    starts = lms_positions(types)
    order = sort_lms_substrings(text, sigma, types, starts)
    naming = name_lms(text, types, order, (int(starts[0]), starts))
    if naming.sigma_next < starts.size:
        # duplicate factors: recurse on the reduced string to settle them
        sub = _sa_rec(naming.names, naming.sigma_next)
        order = starts[sub]
    return induce_from_sorted_lms(text, types, order, sigma)
