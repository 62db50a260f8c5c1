"""Sequential inner loops, compiled with numba.

Everything here operates on contiguous numpy arrays and is kept free of
Python objects so the JIT can cache machine code on disk.  The pure-array
call signatures also make the kernels easy to exercise directly in tests.

Position and type conventions match textcore: 0-based positions, L = 0,
S = 1, and every text carries a unique smallest final symbol so suffix
comparisons never run off the end.
"""

from __future__ import annotations

import numpy as np
from numba import njit

L = 0
S = 1


@njit(cache=True)
def classify(text):
    n = text.size
    types = np.empty(n, dtype=np.uint8)
    if n == 0:
        return types
    types[n - 1] = S
    for i in range(n - 2, -1, -1):
        if text[i] < text[i + 1]:
            types[i] = S
        elif text[i] > text[i + 1]:
            types[i] = L
        else:
            types[i] = types[i + 1]
    return types


@njit(cache=True)
def place_lms_text_order(text, lms, sa, tails):
    # right-to-left over the text, each start dropped at the current tail
    # of its symbol bucket; intra-bucket order does not matter yet
    for k in range(lms.size - 1, -1, -1):
        p = lms[k]
        c = text[p]
        sa[tails[c]] = p
        tails[c] -= 1


@njit(cache=True)
def induce_l(text, types, sa, heads):
    n = sa.size
    for i in range(n):
        j = sa[i]
        if j > 0 and types[j - 1] == L:
            c = text[j - 1]
            sa[heads[c]] = j - 1
            heads[c] += 1


@njit(cache=True)
def induce_s(text, types, sa, tails):
    n = sa.size
    for i in range(n - 1, -1, -1):
        j = sa[i]
        if j > 0 and types[j - 1] == S:
            c = text[j - 1]
            sa[tails[c]] = j - 1
            tails[c] -= 1


@njit(cache=True)
def name_factors(text, order, fidx, starts, names_sorted, cut_lcp):
    """Name sorted factors and record lcps of their cut strings.

    order holds factor start positions in sorted substring order, fidx
    the matching factor index in text order.  Two factors get the same
    name only when their substrings (one symbol past the cut, except for
    the final factor) match exactly.  cut_lcp[k] is the lcp of the cut
    strings of factors k-1 and k in sorted order.  Returns the number of
    distinct names.
    """
    n = text.size
    nfac = starts.size
    name = 1
    names_sorted[0] = 1
    cut_lcp[0] = 0
    for k in range(1, order.size):
        fa = fidx[k - 1]
        fb = fidx[k]
        a = order[k - 1]
        b = order[k]
        ca = (starts[fa + 1] - a) if fa + 1 < nfac else (n - a)
        cb = (starts[fb + 1] - b) if fb + 1 < nfac else (n - b)
        la = ca + 1 if fa + 1 < nfac else ca
        lb = cb + 1 if fb + 1 < nfac else cb
        lim = min(la, lb)
        m = 0
        while m < lim and text[a + m] == text[b + m]:
            m += 1
        if not (m == la and m == lb):
            name += 1
        names_sorted[k] = name
        w = m
        if ca < w:
            w = ca
        if cb < w:
            w = cb
        cut_lcp[k] = w
    return name


@njit(cache=True)
def expand_rules(lcps, zlens, ysyms, flat, dstarts):
    """Rebuild full right-hand sides from front-coded (lcp, suffix) rows.

    flat receives rule i at dstarts[i] with length lcps[i] + zlens[i].
    Returns False when an lcp reaches past the previous rule, which can
    only happen on a corrupted container.
    """
    nrules = lcps.size
    ysrc = 0
    for i in range(nrules):
        l = lcps[i]
        d = dstarts[i]
        if l > 0:
            if i == 0 or l > lcps[i - 1] + zlens[i - 1]:
                return False
            prev = dstarts[i - 1]
            for m in range(l):
                flat[d + m] = flat[prev + m]
        for m in range(zlens[i]):
            flat[d + l + m] = ysyms[ysrc]
            ysrc += 1
    return True


@njit(cache=True)
def sparse_phi_lms_lcp(text, order, plcp):
    """lcp between every factor-start suffix and its predecessor in order.

    plcp[k] = lcp of the suffixes starting at order[k-1] and order[k];
    plcp[0] = 0.  Evaluated in text order for cache friendliness via the
    predecessor map.  Comparisons restart from zero each time: carrying
    overlap between neighbouring positions is unsound here because the
    predecessor map skips the suffixes that start inside factors.
    """
    n = text.size
    k = order.size
    phi = np.full(n, -1, dtype=np.int64)
    rank = np.full(n, -1, dtype=np.int64)
    for i in range(k):
        rank[order[i]] = i
        if i > 0:
            phi[order[i]] = order[i - 1]
    for p in range(n):
        r = rank[p]
        if r < 0:
            continue
        q = phi[p]
        if q < 0:
            plcp[r] = 0
            continue
        h = 0
        while text[p + h] == text[q + h]:
            h += 1
        plcp[r] = h


@njit(cache=True)
def lcp_place_lms(text, order, lms_lcp, sa, lcp, tails):
    # sorted placement at bucket tails; two starts falling in the same
    # bucket are adjacent, so the upper one's slot gets their pairwise lcp
    for k in range(order.size - 1, -1, -1):
        p = order[k]
        c = text[p]
        slot = tails[c]
        sa[slot] = p
        tails[c] -= 1
        if k + 1 < order.size and text[order[k + 1]] == c:
            lcp[slot + 1] = lms_lcp[k + 1]


@njit(cache=True)
def lcp_induce_l(text, types, sa, lcp, heads, bstart):
    """Left-to-right pass placing L suffixes and their lcps.

    Occupied slots are read in increasing order and form a sorted
    subsequence of the final array.  A min-stack of (bucket symbol,
    running min) pairs — at most one live entry per symbol — answers
    "minimum pairwise lcp since this bucket last received a suffix".
    Slots whose stored lcp is still -1 (the lowest seeded entry of a
    bucket) are settled by direct comparison against the previously
    read suffix.  On return heads[c] is one past the last L slot of c.
    """
    n = sa.size
    nsym = heads.size
    inf = np.int64(1) << 62
    ssym = np.empty(nsym + 1, dtype=np.int64)
    smin = np.empty(nsym + 1, dtype=np.int64)
    depth = 0
    curr = inf
    prev_read = -1
    for i in range(n):
        j = sa[i]
        if j < 0:
            continue
        v = lcp[i]
        if v < 0:
            a = sa[prev_read]
            h = 0
            while text[a + h] == text[j + h]:
                h += 1
            v = h
            lcp[i] = v
        if v < curr:
            curr = v
        prev_read = i
        if j > 0 and types[j - 1] == L:
            c = text[j - 1]
            # fold the running mins of every entry more recent than c's
            q = curr
            found = -1
            for t in range(depth - 1, -1, -1):
                if ssym[t] == c:
                    found = t
                    break
                if smin[t] < q:
                    q = smin[t]
            h2 = heads[c]
            sa[h2] = j - 1
            if h2 > bstart[c]:
                lcp[h2] = 1 + q
            heads[c] += 1
            # drop c's stale entry, folding its interval into the next
            # more recent one (or into the open interval when on top),
            # then re-push c as the most recent entry
            if found >= 0:
                mv = smin[found]
                if found == depth - 1:
                    if mv < curr:
                        curr = mv
                elif mv < smin[found + 1]:
                    smin[found + 1] = mv
                for t in range(found, depth - 1):
                    ssym[t] = ssym[t + 1]
                    smin[t] = smin[t + 1]
                depth -= 1
            ssym[depth] = c
            smin[depth] = curr
            depth += 1
            curr = inf
    return heads


@njit(cache=True)
def lcp_induce_s(text, types, sa, lcp, tails, bstart, bend, lend):
    """Right-to-left pass placing S suffixes and their lcps.

    By the time a slot is read every slot at or above it is final, so
    the pairwise lcp for slot i is just lcp[i+1].  The min-stack works
    exactly as in lcp_induce_l.  Placement at the first slot past the L
    run (lend) also settles the lcp across the L/S seam by direct
    comparison.
    """
    n = sa.size
    nsym = tails.size
    inf = np.int64(1) << 62
    ssym = np.empty(nsym + 1, dtype=np.int64)
    smin = np.empty(nsym + 1, dtype=np.int64)
    depth = 0
    curr = inf
    for i in range(n - 1, -1, -1):
        if i + 1 < n:
            v = lcp[i + 1]
            if v < curr:
                curr = v
        j = sa[i]
        if j > 0 and types[j - 1] == S:
            c = text[j - 1]
            q = curr
            found = -1
            for t in range(depth - 1, -1, -1):
                if ssym[t] == c:
                    found = t
                    break
                if smin[t] < q:
                    q = smin[t]
            tl = tails[c]
            sa[tl] = j - 1
            if tl < bend[c]:
                lcp[tl + 1] = 1 + q
            if tl == lend[c] and tl > bstart[c]:
                a = sa[tl - 1]
                b = j - 1
                h = 0
                while text[a + h] == text[b + h]:
                    h += 1
                lcp[tl] = h
            tails[c] -= 1
            if found >= 0:
                mv = smin[found]
                if found == depth - 1:
                    if mv < curr:
                        curr = mv
                elif mv < smin[found + 1]:
                    smin[found + 1] = mv
                for t in range(found, depth - 1):
                    ssym[t] = ssym[t + 1]
                    smin[t] = smin[t + 1]
                depth -= 1
            ssym[depth] = c
            smin[depth] = curr
            depth += 1
            curr = inf


@njit(cache=True)
def simple8b_encode(values, words):
    """Greedy longest-fit packer; returns the word count, or -1 when a
    value needs more than 60 bits.

    Selector rows largest capacity first: two zero-run rows (240 and 120
    zeros), then 60x1 .. 1x60 bits.  A trailing word may cover fewer
    values than its selector promises; the decoder truncates by count.
    """
    counts = np.array([240, 120, 60, 30, 20, 15, 12, 10, 8, 7, 6, 5, 4, 3, 2, 1],
                      dtype=np.int64)
    widths = np.array([0, 0, 1, 2, 3, 4, 5, 6, 7, 8, 10, 12, 15, 20, 30, 60],
                      dtype=np.int64)
    n = values.size
    pos = 0
    nw = 0
    while pos < n:
        emitted = False
        for sel in range(16):
            cnt = counts[sel]
            w = widths[sel]
            take = cnt if pos + cnt <= n else n - pos
            ok = True
            if w == 0:
                for i in range(pos, pos + take):
                    if values[i] != 0:
                        ok = False
                        break
            elif take * w > 60:
                ok = False
            else:
                limit = np.uint64(1) << np.uint64(w)
                for i in range(pos, pos + take):
                    if values[i] >= limit:
                        ok = False
                        break
            if not ok:
                continue
            word = np.uint64(sel)
            if w > 0:
                shift = 4
                for i in range(pos, pos + take):
                    word |= values[i] << np.uint64(shift)
                    shift += w
            words[nw] = word
            nw += 1
            pos += take
            emitted = True
            break
        if not emitted:
            return -1
    return nw


@njit(cache=True)
def simple8b_decode(words, out):
    """Unpack words into out until out is full.

    Returns the number of words consumed, or -1 when the stream ends
    short.  The caller treats leftover words as corruption.
    """
    counts = np.array([240, 120, 60, 30, 20, 15, 12, 10, 8, 7, 6, 5, 4, 3, 2, 1],
                      dtype=np.int64)
    widths = np.array([0, 0, 1, 2, 3, 4, 5, 6, 7, 8, 10, 12, 15, 20, 30, 60],
                      dtype=np.int64)
    n = out.size
    pos = 0
    wi = 0
    while wi < words.size and pos < n:
        word = words[wi]
        wi += 1
        sel = int(word & np.uint64(15))
        cnt = counts[sel]
        w = widths[sel]
        take = cnt if pos + cnt <= n else n - pos
        if w == 0:
            for i in range(take):
                out[pos + i] = 0
        else:
            mask = (np.uint64(1) << np.uint64(w)) - np.uint64(1)
            shift = 4
            for i in range(take):
                out[pos + i] = (word >> np.uint64(shift)) & mask
                shift += w
        pos += take
    if pos < n:
        return -1
    return wi


def warmup():
    """Run a miniature end-to-end pass so JIT compilation happens here
    rather than inside a timed or user-facing section."""
    t = np.array([2, 1, 2, 1, 0], dtype=np.int32)
    ty = classify(t)
    counts = np.bincount(t, minlength=3)
    bstart = np.concatenate(([0], np.cumsum(counts)[:-1])).astype(np.int64)
    bend = (np.cumsum(counts) - 1).astype(np.int64)
    sa = np.full(t.size, -1, dtype=np.int32)
    lms = np.array([1, 4], dtype=np.int32)
    place_lms_text_order(t, lms, sa, bend.copy())
    induce_l(t, ty, sa, bstart.copy())
    induce_s(t, ty, sa, bend.copy())
    order = np.array([4, 1], dtype=np.int32)
    fidx = np.array([1, 0], dtype=np.int64)
    ns = np.empty(2, dtype=np.int32)
    cl = np.empty(2, dtype=np.int64)
    name_factors(t, order, fidx, lms, ns, cl)
    plcp = np.empty(2, dtype=np.int64)
    sparse_phi_lms_lcp(t, order, plcp)
    sa.fill(-1)
    lcp = np.full(t.size, -1, dtype=np.int64)
    lcp[bstart] = 0
    lcp_place_lms(t, order, plcp, sa, lcp, bend.copy())
    lend = lcp_induce_l(t, ty, sa, lcp, bstart.copy(), bstart)
    lcp_induce_s(t, ty, sa, lcp, bend.copy(), bstart, bend, lend)
    lcps = np.array([0, 1], dtype=np.int64)
    zl = np.array([2, 1], dtype=np.int64)
    ys = np.array([1, 2, 2], dtype=np.int32)
    flat = np.empty(4, dtype=np.int32)
    expand_rules(lcps, zl, ys, flat, np.array([0, 2], dtype=np.int64))
    vals = np.array([1, 2, 3], dtype=np.uint64)
    words = np.empty(4, dtype=np.uint64)
    nw = simple8b_encode(vals, words)
    simple8b_decode(words[:nw], np.empty(3, dtype=np.uint64))
