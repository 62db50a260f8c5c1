import numpy as np

import oracles
from gcis import sais, textcore


def test_banana_suffix_array_frozen():
    assert sais.build_suffix_array(b"banana").tolist() == [6, 5, 3, 1, 0, 4, 2]


def test_accepts_internal_integer_text():
    t = textcore.to_internal(b"banana")
    assert sais.build_suffix_array(t).tolist() == [6, 5, 3, 1, 0, 4, 2]


def test_suffix_array_matches_naive_sort(rng):
    for data in oracles.small_edge_texts():
        assert sais.build_suffix_array(data).tolist() == oracles.suffix_array_naive(
            data
        )
    for _ in range(120):
        n = int(rng.integers(0, 150))
        sigma = int(rng.choice([1, 2, 4, 256]))
        data = oracles.random_text(rng, n, sigma)
        assert sais.build_suffix_array(data).tolist() == oracles.suffix_array_naive(
            data
        )


def test_suffix_array_recursion_depth():
    # fibonacci words force many recursion levels
    data = oracles.fibonacci_word(3000)
    assert sais.build_suffix_array(data).tolist() == oracles.suffix_array_naive(data)


def test_sorted_factor_order_banana():
    t = textcore.to_internal(b"banana")
    assert sais.sort_lms_substrings(t, 256).tolist() == [6, 3, 1]


def test_sorted_factor_order_matches_symbol_then_type_keys(rng):
    # the one-pass sort orders factor substrings with L before S on
    # equal symbols, which is not plain lexicographic order
    for _ in range(60):
        n = int(rng.integers(2, 120))
        t = textcore.to_internal(oracles.random_text(rng, n, int(rng.choice([2, 4]))))
        _, starts = textcore.lms_factorize(t)
        order = sais.sort_lms_substrings(t, 256)
        assert sorted(order.tolist()) == starts.tolist()
        keys = oracles.factor_substring_keys(t.tolist(), starts.tolist())
        by_start = dict(zip(starts.tolist(), keys))
        got = [by_start[int(p)] for p in order]
        assert got == sorted(keys)


def test_induce_from_sorted_factors_banana():
    t = textcore.to_internal(b"banana")
    types = textcore.classify_types(t)
    sa = sais.induce_from_sorted_lms(t, types, np.array([6, 3, 1], dtype=np.int32))
    assert sa.tolist() == [6, 5, 3, 1, 0, 4, 2]


def test_naming_banana_frozen():
    t = textcore.to_internal(b"banana")
    types = textcore.classify_types(t)
    fact = textcore.lms_factorize(t, types)
    order = sais.sort_lms_substrings(t, 256, types, fact[1])
    naming = sais.name_lms(t, types, order, fact)
    assert naming.names.tolist() == [3, 2, 1]
    assert naming.sigma_next == 3
    assert naming.sorted_lcp.tolist() == [0, 0, 2]
    assert naming.rule_starts.tolist() == [6, 3, 1]
    assert naming.rule_cut_lens.tolist() == [1, 3, 2]


def test_naming_collapses_equal_factors():
    t = textcore.to_internal(b"nananana")
    types = textcore.classify_types(t)
    fact = textcore.lms_factorize(t, types)
    order = sais.sort_lms_substrings(t, 256, types, fact[1])
    naming = sais.name_lms(t, types, order, fact)
    assert naming.names.tolist() == [3, 3, 2, 1]
    assert naming.sigma_next == 3


def test_naming_matches_naive_reduction(rng):
    for _ in range(80):
        n = int(rng.integers(2, 100))
        sigma = int(rng.choice([2, 4, 16]))
        t = textcore.to_internal(oracles.random_text(rng, n, sigma))
        types = textcore.classify_types(t)
        fact = textcore.lms_factorize(t, types)
        order = sais.sort_lms_substrings(t, 256, types, fact[1])
        naming = sais.name_lms(t, types, order, fact)
        want_names, want_rules, want_count = oracles.reduce_naive(t.tolist())
        assert naming.names.tolist() == want_names
        assert naming.sigma_next == want_count
        # cut strings reconstructed from starts/lens must equal the
        # naive rule strings, in name order
        for k in range(want_count):
            s = int(naming.rule_starts[k])
            cut = t[s : s + int(naming.rule_cut_lens[k])].tolist()
            assert cut == want_rules[k + 1]
