import numpy as np

import oracles
from gcis import sais
from gcis.cli import mutate_copies
from gcis.grammar import compress
from gcis.salcp import decompress_with_sa, decompress_with_sa_lcp


def test_banana_frozen():
    text, sa, lcp = decompress_with_sa_lcp(compress(b"banana"))
    assert text == b"banana"
    assert sa.tolist() == [7, 6, 4, 2, 1, 5, 3]
    assert lcp.tolist() == [0, 0, 1, 3, 0, 0, 2]


def test_all_equal_text_frozen():
    text, sa, lcp = decompress_with_sa_lcp(compress(b"aaaa"))
    assert text == b"aaaa"
    assert sa.tolist() == [5, 4, 3, 2, 1]
    assert lcp.tolist() == [0, 0, 1, 2, 3]


def test_degenerate_inputs():
    text, sa, lcp = decompress_with_sa_lcp(compress(b""))
    assert (text, sa.tolist(), lcp.tolist()) == (b"", [1], [0])
    text, sa, lcp = decompress_with_sa_lcp(compress(b"z"))
    assert (text, sa.tolist(), lcp.tolist()) == (b"z", [2, 1], [0, 0])


def test_sa_only_variant():
    text, sa = decompress_with_sa(compress(b"banana"))
    assert text == b"banana"
    assert sa.tolist() == [7, 6, 4, 2, 1, 5, 3]


def test_matches_naive_oracles(rng):
    texts = oracles.small_edge_texts() + [
        oracles.fibonacci_word(400),
        oracles.periodic(b"abcab", 350),
        mutate_copies(oracles.random_text(rng, 64, 16), 6, 0.02, 5),
    ]
    for _ in range(50):
        n = int(rng.integers(0, 400))
        sigma = int(rng.choice([1, 2, 4, 256]))
        texts.append(oracles.random_text(rng, n, sigma))
    for data in texts:
        text, sa, lcp = decompress_with_sa_lcp(compress(data))
        want_sa, want_lcp = oracles.sa_lcp_naive(data)
        assert text == data
        assert sa.tolist() == want_sa
        assert lcp.tolist() == want_lcp


def test_agrees_with_direct_suffix_sort(rng):
    data = mutate_copies(oracles.random_text(rng, 5000, 256), 20, 0.003, 11)
    text, sa = decompress_with_sa(compress(data))
    assert text == data
    assert (sa == sais.build_suffix_array(data) + 1).all()
