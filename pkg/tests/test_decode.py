import numpy as np
import pytest

import oracles
from gcis import decode, textcore
from gcis.grammar import GrammarLevel, compress
from gcis.decode import decompress


def banana_level():
    return compress(b"banana").levels[0]


def test_rule_expansion_banana_frozen():
    decoded = decode.expand_level_rules(banana_level())
    assert decoded.flat.tolist() == [99, 0, 98, 111, 98, 98, 111]
    assert decoded.starts.tolist() == [0, 1, 2, 5, 7]
    # shared-prefix rows (0,"$"), (0,"ana"), (2,"") open back up to
    # "$", "ana", "an"
    rules = [
        decoded.flat[s:e].tolist()
        for s, e in zip(decoded.starts, decoded.starts[1:])
    ]
    assert rules == [[99], [0], [98, 111, 98], [98, 111]]


def test_name_rewrite_banana():
    level = banana_level()
    decoded = decode.expand_level_rules(level)
    out = decode.rewrite_names(level, decoded, np.array([3, 2, 1], dtype=np.int32))
    assert out.tolist() == textcore.to_internal(b"banana").tolist()


def test_name_rewrite_rejects_bad_names():
    level = banana_level()
    decoded = decode.expand_level_rules(level)
    for names in ([0], [4], [-2]):
        with pytest.raises(ValueError, match="corrupt grammar"):
            decode.rewrite_names(level, decoded, np.array(names, dtype=np.int32))


def test_decompress_round_trip(rng):
    for data in oracles.small_edge_texts() + oracles.structured_texts()[:6]:
        assert decompress(compress(data)) == data
    for _ in range(60):
        n = int(rng.integers(0, 3000))
        sigma = int(rng.choice([2, 4, 16, 256]))
        data = oracles.random_text(rng, n, sigma)
        assert decompress(compress(data)) == data


def test_decompress_rejects_bad_shared_prefix_lengths():
    # row 1 claims 5 shared symbols but row 0 only has 1
    level = GrammarLevel(
        sigma=256,
        lcps=np.array([0, 5], dtype=np.int64),
        suffix_lens=np.array([1, 0], dtype=np.int64),
        suffix_syms=np.array([7], dtype=np.int32),
    )
    with pytest.raises(ValueError, match="corrupt front coding"):
        decode.expand_level_rules(level)
    # row 2 reaches past row 1's full length
    level = GrammarLevel(
        sigma=256,
        lcps=np.array([0, 0, 3], dtype=np.int64),
        suffix_lens=np.array([1, 2, 0], dtype=np.int64),
        suffix_syms=np.array([7, 8, 9], dtype=np.int32),
    )
    with pytest.raises(ValueError, match="corrupt front coding"):
        decode.expand_level_rules(level)


def test_decompress_rejects_wrong_recorded_length():
    g = compress(b"banana")
    g.original_len = 7
    with pytest.raises(ValueError, match="corrupt grammar"):
        decompress(g)
