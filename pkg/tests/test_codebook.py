import itertools

import numpy as np
import pytest

from lfia.channel import SystemConfig
from lfia.codebook import (compound_codeword, decode_index, digit_table,
                           encode_index, generate_codebooks)
from lfia.errors import IndexOutOfRange


def test_counts_and_norms():
    cb = generate_codebooks(SystemConfig(3, 3, 2, 2), seed=1, trial=0)
    assert cb.words.shape == (2, 2, 4, 3)
    np.testing.assert_allclose(np.linalg.norm(cb.words, axis=-1), 1.0, atol=1e-12)


def test_deterministic_and_fresh_per_trial():
    cfg = SystemConfig(3, 3, 2, 3)
    a = generate_codebooks(cfg, 5, 0).words
    assert np.array_equal(a, generate_codebooks(cfg, 5, 0).words)
    assert not np.array_equal(a, generate_codebooks(cfg, 5, 1).words)


def test_no_duplicate_codewords():
    cfg = SystemConfig(2, 3, 2, 6)
    for trial in range(20):
        words = generate_codebooks(cfg, 3, trial).words
        for cell, user in itertools.product(range(2), range(2)):
            w = words[cell, user]
            corr = np.abs(w.conj() @ w.T)
            np.fill_diagonal(corr, 0)
            assert corr.max() < 1 - 1e-9


def test_first_and_last_compound_codeword():
    cb = generate_codebooks(SystemConfig(3, 3, 2, 1), 0, 0)
    first = compound_codeword(cb, 0, 1)
    np.testing.assert_array_equal(first.vectors, cb.words[0, :, 0])
    last = compound_codeword(cb, 1, 4)
    np.testing.assert_array_equal(last.vectors, cb.words[1, :, 1])


def test_user_one_is_least_significant():
    assert decode_index(2, 2, 1) == (1, 0)
    assert decode_index(3, 2, 1) == (0, 1)
    assert decode_index(6, 2, 2) == (1, 1)


def test_pairs_appear_once():
    cb = generate_codebooks(SystemConfig(3, 3, 2, 2), 0, 0)
    seen = set()
    for m in range(1, 17):
        vecs = compound_codeword(cb, 0, m).vectors
        idx = tuple(int(np.argmax(np.abs(cb.words[0, n].conj() @ vecs[n]))) for n in range(2))
        seen.add(idx)
    assert seen == set(itertools.product(range(4), range(4)))


@pytest.mark.parametrize("k,b", [(1, 12), (2, 6), (3, 4), (4, 3), (6, 2), (12, 1)])
def test_bijection_exhaustive(k, b):
    table = digit_table(k, b)
    assert len({tuple(r) for r in table}) == 2 ** (k * b)
    for m in range(1, 2 ** (k * b) + 1, max(1, 2 ** (k * b) // 512)):
        digits = decode_index(m, k, b)
        assert encode_index(digits, b) == m
        assert tuple(table[m - 1]) == digits
    assert all(encode_index(tuple(r), b) == i + 1 for i, r in enumerate(table))


def test_index_out_of_range():
    cb = generate_codebooks(SystemConfig(3, 3, 2, 1), 0, 0)
    with pytest.raises(IndexOutOfRange):
        compound_codeword(cb, 0, 0)
    with pytest.raises(IndexOutOfRange):
        compound_codeword(cb, 0, 5)
    with pytest.raises(IndexOutOfRange):
        encode_index((2, 0), 1)
