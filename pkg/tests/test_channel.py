import numpy as np
import pytest

from lfia.channel import RegimeWarning, SystemConfig, sample_channels, substream
from lfia.errors import InvalidConfig


def test_config_validation():
    with pytest.raises(InvalidConfig):
        SystemConfig(3, 3, 2, 0)
    with pytest.raises(InvalidConfig):
        SystemConfig(3, 0, 2, 1)
    with pytest.raises(InvalidConfig):
        SystemConfig(3, 3, 2, 1, cells=3)


def test_out_of_regime_is_flagged_not_rejected():
    with pytest.warns(RegimeWarning):
        cfg = SystemConfig(2, 5, 2, 2)
    assert not cfg.in_default_regime
    assert SystemConfig(3, 3, 2, 4).in_default_regime


def test_feedback_accounting():
    cfg = SystemConfig(3, 3, 2, 4)
    assert cfg.codebook_size == 16
    assert cfg.compound_size == 256
    assert cfg.feedback_bits_per_cell == 8


def test_deterministic():
    cfg = SystemConfig(3, 3, 2, 2)
    a = sample_channels(cfg, seed=7, trial=3)
    b = sample_channels(cfg, seed=7, trial=3)
    assert np.array_equal(a.direct, b.direct) and np.array_equal(a.cross, b.cross)
    c = sample_channels(cfg, seed=7, trial=4)
    assert not np.array_equal(a.direct, c.direct)


def test_shapes():
    cfg = SystemConfig(2, 3, 2, 1)
    ch = sample_channels(cfg, 0, 0)
    assert ch.direct.shape == (2, 2, 3, 2)
    assert ch.cross.shape == (2, 2, 3, 2)
    assert ch.interferers_at(0) is not None
    np.testing.assert_array_equal(ch.interferers_at(0), ch.cross[1])


def test_second_moment():
    cfg = SystemConfig(4, 4, 3, 1)
    entries = []
    trial = 0
    while sum(e.size for e in entries) < 100_000:
        ch = sample_channels(cfg, 11, trial)
        entries += [ch.direct.ravel(), ch.cross.ravel()]
        trial += 1
    g = np.concatenate(entries)
    assert np.mean(np.abs(g) ** 2) == pytest.approx(1.0, rel=0.02)
    assert np.var(g.real) == pytest.approx(0.5, rel=0.02)
    assert abs(np.mean(g.real * g.imag)) < 0.01


def test_distinct_streams():
    firsts = {substream(seed, trial, 0).standard_normal()
              for seed in range(10) for trial in range(100)}
    assert len(firsts) == 1000


def test_negative_seed_rejected():
    with pytest.raises(InvalidConfig):
        substream(-1, 0, 0)
