import numpy as np
import pytest

from sdoflab.model import (AntennaConfig, InvalidConfig, InvalidEveCount,
                           PowerPolicy, canonical, is_degenerate,
                           sample_channels, sample_eves, validate)


class TestValidate:
    def test_ok(self):
        assert validate(AntennaConfig(2, 2, 4, 1)) == "ok"

    def test_degenerate_when_ne_reaches_m(self):
        assert validate(AntennaConfig(2, 2, 3, 4)) == "degenerate"
        assert is_degenerate(AntennaConfig(2, 2, 3, 4))

    def test_zero_antennas_invalid(self):
        with pytest.raises(InvalidConfig):
            validate(AntennaConfig(0, 2, 3, 1))

    def test_negative_field_invalid(self):
        with pytest.raises(InvalidConfig):
            AntennaConfig(2, 2, 3, -1)


def test_canonical_swaps_transmitters():
    cfg = canonical(AntennaConfig(1, 3, 2, 2))
    assert (cfg.m1, cfg.m2, cfg.n, cfg.ne) == (3, 1, 2, 2)
    assert canonical(AntennaConfig(3, 1, 2, 2)) == cfg


class TestPowerPolicy:
    def test_alpha_bounds(self):
        with pytest.raises(InvalidConfig):
            PowerPolicy(p=1.0, alpha=0.0)
        with pytest.raises(InvalidConfig):
            PowerPolicy(p=1.0, alpha=1.0)

    def test_positive_power(self):
        with pytest.raises(InvalidConfig):
            PowerPolicy(p=0.0)


class TestSampleChannels:
    def test_shape_contract(self):
        ch = sample_channels(AntennaConfig(2, 2, 3, 1), [1], 1.0, 7)
        assert ch.h1.shape == (3, 2) and ch.h2.shape == (3, 2)
        assert len(ch.eves) == 1
        g1, g2 = ch.eves[0]
        assert g1.shape == (1, 2) and g2.shape == (1, 2)

    def test_multiple_eavesdroppers(self):
        ch = sample_channels(AntennaConfig(3, 2, 2, 2), [2, 1], 1.0, 7)
        assert ch.eves[0][0].shape == (2, 3) and ch.eves[0][1].shape == (2, 2)
        assert ch.eves[1][0].shape == (1, 3) and ch.eves[1][1].shape == (1, 2)

    def test_deterministic_given_seed(self):
        cfg = AntennaConfig(2, 2, 3, 1)
        a = sample_channels(cfg, [1], 1.0, 7)
        b = sample_channels(cfg, [1], 1.0, 7)
        assert np.array_equal(a.h1, b.h1) and np.array_equal(a.h2, b.h2)
        assert np.array_equal(a.eves[0][0], b.eves[0][0])

    def test_different_seeds_differ(self):
        cfg = AntennaConfig(2, 2, 3, 1)
        a = sample_channels(cfg, [1], 1.0, 7)
        b = sample_channels(cfg, [1], 1.0, 8)
        assert not np.array_equal(a.h1, b.h1)

    def test_full_rank_every_draw(self):
        cfg = AntennaConfig(4, 3, 3, 2)
        for seed in range(25):
            ch = sample_channels(cfg, [], 1.0, seed)
            for h in (ch.h1, ch.h2):
                s = np.linalg.svd(h, compute_uv=False)
                assert s[-1] > 1e-9 * s[0]

    def test_eve_count_exceeding_ne(self):
        with pytest.raises(InvalidEveCount):
            sample_channels(AntennaConfig(2, 2, 3, 1), [2], 1.0, 7)

    def test_unit_variance_entries(self):
        ch = sample_channels(AntennaConfig(8, 8, 8, 1), [], 1.0, 3)
        pooled = np.concatenate([ch.h1.ravel(), ch.h2.ravel()])
        assert abs(np.mean(np.abs(pooled) ** 2) - 1.0) < 0.2


class TestSampleEvesSlots:
    def test_block_diagonal_structure(self):
        cfg = AntennaConfig(2, 2, 3, 1)
        rng = np.random.default_rng(0)
        (g1, g2), = sample_eves(cfg, [1], rng, slots=2)
        assert g1.shape == (2, 4) and g2.shape == (2, 4)
        # off-diagonal blocks identically zero
        assert np.all(g1[0, 2:] == 0) and np.all(g1[1, :2] == 0)
        # per-slot blocks are independent draws
        assert not np.array_equal(g1[0, :2], g1[1, 2:])

    def test_zero_antenna_eavesdropper(self):
        cfg = AntennaConfig(2, 2, 3, 1)
        (g1, _), = sample_eves(cfg, [0], np.random.default_rng(0))
        assert g1.shape == (0, 2)

    def test_moment_knobs(self):
        cfg = AntennaConfig(8, 8, 8, 8)
        (g1, g2), = sample_eves(cfg, [8], np.random.default_rng(1),
                                mean=5.0, var=0.01)
        pooled = np.concatenate([g1.ravel(), g2.ravel()])
        assert abs(np.mean(pooled.real) - 5.0) < 0.1
        assert np.mean(np.abs(pooled - 5.0) ** 2) < 0.05
