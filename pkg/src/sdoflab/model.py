"""Antenna configurations, random channels, and power bookkeeping.

The network has two transmitters with ``m1`` and ``m2`` antennas, one
legitimate receiver with ``n`` antennas, and any number of passive
eavesdroppers with at most ``ne`` antennas each.  Legitimate channels
are held constant for the duration of an experiment trial; eavesdropper
channels are time varying and get redrawn for every Monte-Carlo sample
(and, under a time extension, independently for every symbol slot of
the extended block).

All entries are i.i.d. circularly-symmetric complex Gaussian, so every
sampled channel is full rank with probability one; this is asserted on
every draw.
"""

from dataclasses import dataclass, field

import numpy as np

from .matlin import as_matrix


class InvalidConfig(ValueError):
    """Antenna configuration violates a structural requirement."""


class InvalidEveCount(ValueError):
    """An eavesdropper antenna count is out of range."""


@dataclass(frozen=True)
class AntennaConfig:
    """Antenna counts ``(m1, m2, n, ne)``.

    ``m1`` and ``m2`` are the transmitter array sizes, ``n`` the
    legitimate receiver's, and ``ne`` the largest eavesdropper array the
    system is designed against.  Configurations with ``ne >= m1 + m2``
    are representable but *degenerate*: no positive secure rate exists
    and the secure-degrees-of-freedom value is zero.
    """

    m1: int
    m2: int
    n: int
    ne: int

    def __post_init__(self):
        for name in ("m1", "m2", "n", "ne"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or v < 0:
                raise InvalidConfig(f"{name} must be a nonnegative integer, got {v!r}")

    @property
    def m(self):
        """Total transmit antennas ``m1 + m2``."""
        return self.m1 + self.m2


def canonical(cfg):
    """Relabel transmitters so that ``m1 >= m2``.

    The channel is symmetric under swapping the transmitters, and the
    closed-form case conditions compare ``m1`` (not ``m2``) against
    ``n``, so all theory-side code works on the canonical orientation.
    """
    if cfg.m1 >= cfg.m2:
        return cfg
    return AntennaConfig(cfg.m2, cfg.m1, cfg.n, cfg.ne)


def is_degenerate(cfg):
    """True when an eavesdropper can have as many antennas as both transmitters."""
    return cfg.ne >= cfg.m


def validate(cfg):
    """Classify a configuration as ``"ok"`` or ``"degenerate"``.

    Raises :class:`InvalidConfig` when a transmitter or the receiver has
    zero antennas.
    """
    if cfg.m1 < 1 or cfg.m2 < 1 or cfg.n < 1:
        raise InvalidConfig(
            f"transmitters and receiver need at least one antenna: "
            f"({cfg.m1}, {cfg.m2}, {cfg.n})")
    return "degenerate" if is_degenerate(cfg) else "ok"


@dataclass(frozen=True)
class PowerPolicy:
    """Per-transmitter power budget ``p`` and jamming fraction ``alpha``.

    Each transmitter spends ``alpha * p`` on jamming and the rest on its
    legitimate streams.
    """

    p: float
    alpha: float = 0.5

    def __post_init__(self):
        if not self.p > 0:
            raise InvalidConfig(f"power must be positive, got {self.p}")
        if not 0.0 < self.alpha < 1.0:
            raise InvalidConfig(f"alpha must lie in (0, 1), got {self.alpha}")


@dataclass
class ChannelRealization:
    """One draw of all channel matrices.

    ``h1``/``h2`` are the legitimate channels (``n x m_i``); ``eves`` is
    a list of per-eavesdropper pairs ``(g1, g2)``.  For a ``slots``-fold
    time extension the eavesdropper matrices are block diagonal with one
    independent block per slot (shape ``slots*nej x slots*m_i``).
    """

    h1: np.ndarray
    h2: np.ndarray
    eves: list = field(default_factory=list)
    noise_var: float = 1.0


def complex_gaussian(rng, rows, cols, mean=0.0, var=1.0):
    """Matrix of i.i.d. circularly-symmetric complex Gaussian entries."""
    scale = np.sqrt(var / 2.0)
    z = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    return mean + scale * z


def _assert_full_rank(h, tol=1e-9):
    if min(h.shape) == 0:
        return
    s = np.linalg.svd(h, compute_uv=False)
    if s[-1] <= tol * s[0]:
        raise RuntimeError("sampled channel is numerically rank deficient")


def sample_eves(cfg, eve_counts, rng, slots=1, mean=0.0, var=1.0):
    """Draw eavesdropper channel pairs, one per entry of ``eve_counts``.

    Each pair is returned already lifted to ``slots`` symbol slots as a
    block-diagonal matrix with an independent draw per slot, which is
    the time-varying eavesdropper model: over an extended block the
    eavesdropper sees a fresh channel every channel use.
    """
    eves = []
    for nej in eve_counts:
        if not 0 <= nej <= cfg.ne:
            raise InvalidEveCount(
                f"eavesdropper antenna count {nej} outside [0, {cfg.ne}]")
        pair = []
        for mi in (cfg.m1, cfg.m2):
            g = np.zeros((slots * nej, slots * mi), dtype=complex)
            for k in range(slots):
                g[k * nej:(k + 1) * nej, k * mi:(k + 1) * mi] = \
                    complex_gaussian(rng, nej, mi, mean, var)
            pair.append(g)
        eves.append((pair[0], pair[1]))
    return eves


def sample_channels(cfg, eve_counts, noise_var, seed, *,
                    eve_mean=0.0, eve_var=1.0, slots=1):
    """Draw a full channel realization, deterministic given ``seed``.

    Parameters
    ----------
    cfg : AntennaConfig
    eve_counts : sequence of int
        Antenna count of each eavesdropper; every entry must be at most
        ``cfg.ne``.
    noise_var : float
        Receiver (and eavesdropper) noise variance.
    seed : int or numpy seed-like
        Anything accepted by ``numpy.random.default_rng``.
    eve_mean, eve_var : float
        First and second moments of the eavesdropper channel entries.
        Nothing downstream depends on the mean; it is exposed only as a
        modeling knob and defaults to zero.
    slots : int
        Time-extension factor for the eavesdropper lift (legitimate
        channels are returned unextended; the precoder layer lifts them
        block-diagonally as needed).
    """
    if not noise_var > 0:
        raise InvalidConfig(f"noise variance must be positive, got {noise_var}")
    validate(cfg)
    rng = np.random.default_rng(seed)
    h1 = complex_gaussian(rng, cfg.n, cfg.m1)
    h2 = complex_gaussian(rng, cfg.n, cfg.m2)
    _assert_full_rank(h1)
    _assert_full_rank(h2)
    eves = sample_eves(cfg, eve_counts, rng, slots=slots,
                       mean=eve_mean, var=eve_var)
    return ChannelRealization(as_matrix(h1), as_matrix(h2), eves,
                              float(noise_var))
