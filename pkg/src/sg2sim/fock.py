"""Photon-number distributions, mode occupation patterns and source parameters.

Everything here is an immutable value object; sampling takes an explicit
numpy Generator so results are reproducible and thread-safe.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "FockDistribution",
    "OccupationPattern",
    "SourceModel",
    "sample_photon_number",
    "zeta",
]

N_MAX = 3  # one- two- and three-photon components; higher terms are zero

NORM_TOL = 1e-12


@dataclass(frozen=True)
class FockDistribution:
    """Diagonal photon-number distribution p_0 .. p_3.

    ``p3_is_upper_bound`` marks a distribution whose last entry is a
    confidence bound rather than a measured probability; such distributions
    are exempt from the sum-to-one check.
    """

    p: tuple
    p3_is_upper_bound: bool = False

    def __post_init__(self):
        p = tuple(float(v) for v in self.p)
        if len(p) != N_MAX + 1:
            raise ValueError(f"expected {N_MAX + 1} probabilities, got {len(p)}")
        if any(v < 0.0 or v > 1.0 for v in p):
            raise ValueError(f"probabilities must lie in [0, 1]: {p}")
        if not self.p3_is_upper_bound and abs(sum(p) - 1.0) > NORM_TOL:
            raise ValueError(f"probabilities sum to {sum(p)!r}, not 1")
        object.__setattr__(self, "p", p)

    @classmethod
    def from_brightness(cls, p1: float, g2: float = 0.0, p3: float = 0.0) -> "FockDistribution":
        """Build a source distribution from brightness p1 and purity g2.

        Uses p2 = g2 * p1**2 / 2; p0 absorbs the remainder.
        """
        p2 = 0.5 * g2 * p1 * p1
        p0 = 1.0 - p1 - p2 - p3
        if p0 < 0.0:
            raise ValueError(f"p1={p1}, g2={g2}, p3={p3} leave negative vacuum weight")
        return cls((p0, p1, p2, p3))

    @classmethod
    def thermal(cls, nbar: float) -> "FockDistribution":
        """Bose-Einstein distribution truncated at n=3 and renormalised."""
        if nbar <= 0.0:
            raise ValueError("nbar must be positive")
        w = [nbar**n / (1.0 + nbar) ** (n + 1) for n in range(N_MAX + 1)]
        s = sum(w)
        return cls(tuple(v / s for v in w))

    @property
    def mean(self) -> float:
        return sum(n * pn for n, pn in enumerate(self.p))

    def g2_value(self) -> float:
        """Second-order correlation 2*p2/p1**2 implied by the distribution."""
        if self.p[1] == 0.0:
            raise ValueError("g2 undefined for a source with p1 = 0")
        return 2.0 * self.p[2] / self.p[1] ** 2

    def is_hierarchical(self) -> bool:
        """True when p0 >= p1 >= p2 >= p3 (weak-excitation hierarchy)."""
        return all(self.p[n] >= self.p[n + 1] for n in range(N_MAX))


@dataclass(frozen=True)
class OccupationPattern:
    """Per-mode photon counts at the circuit output."""

    counts: tuple

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if any(c < 0 for c in counts):
            raise ValueError(f"negative occupation in {counts}")
        object.__setattr__(self, "counts", counts)

    @property
    def total_photons(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class SourceModel:
    """Pulsed source: number distribution, indistinguishability and jitter.

    ``indistinguishability`` is the pairwise coalescence probability of two
    photons with identical spectral detuning.  ``zeta0`` and ``tau1`` (in
    pulse periods) parametrise the slow brightness/spectral wander; zeta0 = 1
    means a perfectly stable source.  ``jitter_coupling`` sets how strongly
    the spectral wander degrades pairwise overlap (0 = brightness
    correlations only).
    """

    fock: FockDistribution
    indistinguishability: float
    zeta0: float = 1.0
    tau1: float = 1.0
    pulse_period_ns: float = 6.575
    jitter_coupling: float = 0.15

    def __post_init__(self):
        if not 0.0 <= self.indistinguishability <= 1.0:
            raise ValueError(f"indistinguishability {self.indistinguishability} outside [0, 1]")
        # The chi-squared brightness weight 1 + sqrt((zeta0-1)/2)*(x^2-1)
        # stays non-negative only for zeta0 <= 3.
        if not 1.0 <= self.zeta0 <= 3.0:
            raise ValueError(f"zeta0 must lie in [1, 3], got {self.zeta0}")
        if self.tau1 <= 0.0:
            raise ValueError(f"tau1 must be positive, got {self.tau1}")
        if self.pulse_period_ns <= 0.0:
            raise ValueError(f"pulse_period_ns must be positive, got {self.pulse_period_ns}")
        if self.jitter_coupling < 0.0:
            raise ValueError(f"jitter_coupling must be non-negative, got {self.jitter_coupling}")

    def delay_ns(self, delay_pulses: int) -> float:
        return delay_pulses * self.pulse_period_ns


def zeta(k, zeta0: float, tau1: float):
    """Pulse-separation correction 1 + (zeta0 - 1) * exp(-|k| / tau1).

    Even in k, decays from zeta0 at k=0 to 1 at large separation.  Accepts
    scalars or arrays.
    """
    if tau1 <= 0.0:
        raise ValueError("tau1 must be positive")
    k = np.asarray(k, dtype=float)
    out = 1.0 + (zeta0 - 1.0) * np.exp(-np.abs(k) / tau1)
    return float(out) if out.ndim == 0 else out


def sample_photon_number(dist: FockDistribution, rng: np.random.Generator, size=None):
    """Draw photon numbers from ``dist`` with an explicit generator."""
    cdf = np.cumsum(dist.p)
    if size is None:
        return int(np.searchsorted(cdf, rng.random(), side="right"))
    return np.searchsorted(cdf, rng.random(size), side="right").astype(np.int64)
