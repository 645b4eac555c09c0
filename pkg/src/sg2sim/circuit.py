"""Exact linear-optics engine for the four-detector splitter network.

The network: two interferometer arms meet at a recombining beamsplitter
(``bs2``); each of its outputs feeds another splitter (``bs3``, ``bs4``)
whose outputs are the four single-photon detectors A..D.  Output-pattern
probabilities for up to ~8 photons are computed exactly with matrix
permanents, including partially distinguishable inputs via pairwise
internal-state overlaps.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .fock import OccupationPattern
from .kernels import permanent_kernel

__all__ = [
    "BeamsplitterParams",
    "CircuitModel",
    "InternalState",
    "build_unitary",
    "bs_unitary",
    "permanent",
    "permanent_naive",
    "enumerate_patterns",
    "pattern_probability",
    "pattern_distribution",
    "output_pattern_probability",
    "hom_coincidence",
    "ARM_LONG",
    "ARM_SHORT",
    "DETECTORS",
]

UNITARITY_TOL = 1e-12

# Column indices of the 4x4 network unitary.  The two interferometer arms
# enter the recombining splitter on modes 1 (long path) and 2 (short path);
# modes 0 and 3 are the vacuum ports of the detector-side splitters.
ARM_LONG = 1
ARM_SHORT = 2
DETECTORS = ("A", "B", "C", "D")


@dataclass(frozen=True)
class BeamsplitterParams:
    """Amplitude reflectivity and transmissivity of a lossless splitter."""

    r: float
    t: float

    def __post_init__(self):
        if not (0.0 <= self.r <= 1.0 and 0.0 <= self.t <= 1.0):
            raise ValueError(f"r={self.r}, t={self.t} must lie in [0, 1]")
        if abs(self.r**2 + self.t**2 - 1.0) > UNITARITY_TOL:
            raise ValueError(f"r^2 + t^2 = {self.r ** 2 + self.t ** 2!r} != 1")

    @classmethod
    def balanced(cls) -> "BeamsplitterParams":
        v = 1.0 / math.sqrt(2.0)
        return cls(v, v)

    @classmethod
    def from_reflectivity(cls, r: float) -> "BeamsplitterParams":
        return cls(r, math.sqrt(max(0.0, 1.0 - r * r)))


def bs_unitary(bs: BeamsplitterParams) -> np.ndarray:
    """2x2 splitter matrix with the i*r reflection phase convention."""
    return np.array([[1j * bs.r, bs.t], [bs.t, 1j * bs.r]], dtype=complex)


def build_unitary(bs2: BeamsplitterParams, bs3: BeamsplitterParams, bs4: BeamsplitterParams) -> np.ndarray:
    """4x4 unitary of the splitter tree, rows = detectors A..D.

    Composed from bs2 acting on the two arm modes (1, 2), then bs3 on
    modes (0, 1) -> detectors A, B and bs4 on modes (2, 3) -> C, D.
    Reflections carry a factor i, transmissions are real.
    """
    r2, t2 = bs2.r, bs2.t
    r3, t3 = bs3.r, bs3.t
    r4, t4 = bs4.r, bs4.t
    u = np.array(
        [
            [1j * r3, 1j * r2 * t3, t2 * t3, 0.0],
            [t3, -r2 * r3, 1j * r3 * t2, 0.0],
            [0.0, 1j * r4 * t2, -r2 * r4, t4],
            [0.0, t2 * t4, 1j * r2 * t4, 1j * r4],
        ],
        dtype=complex,
    )
    dev = np.max(np.abs(u.conj().T @ u - np.eye(4)))
    if dev > 1e-10:
        raise ValueError(f"parameter set gives a non-unitary network (deviation {dev:.2e})")
    return u


@dataclass(frozen=True)
class CircuitModel:
    """Splitter parameters plus the interferometer delay in pulse periods."""

    bs2: BeamsplitterParams
    bs3: BeamsplitterParams
    bs4: BeamsplitterParams
    delay_pulses: int = 4

    def __post_init__(self):
        if self.delay_pulses < 1:
            raise ValueError(f"delay_pulses must be >= 1, got {self.delay_pulses}")
        object.__setattr__(self, "_unitary", build_unitary(self.bs2, self.bs3, self.bs4))

    @classmethod
    def balanced(cls, delay_pulses: int = 4) -> "CircuitModel":
        b = BeamsplitterParams.balanced()
        return cls(b, b, b, delay_pulses)

    @property
    def unitary(self) -> np.ndarray:
        return self._unitary.copy()

    def detector_probs(self, arm: int) -> np.ndarray:
        """Single-photon routing probabilities |U_la|^2 for one input arm."""
        return np.abs(self._unitary[:, arm]) ** 2


@dataclass(frozen=True)
class InternalState:
    """Non-spatial degrees of freedom of one photon.

    ``detuning`` is the spectral offset in natural overlap units: two
    photons with detunings da, db have Gaussian amplitude overlap
    exp(-(da-db)^2/4).  ``common_amp`` is the amplitude of the shared
    internal component (sqrt of the pairwise coalescence probability for
    spectrally identical photons).  Orthogonal polarisations never overlap.
    """

    detuning: float = 0.0
    polarization: int = 0
    common_amp: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.common_amp <= 1.0:
            raise ValueError(f"common_amp {self.common_amp} outside [0, 1]")

    def overlap(self, other: "InternalState") -> complex:
        if self is other:
            return 1.0 + 0.0j
        if self.polarization != other.polarization:
            return 0.0 + 0.0j
        d = self.detuning - other.detuning
        return complex(self.common_amp * other.common_amp * math.exp(-0.25 * d * d))


def permanent(m: np.ndarray) -> complex:
    """Exact matrix permanent (Gray-code Ryser summation)."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"permanent needs a square matrix, got shape {m.shape}")
    n = m.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    if n == 1:
        return complex(m[0, 0])
    return permanent_kernel(np.ascontiguousarray(m, dtype=complex))


def permanent_naive(m: np.ndarray) -> complex:
    """Permutation-sum reference, O(n!).  Test oracle for the Ryser kernel."""
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    total = 0.0 + 0.0j
    for perm in itertools.permutations(range(n)):
        prod = 1.0 + 0.0j
        for i, j in enumerate(perm):
            prod *= m[i, j]
        total += prod
    return total


def enumerate_patterns(n_photons: int, n_modes: int):
    """All occupation patterns of n photons over n_modes, fixed order."""
    if n_modes == 1:
        return [(n_photons,)]
    out = []
    for first in range(n_photons, -1, -1):
        for rest in enumerate_patterns(n_photons - first, n_modes - 1):
            out.append((first,) + rest)
    return out


def _output_slots(pattern) -> list:
    slots = []
    for mode, count in enumerate(pattern):
        slots.extend([mode] * count)
    return slots


def _input_norm(modes, gram: np.ndarray) -> float:
    """Norm of the input state: permanent of the mode-masked Gram matrix."""
    n = len(modes)
    g = np.array(gram, dtype=complex)
    for i in range(n):
        for j in range(n):
            if modes[i] != modes[j]:
                g[i, j] = 0.0
    return float(permanent(g).real)


def pattern_probability(u: np.ndarray, modes, pattern, gram: np.ndarray | None = None) -> float:
    """Probability of one output occupation pattern.

    ``modes`` lists the input mode of each photon; ``gram`` holds the
    pairwise internal-state overlaps (omitted = fully indistinguishable).
    Interference between photon orderings is weighted by the overlaps; the
    fully (in)distinguishable limits reduce to a single permanent.
    """
    modes = list(modes)
    n = len(modes)
    pattern = tuple(pattern)
    if sum(pattern) != n:
        raise ValueError(f"pattern {pattern} holds {sum(pattern)} photons, expected {n}")
    if n == 0:
        return 1.0
    if gram is None:
        gram = np.ones((n, n), dtype=complex)
    else:
        gram = np.asarray(gram, dtype=complex)
        if gram.shape != (n, n):
            raise ValueError(f"gram shape {gram.shape} does not match {n} photons")

    d = _output_slots(pattern)
    sub = u[np.ix_(d, modes)]  # sub[j, i] = amplitude of photon i into slot j
    fact = 1.0
    for c in pattern:
        fact *= math.factorial(c)

    off = gram[~np.eye(n, dtype=bool)]
    if np.allclose(off, 1.0, atol=1e-14):
        # fully indistinguishable: one permanent of the submatrix
        amp2 = abs(permanent(sub)) ** 2
        return float(amp2 / (fact * _input_norm(modes, gram)))
    if np.allclose(off, 0.0, atol=1e-14):
        # fully distinguishable: classical multinomial routing
        return float(permanent(np.abs(sub) ** 2).real / fact)

    norm = _input_norm(modes, gram)
    total = 0.0 + 0.0j
    for tau in itertools.permutations(range(n)):
        w = sub * gram[np.array(tau), :][:, :]  # w[j, i] = sub[j, i] * gram[tau[j], i]
        conj_amp = 1.0 + 0.0j
        for j in range(n):
            conj_amp *= sub[j, tau[j]].conjugate()
        total += conj_amp * permanent(w)
    p = total.real / (fact * norm)
    return float(max(p, 0.0))


def pattern_distribution(u: np.ndarray, modes, gram: np.ndarray | None = None):
    """All output patterns of ``len(modes)`` photons with their probabilities."""
    n_modes = u.shape[0]
    patterns = enumerate_patterns(len(modes), n_modes)
    probs = np.array([pattern_probability(u, modes, p, gram) for p in patterns])
    return patterns, probs


def output_pattern_probability(circuit: CircuitModel, inputs, pattern) -> float:
    """Pattern probability for photons entering the full detector network.

    ``inputs`` is a list of (input mode index, InternalState) pairs;
    ``pattern`` an OccupationPattern (or tuple) over detectors A..D.
    """
    if isinstance(pattern, OccupationPattern):
        pattern = pattern.counts
    modes = [m for m, _ in inputs]
    states = [s for _, s in inputs]
    n = len(states)
    gram = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            gram[i, j] = 1.0 if i == j else states[i].overlap(states[j])
    return pattern_probability(circuit._unitary, modes, pattern, gram)


def hom_coincidence(overlap_sq: float, r: float = None, t: float = None) -> float:
    """Two photons, one per splitter input: probability they exit apart.

    ``overlap_sq`` is the squared internal-state overlap; defaults to a
    balanced splitter where the coincidence probability is (1 - M) / 2.
    """
    if not 0.0 <= overlap_sq <= 1.0:
        raise ValueError(f"overlap_sq {overlap_sq} outside [0, 1]")
    if r is None and t is None:
        r = t = 1.0 / math.sqrt(2.0)
    bs = BeamsplitterParams(r, t)
    r2, t2 = bs.r**2, bs.t**2
    return (r2 - t2) ** 2 + 2.0 * r2 * t2 * (1.0 - overlap_sq)
