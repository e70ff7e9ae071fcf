"""Spatial signatures, propagation coefficients, rank-one LoS channels,
and IRS phase-shift profiles.

Every channel matrix has the form a * c * p q^H with unit-norm spatial
signatures p (receive side) and q (transmit side). Large-scale fading is
fixed at a = 1. An IRS of side L acts on signals through the diagonal
reflection operator I_L (x) Theta, whose unit-modulus diagonal encodes the
per-row phase ramp pi * q_n * (l - (L-1)/2) + psi_n; psi_n only rotates a
common phase and is pinned to 0.
"""

from dataclasses import dataclass

import numpy as np

from .geometry import LinkAngles, Scenario
from .numerics import kron

# Common reflected-phase offset for all IRSs; it cancels in every SINR.
PSI_DEFAULT = 0.0


def signature(sin_beta: float, m: int) -> np.ndarray:
    """Unit-norm ULA spatial signature for observation angle beta.

    Element i (0-based): (1/sqrt(m)) e^{-j pi (m-1) sin(beta)/2} e^{-j pi i sin(beta)}.
    """
    if abs(sin_beta) > 1:
        raise ValueError(f"|sin(beta)| must be <= 1, got {sin_beta}")
    phase = -np.pi * sin_beta * (0.5 * (m - 1) + np.arange(m))
    return np.exp(1j * phase) / np.sqrt(m)


def irs_signature(sin_phi: float, l: int) -> np.ndarray:
    """Unit-norm UPA signature of an L x L IRS, viewed as L stacked ULAs:
    (1/sqrt(L)) * 1_L (x) signature(sin_phi, L). Length L^2."""
    return kron(np.ones(l), signature(sin_phi, l)) / np.sqrt(l)


def propagation_coeff(gain: float, area: float, distance: float, wavelength: float) -> complex:
    """Complex propagation coefficient: magnitude sqrt(G A / (4 pi d^2)),
    phase 2 pi d / lambda."""
    if distance <= 0 or area <= 0 or gain <= 0:
        raise ValueError("gain, area and distance must be positive")
    mag = np.sqrt(gain * area / (4 * np.pi * distance**2))
    return complex(mag * np.exp(1j * 2 * np.pi * distance / wavelength))


def irs_area(side: int, wavelength: float) -> float:
    """Effective area of an L x L IRS with lambda/2 element pitch: L^2 lambda^2 / 4."""
    return side**2 * wavelength**2 / 4


@dataclass(frozen=True)
class RankOneChannel:
    """One LoS channel a * c * p q^H between two multi-antenna devices."""

    a: float
    c: complex
    p: np.ndarray  # receive signature, unit norm
    q: np.ndarray  # transmit signature, unit norm

    def __post_init__(self):
        for v in (self.p, self.q):
            if abs(np.linalg.norm(v) - 1.0) > 1e-9:
                raise ValueError("channel signatures must be unit norm")

    @property
    def matrix(self) -> np.ndarray:
        """Dense matrix form a c p q^H (rows: receive side)."""
        return self.a * self.c * np.outer(self.p, np.conj(self.q))


@dataclass(frozen=True)
class ChannelSet:
    """All rank-one channels of a scenario: h1[n] BS->IRS n, h2[n][k]
    IRS n->UE k, h3[n] IRS n->MN."""

    h1: tuple[RankOneChannel, ...]
    h2: tuple[tuple[RankOneChannel, ...], ...]
    h3: tuple[RankOneChannel, ...]


@dataclass(frozen=True)
class IrsProfile:
    """Reflection state of one IRS: steering coefficient q_n, common phase
    psi_n, and the unit-modulus diagonal of I_L (x) Theta (length L^2)."""

    q_n: float
    psi_n: float
    side: int
    theta_diag: np.ndarray

    def theta_matrix(self) -> np.ndarray:
        """Dense L^2 x L^2 diagonal reflection operator. Only sensible for
        small sides; the simulator itself works on the diagonal."""
        return np.diag(self.theta_diag)


def phase_profile(q_n: float, psi_n: float, side: int) -> np.ndarray:
    """Unit-modulus diagonal of Theta for one L-element row: entry l
    (0-based) is exp(j (pi q_n (l - (L-1)/2) + psi))."""
    theta = np.pi * q_n * (np.arange(side) - 0.5 * (side - 1)) + psi_n
    return np.exp(1j * theta)


def steer_irs(s: Scenario, angles: LinkAngles, n: int, k: int) -> IrsProfile:
    """Profile that points IRS n toward UE k: q_n = sin(phi1_n) - sin(phi2_{n,k})."""
    q_n = float(angles.sin_phi1[n] - angles.sin_phi2[n, k])
    side = int(s.irs_sides[n])
    core = phase_profile(q_n, PSI_DEFAULT, side)
    return IrsProfile(q_n=q_n, psi_n=PSI_DEFAULT, side=side,
                      theta_diag=np.tile(core, side))


def build_channels(s: Scenario, angles: LinkAngles) -> ChannelSet:
    """Assemble every rank-one channel of the scenario (a = 1 throughout)."""
    h1 = []
    h2 = []
    h3 = []
    for n in range(s.num_irs):
        side = int(s.irs_sides[n])
        area = irs_area(side, s.wavelength)
        h1.append(RankOneChannel(
            a=1.0,
            c=propagation_coeff(s.m_bs, area, angles.d1[n], s.wavelength),
            p=irs_signature(angles.sin_phi1[n], side),
            q=signature(angles.sin_beta[n], s.m_bs)))
        h2.append(tuple(
            RankOneChannel(
                a=1.0,
                c=propagation_coeff(s.m_ue, area, angles.d2[n, k], s.wavelength),
                p=signature(angles.sin_alpha[k, n], s.m_ue),
                q=irs_signature(angles.sin_phi2[n, k], side))
            for k in range(s.num_ue)))
        h3.append(RankOneChannel(
            a=1.0,
            c=propagation_coeff(s.m_mn, area, angles.d3[n], s.wavelength),
            p=signature(angles.sin_eta[n], s.m_mn),
            q=irs_signature(angles.sin_phi3[n], side)))
    return ChannelSet(h1=tuple(h1), h2=tuple(h2), h3=tuple(h3))
