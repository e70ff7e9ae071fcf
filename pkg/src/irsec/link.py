"""End-to-end link evaluation under one UE-to-IRS permutation: effective
channels, ZF precoding, SINR, data rate and secrecy rate.

The effective BS->UE channel row is f_k^H sum_n H2_{k,n} Theta_n H1_n over
the active IRSs; with rank-one factors this collapses to scalar cascade
gains times the BS-side signatures, which is how it is computed here (the
dense-product form is kept as a test oracle). The MN sees the same cascade
through its own channels, once per candidate pointing direction.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .channel import ChannelSet, signature, steer_irs
from .errors import ValidationError
from .geometry import LinkAngles, Scenario
from .numerics import conj_transpose, frobenius_norm, gram_solve


@dataclass(frozen=True)
class Permutation:
    """Injective map from UE index k to the IRS serving it (0-based)."""

    assignment: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(int(n) for n in self.assignment))
        if len(set(self.assignment)) != len(self.assignment):
            raise ValueError(f"permutation must be injective, got {self.assignment}")

    def serves(self, k: int) -> int:
        """IRS index serving UE k."""
        return self.assignment[k]


@dataclass(frozen=True)
class EffectiveChannels:
    """h_tilde: (M_BS, K), column k is the effective BS->UE-k channel.
    b_tilde: (N, M_BS), row n is the effective BS->MN channel when the MN
    points its beam at IRS n."""

    h_tilde: np.ndarray
    b_tilde: np.ndarray


@dataclass(frozen=True)
class LinkMetrics:
    """Per-permutation link metrics: UE rates (bits/s), UE SINRs, MN SINRs
    per (pointing IRS, eavesdropped stream), and nonnegative secrecy rates
    SR[n, k] = max(0, R[k] - B log2(1 + SINR_MN[n, k]))."""

    rate: np.ndarray  # (K,)
    sinr_ue: np.ndarray  # (K,)
    sinr_mn: np.ndarray  # (N, K)
    secrecy: np.ndarray  # (N, K)


def effective_channels(s: Scenario, ch: ChannelSet, angles: LinkAngles,
                       p: Permutation) -> EffectiveChannels:
    """Effective channels under permutation p. Only the K active IRSs of p
    reflect; idle IRSs are treated as absorbing."""
    active = list(p.assignment)
    k_count = s.num_ue

    # Cascade gains g = q^H Theta p1 for every (receiver, active IRS) pair,
    # evaluated in one batched kernel call.
    profiles = {n: steer_irs(s, angles, n, k) for k, n in enumerate(active)}
    rx_rows, phase_rows, tx_rows = [], [], []
    for k in range(k_count):
        for n in active:
            rx_rows.append(ch.h2[n][k].q)
            phase_rows.append(profiles[n].theta_diag)
            tx_rows.append(ch.h1[n].p)
    for n in active:
        rx_rows.append(ch.h3[n].q)
        phase_rows.append(profiles[n].theta_diag)
        tx_rows.append(ch.h1[n].p)
    gains = kernels.cascade_gains(np.array(rx_rows), np.array(phase_rows), np.array(tx_rows))
    g2 = gains[:k_count * len(active)].reshape(k_count, len(active))
    g3 = gains[k_count * len(active):]

    # UE side: h_k^H = sum_n c1 c2 g2 (f_k^H p2) q1^H with f_k the UE beam
    # toward its serving IRS.
    q1 = np.array([ch.h1[n].q for n in active])  # (K, M_BS)
    weights = np.empty((k_count, len(active)), dtype=complex)
    for k in range(k_count):
        f_k = signature(angles.sin_alpha[k, p.serves(k)], s.m_ue)
        for j, n in enumerate(active):
            c = ch.h1[n].a * ch.h1[n].c * ch.h2[n][k].a * ch.h2[n][k].c
            weights[k, j] = c * g2[k, j] * np.vdot(f_k, ch.h2[n][k].p)
    h_tilde = (np.conj(weights) @ q1).T

    # MN side: the cascade sum is independent of where the MN points.
    cascade = np.zeros((s.m_mn, s.m_bs), dtype=complex)
    for j, n in enumerate(active):
        c = ch.h1[n].a * ch.h1[n].c * ch.h3[n].a * ch.h3[n].c
        cascade += c * g3[j] * np.outer(ch.h3[n].p, np.conj(ch.h1[n].q))
    pointings = np.array([ch.h3[n].p for n in range(s.num_irs)])  # b_n == p3_n
    b_tilde = pointings @ np.conj(cascade)
    return EffectiveChannels(h_tilde=h_tilde, b_tilde=b_tilde)


def zf_precoder(s: Scenario, ec: EffectiveChannels) -> np.ndarray:
    """Zero-forcing precoder Gamma = sqrt(Pt) X / ||X||_F with
    X = H_tilde (H_tilde^H H_tilde)^{-1} Q^{1/2}, so that H_tilde^H Gamma
    is a positive multiple of Q^{1/2} and ||Gamma||_F^2 = Pt exactly.

    Raises IllConditioned for near-collinear effective channels.
    """
    x = gram_solve(ec.h_tilde, np.diag(np.sqrt(s.q_weights)).astype(complex))
    return np.sqrt(s.tx_power) * x / frobenius_norm(x)


def link_metrics(s: Scenario, ec: EffectiveChannels, gamma: np.ndarray,
                 allow_weighted_q: bool = False) -> LinkMetrics:
    """SINRs, rates and secrecy rates for one permutation.

    The MN SINR carries the stream weights q_k explicitly while the
    precoder columns already include Q^{1/2}; for Q != I the two readings
    of the model disagree, so non-uniform weights are rejected unless
    `allow_weighted_q` is set.
    """
    q = s.q_weights
    if not allow_weighted_q and not np.allclose(q, 1.0):
        raise ValidationError("non-uniform q_weights require allow_weighted_q=True")
    noise = s.noise_power

    # |diag|^2 = Pt q_k / ||X||_F^2 with X the normalized pseudo-inverse
    # solve from zf_precoder; normalizing by the raw channel norm instead
    # would break the transmit power constraint, so that reading is not used.
    diag = np.diagonal(conj_transpose(ec.h_tilde) @ gamma)
    sinr_ue = np.abs(diag) ** 2 / noise

    amp2 = np.abs(np.conj(ec.b_tilde) @ gamma) ** 2  # (N, K), |b_n^H gamma_k|^2
    weighted = amp2 * q[None, :]
    totals = weighted.sum(axis=1, keepdims=True)
    sinr_mn = weighted / (totals - weighted + noise)

    rate = s.bandwidth * np.log2(1.0 + sinr_ue)
    mn_rate = s.bandwidth * np.log2(1.0 + sinr_mn)
    secrecy = np.maximum(0.0, rate[None, :] - mn_rate)
    return LinkMetrics(rate=rate, sinr_ue=sinr_ue, sinr_mn=sinr_mn, secrecy=secrecy)


@dataclass(frozen=True)
class _CascadeTable:
    """Per-scenario precomputation shared by all permutations: cascade
    gains for every (receiver, IRS, steering target) triple, propagation
    coefficient products, UE beam overlaps and BS-side signatures."""

    g2: np.ndarray  # (K, N, K) q2^H Theta p1 with IRS n steered to UE ks
    g3: np.ndarray  # (N, K) MN-side cascade gains
    beam: np.ndarray  # (K, N_serv, N) f_k^H p2, f_k pointing at IRS n_serv
    c12: np.ndarray  # (K, N) c1_n * c2_{k,n}
    c13: np.ndarray  # (N,) c1_n * c3_n
    q1: np.ndarray  # (N, M_BS) BS-side transmit signatures
    p3: np.ndarray  # (N, M_MN) MN-side receive signatures / beams


def _cascade_table(s: Scenario, ch: ChannelSet, angles: LinkAngles) -> _CascadeTable:
    k_count, n_count = s.num_ue, s.num_irs
    profiles = [[steer_irs(s, angles, n, ks).theta_diag for ks in range(k_count)]
                for n in range(n_count)]
    rx, phase, tx = [], [], []
    for k in range(k_count):
        for n in range(n_count):
            for ks in range(k_count):
                rx.append(ch.h2[n][k].q)
                phase.append(profiles[n][ks])
                tx.append(ch.h1[n].p)
    for n in range(n_count):
        for ks in range(k_count):
            rx.append(ch.h3[n].q)
            phase.append(profiles[n][ks])
            tx.append(ch.h1[n].p)
    gains = kernels.cascade_gains(np.array(rx), np.array(phase), np.array(tx))
    split = k_count * n_count * k_count
    g2 = gains[:split].reshape(k_count, n_count, k_count)
    g3 = gains[split:].reshape(n_count, k_count)

    beam = np.empty((k_count, n_count, n_count), dtype=complex)
    c12 = np.empty((k_count, n_count), dtype=complex)
    for k in range(k_count):
        for n in range(n_count):
            c12[k, n] = (ch.h1[n].a * ch.h1[n].c * ch.h2[n][k].a * ch.h2[n][k].c)
            for ns in range(n_count):
                beam[k, ns, n] = np.vdot(ch.h2[ns][k].p, ch.h2[n][k].p)
    c13 = np.array([ch.h1[n].a * ch.h1[n].c * ch.h3[n].a * ch.h3[n].c
                    for n in range(n_count)])
    q1 = np.array([ch.h1[n].q for n in range(n_count)])
    p3 = np.array([ch.h3[n].p for n in range(n_count)])
    return _CascadeTable(g2=g2, g3=g3, beam=beam, c12=c12, c13=c13, q1=q1, p3=p3)


def _effective_from_table(t: _CascadeTable, p: Permutation) -> EffectiveChannels:
    """Same math as effective_channels, assembled from the cascade table."""
    active = list(p.assignment)
    k_count = len(active)
    w = np.empty((k_count, k_count), dtype=complex)
    for k in range(k_count):
        for j, n in enumerate(active):
            w[k, j] = t.c12[k, n] * t.g2[k, n, j] * t.beam[k, active[k], n]
    h_tilde = (np.conj(w) @ t.q1[active]).T
    coeff = np.array([t.c13[n] * t.g3[n, j] for j, n in enumerate(active)])
    cascade = (t.p3[active].T * coeff) @ np.conj(t.q1[active])
    b_tilde = t.p3 @ np.conj(cascade)
    return EffectiveChannels(h_tilde=h_tilde, b_tilde=b_tilde)


@dataclass(frozen=True)
class PermutationMetrics:
    """Stacked LinkMetrics for a list of permutations (one scenario)."""

    perms: tuple[Permutation, ...]
    num_irs: int
    rate: np.ndarray  # (P, K)
    sinr_ue: np.ndarray  # (P, K)
    sinr_mn: np.ndarray  # (P, N, K)
    secrecy: np.ndarray  # (P, N, K)

    def __post_init__(self):
        object.__setattr__(self, "_index", {p.assignment: i for i, p in enumerate(self.perms)})

    def index_of(self, p: Permutation) -> int:
        return self._index[p.assignment]

    def sum_rate(self, p: Permutation) -> float:
        return float(self.rate[self.index_of(p)].sum())


def compute_all_metrics(s: Scenario, ch: ChannelSet, angles: LinkAngles,
                        perms, allow_weighted_q: bool = False) -> PermutationMetrics:
    """Evaluate link metrics for every permutation in `perms`."""
    perms = tuple(perms)
    table = _cascade_table(s, ch, angles)
    rate = np.empty((len(perms), s.num_ue))
    sinr_ue = np.empty_like(rate)
    sinr_mn = np.empty((len(perms), s.num_irs, s.num_ue))
    secrecy = np.empty_like(sinr_mn)
    for i, p in enumerate(perms):
        ec = _effective_from_table(table, p)
        gamma = zf_precoder(s, ec)
        m = link_metrics(s, ec, gamma, allow_weighted_q=allow_weighted_q)
        rate[i] = m.rate
        sinr_ue[i] = m.sinr_ue
        sinr_mn[i] = m.sinr_mn
        secrecy[i] = m.secrecy
    return PermutationMetrics(perms=perms, num_irs=s.num_irs, rate=rate,
                              sinr_ue=sinr_ue, sinr_mn=sinr_mn, secrecy=secrecy)
