"""Scenario geometry: node placement and every link angle/distance.

The model is strictly 2-D (all nodes share the same height). Coordinate
frame: the room is [0, room_size] x [0, room_size] meters, the BS sits at
(0, 0), IRSs hang on the northern wall y = room_size with their normals
pointing into the room. BS, UE and MN ULAs all have their element axis
parallel to the x-axis, so the observation angle of a target seen from an
array at `a` satisfies sin(angle) = (target - a) . x_hat / |target - a|.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGeometry, PlacementFailure, ValidationError

PLACEMENT_ATTEMPTS = 10_000


@dataclass(frozen=True)
class ScenarioTemplate:
    """Scenario parameters without sampled positions. Defaults follow the
    reference small-scale setup: 32-antenna BS, 4 UEs, 4 IRSs of 64x64
    meta-atoms, 100 GHz carrier, 1 GHz bandwidth, 30 dBm transmit power,
    -174 dBm/Hz noise PSD."""

    num_ue: int = 4
    num_irs: int = 4
    m_bs: int = 32
    m_ue: int = 4
    m_mn: int = 4
    irs_side: int = 64
    wavelength: float = 3e-3
    bandwidth: float = 1e9
    tx_power: float = 1.0
    noise_psd: float = 10 ** (-174 / 10) * 1e-3
    q_weights: tuple[float, ...] | None = None
    victim_index: int = 0
    room_size: float = 10.0
    mn_radius: float = 1.0


@dataclass(frozen=True)
class Scenario:
    """Immutable geometry + radio parameters for one random drop.

    Positions are 2-D points in meters. `victim_index` is the 0-based
    index of the eavesdropped UE (config files use 1-based numbering).
    """

    bs_position: np.ndarray
    ue_positions: np.ndarray  # (K, 2)
    irs_positions: np.ndarray  # (N, 2)
    mn_position: np.ndarray
    m_bs: int
    m_ue: int
    m_mn: int
    irs_sides: np.ndarray  # (N,) meta-atom grid side lengths L_n
    wavelength: float
    bandwidth: float
    tx_power: float
    noise_psd: float
    q_weights: np.ndarray  # (K,) diagonal of Q
    victim_index: int
    room_size: float = 10.0

    def __post_init__(self):
        for name in ("bs_position", "ue_positions", "irs_positions", "mn_position"):
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "irs_sides", np.asarray(self.irs_sides, dtype=int))
        q = np.asarray(self.q_weights, dtype=float)
        q.setflags(write=False)
        object.__setattr__(self, "q_weights", q)
        self._validate()

    def _validate(self):
        k, n = self.num_ue, self.num_irs
        if k > n:
            raise ValidationError(f"need at least as many IRSs as UEs, got K={k} > N={n}")
        if min(self.m_bs, self.m_ue, self.m_mn) < 1 or np.any(self.irs_sides < 1):
            raise ValidationError("antenna counts and IRS sides must be positive")
        for name, value in (("tx_power", self.tx_power), ("bandwidth", self.bandwidth),
                            ("wavelength", self.wavelength), ("noise_psd", self.noise_psd)):
            if value <= 0:
                raise ValidationError(f"{name} must be positive, got {value}")
        if not (0 <= self.victim_index < k):
            raise ValidationError(f"victim_index {self.victim_index} outside 0..{k - 1}")
        if self.q_weights.shape != (k,) or np.any(self.q_weights <= 0):
            raise ValidationError("q_weights must be K positive reals")
        if not np.allclose(self.irs_positions[:, 1], self.room_size):
            raise ValidationError("IRSs must sit on the northern wall y = room_size")
        pts = np.vstack([self.bs_position, self.ue_positions,
                         self.irs_positions, self.mn_position])
        if len(np.unique(pts, axis=0)) != len(pts):
            raise ValidationError("node positions must be pairwise distinct")

    @property
    def num_ue(self) -> int:
        return self.ue_positions.shape[0]

    @property
    def num_irs(self) -> int:
        return self.irs_positions.shape[0]

    @property
    def noise_power(self) -> float:
        """Receiver noise power N0 * B in watts."""
        return self.noise_psd * self.bandwidth


@dataclass(frozen=True)
class LinkAngles:
    """All angles (radians), their sines, and distances (meters) consumed
    by the channel model. Sines are stored alongside the angles because
    every downstream formula depends on sin(angle) only."""

    beta: np.ndarray  # (N,) IRS n seen from the BS array
    phi1: np.ndarray  # (N,) BS seen from IRS n
    phi2: np.ndarray  # (N, K) UE k seen from IRS n
    phi3: np.ndarray  # (N,) MN seen from IRS n
    alpha: np.ndarray  # (K, N) IRS n seen from UE k
    eta: np.ndarray  # (N,) IRS n seen from the MN array
    sin_beta: np.ndarray
    sin_phi1: np.ndarray
    sin_phi2: np.ndarray
    sin_phi3: np.ndarray
    sin_alpha: np.ndarray
    sin_eta: np.ndarray
    d1: np.ndarray  # (N,) BS-IRS distance
    d2: np.ndarray  # (N, K) IRS-UE distance
    d3: np.ndarray  # (N,) IRS-MN distance


def _sin_toward(origin: np.ndarray, targets: np.ndarray):
    """sin of the observation angle (x-axis array convention) and distance
    from `origin` to each row of `targets`."""
    diff = np.atleast_2d(targets) - origin
    dist = np.linalg.norm(diff, axis=1)
    if np.any(dist < 1e-12):
        raise DegenerateGeometry("link endpoints coincide")
    return diff[:, 0] / dist, dist


def _sin_from_each(origins: np.ndarray, target: np.ndarray):
    """Same, but one target observed from each row of `origins`."""
    diff = target[None, :] - np.atleast_2d(origins)
    dist = np.linalg.norm(diff, axis=1)
    if np.any(dist < 1e-12):
        raise DegenerateGeometry("link endpoints coincide")
    return diff[:, 0] / dist, dist


def compute_angles(s: Scenario) -> LinkAngles:
    """All link angles and distances for a scenario.

    Raises DegenerateGeometry if any two endpoints of a link coincide.
    """
    sin_beta, d1 = _sin_toward(s.bs_position, s.irs_positions)
    sin_phi1, _ = _sin_from_each(s.irs_positions, s.bs_position)
    sin_phi2 = np.empty((s.num_irs, s.num_ue))
    d2 = np.empty((s.num_irs, s.num_ue))
    for n, p in enumerate(s.irs_positions):
        sin_phi2[n], d2[n] = _sin_toward(p, s.ue_positions)
    sin_phi3, d3 = _sin_from_each(s.irs_positions, s.mn_position)
    sin_alpha = np.empty((s.num_ue, s.num_irs))
    for k, p in enumerate(s.ue_positions):
        sin_alpha[k], _ = _sin_toward(p, s.irs_positions)
    sin_eta, _ = _sin_toward(s.mn_position, s.irs_positions)
    return LinkAngles(
        beta=np.arcsin(sin_beta), phi1=np.arcsin(sin_phi1), phi2=np.arcsin(sin_phi2),
        phi3=np.arcsin(sin_phi3), alpha=np.arcsin(sin_alpha), eta=np.arcsin(sin_eta),
        sin_beta=sin_beta, sin_phi1=sin_phi1, sin_phi2=sin_phi2, sin_phi3=sin_phi3,
        sin_alpha=sin_alpha, sin_eta=sin_eta, d1=d1, d2=d2, d3=d3,
    )


def random_scenario(seed: int, params: ScenarioTemplate) -> Scenario:
    """Sample a scenario: UEs uniform over the room, IRSs at uniform-random
    x on the northern wall (sorted, minimum spacing one wavelength), MN
    uniform in the disc of radius `mn_radius` around the victim UE and
    clipped to the room. Deterministic for a fixed seed.

    Raises PlacementFailure if IRS spacing rejection sampling exceeds
    PLACEMENT_ATTEMPTS tries.
    """
    if params.room_size <= 0:
        raise ValidationError(f"room_size must be positive, got {params.room_size}")
    rng = np.random.default_rng(seed)
    room = params.room_size

    ue = rng.uniform(0.0, room, size=(params.num_ue, 2))

    for _ in range(PLACEMENT_ATTEMPTS):
        xs = np.sort(rng.uniform(0.0, room, size=params.num_irs))
        if params.num_irs < 2 or np.min(np.diff(xs)) >= params.wavelength:
            break
    else:
        raise PlacementFailure(
            f"could not place {params.num_irs} IRSs with spacing >= {params.wavelength} m "
            f"on a {room} m wall within {PLACEMENT_ATTEMPTS} attempts")
    irs = np.column_stack([xs, np.full(params.num_irs, room)])

    # clipping to the room can only shrink the MN-victim distance, but it
    # may also park the MN exactly on another node (e.g. the BS corner);
    # redraw in that measure-zero case
    others = np.vstack([np.zeros(2), ue, irs])
    for _ in range(PLACEMENT_ATTEMPTS):
        radius = params.mn_radius * np.sqrt(rng.uniform())
        angle = rng.uniform(0.0, 2 * np.pi)
        mn = ue[params.victim_index] + radius * np.array([np.cos(angle), np.sin(angle)])
        mn = np.clip(mn, 0.0, room)
        if not np.any(np.all(others == mn, axis=1)):
            break
    else:
        raise PlacementFailure("could not place the MN off the other nodes")

    q = params.q_weights if params.q_weights is not None else np.ones(params.num_ue)
    return Scenario(
        bs_position=np.zeros(2), ue_positions=ue, irs_positions=irs, mn_position=mn,
        m_bs=params.m_bs, m_ue=params.m_ue, m_mn=params.m_mn,
        irs_sides=np.full(params.num_irs, params.irs_side),
        wavelength=params.wavelength, bandwidth=params.bandwidth,
        tx_power=params.tx_power, noise_psd=params.noise_psd,
        q_weights=np.asarray(q, dtype=float), victim_index=params.victim_index,
        room_size=room,
    )
