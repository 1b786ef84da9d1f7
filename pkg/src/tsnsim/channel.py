"""Link gains and rate formulas for the C-band access and Ka-band backhaul.

All rate functions return spectral efficiency (bits/s/Hz); conversion to
absolute rates happens only at the cell-rate / link-capacity boundary so
that matching utilities stay dimensionally consistent.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import AssignmentError
from .scenario import Scenario
from .units import BOLTZMANN, SPEED_OF_LIGHT, db_to_linear, dbm_to_watts

LN2 = np.log(2.0)

# Noise density -174 dBm/Hz, per subchannel of 20 MHz / 10.
_DEFAULT_SIGMA2_B = db_to_linear(-174.0 - 30.0) * 20e6 / 10
# Ka receiver folded link budget: kB * B_q * NF / (G/T), defaults for Q = 10.
_DEFAULT_SIGMA2_T = BOLTZMANN * 40e6 * db_to_linear(1.2 - 18.5)


@dataclass(frozen=True)
class RadioParams:
    p_u: float = dbm_to_watts(23.0)  # user transmit power, W
    sigma2_b: float = _DEFAULT_SIGMA2_B  # C-band noise per subchannel, W
    sigma2_t: float = _DEFAULT_SIGMA2_T  # Ka-band noise per subchannel, W
    bw_c: float = 20e6
    bw_ka: float = 400e6
    alpha: float = 3.7  # path-loss exponent for the power-law model
    rician_k: float = 7.0
    g_max_dbi: float = 43.3  # TST boresight gain
    p_t_max: float = 2.0  # max TST transmit power, W
    fc_c_ghz: float = 5.0
    fc_ka_hz: float = 30e9
    shadowing_sigma_db: float = 8.0
    noise_figure_ka_db: float = 1.2
    g_over_t_db: float = 18.5
    aperture_m: float = 0.6
    pathloss: str = "umi"  # umi | powerlaw

    def __post_init__(self):
        if min(self.p_u, self.sigma2_b, self.sigma2_t, self.bw_c,
               self.bw_ka, self.p_t_max) <= 0:
            raise ValueError("powers and bandwidths must be positive")
        if self.rician_k < 0:
            raise ValueError("rician_k must be >= 0")

    @property
    def g_max(self) -> float:
        return db_to_linear(self.g_max_dbi)

    @classmethod
    def from_link_budget(cls, k_subch: int, q_subch: int, **overrides) -> "RadioParams":
        """Build params with per-subchannel noise derived from the budget."""
        base = cls(**overrides) if overrides else cls()
        sigma2_b = db_to_linear(-174.0 - 30.0) * base.bw_c / k_subch
        sigma2_t = (BOLTZMANN * (base.bw_ka / q_subch)
                    * db_to_linear(base.noise_figure_ka_db - base.g_over_t_db))
        return replace(base, sigma2_b=sigma2_b, sigma2_t=sigma2_t)


@dataclass
class ChannelRealization:
    """Sampled squared channel gains for one drop (linear power gains)."""

    hb2: np.ndarray  # (M+1, J, K)
    ht2: np.ndarray  # (T, N, Q)
    seed: int

    def __post_init__(self):
        if not (np.all(np.isfinite(self.hb2)) and np.all(self.hb2 > 0)):
            raise ValueError("C-band gains must be positive and finite")
        if self.ht2.size and not (np.all(np.isfinite(self.ht2)) and np.all(self.ht2 > 0)):
            raise ValueError("Ka-band gains must be positive and finite")

    def to_json(self) -> str:
        return json.dumps({
            "seed": self.seed,
            "hb2": self.hb2.tolist(),
            "ht2": self.ht2.tolist(),
        })

    @staticmethod
    def from_json(text: str) -> "ChannelRealization":
        doc = json.loads(text)
        return ChannelRealization(np.array(doc["hb2"]), np.array(doc["ht2"]),
                                  doc["seed"])


def rayleigh_power(rng: np.random.Generator, size) -> np.ndarray:
    """Unit-mean Rayleigh power fading |g|^2 with g ~ CN(0, 1)."""
    return rng.exponential(1.0, size)


def rician_power(rng: np.random.Generator, k: float, size) -> np.ndarray:
    """Unit-mean Rician power fading with K-factor k."""
    mean = np.sqrt(k / (k + 1.0))
    scale = np.sqrt(1.0 / (2.0 * (k + 1.0)))
    re = mean + scale * rng.standard_normal(size)
    im = scale * rng.standard_normal(size)
    return re * re + im * im


def umi_pathloss_gain(d: np.ndarray, fc_ghz: float) -> np.ndarray:
    """UMi NLOS path gain: PL(dB) = 22.7 + 36.7 log10(d) + 26 log10(f_GHz)."""
    d = np.maximum(d, 1.0)
    pl_db = 22.7 + 36.7 * np.log10(d) + 26.0 * np.log10(fc_ghz)
    return 10.0 ** (-pl_db / 10.0)


def powerlaw_gain(d: np.ndarray, alpha: float) -> np.ndarray:
    return np.maximum(d, 1.0) ** (-alpha)


def freespace_gain(d: np.ndarray, fc_hz: float) -> np.ndarray:
    lam = SPEED_OF_LIGHT / fc_hz
    return (lam / (4.0 * np.pi * d)) ** 2


def sample_realization(s: Scenario, params: RadioParams, seed: int) -> ChannelRealization:
    """Draw all fading realizations for one drop; bit-reproducible per seed."""
    rng = np.random.default_rng([seed, 1])
    m1, j, k = s.n_cells, s.n_users, s.k_subch

    fading_b = rayleigh_power(rng, (m1, j, k))
    shadow = 10.0 ** (rng.normal(0.0, params.shadowing_sigma_db, (m1, j)) / 10.0)
    if params.pathloss == "umi":
        pl = umi_pathloss_gain(s.cell_user_dist, params.fc_c_ghz)
    else:
        pl = powerlaw_gain(s.cell_user_dist, params.alpha)
    hb2 = fading_b * (shadow * pl)[:, :, None]

    t, n, q = s.n_tst, s.n_satellites, s.q_subch
    if t and n:
        fading_t = rician_power(rng, params.rician_k, (t, n, q))
        fspl = freespace_gain(s.tst_sat_dist, params.fc_ka_hz)
        ht2 = fading_t * fspl[:, :, None]
    else:
        ht2 = np.ones((t, n, q))

    return ChannelRealization(hb2=hb2, ht2=ht2, seed=seed)


# --- off-axis antenna mask ---------------------------------------------------

def offaxis_gain(phi_deg, params: RadioParams):
    """Reference off-axis gain mask of a parabolic earth-station antenna.

    Boresight returns the configured maximum gain; beyond that the standard
    reference mask applies: a parabolic main-lobe roll-off up to phi_m, a
    first-sidelobe plateau G1 up to phi_r, 32 - 25 log10(phi) dBi up to 48
    degrees, and a -10 dBi floor beyond.  Returns linear gain.
    """
    phi = np.asarray(phi_deg, dtype=float)
    if np.any(phi < 0):
        raise ValueError("off-axis angle must be >= 0")
    d_over_lam = params.aperture_m * params.fc_ka_hz / SPEED_OF_LIGHT
    g1_dbi = 2.0 + 15.0 * np.log10(d_over_lam)
    phi_m = (20.0 / d_over_lam) * np.sqrt(max(params.g_max_dbi - g1_dbi, 0.0))
    phi_r = max(15.85 * d_over_lam ** (-0.6), phi_m)

    with np.errstate(divide="ignore"):
        log_phi = np.where(phi > 0, np.log10(np.maximum(phi, 1e-12)), 0.0)
    gain_dbi = np.select(
        [phi < phi_m, phi < phi_r, phi < 48.0],
        [params.g_max_dbi - 2.5e-3 * (d_over_lam * phi) ** 2,
         g1_dbi,
         32.0 - 25.0 * log_phi],
        default=-10.0,
    )
    out = 10.0 ** (gain_dbi / 10.0)
    return float(out) if np.isscalar(phi_deg) else out


@dataclass
class KaGeometry:
    """Precomputed pairwise off-axis gains for the backhaul interference model.

    offgain[t, n_victim, n_target] is the antenna gain of TST t toward
    satellite n_victim while pointing at n_target; the diagonal holds the
    boresight gain.
    """

    scenario: Scenario
    params: RadioParams

    @cached_property
    def offgain(self) -> np.ndarray:
        s, p = self.scenario, self.params
        t, n = s.n_tst, s.n_satellites
        out = np.full((t, n, n), p.g_max)
        for ti in range(t):
            for na in range(n):
                for nb in range(na + 1, n):
                    phi = s.raw_angular_separation(ti, na, nb)
                    g = offaxis_gain(phi, p)
                    out[ti, na, nb] = g
                    out[ti, nb, na] = g
        return out


# --- terrestrial rates --------------------------------------------------------

Triple = tuple[int, int, int]  # (cell m, user j, subchannel k)


def terrestrial_sinr(m: int, j: int, k: int, triples: Iterable[Triple],
                     real: ChannelRealization, params: RadioParams) -> float:
    interference = 0.0
    seen = False
    for (m2, j2, k2) in triples:
        if (m2, j2, k2) == (m, j, k):
            seen = True
            continue
        if k2 == k and m2 != m and j2 != j:
            interference += params.p_u * real.hb2[m, j2, k]
    if not seen:
        raise AssignmentError(f"({m}, {j}, {k}) is not assigned")
    return params.p_u * real.hb2[m, j, k] / (params.sigma2_b + interference)


def terrestrial_rate(m: int, j: int, k: int, triples: Iterable[Triple],
                     real: ChannelRealization, params: RadioParams) -> float:
    """Spectral efficiency of user j at cell m on subchannel k (bits/s/Hz)."""
    return float(np.log2(1.0 + terrestrial_sinr(m, j, k, triples, real, params)))


def subchannel_rates(k: int, pairs: Sequence[tuple[int, int]],
                     real: ChannelRealization, params: RadioParams) -> np.ndarray:
    """Rates of all (cell, user) pairs sharing subchannel k, vectorized."""
    if not pairs:
        return np.zeros(0)
    ms = np.fromiter((p[0] for p in pairs), dtype=int)
    js = np.fromiter((p[1] for p in pairs), dtype=int)
    cross = real.hb2[np.ix_(ms, js)][:, :, k]  # cross[i, l] = gain of user l at cell i
    own = np.diag(cross).copy()
    np.fill_diagonal(cross, 0.0)
    interference = params.p_u * cross.sum(axis=1)
    return np.log2(1.0 + params.p_u * own / (params.sigma2_b + interference))


def cell_rate(m: int, triples: Iterable[Triple], real: ChannelRealization,
              params: RadioParams) -> float:
    """Absolute data rate of cell m in bits/s."""
    triples = list(triples)
    k_count = real.hb2.shape[2]
    bw = params.bw_c / k_count
    total = 0.0
    for (m2, j2, k2) in triples:
        if m2 == m:
            total += terrestrial_rate(m2, j2, k2, triples, real, params)
    return total * bw


# --- Ka-band rates --------------------------------------------------------------

Link = tuple[int, int, int, float]  # (tst t, satellite n, subchannel q, power W)


def ka_sinr(t: int, n: int, q: int, links: Iterable[Link],
            real: ChannelRealization, params: RadioParams,
            geom: KaGeometry) -> float:
    own_power = None
    interference = 0.0
    for (t2, n2, q2, p2) in links:
        if (t2, n2, q2) == (t, n, q):
            own_power = p2
            continue
        if q2 == q:
            interference += p2 * geom.offgain[t2, n, n2] * real.ht2[t2, n, q]
    if own_power is None:
        raise AssignmentError(f"({t}, {n}, {q}) is not an active link")
    signal = own_power * params.g_max * real.ht2[t, n, q]
    return signal / (params.sigma2_t + interference)


def ka_rate(t: int, n: int, q: int, links: Iterable[Link],
            real: ChannelRealization, params: RadioParams,
            geom: KaGeometry) -> float:
    """Spectral efficiency of the TST t -> satellite n link on q (bits/s/Hz)."""
    return float(np.log2(1.0 + ka_sinr(t, n, q, list(links), real, params, geom)))


def ka_subchannel_rates(q: int, links: Sequence[Link], real: ChannelRealization,
                        params: RadioParams, geom: KaGeometry) -> np.ndarray:
    """Rates of all links on subchannel q, vectorized over receivers."""
    active = [l for l in links if l[2] == q]
    if not active:
        return np.zeros(0)
    ts = np.array([l[0] for l in active])
    ns = np.array([l[1] for l in active])
    ps = np.array([l[3] for l in active])
    # gain[i, l]: channel from transmitter l toward the satellite of link i
    gain = geom.offgain[ts[None, :], ns[:, None], ns[None, :]] \
        * real.ht2[ts[None, :], ns[:, None], q]
    own = ps * params.g_max * real.ht2[ts, ns, q]
    cross = ps[None, :] * gain
    np.fill_diagonal(cross, 0.0)
    interference = cross.sum(axis=1)
    return np.log2(1.0 + own / (params.sigma2_t + interference))
