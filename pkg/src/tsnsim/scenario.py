"""Static network geometry: cells, users, a LEO constellation snapshot, and
the derived coverage / elevation-angle structure.

All terrestrial positions live in a local tangent plane centered on the
macro base station (meters).  Satellites carry a ground-projected (x, y)
plus an altitude; line-of-sight vectors to them are full 3-D.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, asdict
from functools import cached_property

import numpy as np

from .errors import PlacementError, VisibilityError
from .units import SPEED_OF_LIGHT

MACRO = "macro"
TSC = "tsc"
LSC = "lsc"

_PLACEMENT_ATTEMPTS = 20_000


@dataclass(frozen=True)
class Cell:
    index: int
    kind: str  # macro | tsc | lsc
    x: float
    y: float
    radius: float
    # Fixed (traditional) backhaul capacity.  For an LSC this is the value a
    # traditionally-backhauled deployment of the same cell would get; the
    # satellite-derived capacity is computed per run.
    backhaul_bps: float


@dataclass(frozen=True)
class User:
    x: float
    y: float
    data_rate_bytes: float  # bytes/s generated by this user


@dataclass(frozen=True)
class Satellite:
    x: float
    y: float
    altitude: float  # meters


@dataclass(frozen=True)
class ScenarioConfig:
    macro_radius: float = 1000.0
    small_radius: float = 200.0
    n_tsc: int = 25
    n_lsc: int = 25
    n_users: int = 100
    n_satellites: int = 8
    h_min: float = 600e3
    h_max: float = 1200e3
    sat_area_radius: float = 300e3  # radius of the constellation's projected-area disc
    sat_placement: str = "uniform"  # uniform | ring
    k_subch: int = 10
    q_subch: int = 10
    n_r: int = 2
    theta_th: float = 5.0  # degrees
    min_elevation: float = 35.0  # degrees
    data_rate_bytes: float = 3000.0
    macro_backhaul_mbps: float = 150.0
    tsc_backhaul_mbps: tuple[float, float] = (20.0, 30.0)

    def validate(self) -> None:
        if self.n_users < 1:
            raise ValueError("at least one user is required")
        for name in ("macro_radius", "small_radius", "h_min", "h_max",
                     "sat_area_radius", "theta_th", "data_rate_bytes"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.h_max < self.h_min:
            raise ValueError("h_max must be >= h_min")
        if self.n_r < 1 or self.k_subch < 1 or self.q_subch < 1:
            raise ValueError("n_r, k_subch and q_subch must be >= 1")
        if self.n_tsc < 0 or self.n_lsc < 0 or self.n_satellites < 0:
            raise ValueError("cell and satellite counts must be non-negative")
        if self.sat_placement not in ("uniform", "ring"):
            raise ValueError(f"unknown sat_placement {self.sat_placement!r}")


@dataclass
class Scenario:
    """Immutable world state for one drop.  Do not mutate after construction."""

    config: ScenarioConfig
    seed: int
    cells: tuple[Cell, ...]
    users: tuple[User, ...]
    satellites: tuple[Satellite, ...]
    theta_th: float = field(init=False)
    n_r: int = field(init=False)
    k_subch: int = field(init=False)
    q_subch: int = field(init=False)

    def __post_init__(self):
        self.theta_th = self.config.theta_th
        self.n_r = self.config.n_r
        self.k_subch = self.config.k_subch
        self.q_subch = self.config.q_subch
        kinds = [c.kind for c in self.cells]
        m_prime = self.config.n_tsc
        assert kinds[0] == MACRO
        assert all(k == TSC for k in kinds[1:1 + m_prime])
        assert all(k == LSC for k in kinds[1 + m_prime:])
        for sat in self.satellites:
            if not (0 < sat.altitude and
                    self.config.h_min <= sat.altitude <= self.config.h_max):
                raise ValueError("satellite altitude outside configured bounds")

    # --- index bookkeeping -------------------------------------------------
    @property
    def n_cells(self) -> int:
        return len(self.cells)

    @property
    def m_prime(self) -> int:
        return self.config.n_tsc

    @property
    def n_users(self) -> int:
        return len(self.users)

    @property
    def n_satellites(self) -> int:
        return len(self.satellites)

    @property
    def lsc_cell_indices(self) -> range:
        return range(1 + self.m_prime, self.n_cells)

    @property
    def n_tst(self) -> int:
        return self.n_cells - 1 - self.m_prime

    def tst_to_cell(self, t: int) -> int:
        return 1 + self.m_prime + t

    def cell_to_tst(self, m: int) -> int:
        t = m - 1 - self.m_prime
        if t < 0:
            raise IndexError(f"cell {m} is not an LSC")
        return t

    # --- derived geometry --------------------------------------------------
    @cached_property
    def user_xy(self) -> np.ndarray:
        return np.array([[u.x, u.y] for u in self.users], dtype=float).reshape(-1, 2)

    @cached_property
    def cell_xy(self) -> np.ndarray:
        return np.array([[c.x, c.y] for c in self.cells], dtype=float)

    @cached_property
    def cell_user_dist(self) -> np.ndarray:
        """(M+1, J) user-to-cell-center distances on the tangent plane."""
        d = self.cell_xy[:, None, :] - self.user_xy[None, :, :]
        return np.hypot(d[:, :, 0], d[:, :, 1])

    @cached_property
    def tst_sat_vectors(self) -> np.ndarray:
        """(T, N, 3) line-of-sight vectors from each TST to each satellite."""
        tst_xy = self.cell_xy[1 + self.m_prime:]
        out = np.zeros((self.n_tst, self.n_satellites, 3))
        for n, sat in enumerate(self.satellites):
            out[:, n, 0] = sat.x - tst_xy[:, 0]
            out[:, n, 1] = sat.y - tst_xy[:, 1]
            out[:, n, 2] = sat.altitude
        return out

    @cached_property
    def tst_sat_dist(self) -> np.ndarray:
        """(T, N) slant ranges."""
        return np.linalg.norm(self.tst_sat_vectors, axis=2)

    @cached_property
    def angle_matrix(self) -> np.ndarray:
        """(T, N) elevation angles in degrees."""
        v = self.tst_sat_vectors
        horiz = np.hypot(v[:, :, 0], v[:, :, 1])
        return np.degrees(np.arctan2(v[:, :, 2], horiz))

    @cached_property
    def visible(self) -> np.ndarray:
        """(T, N) True where the elevation clears the visibility threshold."""
        return self.angle_matrix >= self.config.min_elevation

    # --- operations ---------------------------------------------------------
    def angular_separation(self, tst: int, n1: int, n2: int) -> float:
        """Angle (degrees) at the TST between the two satellite directions."""
        for n in (n1, n2):
            if not self.visible[tst, n]:
                raise VisibilityError(f"satellite {n} not visible from TST {tst}")
        return self.raw_angular_separation(tst, n1, n2)

    def raw_angular_separation(self, tst: int, n1: int, n2: int) -> float:
        v1 = self.tst_sat_vectors[tst, n1]
        v2 = self.tst_sat_vectors[tst, n2]
        c = np.dot(v1, v2) / (np.linalg.norm(v1) * np.linalg.norm(v2))
        return float(np.degrees(np.arccos(np.clip(c, -1.0, 1.0))))

    def angle_gate(self, tst: int, n1: int, n2: int) -> bool:
        """True iff the two satellites may share a subchannel at this TST."""
        diff = abs(self.angle_matrix[tst, n1] - self.angle_matrix[tst, n2])
        return bool(diff >= self.theta_th)

    def propagation_delay(self, n: int) -> float:
        """Round-trip propagation delay of satellite n in seconds."""
        h = self.satellites[n].altitude
        if h <= 0:
            raise ValueError("satellite altitude must be positive")
        return 2.0 * h / SPEED_OF_LIGHT

    def cell_backhaul_bps(self) -> np.ndarray:
        return np.array([c.backhaul_bps for c in self.cells])

    # --- serialization -------------------------------------------------------
    def to_json(self) -> str:
        doc = {
            "config": _config_to_dict(self.config),
            "seed": self.seed,
            "cells": [asdict(c) for c in self.cells],
            "users": [asdict(u) for u in self.users],
            "satellites": [asdict(s) for s in self.satellites],
        }
        return json.dumps(doc, indent=2, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "Scenario":
        doc = json.loads(text)
        cfg = _config_from_dict(doc["config"])
        return Scenario(
            config=cfg,
            seed=doc["seed"],
            cells=tuple(Cell(**c) for c in doc["cells"]),
            users=tuple(User(**u) for u in doc["users"]),
            satellites=tuple(Satellite(**s) for s in doc["satellites"]),
        )


def _config_to_dict(cfg: ScenarioConfig) -> dict:
    d = asdict(cfg)
    d["tsc_backhaul_mbps"] = list(cfg.tsc_backhaul_mbps)
    return d


def _config_from_dict(d: dict) -> ScenarioConfig:
    known = set(ScenarioConfig.__dataclass_fields__)
    unknown = set(d) - known
    if unknown:
        raise ValueError(f"unknown scenario config keys: {sorted(unknown)}")
    d = dict(d)
    if "tsc_backhaul_mbps" in d:
        d["tsc_backhaul_mbps"] = tuple(d["tsc_backhaul_mbps"])
    return ScenarioConfig(**d)


def _uniform_disc(rng: np.random.Generator, radius: float) -> tuple[float, float]:
    r = radius * np.sqrt(rng.uniform())
    phi = rng.uniform(0.0, 2.0 * np.pi)
    return r * np.cos(phi), r * np.sin(phi)


def generate_scenario(config: ScenarioConfig, seed: int) -> Scenario:
    """Generate a deterministic drop for the given config and seed.

    Users are placed uniformly in the macro disc.  Small cells are placed by
    rejection sampling with minimum center spacing equal to the small-cell
    radius and without covering the macro BS location.  Satellites are
    snapshotted inside the projected-area disc with altitudes drawn from the
    configured band.
    """
    config.validate()
    rng = np.random.default_rng([seed, 0])

    users = tuple(
        User(*_uniform_disc(rng, config.macro_radius), config.data_rate_bytes)
        for _ in range(config.n_users)
    )

    n_small = config.n_tsc + config.n_lsc
    centers: list[tuple[float, float]] = []
    attempts = 0
    while len(centers) < n_small:
        attempts += 1
        if attempts > _PLACEMENT_ATTEMPTS:
            raise PlacementError(
                f"could not place {n_small} small cells of radius "
                f"{config.small_radius} in a {config.macro_radius} m disc"
            )
        x, y = _uniform_disc(rng, config.macro_radius)
        if np.hypot(x, y) < config.small_radius:
            continue
        if any(np.hypot(x - cx, y - cy) < config.small_radius
               for cx, cy in centers):
            continue
        centers.append((x, y))

    lo, hi = config.tsc_backhaul_mbps
    cells = [Cell(0, MACRO, 0.0, 0.0, config.macro_radius,
                  config.macro_backhaul_mbps * 1e6)]
    for i, (x, y) in enumerate(centers):
        kind = TSC if i < config.n_tsc else LSC
        cap = rng.uniform(lo, hi) * 1e6
        cells.append(Cell(len(cells), kind, x, y, config.small_radius, cap))

    sats = []
    for n in range(config.n_satellites):
        if config.sat_placement == "ring":
            phi = 2.0 * np.pi * n / max(config.n_satellites, 1)
            x, y = (config.sat_area_radius * np.cos(phi),
                    config.sat_area_radius * np.sin(phi))
        else:
            x, y = _uniform_disc(rng, config.sat_area_radius)
        alt = rng.uniform(config.h_min, config.h_max)
        sats.append(Satellite(x, y, alt))

    return Scenario(config=config, seed=seed, cells=tuple(cells),
                    users=users, satellites=tuple(sats))


def coverage_matrix(s: Scenario) -> np.ndarray:
    """Binary (M+1, J) matrix; entry 1 iff the user sits inside the cell."""
    radii = np.array([c.radius for c in s.cells])
    return (s.cell_user_dist <= radii[:, None]).astype(np.int8)
