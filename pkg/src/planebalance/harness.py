"""Brute-force oracles, seeded instance generators, and scenario files.

The oracles enumerate every sign pattern and are the independent ground
truth against which the constructive algorithms are checked.  Generators
are deterministic in their seed.  Scenario objects are the JSON form the
CLI consumes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .geometry import Norm, Vec2, as_vec2
from .fermat import Configuration
from .game import GameConfig

MAX_SIGN_ENUM = 24
MAX_STREAM_ENUM = 20

_CHUNK_BITS = 16


@dataclass(frozen=True)
class OracleResult:
    min_value: float
    signs: tuple[int, ...]
    enumerated: int


def _sign_chunk(n: int, lo: int, hi: int) -> np.ndarray:
    """Sign rows for pattern numbers lo..hi-1; the first vector's sign is
    the most significant bit, so ascending numbers are ascending
    lexicographic patterns with -1 < +1."""
    b = np.arange(lo, hi, dtype=np.int64)
    bits = (b[:, None] >> np.arange(n - 1, -1, -1)) & 1
    return (bits * 2 - 1).astype(float)


def brute_force_min_signs(norm: Norm, vectors: Sequence) -> OracleResult:
    """Exact minimum of the signed-sum norm over all 2^n sign patterns.

    Ties resolve to the lexicographically smallest pattern (-1 before +1).
    """
    n = len(vectors)
    if n == 0:
        raise ValueError("need at least one vector")
    if n > MAX_SIGN_ENUM:
        raise ValueError(f"enumeration capped at n <= {MAX_SIGN_ENUM}, got {n}")
    X = np.array([as_vec2(v).as_tuple() for v in vectors])
    total = 1 << n
    step = 1 << _CHUNK_BITS
    best_val = math.inf
    best_b = 0
    for lo in range(0, total, step):
        hi = min(lo + step, total)
        S = _sign_chunk(n, lo, hi)
        vals = norm.values(S @ X)
        i = int(np.argmin(vals))
        if vals[i] < best_val:
            best_val = float(vals[i])
            best_b = lo + i
    signs = tuple(int(s) for s in _sign_chunk(n, best_b, best_b + 1)[0])
    return OracleResult(best_val, signs, total)


def brute_force_stream_bound(norm: Norm, vectors: Sequence) -> float:
    """The offline optimum of the largest even-prefix norm over all sign
    patterns; a lower bound for what any online strategy can achieve."""
    n = len(vectors)
    if n == 0 or n % 2 != 0:
        raise ValueError(f"need an even number of vectors, got {n}")
    if n > MAX_STREAM_ENUM:
        raise ValueError(f"enumeration capped at n <= {MAX_STREAM_ENUM}, got {n}")
    X = np.array([as_vec2(v).as_tuple() for v in vectors])
    total = 1 << n
    step = 1 << (_CHUNK_BITS - 2)
    best = math.inf
    for lo in range(0, total, step):
        hi = min(lo + step, total)
        S = _sign_chunk(n, lo, hi)
        prefixes = np.cumsum(S[:, :, None] * X[None, :, :], axis=1)
        even = prefixes[:, 1::2, :]
        worst = norm.values(even).max(axis=1)
        best = min(best, float(worst.min()))
    return best


# -- seeded generators ----------------------------------------------------------


def random_unit_vectors(norm: Norm, count: int, rng: np.random.Generator) -> list[Vec2]:
    """Unit vectors with uniformly random angles, normalized under the norm."""
    angles = rng.uniform(0.0, 2.0 * math.pi, count)
    dirs = np.stack([np.cos(angles), np.sin(angles)], axis=-1)
    dirs = dirs / norm.values(dirs)[:, None]
    return [Vec2(float(x), float(y)) for x, y in dirs]


def random_opposite_ray_configuration(n: int, rng: np.random.Generator) -> Configuration:
    """A configuration satisfying the opposite-ray property: n odd site
    directions built by interleaving each direction with the opposite of
    the half-shifted one, then random radii and a random candidate."""
    if n < 1 or n % 2 == 0:
        raise ValueError(f"need an odd number of sites, got {n}")
    gaps = rng.uniform(0.2, 1.0, n)
    gaps = gaps * (math.pi / gaps.sum())
    phi0 = rng.uniform(0.0, 2.0 * math.pi)
    doubled = np.concatenate([gaps, gaps])
    alphas = phi0 + np.concatenate([[0.0], np.cumsum(doubled)[:-1]])
    site_angles = alphas[0::2]
    radii = rng.uniform(0.5, 2.0, n)
    candidate = Vec2(float(rng.uniform(-1.0, 1.0)), float(rng.uniform(-1.0, 1.0)))
    sites = [candidate + Vec2(float(r * math.cos(a)), float(r * math.sin(a)))
             for r, a in zip(radii, site_angles)]
    return Configuration(candidate, sites)


# -- scenarios -------------------------------------------------------------------

_MODES = ("balance", "stream", "game", "ft")


@dataclass(frozen=True)
class Scenario:
    """One runnable unit of work for the CLI: a mode, a norm, and exactly
    the payload that mode needs."""

    mode: str
    norm: Norm
    vectors: tuple[Vec2, ...] | None = None
    points: Configuration | None = None
    game: GameConfig | None = None

    def __post_init__(self) -> None:
        if self.mode not in _MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        wants_vectors = self.mode in ("balance", "stream")
        if wants_vectors != (self.vectors is not None):
            raise ValueError(f"mode {self.mode!r} requires vectors"
                             if wants_vectors else
                             f"mode {self.mode!r} does not take vectors")
        if (self.mode == "ft") != (self.points is not None):
            raise ValueError("points are exactly the ft-mode payload")
        if (self.mode == "game") != (self.game is not None):
            raise ValueError("a game config is exactly the game-mode payload")

    def to_json_dict(self) -> dict:
        out: dict = {"mode": self.mode, "norm": self.norm.to_config()}
        if self.vectors is not None:
            out["vectors"] = [[v.x, v.y] for v in self.vectors]
        if self.points is not None:
            out["points"] = {"p0": [self.points.candidate.x, self.points.candidate.y],
                             "sites": [[s.x, s.y] for s in self.points.sites]}
        if self.game is not None:
            out["game"] = {"k": self.game.k, "dim": self.game.dim,
                           "rounds": self.game.rounds, "seed": self.game.seed}
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, data: dict) -> "Scenario":
        norm = Norm.from_config(data["norm"])
        vectors = None
        if "vectors" in data:
            vectors = tuple(as_vec2(v) for v in data["vectors"])
        points = None
        if "points" in data:
            points = Configuration(data["points"]["p0"], data["points"]["sites"])
        game = None
        if "game" in data:
            g = data["game"]
            game = GameConfig(k=g["k"], dim=g.get("dim", 2), norm=norm,
                              rounds=g.get("rounds", 100), seed=g.get("seed", 0))
        return cls(data["mode"], norm, vectors=vectors, points=points, game=game)

    @classmethod
    def loads(cls, text: str) -> "Scenario":
        return cls.from_json_dict(json.loads(text))


def generate_instance(kind: str, norm: Norm, size: int, seed: int) -> Scenario:
    """Deterministic random instances: unit-vector lists, opposite-ray
    configurations, or game configs."""
    rng = np.random.default_rng(seed)
    if kind == "unit-vectors":
        vectors = tuple(random_unit_vectors(norm, size, rng))
        mode = "balance" if size % 2 == 1 else "stream"
        return Scenario(mode, norm, vectors=vectors)
    if kind == "ft-config":
        return Scenario("ft", norm, points=random_opposite_ray_configuration(size, rng))
    if kind == "game":
        return Scenario("game", norm,
                        game=GameConfig(k=size, dim=2, norm=norm, rounds=100, seed=seed))
    raise ValueError(f"unsupported instance kind {kind!r}")


def standard_norms() -> list[tuple[str, Norm]]:
    """The battery used throughout the test and demo suites: Euclidean,
    three lp norms, the max-norm square, and a fixed generic hexagon."""
    return [
        ("euclidean", Norm.euclidean()),
        ("l1", Norm.lp(1.0)),
        ("l1.5", Norm.lp(1.5)),
        ("l3", Norm.lp(3.0)),
        ("maxpoly", Norm.polygon([(1.0, 1.0), (-1.0, 1.0)])),
        ("hexagon", Norm.polygon([(1.0, 0.15), (0.55, 0.9), (-0.6, 1.1)])),
    ]
