"""The round-based balancing game.

Each round Player I supplies k unit vectors and Player II picks their
signs; the position accumulates the signed sums.  With an even k in the
plane the pairwise strategy keeps the position within norm 2 forever.
With odd k (any dimension, Euclidean) or even k in dimension 3, the
orthogonal adversaries force unbounded square-root growth regardless of
Player II's choices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .geometry import CERT_EPS, Norm, Vec2, as_vec2
from .balance_online import pair_step

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))

MAX_EXHAUSTIVE_K = 16

PLAYER1_NAMES = ("random", "all-equal", "rotating", "repeat-orthogonal",
                 "orthogonal-3d")
PLAYER2_NAMES = ("pairwise", "random", "greedy", "exhaustive-best")


class ProtocolViolation(RuntimeError):
    """A strategy broke the game protocol (non-unit vector or bad sign)."""

    def __init__(self, player: str, round_index: int, message: str):
        super().__init__(f"{player}, round {round_index}: {message}")
        self.player = player
        self.round_index = round_index


@dataclass(frozen=True)
class GameConfig:
    k: int
    dim: int = 2
    norm: Norm = field(default_factory=Norm.euclidean)
    rounds: int = 100
    seed: int = 0

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be positive")
        if self.dim not in (2, 3):
            raise ValueError("dim must be 2 or 3")
        if self.rounds < 1:
            raise ValueError("rounds must be positive")
        if self.dim == 3 and self.norm.kind != "euclidean":
            raise ValueError("dimension 3 requires the Euclidean norm")

    def position_norm(self, p: np.ndarray) -> float:
        if self.dim == 2:
            return self.norm.value(Vec2(float(p[0]), float(p[1])))
        return float(np.linalg.norm(p))


@dataclass(frozen=True)
class RoundRecord:
    vectors: tuple[tuple[float, ...], ...]
    signs: tuple[int, ...]
    position: tuple[float, ...]


@dataclass(frozen=True)
class GameTrajectory:
    config: GameConfig
    records: tuple[RoundRecord, ...]
    positions: tuple[tuple[float, ...], ...]  # p_0 = origin, then one per round
    norms: tuple[float, ...]

    @property
    def max_norm(self) -> float:
        return max(self.norms)

    @property
    def final_position(self) -> tuple[float, ...]:
        return self.positions[-1]

    def write_csv(self, fp) -> None:
        """One row per vector: the running position after applying that
        signed vector; the last row of each round shows p_i."""
        dim = self.config.dim
        coords = "x,y" if dim == 2 else "x,y,z"
        pos = "px,py" if dim == 2 else "px,py,pz"
        fp.write(f"round,vector_index,{coords},sign,{pos},pnorm\n")
        p = np.zeros(dim)
        for i, rec in enumerate(self.records, start=1):
            for j, (v, s) in enumerate(zip(rec.vectors, rec.signs)):
                p = p + s * np.asarray(v)
                cells = [str(i), str(j)]
                cells += [repr(c) for c in v]
                cells.append(str(s))
                cells += [repr(float(c)) for c in p]
                cells.append(repr(self.config.position_norm(p)))
                fp.write(",".join(cells) + "\n")


# -- core strategy operations -------------------------------------------------


def player2_pairwise(norm: Norm, position, vectors: Sequence) -> tuple[int, ...]:
    """Signs for an even batch, pairing consecutive vectors and threading
    the position through each pair step; keeps the norm within 2."""
    k = len(vectors)
    if k % 2 != 0:
        raise ValueError("the pairwise strategy needs an even number of vectors")
    p = as_vec2(position)
    signs: list[int] = []
    for j in range(0, k, 2):
        a = as_vec2(vectors[j])
        b = as_vec2(vectors[j + 1])
        d, e = pair_step(norm, p, a, b)
        p = p + d * a + e * b
        signs += [d, e]
    return tuple(signs)


def _unit_perpendicular(position: np.ndarray) -> np.ndarray:
    """A deterministic Euclidean-unit vector orthogonal to position."""
    dim = len(position)
    r = float(np.linalg.norm(position))
    if r == 0.0:
        u = np.zeros(dim)
        u[0] = 1.0
        return u
    if dim == 2:
        return np.array([-position[1], position[0]]) / r  # counter-clockwise
    phat = position / r
    axis = int(np.argmin(np.abs(phat)))
    e = np.zeros(dim)
    e[axis] = 1.0
    u = e - float(e @ phat) * phat
    return u / float(np.linalg.norm(u))


def player1_repeat_orthogonal(position, k: int) -> np.ndarray:
    """k copies of one Euclidean-unit vector orthogonal to the position.

    With k odd every sign choice moves the squared Euclidean norm up by
    at least 1.
    """
    if k % 2 == 0:
        raise ValueError("the repeated-orthogonal adversary needs odd k")
    position = np.asarray(position, dtype=float)
    u = _unit_perpendicular(position)
    return np.tile(u, (k, 1))


def player1_orthogonal_3d(position, k: int) -> np.ndarray:
    """k-1 copies of e1 and one e2, with e1, e2, position mutually
    orthogonal in Euclidean 3-space.

    With k even every sign choice raises the squared norm by at least 2.
    """
    if k % 2 != 0:
        raise ValueError("the 3d orthogonal adversary needs even k")
    position = np.asarray(position, dtype=float)
    if position.shape != (3,):
        raise ValueError("the 3d orthogonal adversary needs a 3-dimensional position")
    e1 = _unit_perpendicular(position)
    if float(np.linalg.norm(position)) == 0.0:
        e2 = np.array([0.0, 1.0, 0.0])
    else:
        e2 = np.cross(position, e1)
        e2 = e2 / float(np.linalg.norm(e2))
    out = np.tile(e1, (k, 1))
    out[-1] = e2
    return out


# -- built-in strategies -------------------------------------------------------


def make_player1(name: str, config: GameConfig) -> Callable:
    """Resolve a built-in Player I strategy name to a callable
    (round_index, position, rng) -> array of shape (k, dim)."""
    k, dim, norm = config.k, config.dim, config.norm

    def unit_rows_2d(angles: np.ndarray) -> np.ndarray:
        dirs = np.stack([np.cos(angles), np.sin(angles)], axis=-1)
        return dirs / norm.values(dirs)[:, None]

    if name == "random":
        if dim == 2:
            return lambda i, p, rng: unit_rows_2d(rng.uniform(0.0, 2.0 * math.pi, k))

        def random_3d(i, p, rng):
            vs = rng.normal(size=(k, 3))
            lens = np.linalg.norm(vs, axis=1)
            lens[lens == 0.0] = 1.0
            vs = vs / lens[:, None]
            vs[lens == 1.0] = np.array([1.0, 0.0, 0.0])
            return vs

        return random_3d
    if name == "all-equal":
        if dim == 2:
            u = norm.unit(Vec2(1.0, 0.0))
            fixed = np.tile([u.x, u.y], (k, 1))
        else:
            fixed = np.tile([1.0, 0.0, 0.0], (k, 1))
        return lambda i, p, rng: fixed.copy()
    if name == "rotating":
        def rotating(i, p, rng):
            theta = i * GOLDEN_ANGLE
            if dim == 2:
                return unit_rows_2d(np.full(k, theta))
            row = np.array([math.cos(theta), math.sin(theta), 0.0])
            return np.tile(row, (k, 1))

        return rotating
    if name == "repeat-orthogonal":
        if k % 2 == 0:
            raise ValueError("repeat-orthogonal requires odd k")
        if dim == 2 and norm.kind != "euclidean":
            raise ValueError("repeat-orthogonal plays Euclidean-unit vectors; "
                             "use a Euclidean game")
        return lambda i, p, rng: player1_repeat_orthogonal(p, k)
    if name == "orthogonal-3d":
        if dim != 3:
            raise ValueError("orthogonal-3d requires dim 3")
        if k % 2 != 0:
            raise ValueError("orthogonal-3d requires even k")
        return lambda i, p, rng: player1_orthogonal_3d(p, k)
    raise ValueError(f"unknown Player I strategy {name!r}; "
                     f"choose from {PLAYER1_NAMES}")


def _sign_matrix(k: int) -> np.ndarray:
    b = np.arange(1 << k, dtype=np.int64)
    bits = (b[:, None] >> np.arange(k - 1, -1, -1)) & 1
    return bits * 2 - 1


def make_player2(name: str, config: GameConfig) -> Callable:
    """Resolve a built-in Player II strategy name to a callable
    (round_index, position, vectors, rng) -> signs of length k."""
    k, dim, norm = config.k, config.dim, config.norm

    def batch_norms(pts: np.ndarray) -> np.ndarray:
        if dim == 2:
            return norm.values(pts)
        return np.linalg.norm(pts, axis=-1)

    if name == "pairwise":
        if k % 2 != 0:
            raise ValueError("the pairwise strategy requires even k "
                             "(no bounded strategy exists for odd k)")
        if dim != 2:
            raise ValueError("the pairwise strategy requires dim 2")
        return lambda i, p, vs, rng: np.array(player2_pairwise(norm, p, vs))
    if name == "random":
        return lambda i, p, vs, rng: rng.integers(0, 2, k) * 2 - 1
    if name == "greedy":
        def greedy(i, p, vs, rng):
            signs = np.empty(k, dtype=np.int64)
            pos = np.asarray(p, dtype=float).copy()
            for j in range(k):
                minus = pos - vs[j]
                plus = pos + vs[j]
                if batch_norms(plus[None])[0] < batch_norms(minus[None])[0]:
                    signs[j] = 1
                    pos = plus
                else:
                    signs[j] = -1
                    pos = minus
            return signs

        return greedy
    if name == "exhaustive-best":
        if k > MAX_EXHAUSTIVE_K:
            raise ValueError(f"exhaustive-best enumerates 2^k patterns; "
                             f"k <= {MAX_EXHAUSTIVE_K} required")
        S = _sign_matrix(k)

        def exhaustive(i, p, vs, rng):
            sums = S @ np.asarray(vs, dtype=float)
            vals = batch_norms(np.asarray(p, dtype=float)[None, :] + sums)
            return S[int(np.argmin(vals))]

        return exhaustive
    raise ValueError(f"unknown Player II strategy {name!r}; "
                     f"choose from {PLAYER2_NAMES}")


# -- the simulator -------------------------------------------------------------


def simulate(config: GameConfig, player1, player2) -> GameTrajectory:
    """Play the game for the configured number of rounds.

    ``player1`` / ``player2`` may be built-in strategy names or callables
    with the factory signatures.  The result is deterministic in
    ``config.seed``; both strategies draw from one shared generator in
    protocol order.
    """
    if isinstance(player1, str):
        player1 = make_player1(player1, config)
    if isinstance(player2, str):
        player2 = make_player2(player2, config)
    rng = np.random.default_rng(config.seed)
    dim, k = config.dim, config.k
    p = np.zeros(dim)
    records: list[RoundRecord] = []
    positions: list[tuple[float, ...]] = [(0.0,) * dim]
    norms: list[float] = [config.position_norm(p)]
    for i in range(1, config.rounds + 1):
        vs = np.asarray(player1(i, p.copy(), rng), dtype=float)
        if vs.shape != (k, dim) or not np.isfinite(vs).all():
            raise ProtocolViolation("player I", i,
                                    f"expected {k} finite vectors of dimension {dim}")
        lens = (config.norm.values(vs) if dim == 2
                else np.linalg.norm(vs, axis=1))
        bad = np.nonzero(np.abs(lens - 1.0) > CERT_EPS)[0]
        if bad.size:
            raise ProtocolViolation("player I", i,
                                    f"vector {int(bad[0])} has norm {lens[int(bad[0])]!r}")
        vs = vs / lens[:, None]
        signs = np.asarray(player2(i, p.copy(), vs.copy(), rng))
        if signs.shape != (k,) or not np.isin(signs, (-1, 1)).all():
            raise ProtocolViolation("player II", i, "signs must be +-1, one per vector")
        signs = signs.astype(np.int64)
        p = p + signs @ vs
        pos = tuple(float(c) for c in p)
        records.append(RoundRecord(tuple(tuple(float(c) for c in row) for row in vs),
                                   tuple(int(s) for s in signs),
                                   pos))
        positions.append(pos)
        norms.append(config.position_norm(p))
    return GameTrajectory(config, tuple(records), tuple(positions), tuple(norms))
