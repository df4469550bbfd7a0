"""Static sign balancing of an odd number of unit vectors.

Given 2k+1 unit vectors in a normed plane, produces signs whose signed
sum has norm at most 1: reflect every vector into a fixed open
half-plane, sort by angle, and alternate signs along the sorted order.
The containment guarantee comes from the alternating-sum property of
half-vertex cycles.
"""

from __future__ import annotations

import math
from typing import Sequence

from .geometry import Norm, Vec2, as_vec2
from .zonogon import HalfVertexCycle

_MIN_GAP = 1e-12


class DegenerateInputError(ValueError):
    """No direction separates the input from the coordinate line."""


def separating_functional(vectors: Sequence) -> Vec2:
    """A functional h with h(v) != 0 for every input vector.

    The underlying line direction is the midpoint of the largest angular
    gap of the input directions taken mod pi, which maximizes the
    numerical margin.
    """
    vs = [as_vec2(v) for v in vectors]
    if not vs:
        raise ValueError("need at least one vector")
    angles = []
    for v in vs:
        if v.is_zero():
            raise ValueError("zero vectors have no direction")
        angles.append(math.atan2(v.y, v.x) % math.pi)
    angles.sort()
    best_gap = (angles[0] + math.pi) - angles[-1]
    best_start = angles[-1]
    for i in range(len(angles) - 1):
        gap = angles[i + 1] - angles[i]
        if gap > best_gap:
            best_gap = gap
            best_start = angles[i]
    if best_gap <= _MIN_GAP:
        raise DegenerateInputError("input directions leave no angular gap")
    alpha = (best_start + 0.5 * best_gap) % math.pi
    # h(x) = cross(d, x) vanishes exactly on the line with direction d.
    return Vec2(-math.sin(alpha), math.cos(alpha))


def balance_odd(norm: Norm, vectors: Sequence) -> tuple[int, ...]:
    """Signs making the signed sum of an odd list of unit vectors have
    norm at most 1.

    Inputs must be unit vectors under ``norm`` (tolerance 1e-9); they are
    renormalized exactly before use.  Ties between equal directions are
    broken by original index, so the result is deterministic.
    """
    n = len(vectors)
    if n == 0 or n % 2 == 0:
        raise ValueError(f"need an odd number of vectors, got {n}")
    units = [norm.require_unit(v, index=i) for i, v in enumerate(vectors)]
    h = separating_functional(units)
    d = Vec2(h.y, -h.x)  # direction of the separating line
    deltas = [1 if h.dot(u) > 0.0 else -1 for u in units]
    reflected = [u if s == 1 else -u for u, s in zip(units, deltas)]
    keys = [math.atan2(d.cross(y), d.dot(y)) for y in reflected]
    order = sorted(range(n), key=lambda i: keys[i])
    cycle = HalfVertexCycle([reflected[i] for i in order])
    cycle.alternating_sum()  # asserts the containment that yields the bound
    signs = [0] * n
    for rank, idx in enumerate(order):
        signs[idx] = (-1 if rank % 2 == 0 else 1) * deltas[idx]
    return tuple(signs)


def signed_sum(vectors: Sequence, signs: Sequence[int]) -> Vec2:
    """Sum of sign_i * v_i, in index order."""
    if len(vectors) != len(signs):
        raise ValueError("vectors and signs must have equal length")
    sx = sy = 0.0
    for v, s in zip(vectors, signs):
        v = as_vec2(v)
        sx += s * v.x
        sy += s * v.y
    return Vec2(sx, sy)
