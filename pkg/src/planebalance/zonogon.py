"""Centrally symmetric polygons as zonogons.

A :class:`HalfVertexCycle` holds half of the vertex cycle of a polygon
symmetric about the origin.  It exposes the segment generators of the
polygon's Minkowski-sum decomposition and the alternating vertex sum,
which for an odd number of vertices is guaranteed to stay inside the
polygon.  Weakly convex cycles (repeated or collinear vertices) are
accepted; clockwise input is reversed rather than rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .geometry import CERT_EPS, Vec2, as_vec2, _signed_area

# Componentwise tolerance for the algebraic identity between the
# alternating vertex sum and the generator telescoping sum.
IDENTITY_EPS = 1e-12


@dataclass(frozen=True)
class HalfVertexCycle:
    """Half of the vertex cycle v_1..v_n of a symmetric polygon.

    The full boundary cycle is v_1..v_n, -v_1..-v_n in counter-clockwise
    order.
    """

    vertices: tuple[Vec2, ...]

    def __init__(self, vertices: Iterable):
        vs = tuple(as_vec2(v) for v in vertices)
        if not vs:
            raise ValueError("a half-vertex cycle needs at least one vertex")
        full = vs + tuple(-v for v in vs)
        if _signed_area(full) < 0.0:
            vs = vs[::-1]
            full = vs + tuple(-v for v in vs)
        _check_weakly_convex(full)
        object.__setattr__(self, "vertices", vs)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def full_cycle(self) -> tuple[Vec2, ...]:
        return self.vertices + tuple(-v for v in self.vertices)

    def generators(self) -> list[Vec2]:
        """Segment generators g_i = (v_{i+1} - v_i) / 2, with v_{n+1} = -v_1.

        The Minkowski sum of the segments [-g_i, g_i] reproduces the polygon.
        """
        vs = self.vertices
        n = len(vs)
        out = []
        for i in range(n):
            nxt = vs[i + 1] if i + 1 < n else -vs[0]
            out.append((nxt - vs[i]) * 0.5)
        return out

    def alternating_sum(self) -> Vec2:
        """-v_1 + v_2 - ... - v_n for odd n; always a point of the polygon.

        Raises ValueError for even n (where the containment fails), and
        RuntimeError if the computed point escapes the polygon, which can
        only happen when the vertices are not in boundary order.
        """
        vs = self.vertices
        n = len(vs)
        if n % 2 == 0:
            raise ValueError("the alternating sum stays in the polygon only for odd cycles")
        sx = sy = 0.0
        for j, v in enumerate(vs):
            if j % 2 == 0:
                sx -= v.x
                sy -= v.y
            else:
                sx += v.x
                sy += v.y
        s = Vec2(sx, sy)
        half = _generator_telescope(vs)
        if abs(s.x - half.x) > IDENTITY_EPS or abs(s.y - half.y) > IDENTITY_EPS:
            raise RuntimeError("alternating-sum identity violated beyond tolerance")
        if not self.contains(s, eps=CERT_EPS):
            raise RuntimeError(
                "alternating sum escaped the polygon; the vertices are not in "
                "boundary order")
        return s

    def contains(self, q, eps: float = CERT_EPS) -> bool:
        """Whether ``q`` lies in the polygon (boundary counts), with slack
        ``eps`` measured as Euclidean distance past an edge."""
        q = as_vec2(q)
        full = self.full_cycle()
        if abs(_signed_area(full)) <= IDENTITY_EPS:
            return _segment_contains(full, q, eps)
        k = len(full)
        for i in range(k):
            a, b = full[i], full[(i + 1) % k]
            e = b - a
            length = e.euclid()
            if length <= IDENTITY_EPS:
                continue
            if e.cross(q - a) < -eps * length:
                return False
        return True


def _generator_telescope(vs: tuple[Vec2, ...]) -> Vec2:
    n = len(vs)
    sx = sy = 0.0
    for i in range(n):
        nxt = vs[i + 1] if i + 1 < n else -vs[0]
        sign = 1.0 if i % 2 == 0 else -1.0
        sx += sign * (nxt.x - vs[i].x)
        sy += sign * (nxt.y - vs[i].y)
    return Vec2(0.5 * sx, 0.5 * sy)


def _segment_contains(full: tuple[Vec2, ...], q: Vec2, eps: float) -> bool:
    # Degenerate (zero-area) polygon: a symmetric segment [-e, e].
    e = max(full, key=lambda v: v.euclid())
    r = e.euclid()
    if r <= IDENTITY_EPS:
        return q.euclid() <= eps
    if abs(e.cross(q)) > eps * r:
        return False
    return abs(q.dot(e)) <= e.dot(e) + eps * r


def _check_weakly_convex(full: tuple[Vec2, ...]) -> None:
    k = len(full)
    for i in range(k):
        a, b = full[i], full[(i + 1) % k]
        scale = max(1.0, a.euclid() * b.euclid())
        if a.cross(b) < -CERT_EPS * scale:
            raise ValueError(
                "vertices are not in weakly counter-clockwise angular order")
    for i in range(k):
        e1 = full[(i + 1) % k] - full[i]
        e2 = full[(i + 2) % k] - full[(i + 1) % k]
        scale = max(1.0, e1.euclid() * e2.euclid())
        if e1.cross(e2) < -CERT_EPS * scale:
            raise ValueError("the symmetric vertex cycle is not weakly convex")
