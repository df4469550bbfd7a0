"""Streaming sign balancing: every even prefix sum stays within norm 2.

Vectors are consumed in arrival-order pairs.  For each completed pair
the two signs are chosen so the running position keeps norm at most 2
(at most sqrt(2) in Euclidean tight mode).  The per-pair step solves the
position in the basis of the incoming pair and pushes both coefficients
toward zero; the Euclidean tight step simply takes the best of the four
candidates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .geometry import CERT_EPS, DEGENERATE_EPS, Norm, ORIGIN, Vec2, as_vec2

SQRT2 = math.sqrt(2.0)

_CANDIDATES = ((-1, -1), (-1, 1), (1, -1), (1, 1))


def decompose(a: Vec2, b: Vec2, w: Vec2) -> tuple[float, float] | None:
    """Coefficients (lam, mu) with w = lam*a + mu*b, or None when a, b are
    linearly dependent (for unit vectors that means b = +-a)."""
    det = a.cross(b)
    if abs(det) <= DEGENERATE_EPS:
        return None
    return (w.cross(b) / det, a.cross(w) / det)


def pair_step(norm: Norm, w, a, b, eps: float = CERT_EPS) -> tuple[int, int]:
    """Signs (d, e) with norm(w + d*a + e*b) <= 2, given norm(w) <= 2 and
    unit vectors a, b."""
    w, a, b = as_vec2(w), as_vec2(a), as_vec2(b)
    if norm.value(w) > 2.0 + eps:
        raise ValueError(f"position norm {norm.value(w)!r} exceeds 2")
    a = norm.require_unit(a, tol=eps)
    b = norm.require_unit(b, tol=eps)
    coeffs = decompose(a, b, w)
    if coeffs is None:
        # b = +-a: cancel the pair and leave the position unchanged.
        return (1, -1) if a.dot(b) > 0.0 else (1, 1)
    lam, mu = coeffs
    return (-1 if lam >= 0.0 else 1, -1 if mu >= 0.0 else 1)


def pair_step_euclidean(w, a, b, eps: float = CERT_EPS) -> tuple[int, int]:
    """Best of the four sign pairs under the Euclidean norm; the minimum is
    guaranteed <= sqrt(2) when |w| <= sqrt(2) and a, b are unit.

    Ties resolve in the fixed candidate order (-,-), (-,+), (+,-), (+,+).
    """
    w, a, b = as_vec2(w), as_vec2(a), as_vec2(b)
    if w.euclid() > SQRT2 + eps:
        raise ValueError(f"position norm {w.euclid()!r} exceeds sqrt(2)")
    for v in (a, b):
        if abs(v.euclid() - 1.0) > eps:
            raise ValueError(f"{v} is not a Euclidean unit vector")
    best = None
    best_val = math.inf
    for d, e in _CANDIDATES:
        val = (w + d * a + e * b).euclid()
        if val < best_val:
            best_val = val
            best = (d, e)
    return best


@dataclass(frozen=True)
class StreamState:
    """Running state of a balanced stream: the signed prefix position,
    the buffered odd element, and the number of consumed vectors."""

    position: Vec2 = ORIGIN
    pending: Vec2 | None = None
    count: int = 0


def stream_push(norm: Norm, state: StreamState, x,
                tight_euclidean: bool = False) -> tuple[StreamState, tuple[int, ...]]:
    """Consume one vector; emit () after an odd arrival and the pair's two
    signs after an even arrival.  Pure in (state, x)."""
    x = norm.require_unit(as_vec2(x), index=state.count)
    if state.pending is None:
        return StreamState(state.position, x, state.count + 1), ()
    a, b = state.pending, x
    if tight_euclidean:
        d, e = pair_step_euclidean(state.position, a, b)
    else:
        d, e = pair_step(norm, state.position, a, b)
    new_pos = state.position + d * a + e * b
    return StreamState(new_pos, None, state.count + 1), (d, e)


class StreamBalancer:
    """Stateful wrapper around :func:`stream_push` for long-lived streams."""

    def __init__(self, norm: Norm, tight_euclidean: bool = False):
        if tight_euclidean and norm.kind != "euclidean":
            raise ValueError("tight mode is only available for the Euclidean norm")
        self.norm = norm
        self.tight_euclidean = tight_euclidean
        self.state = StreamState()

    @property
    def bound(self) -> float:
        return SQRT2 if self.tight_euclidean else 2.0

    def push(self, x) -> tuple[int, ...]:
        self.state, emitted = stream_push(self.norm, self.state, x,
                                          self.tight_euclidean)
        return emitted

    def flush_pending(self) -> tuple[int, ...]:
        """Assign the buffered unpaired vector (if any) the sign that
        minimizes the resulting position norm, preferring -1 on ties.

        Only meaningful for finite streams of odd length; the even-prefix
        guarantee is unaffected.
        """
        pend = self.state.pending
        if pend is None:
            return ()
        s = min((-1, 1), key=lambda t: self.norm.value(self.state.position + t * pend))
        self.state = StreamState(self.state.position + s * pend, None,
                                 self.state.count)
        return (s,)


def stream_balance(norm: Norm, vectors: Iterable,
                   tight_euclidean: bool = False) -> list[int]:
    """Signs for a finite stream, one per vector, chosen online in pairs.

    Every even prefix of the signed sum has norm at most 2, or sqrt(2)
    in Euclidean tight mode.  An odd trailing vector receives the greedy
    sign from :meth:`StreamBalancer.flush_pending`.
    """
    balancer = StreamBalancer(norm, tight_euclidean)
    signs: list[int] = []
    for x in vectors:
        signs.extend(balancer.push(x))
    signs.extend(balancer.flush_pending())
    return signs


def prefix_positions(vectors: Sequence, signs: Sequence[int]) -> list[Vec2]:
    """All prefix sums of sign_i * v_i (position after each vector)."""
    out = []
    px = py = 0.0
    for v, s in zip(vectors, signs):
        v = as_vec2(v)
        px += s * v.x
        py += s * v.y
        out.append(Vec2(px, py))
    return out
