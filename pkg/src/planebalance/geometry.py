"""Planar norms, dual norms, and norming functionals.

Three families of norms on the plane are supported: Euclidean, lp for
p in [1, inf], and polygonal norms whose unit ball is a centrally
symmetric convex polygon described by half of its vertex cycle.  The
primitives here (norm evaluation, dual-norm evaluation, norming
functionals and their extreme selections) are the numeric foundation of
every other module in the package.

A dual functional is represented by its coefficient pair, i.e. by the
same two-coordinate value type as a plane vector; the pairing is the
ordinary dot product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

# CERT_EPS guards exact certificate-style checks, SAMPLE_EPS guards sampled
# or iterative checks, DEGENERATE_EPS is the linear-dependence cutoff.
CERT_EPS = 1e-9
SAMPLE_EPS = 1e-6
DEGENERATE_EPS = 1e-12


class InvalidNormError(ValueError):
    """The given description does not define a norm."""


@dataclass(frozen=True)
class Vec2:
    """A plane vector; also used as the coefficient pair of a functional."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinates ({self.x}, {self.y})")

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    def __mul__(self, s: float) -> "Vec2":
        return Vec2(self.x * s, self.y * s)

    __rmul__ = __mul__

    def dot(self, other: "Vec2") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Vec2") -> float:
        return self.x * other.y - self.y * other.x

    def euclid(self) -> float:
        return math.hypot(self.x, self.y)

    def is_zero(self) -> bool:
        return self.x == 0.0 and self.y == 0.0

    def angle(self) -> float:
        return math.atan2(self.y, self.x)

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


# A linear functional phi with phi(v) = f.dot(v).
Functional = Vec2

ORIGIN = Vec2(0.0, 0.0)


def as_vec2(v) -> Vec2:
    if isinstance(v, Vec2):
        return v
    x, y = v
    return Vec2(float(x), float(y))


def _conjugate_exponent(p: float) -> float:
    if p == 1.0:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


class Norm:
    """A norm on the plane: Euclidean, lp(p), or polygonal.

    Construct through the factories :meth:`euclidean`, :meth:`lp` and
    :meth:`polygon`.  Instances are immutable and safe to share between
    threads.
    """

    __slots__ = ("kind", "p", "half_vertices", "_cycle", "_functionals",
                 "_func_matrix", "_poly_equivalent")

    def __init__(self, kind: str, p: float | None = None,
                 half_vertices: tuple[Vec2, ...] | None = None):
        if kind not in ("euclidean", "lp", "polygon"):
            raise InvalidNormError(f"unknown norm kind {kind!r}")
        self.kind = kind
        self.p = p
        self.half_vertices = half_vertices
        self._cycle: tuple[Vec2, ...] | None = None
        self._functionals: tuple[Vec2, ...] | None = None
        self._func_matrix: np.ndarray | None = None
        self._poly_equivalent: "Norm | None" = None
        if kind == "lp":
            if p is None or math.isnan(p) or p < 1.0:
                raise InvalidNormError(f"lp exponent must satisfy p >= 1, got {p}")
        if kind == "polygon":
            self._prepare_polygon()

    # -- construction -----------------------------------------------------

    @classmethod
    def euclidean(cls) -> "Norm":
        return cls("euclidean")

    @classmethod
    def lp(cls, p: float) -> "Norm":
        return cls("lp", p=float(p))

    @classmethod
    def polygon(cls, half_vertices: Iterable) -> "Norm":
        vs = tuple(as_vec2(v) for v in half_vertices)
        return cls("polygon", half_vertices=vs)

    def _prepare_polygon(self) -> None:
        vs = self.half_vertices
        if vs is None or len(vs) < 2:
            raise InvalidNormError("a polygonal unit ball needs at least two half vertices")
        # Normalize to counter-clockwise orientation; the ball is unchanged.
        full = vs + tuple(-v for v in vs)
        if _signed_area(full) < 0.0:
            vs = vs[::-1]
            full = vs + tuple(-v for v in vs)
        m = len(vs)
        for i in range(2 * m):
            a, b = full[i], full[(i + 1) % (2 * m)]
            scale = a.euclid() * b.euclid()
            if scale <= 0.0 or a.cross(b) <= DEGENERATE_EPS * scale:
                raise InvalidNormError(
                    "half vertices must be in strictly counter-clockwise angular "
                    "order within an open half-plane through the origin")
        for i in range(2 * m):
            e1 = full[(i + 1) % (2 * m)] - full[i]
            e2 = full[(i + 2) % (2 * m)] - full[(i + 1) % (2 * m)]
            if e1.cross(e2) < -CERT_EPS * max(1.0, e1.euclid() * e2.euclid()):
                raise InvalidNormError("the symmetric vertex cycle is not convex")
        functionals = []
        for i in range(m):
            u, w = full[i], full[i + 1]
            det = u.cross(w)
            functionals.append(Vec2((w.y - u.y) / det, (u.x - w.x) / det))
        self.half_vertices = vs
        self._cycle = full
        self._functionals = tuple(functionals)
        self._func_matrix = np.array([f.as_tuple() for f in functionals])

    # -- evaluation --------------------------------------------------------

    def value(self, v) -> float:
        """The norm of ``v`` (non-negative, zero only at the origin)."""
        v = as_vec2(v)
        if self.kind == "euclidean":
            return math.hypot(v.x, v.y)
        if self.kind == "lp":
            p = self.p
            ax, ay = abs(v.x), abs(v.y)
            if p == 1.0:
                return ax + ay
            if math.isinf(p):
                return max(ax, ay)
            if p == 2.0:
                return math.hypot(ax, ay)
            return (ax ** p + ay ** p) ** (1.0 / p)
        best = 0.0
        for f in self._functionals:
            t = abs(f.x * v.x + f.y * v.y)
            if t > best:
                best = t
        return best

    def values(self, pts: np.ndarray) -> np.ndarray:
        """Vectorized :meth:`value` over an array of shape (..., 2)."""
        pts = np.asarray(pts, dtype=float)
        if self.kind == "euclidean":
            return np.hypot(pts[..., 0], pts[..., 1])
        if self.kind == "lp":
            p = self.p
            a = np.abs(pts)
            if p == 1.0:
                return a[..., 0] + a[..., 1]
            if math.isinf(p):
                return np.maximum(a[..., 0], a[..., 1])
            return (a[..., 0] ** p + a[..., 1] ** p) ** (1.0 / p)
        return np.abs(pts @ self._func_matrix.T).max(axis=-1)

    def dual_value(self, f) -> float:
        """The dual norm max{f(u) : value(u) = 1} of a functional."""
        f = as_vec2(f)
        if self.kind == "euclidean":
            return math.hypot(f.x, f.y)
        if self.kind == "lp":
            q = _conjugate_exponent(self.p)
            ax, ay = abs(f.x), abs(f.y)
            if q == 1.0:
                return ax + ay
            if math.isinf(q):
                return max(ax, ay)
            return (ax ** q + ay ** q) ** (1.0 / q)
        # The maximum of a linear functional over a polytope sits at a vertex.
        return max(abs(f.dot(v)) for v in self.half_vertices)

    def unit(self, v) -> Vec2:
        """``v`` rescaled to norm exactly one (its computed norm divides it)."""
        v = as_vec2(v)
        n = self.value(v)
        if n <= 0.0:
            raise ValueError("cannot normalize the zero vector")
        return Vec2(v.x / n, v.y / n)

    def require_unit(self, v, tol: float = CERT_EPS, index: int | None = None) -> Vec2:
        """Validate that ``v`` is a unit vector, then renormalize it exactly.

        Raises ValueError naming ``index`` when the norm is off by more
        than ``tol``.
        """
        v = as_vec2(v)
        n = self.value(v)
        if abs(n - 1.0) > tol:
            where = "" if index is None else f" at index {index}"
            raise ValueError(f"vector{where} has norm {n!r}, expected a unit vector")
        if n == 1.0:
            return v
        return Vec2(v.x / n, v.y / n)

    # -- norming functionals -------------------------------------------------

    def norming_functional(self, v) -> Functional:
        """A functional of dual norm 1 with f(v) equal to the norm of ``v``."""
        v = as_vec2(v)
        if v.is_zero():
            raise ValueError("the zero vector has no norming functional")
        if self.kind == "euclidean":
            n = v.euclid()
            return Vec2(v.x / n, v.y / n)
        if self.kind == "lp":
            return self._lp_norming(v)
        return self._polygon_norming(v)

    def _lp_norming(self, v: Vec2) -> Functional:
        p = self.p
        if p == 1.0:
            # sign(0) stays 0 so the pairing and the dual norm are exact.
            return Vec2(float(np.sign(v.x)), float(np.sign(v.y)))
        if math.isinf(p):
            if abs(v.x) >= abs(v.y):
                return Vec2(math.copysign(1.0, v.x) if v.x != 0.0 else 1.0, 0.0)
            return Vec2(0.0, math.copysign(1.0, v.y))
        n = self.value(v)
        scale = n ** (p - 1.0)
        fx = math.copysign(abs(v.x) ** (p - 1.0), v.x) / scale
        fy = math.copysign(abs(v.y) ** (p - 1.0), v.y) / scale
        return Vec2(fx, fy)

    def _polygon_edge_index(self, v: Vec2) -> int:
        full = self._cycle
        k = len(full)
        for i in range(k):
            a, b = full[i], full[(i + 1) % k]
            if a.cross(v) >= 0.0 and v.cross(b) > 0.0:
                return i
        # Fallback for pathological rounding: the edge whose functional
        # realizes the gauge.
        cands = list(self._functionals) + [-f for f in self._functionals]
        return max(range(k), key=lambda i: cands[i].dot(v))

    def _edge_functional(self, i: int) -> Functional:
        m = len(self._functionals)
        return self._functionals[i] if i < m else -self._functionals[i - m]

    def _polygon_norming(self, v: Vec2) -> Functional:
        # Ties on a vertex ray resolve to the edge counter-clockwise from it.
        return self._edge_functional(self._polygon_edge_index(v))

    def extreme_norming_functionals(self, v) -> tuple[Functional, Functional]:
        """The two extreme points of the segment of norming functionals of ``v``.

        For smooth norms both coincide.  On a vertex ray of a polygonal ball
        the pair is (incoming edge, outgoing edge) in counter-clockwise
        order of the dual circle.
        """
        v = as_vec2(v)
        if v.is_zero():
            raise ValueError("the zero vector has no norming functional")
        if self.kind == "euclidean" or (self.kind == "lp" and 1.0 < self.p < math.inf):
            f = self.norming_functional(v)
            return (f, f)
        if self.kind == "lp":
            return self._lp_polygon_equivalent().extreme_norming_functionals(v)
        full = self._cycle
        k = len(full)
        i = self._polygon_edge_index(v)
        a = full[i]
        if abs(a.cross(v)) <= DEGENERATE_EPS * a.euclid() * v.euclid():
            return (self._edge_functional((i - 1) % k), self._edge_functional(i))
        f = self._edge_functional(i)
        return (f, f)

    def _lp_polygon_equivalent(self) -> "Norm":
        if self._poly_equivalent is None:
            if self.p == 1.0:
                self._poly_equivalent = Norm.polygon([(1.0, 0.0), (0.0, 1.0)])
            elif math.isinf(self.p):
                self._poly_equivalent = Norm.polygon([(1.0, 1.0), (-1.0, 1.0)])
            else:
                raise InvalidNormError("only p = 1 and p = inf have polygonal equivalents")
        return self._poly_equivalent

    # -- config form ---------------------------------------------------------

    def to_config(self) -> dict:
        """The textual form used by the CLI and scenario files."""
        if self.kind == "euclidean":
            return {"type": "euclidean"}
        if self.kind == "lp":
            return {"type": "lp", "p": "inf" if math.isinf(self.p) else self.p}
        return {"type": "polygon",
                "half_vertices": [[v.x, v.y] for v in self.half_vertices]}

    @classmethod
    def from_config(cls, cfg: dict) -> "Norm":
        try:
            kind = cfg["type"]
        except (TypeError, KeyError):
            raise InvalidNormError(f"norm config needs a 'type' field: {cfg!r}")
        if kind == "euclidean":
            return cls.euclidean()
        if kind == "lp":
            p = cfg.get("p")
            if isinstance(p, str):
                if p.lower() not in ("inf", "infinity"):
                    raise InvalidNormError(f"unrecognized lp exponent {p!r}")
                p = math.inf
            if p is None:
                raise InvalidNormError("lp norm config needs a 'p' field")
            return cls.lp(float(p))
        if kind == "polygon":
            if "half_vertices" not in cfg:
                raise InvalidNormError("polygon norm config needs 'half_vertices'")
            return cls.polygon(cfg["half_vertices"])
        raise InvalidNormError(f"unknown norm type {kind!r}")

    # -- value semantics -------------------------------------------------------

    def _key(self):
        return (self.kind, self.p, self.half_vertices)

    def __eq__(self, other) -> bool:
        return isinstance(other, Norm) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        if self.kind == "euclidean":
            return "Norm.euclidean()"
        if self.kind == "lp":
            return f"Norm.lp({self.p})"
        return f"Norm.polygon({[v.as_tuple() for v in self.half_vertices]})"


def _signed_area(cycle: Sequence[Vec2]) -> float:
    total = 0.0
    k = len(cycle)
    for i in range(k):
        total += cycle[i].cross(cycle[(i + 1) % k])
    return 0.5 * total
