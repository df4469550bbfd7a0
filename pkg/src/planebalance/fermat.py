"""Fermat-Toricelli point certificates from opposite-ray configurations.

A configuration is a candidate point plus surrounding sites.  When every
closed angle between two site rays contains the opposite of some site
ray, the candidate minimizes the sum of distances to all the points.
The constructive certificate assigns each site a norming functional so
the functionals' sum has dual norm at most 1; the certificate is checked
numerically and cross-checked against a shrinking-grid search oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .geometry import CERT_EPS, DEGENERATE_EPS, Norm, Vec2, as_vec2
from .zonogon import HalfVertexCycle

_DISTINCT_EPS = 1e-12

GRID_RESOLUTION = 41
GRID_ROUNDS = 12
GRID_SHRINK = 3.0
GRID_INFLATE = 1.0


class CertificateError(RuntimeError):
    """The functional selection could not be completed within tolerance."""


class InconsistencyError(RuntimeError):
    """The antipodal-free structure contradicts the opposite-ray property."""


@dataclass(frozen=True)
class Configuration:
    """A candidate point and the distinct sites around it."""

    candidate: Vec2
    sites: tuple[Vec2, ...]

    def __init__(self, candidate, sites):
        candidate = as_vec2(candidate)
        sites = tuple(as_vec2(s) for s in sites)
        if not sites:
            raise ValueError("a configuration needs at least one site")
        pts = (candidate,) + sites
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if (pts[i] - pts[j]).euclid() <= _DISTINCT_EPS:
                    raise ValueError(f"points {i} and {j} coincide")
        object.__setattr__(self, "candidate", candidate)
        object.__setattr__(self, "sites", sites)

    @property
    def n(self) -> int:
        return len(self.sites)

    def directions(self) -> list[Vec2]:
        """Euclidean-normalized directions from the candidate to each site."""
        out = []
        for s in self.sites:
            d = s - self.candidate
            r = d.euclid()
            out.append(Vec2(d.x / r, d.y / r))
        return out


@dataclass(frozen=True)
class RayCheck:
    holds: bool
    witness: dict[tuple[int, int], int]
    failing_pair: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class Certificate:
    functionals: tuple[Vec2, ...]
    residual: Vec2
    residual_dual_norm: float


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _antipodal(u: Vec2, v: Vec2, eps: float) -> bool:
    return abs(u.cross(v)) <= eps and u.dot(v) < 0.0


def _in_closed_cone(u: Vec2, v: Vec2, x: Vec2, eps: float) -> bool:
    """Whether x lies in the closed convex cone spanned by u and v (the
    angle of size at most pi).  An antipodal pair spans a full line; the
    closed angle is then either closed half-plane, so everything passes."""
    c = u.cross(v)
    if c < 0.0:
        u, v = v, u
        c = -c
    if c > eps:
        return u.cross(x) >= -eps and x.cross(v) >= -eps
    if u.dot(v) > 0.0:  # a single ray
        return abs(u.cross(x)) <= eps and u.dot(x) >= -eps
    return True


def check_opposite_rays(cfg: Configuration, eps: float = CERT_EPS) -> RayCheck:
    """The opposite-ray test: for every site pair, some site's opposite
    ray lies in the closed angle they span at the candidate.

    Returns a witness map pair -> site index; on failure records the
    first offending pair.
    """
    us = cfg.directions()
    n = len(us)
    witness: dict[tuple[int, int], int] = {}
    for i in range(n):
        for j in range(i + 1, n):
            found = None
            for k in range(n):
                if _in_closed_cone(us[i], us[j], -us[k], eps):
                    found = k
                    break
            if found is None:
                return RayCheck(False, witness, (i, j))
            witness[(i, j)] = found
    return RayCheck(True, witness)


def _ccw_order(us: Sequence[Vec2]) -> list[int]:
    return sorted(range(len(us)), key=lambda i: math.atan2(us[i].y, us[i].x))


def _opposite_structure(us: Sequence[Vec2], eps: float) -> tuple[list[int], list[int]]:
    """For antipodal-free directions in counter-clockwise order, locate the
    unique opposite ray in each open gap and validate the half-shift
    congruence.  Returns (ccw order, opposite rank per gap)."""
    n = len(us)
    if n % 2 == 0:
        raise InconsistencyError(
            f"{n} sites remain after the antipodal reduction; an opposite-ray "
            "configuration must have an odd count")
    order = _ccw_order(us)
    m = (n + 1) // 2
    opposite = []
    for r in range(n):
        a = us[order[r]]
        b = us[order[(r + 1) % n]]
        inside = [s for s in range(n)
                  if a.cross(-us[order[s]]) > eps and (-us[order[s]]).cross(b) > eps]
        if len(inside) != 1:
            raise InconsistencyError(
                f"gap {r} contains {len(inside)} opposite rays, expected exactly one")
        if inside[0] != (r + m) % n:
            raise InconsistencyError(
                f"opposite ray in gap {r} is {inside[0]}, expected {(r + m) % n}")
        opposite.append(inside[0])
    return order, opposite


def opposite_index_map(cfg: Configuration, eps: float = CERT_EPS) -> dict[int, int]:
    """Map each counter-clockwise rank r to the rank whose opposite ray
    falls in the open gap after r; always the half-count shift.

    Requires the opposite-ray property and no antipodal site pair.
    """
    check = check_opposite_rays(cfg, eps)
    if not check.holds:
        raise ValueError(f"opposite-ray property fails at pair {check.failing_pair}")
    us = cfg.directions()
    n = len(us)
    for i in range(n):
        for j in range(i + 1, n):
            if _antipodal(us[i], us[j], eps):
                raise ValueError(
                    f"sites {i} and {j} are antipodal; apply the pair reduction "
                    "before asking for the gap structure")
    _, opposite = _opposite_structure(us, eps)
    return {r: opp for r, opp in enumerate(opposite)}


def _weakly_ccw(prev: Vec2, nxt: Vec2, eps: float) -> bool:
    c = prev.cross(nxt)
    if c < -eps:
        return False
    if abs(c) <= eps and prev.dot(nxt) < 0.0:
        return False
    return True


def build_certificate(cfg: Configuration, norm: Norm,
                      eps: float = CERT_EPS) -> Certificate:
    """Choose a norming functional per site so the sum has dual norm <= 1.

    Antipodal site pairs get exactly opposite functionals and drop out of
    the sum; the remaining sites get extreme norming functionals selected
    greedily so the interleaved dual sequence stays weakly
    counter-clockwise, which keeps the alternating dual sum inside the
    dual unit circle.
    """
    check = check_opposite_rays(cfg, eps)
    if not check.holds:
        raise ValueError(f"opposite-ray property fails at pair {check.failing_pair}")
    us = cfg.directions()
    n = len(us)
    phis: list[Vec2 | None] = [None] * n
    remaining = list(range(n))
    while True:
        pair = None
        for ii in range(len(remaining)):
            for jj in range(ii + 1, len(remaining)):
                if _antipodal(us[remaining[ii]], us[remaining[jj]], eps):
                    pair = (remaining[ii], remaining[jj])
                    break
            if pair:
                break
        if pair is None:
            break
        i, j = pair
        phis[j] = norm.norming_functional(us[j])
        phis[i] = -phis[j]
        remaining.remove(i)
        remaining.remove(j)

    if not remaining:
        residual = Vec2(0.0, 0.0)
    elif len(remaining) == 1:
        s = remaining[0]
        phis[s] = norm.norming_functional(us[s])
        residual = phis[s]
    else:
        sub = [us[s] for s in remaining]
        try:
            order, _ = _opposite_structure(sub, eps)
        except InconsistencyError as exc:
            raise CertificateError(
                f"antipodal-free remainder lost the opposite-ray structure: {exc}")
        nn = len(sub)
        m = (nn + 1) // 2
        # Interleaved rays: u_0, -u_m, u_1, -u_{m+1}, ... in ccw order.
        walk = []
        for r in range(nn):
            walk.append((r, False))
            walk.append(((r + m) % nn, True))
        chosen: dict[int, Vec2] = {}
        seq: list[Vec2] = []
        for rank, negated in walk:
            site = remaining[order[rank]]
            if site in chosen:
                cand = -chosen[site] if negated else chosen[site]
                if seq and not _weakly_ccw(seq[-1], cand, eps):
                    raise CertificateError(
                        f"forced functional for site {site} breaks the cyclic order")
                seq.append(cand)
                continue
            cw, ccw = norm.extreme_norming_functionals(us[site])
            picked = None
            for option in (cw, ccw):
                cand = -option if negated else option
                if not seq or _weakly_ccw(seq[-1], cand, eps):
                    picked = option
                    seq.append(cand)
                    break
            if picked is None:
                raise CertificateError(
                    f"no extreme norming functional of site {site} preserves "
                    "the cyclic order")
            chosen[site] = picked
        if not _weakly_ccw(seq[-1], seq[0], eps):
            raise CertificateError("the dual sequence does not close up weakly ccw")
        for site, phi in chosen.items():
            phis[site] = phi
        # The first half of the interleaved dual sequence is a half-vertex
        # cycle in the dual plane; its alternating sum is minus the
        # functional total and certifies the dual bound by containment.
        dual_cycle = HalfVertexCycle(seq[:nn])
        residual = -dual_cycle.alternating_sum()

    return Certificate(tuple(phis), residual, norm.dual_value(residual))


def verify_certificate(cfg: Configuration, cert: Certificate, norm: Norm,
                       include_candidate: bool = True,
                       eps: float = CERT_EPS) -> VerifyResult:
    """Check every functional is norming for its site direction and the
    residual meets the case condition: dual norm <= 1 when the candidate
    itself counts toward the objective, exactly 0 otherwise."""
    if len(cert.functionals) != cfg.n:
        return VerifyResult(False, "certificate has the wrong number of functionals")
    total = Vec2(0.0, 0.0)
    for i, phi in enumerate(cert.functionals):
        if phi is None:
            return VerifyResult(False, f"functional {i} is missing")
        dv = norm.dual_value(phi)
        if abs(dv - 1.0) > eps:
            return VerifyResult(False, f"functional {i} has dual norm {dv!r}")
        direction = norm.unit(cfg.sites[i] - cfg.candidate)
        pairing = phi.dot(direction)
        if abs(pairing - 1.0) > eps:
            return VerifyResult(False,
                                f"functional {i} pairs to {pairing!r} on its direction")
        total = total + phi
    if (total - cert.residual).euclid() > eps:
        return VerifyResult(False, "recorded residual does not match the functional sum")
    r = norm.dual_value(total)
    if include_candidate:
        if r > 1.0 + eps:
            return VerifyResult(False, f"residual dual norm {r!r} exceeds 1")
    else:
        if r > eps:
            return VerifyResult(False, f"residual dual norm {r!r} is not zero")
    return VerifyResult(True, None)


def total_distance(cfg: Configuration, norm: Norm, x,
                   include_candidate: bool = True) -> float:
    """Sum of distances from x to the configuration's points, summed in
    index order (candidate first when included)."""
    x = as_vec2(x)
    total = 0.0
    if include_candidate:
        total += norm.value(x - cfg.candidate)
    for s in cfg.sites:
        total += norm.value(x - s)
    return total


def grid_minimum(cfg: Configuration, norm: Norm,
                 include_candidate: bool = True) -> tuple[Vec2, float]:
    """Numerical minimum of the distance sum by shrinking-grid search.

    Starts from the bounding box of all points inflated by 1 at 41x41
    resolution and refines 12 times, shrinking by factor 3 around the
    incumbent.  The objective is convex, so the incumbent converges to a
    global minimizer (which need not be unique; compare values, not
    points).
    """
    pts = [cfg.candidate] + list(cfg.sites)
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    cx = 0.5 * (min(xs) + max(xs))
    cy = 0.5 * (min(ys) + max(ys))
    hx = 0.5 * (max(xs) - min(xs)) + GRID_INFLATE
    hy = 0.5 * (max(ys) - min(ys)) + GRID_INFLATE
    targets = np.array([p.as_tuple() for p in (pts if include_candidate else pts[1:])])
    best_val = math.inf
    best_pt = Vec2(cx, cy)
    for _ in range(GRID_ROUNDS + 1):
        gx = np.linspace(cx - hx, cx + hx, GRID_RESOLUTION)
        gy = np.linspace(cy - hy, cy + hy, GRID_RESOLUTION)
        X, Y = np.meshgrid(gx, gy, indexing="ij")
        grid = np.stack([X.ravel(), Y.ravel()], axis=-1)
        vals = np.zeros(len(grid))
        for t in targets:
            vals += norm.values(grid - t)
        idx = int(np.argmin(vals))
        if vals[idx] < best_val:
            best_val = float(vals[idx])
            best_pt = Vec2(float(grid[idx, 0]), float(grid[idx, 1]))
        cx, cy = best_pt.x, best_pt.y
        hx /= GRID_SHRINK
        hy /= GRID_SHRINK
    return best_pt, best_val
