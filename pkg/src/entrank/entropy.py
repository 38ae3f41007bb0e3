"""Directional entropy as a piecewise-linear function on R^d, its sphere
extrema, candidate non-expansive hyperplanes, and logarithmic Mahler measure.

The entropy function is h(x) = sum of m * max(l . x, 0) over all weighted
Lyapunov vectors of the placed char-0 components: convex and positively
homogeneous of degree 1. In d = 2 the sphere extrema are located exactly by
splitting the circle at the hyperplane angles; on each arc h is a single
cosine wave, so extrema sit at arc endpoints or at an interior wave peak.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .action import PlacedComponent, PlacedSpec
from .algebra import Poly
from .errors import MathDomainError, SpecError

_TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# The entropy function
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EntropyTerm:
    weight: int
    l: tuple[float, ...]
    kind: str  # "arch" | "finite"
    component: PlacedComponent | None = None
    place_index: int = -1


@dataclass(frozen=True)
class EntropyFunction:
    d: int
    terms: tuple[EntropyTerm, ...]


def entropy_function_of(ps: PlacedSpec) -> EntropyFunction:
    """Flatten the weighted Lyapunov vectors of the char-0 components.

    Char-p components carry no computed places and contribute no terms.
    """
    terms = []
    for pc, mult in ps.placed_char0():
        for i, l in enumerate(pc.lyapunov):
            terms.append(EntropyTerm(weight=mult, l=tuple(l), kind=pc.places[i].kind,
                                     component=pc, place_index=i))
    return EntropyFunction(d=ps.d, terms=tuple(terms))


def directional_entropy(ef: EntropyFunction, x) -> float:
    """h(x) = sum m * max(l . x, 0)."""
    xs = tuple(float(v) for v in x)
    if len(xs) != ef.d:
        raise MathDomainError(f"vector has {len(xs)} entries, expected {ef.d}")
    total = 0.0
    for t in ef.terms:
        dot = sum(a * b for a, b in zip(t.l, xs))
        if dot > 0.0:
            total += t.weight * dot
    return total


def lipschitz_constant(ef: EntropyFunction) -> float:
    """Euclidean Lipschitz bound: every cone gradient is a subset sum of the
    weighted Lyapunov vectors, so sum of m * |l|_2 dominates them all."""
    return sum(t.weight * math.hypot(*t.l) for t in ef.terms)


# ---------------------------------------------------------------------------
# Sphere extrema
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SphereExtrema:
    max_value: float
    min_value: float
    argmax: tuple[float, ...]
    argmin: tuple[float, ...]
    method: str
    breakpoint_count: int


def sphere_extrema(ef: EntropyFunction) -> SphereExtrema:
    if not ef.terms:
        raise MathDomainError("entropy function has no terms (no char-0 places)")
    if ef.d == 1:
        hp = directional_entropy(ef, (1.0,))
        hm = directional_entropy(ef, (-1.0,))
        if hp >= hm:
            return SphereExtrema(hp, hm, (1.0,), (-1.0,), "endpoints", 0)
        return SphereExtrema(hm, hp, (-1.0,), (1.0,), "endpoints", 0)
    if ef.d == 2:
        return _sphere_extrema_2d(ef)
    return _sphere_extrema_nd(ef)


def _unit(theta: float) -> tuple[float, float]:
    return (math.cos(theta), math.sin(theta))


def _breakpoint_angles(ef: EntropyFunction) -> list[float]:
    angles = []
    for t in ef.terms:
        a, b = t.l
        if a == 0.0 and b == 0.0:
            continue
        base = math.atan2(b, a) + 0.5 * math.pi
        for k in (0, 1):
            angles.append((base + k * math.pi) % _TWO_PI)
    angles.sort()
    merged: list[float] = []
    for th in angles:
        if not merged or th - merged[-1] > 1e-12:
            merged.append(th)
    if merged and (merged[0] + _TWO_PI) - merged[-1] <= 1e-12:
        merged.pop()
    return merged


def _sphere_extrema_2d(ef: EntropyFunction) -> SphereExtrema:
    angles = _breakpoint_angles(ef)
    if not angles:
        v = directional_entropy(ef, (1.0, 0.0))
        return SphereExtrema(v, v, (1.0, 0.0), (1.0, 0.0), "exact-arcs", 0)
    best_max = (-math.inf, 0.0)
    best_min = (math.inf, 0.0)

    def consider(value: float, theta: float):
        nonlocal best_max, best_min
        if value > best_max[0]:
            best_max = (value, theta)
        if value < best_min[0]:
            best_min = (value, theta)

    m = len(angles)
    for i in range(m):
        lo = angles[i]
        hi = angles[(i + 1) % m] + (0.0 if i + 1 < m else _TWO_PI)
        mid = 0.5 * (lo + hi)
        xm = _unit(mid)
        c1 = c2 = 0.0
        for t in ef.terms:
            if t.l[0] * xm[0] + t.l[1] * xm[1] > 0.0:
                c1 += t.weight * t.l[0]
                c2 += t.weight * t.l[1]
        consider(directional_entropy(ef, _unit(lo)), lo)
        consider(directional_entropy(ef, _unit(hi)), hi)
        r = math.hypot(c1, c2)
        if r > 0.0:
            phi = math.atan2(c2, c1)
            for cand in (phi, phi + _TWO_PI, phi - _TWO_PI):
                if lo < cand < hi:
                    consider(r, cand)
    return SphereExtrema(best_max[0], best_min[0], _unit(best_max[1]),
                         _unit(best_min[1]), "exact-arcs", len(angles))


def _sphere_extrema_nd(ef: EntropyFunction) -> SphereExtrema:
    """d >= 3: extreme rays of the hyperplane arrangement for the minimum,
    cone-gradient fixpoint iteration for the maximum, sampling as a safety
    net. Exact for generic arrangements; labeled accordingly."""
    d = ef.d
    normals = [np.array(t.l) for t in ef.terms if any(t.l)]
    candidates: list[np.ndarray] = []
    import itertools

    for subset in itertools.combinations(range(len(normals)), d - 1):
        mat = np.stack([normals[i] for i in subset])
        _u, s, vt = np.linalg.svd(mat)
        rank = int(np.sum(s > 1e-10 * (s[0] if s.size else 1.0)))
        for row in vt[rank:]:
            nrm = np.linalg.norm(row)
            if nrm > 1e-12:
                candidates.append(row / nrm)
                candidates.append(-row / nrm)
    rng = np.random.default_rng(20259)
    samples = rng.normal(size=(4096, d))
    samples /= np.linalg.norm(samples, axis=1, keepdims=True)
    candidates.extend(samples)
    for v in normals:
        nv = np.linalg.norm(v)
        if nv > 0:
            candidates.append(v / nv)
            candidates.append(-v / nv)

    def h(x: np.ndarray) -> float:
        return directional_entropy(ef, tuple(x))

    best_max = (-math.inf, None)
    best_min = (math.inf, None)
    for x in candidates:
        val = h(x)
        if val < best_min[0]:
            best_min = (val, x)
        y = x
        for _ in range(40):  # gradient fixpoint: climb toward the cone gradient
            grad = np.zeros(d)
            for t in ef.terms:
                l = np.array(t.l)
                if float(l @ y) > 0.0:
                    grad += t.weight * l
            ng = np.linalg.norm(grad)
            if ng < 1e-15:
                break
            y2 = grad / ng
            if np.allclose(y2, y, atol=1e-15):
                break
            y = y2
        val = h(y)
        if val > best_max[0]:
            best_max = (val, y)
    return SphereExtrema(best_max[0], best_min[0], tuple(best_max[1]),
                         tuple(best_min[1]), "cone-sampling", len(normals))


def sample_sphere_extrema_2d(ef: EntropyFunction, samples: int = 1_000_000) -> tuple[float, float]:
    """Sampling oracle: a uniform angle grid plus each term's boundary angles.

    Including the boundary angles makes kink minima exactly representable, so
    the oracle resolves both extrema to grid-curvature accuracy.
    """
    if ef.d != 2:
        raise MathDomainError("sampling oracle is for d = 2")
    thetas = np.linspace(0.0, _TWO_PI, samples, endpoint=False)
    extra = np.array(_breakpoint_angles(ef), dtype=float)
    if extra.size:
        thetas = np.concatenate([thetas, extra])
    xs = np.stack([np.cos(thetas), np.sin(thetas)])
    weights = np.array([t.weight for t in ef.terms], dtype=float)
    lmat = np.array([t.l for t in ef.terms], dtype=float)
    vals = weights @ np.clip(lmat @ xs, 0.0, None)
    return float(vals.max()), float(vals.min())


# ---------------------------------------------------------------------------
# Candidate non-expansive hyperplanes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Hyperplane:
    """The set {x : normal . x = 0}; a candidate non-expansive subspace.

    Candidates only: these are the breakpoint hyperplanes of the entropy
    function, one per distinct Lyapunov direction.
    """

    normal: tuple[float, ...]
    term_indices: tuple[int, ...]

    def describe(self) -> str:
        coords = " + ".join(f"{c:.12g}*x{i+1}" for i, c in enumerate(self.normal))
        return f"{coords} = 0"


def nonexpansive_candidates(ef: EntropyFunction) -> list[Hyperplane]:
    if ef.d < 2:
        return []
    out: list[tuple[tuple[float, ...], list[int]]] = []
    for idx, t in enumerate(ef.terms):
        norm = math.hypot(*t.l)
        if norm == 0.0:
            continue
        unit = tuple(c / norm for c in t.l)
        lead = next(c for c in unit if abs(c) > 1e-15)
        if lead < 0:
            unit = tuple(-c for c in unit)
        for existing, idxs in out:
            if max(abs(a - b) for a, b in zip(existing, unit)) < 1e-10:
                idxs.append(idx)
                break
        else:
            out.append((unit, [idx]))
    return [Hyperplane(normal=u, term_indices=tuple(ix)) for u, ix in out]


# ---------------------------------------------------------------------------
# Mahler measure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MahlerMeasure:
    value: float
    error_bound: float

    def __float__(self) -> float:
        return self.value


def mahler_measure(coeffs, target_error: float = 1e-8) -> MahlerMeasure:
    """m(P) = log|lc(P)| + sum over roots of log max(1, |root|).

    Roots come from a certified refinement loop; the reported error bound is
    the sum of per-root log errors plus the requested root tolerance.
    """
    p = Poly.of(coeffs)
    if p.is_zero():
        raise MathDomainError("Mahler measure of the zero polynomial")
    if not p.is_integral():
        raise SpecError("expected integer coefficients")
    low = 0
    while p.coeffs[low] == 0:
        low += 1  # factors of x contribute nothing
    cs = [int(c) for c in p.coeffs[low:]]
    lead = abs(cs[-1])
    value = math.log(lead)
    if len(cs) == 1:
        return MahlerMeasure(value=value, error_bound=1e-15)
    dps = 40
    while True:
        with mp.workdps(dps):
            roots, err = mp.polyroots([mp.mpf(c) for c in reversed(cs)],
                                      maxsteps=200, extraprec=200, error=True)
            err = mp.mpf(err) * 4 + mp.mpf(10) ** (-dps + 2)
            total = mp.mpf(value)
            bound = mp.mpf(0)
            ok = True
            for r in roots:
                a = abs(r)
                if a > 1 + 2 * err:
                    total += mp.log(a)
                    bound += err / (a - err)
                elif a < 1 - 2 * err:
                    pass
                else:
                    # root within err of the unit circle: contributes at most
                    # log(1 + 2 err) in magnitude
                    if a > 1:
                        total += mp.log(a)
                    bound += 3 * err
            if bound <= target_error / 2 or dps >= 400:
                return MahlerMeasure(value=float(total), error_bound=float(bound) + 1e-14)
        dps *= 2


def entropy_d1_yuzvinskii(coeffs) -> MahlerMeasure:
    """Entropy of the d = 1 system defined by an integer polynomial: its
    logarithmic Mahler measure."""
    return mahler_measure(coeffs)
