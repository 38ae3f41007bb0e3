"""Empirical growth-rate machinery: normalized log-counts f, the split
f = g + h(n_hat), shell scans with C1/C2 estimates, and lattice sequences
converging to a non-expansive line.

The identity behind the split: at every support place, |xi^n - 1|_v equals
|xi^n|_v * |1 - xi^(-n)|_v when |xi^n|_v > 1 and |1 - xi^n|_v otherwise, so
log count = h(n) + sum of log |1 - phi_v(n)|_v. Both routes to g are
computed and compared; disagreement is an internal error, not a warning.

Only char-0 components enter h and g (char-p components have no computed
places); f always includes every component, so for specs with char-p parts
the decomposition columns cover the char-0 share of f.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .action import (
    ActionSpec,
    PlacedComponent,
    PlacedSpec,
    parse_spec,
    place_spec,
    serialize_spec,
)
from .algebra import log_fraction
from .counting import count_composite, count_prime_char0
from .entropy import EntropyFunction, Hyperplane, directional_entropy, entropy_function_of
from .errors import ConsistencyError, MathDomainError, ResourceLimitError
from .numberfield import Element, Place, compare_abs_to_one, log_abs_v_ball, ord_v

IDENTITY_TOL = 1e-8


# ---------------------------------------------------------------------------
# phi_v and the two routes to g
# ---------------------------------------------------------------------------

def phi_v(pc: PlacedComponent, place: Place, n) -> Element:
    """xi^(-n) when |xi^n|_v > 1, else xi^n (ties resolve to the <= branch)."""
    n = tuple(int(v) for v in n)
    if all(v == 0 for v in n):
        raise MathDomainError("phi_v needs n != 0")
    field = pc.component.field
    xn = field.pow_vector(pc.component.xi, n)
    if compare_abs_to_one(place, xn) > 0:
        return field.inv(xn)
    return xn


def _log_abs_one_minus_phi(pc: PlacedComponent, place: Place, n) -> float:
    field = pc.component.field
    value = field.sub(field.one(), phi_v(pc, place, n))
    if value.is_zero():
        raise MathDomainError(f"phi_v = 1 at n={n}: non-mixing direction")
    if place.kind == "finite":
        return -ord_v(place, value) * place.res_degree * math.log(place.p)
    if field.degree == 1:
        return log_fraction(abs(value.coords[0]))
    val, _err = log_abs_v_ball(place, value)
    return float(val)


def _norm2(n) -> float:
    return math.sqrt(sum(float(v) ** 2 for v in n))


def f_value(ps: PlacedSpec, n) -> float:
    """log |F(alpha^n)| / |n|_2 over the whole spec."""
    count = count_composite(ps, n).value
    return math.log(count) / _norm2(n)


def g_value(ps: PlacedSpec, n, ef: EntropyFunction | None = None) -> float:
    """(1/|n|) sum of log |1 - phi_v(n)|_v over char-0 components.

    Computed directly and via f_char0 - h(n_hat); both must agree within
    IDENTITY_TOL or a ConsistencyError is raised.
    """
    n = tuple(int(v) for v in n)
    norm = _norm2(n)
    if norm == 0:
        raise MathDomainError("g needs n != 0")
    direct = 0.0
    f0 = 0.0
    for pc, mult in ps.placed_char0():
        for place in pc.places:
            direct += mult * _log_abs_one_minus_phi(pc, place, n)
        f0 += mult * math.log(count_prime_char0(pc, n).value)
    direct /= norm
    f0 /= norm
    if ef is None:
        ef = entropy_function_of(ps)
    h_hat = directional_entropy(ef, n) / norm
    if abs(direct - (f0 - h_hat)) > IDENTITY_TOL:
        raise ConsistencyError(
            f"decomposition mismatch at n={n}: direct g = {direct!r}, "
            f"f - h = {f0 - h_hat!r}")
    return direct


# ---------------------------------------------------------------------------
# Point records and shell scans
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PointRecord:
    n: tuple[int, ...]
    count: int
    f: float
    h_hat: float
    g: float


@dataclass(frozen=True)
class ShellStat:
    lo: float
    hi: float
    points: int
    f_min: float
    f_max: float
    g_abs_max: float
    argmin_f: tuple[int, ...]
    argmax_f: tuple[int, ...]


@dataclass(frozen=True)
class ScanReport:
    r_min: float
    r_max: float
    records: tuple[PointRecord, ...]
    shells: tuple[ShellStat, ...]
    c1_estimate: float
    c2_estimate: float
    c1_trimmed: float
    c2_trimmed: float
    argmax_f: tuple[int, ...]
    argmin_f: tuple[int, ...]
    partial: bool
    has_charp: bool


def point_record(ps: PlacedSpec, n, ef: EntropyFunction | None = None) -> PointRecord:
    n = tuple(int(v) for v in n)
    norm = _norm2(n)
    count = count_composite(ps, n).value
    f = math.log(count) / norm
    if ef is None:
        ef = entropy_function_of(ps)
    h_hat = directional_entropy(ef, n) / norm
    if ps.placed_char0():
        g = g_value(ps, n, ef)
    else:
        g = 0.0
    return PointRecord(n=n, count=count, f=f, h_hat=h_hat, g=g)


def lattice_shell_points(d: int, r_min: float, r_max: float) -> list[tuple[int, ...]]:
    """Representatives of +-n pairs with r_min <= |n|_2 <= r_max, ordered by
    (unit shell, lexicographic)."""
    r_int = int(math.floor(r_max))
    lo2, hi2 = r_min * r_min, r_max * r_max
    pts = []
    for n in itertools.product(range(-r_int, r_int + 1), repeat=d):
        s = sum(v * v for v in n)
        if s == 0 or not (lo2 <= s <= hi2):
            continue
        first = next(v for v in n if v != 0)
        if first < 0:
            continue
        pts.append((int(math.floor(math.sqrt(s))), n))
    pts.sort()
    return [n for _shell, n in pts]


_WORKER_CACHE: dict[str, tuple[PlacedSpec, EntropyFunction]] = {}


def _scan_worker(args):
    import json

    spec_json, chunk = args
    cached = _WORKER_CACHE.get(spec_json)
    if cached is None:
        ps = place_spec(parse_spec(json.loads(spec_json)))
        cached = (ps, entropy_function_of(ps))
        _WORKER_CACHE[spec_json] = cached
    ps, ef = cached
    return [point_record(ps, n, ef) for n in chunk]


def shell_scan(ps: PlacedSpec, r_min: float, r_max: float,
               budget: int = 1_000_000, workers: int | None = None) -> ScanReport:
    """Evaluate every representative lattice point in the annulus, aggregate
    per unit shell, and estimate C1/C2 from the outer 20 percent of radii."""
    if not (0 < r_min < r_max):
        raise MathDomainError("need 0 < r_min < r_max")
    points = lattice_shell_points(ps.d, r_min, r_max)
    partial = False
    if len(points) > budget:
        points = points[:budget]
        partial = True
    ef = entropy_function_of(ps)
    if workers is None:
        workers = int(os.environ.get("ENTRANK_WORKERS", "1"))
    if workers > 1 and len(points) > 64:
        import json

        spec_json = json.dumps(serialize_spec(ps.spec), sort_keys=True)
        chunk_size = max(16, len(points) // (workers * 8))
        chunks = [points[i:i + chunk_size] for i in range(0, len(points), chunk_size)]
        records: list[PointRecord] = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_scan_worker, [(spec_json, c) for c in chunks]):
                records.extend(part)
    else:
        records = [point_record(ps, n, ef) for n in points]

    by_shell: dict[int, list[PointRecord]] = {}
    for rec in records:
        by_shell.setdefault(int(math.floor(_norm2(rec.n))), []).append(rec)
    shells = []
    for k in sorted(by_shell):
        rs = by_shell[k]
        fmin = min(rs, key=lambda r: r.f)
        fmax = max(rs, key=lambda r: r.f)
        shells.append(ShellStat(lo=float(k), hi=float(k + 1), points=len(rs),
                                f_min=fmin.f, f_max=fmax.f,
                                g_abs_max=max(abs(r.g) for r in rs),
                                argmin_f=fmin.n, argmax_f=fmax.n))
    cut = r_max - 0.2 * (r_max - r_min)
    outer = [r for r in records if _norm2(r.n) >= cut] or records
    outer_sorted = sorted(outer, key=lambda r: r.f)
    c2, c1 = outer_sorted[0], outer_sorted[-1]
    c2_trim = outer_sorted[min(1, len(outer_sorted) - 1)]
    c1_trim = outer_sorted[max(-2, -len(outer_sorted))]
    return ScanReport(
        r_min=r_min, r_max=r_max, records=tuple(records), shells=tuple(shells),
        c1_estimate=c1.f, c2_estimate=c2.f,
        c1_trimmed=c1_trim.f, c2_trimmed=c2_trim.f,
        argmax_f=c1.n, argmin_f=c2.n, partial=partial,
        has_charp=bool(ps.charp()))


def write_records_csv(records, fh, d: int) -> None:
    import csv

    w = csv.writer(fh)
    w.writerow([f"n{i+1}" for i in range(d)] + ["count", "f", "h_hat", "g"])
    for r in records:
        w.writerow([*r.n, r.count, f"{r.f:.12g}", f"{r.h_hat:.12g}", f"{r.g:.12g}"])


# ---------------------------------------------------------------------------
# Sequences converging to a non-expansive line
# ---------------------------------------------------------------------------

def _continued_fraction_convergents(x: mp.mpf, depth: int) -> list[tuple[int, int]]:
    """Convergents p/q of x > 0 from its continued fraction expansion."""
    out = []
    p0, q0, p1, q1 = 1, 0, 0, 1  # p0/q0 = 1/0, p1/q1 = 0/1
    val = mp.mpf(x)
    for _ in range(depth):
        a = int(mp.floor(val))
        p0, q0, p1, q1 = a * p0 + p1, a * q0 + q1, p0, q0
        out.append((p0, q0))
        frac = val - a
        if frac < mp.mpf(10) ** (-mp.mp.dps + 8):
            break
        val = 1 / frac
    return out


def convergent_sequence(ps: PlacedSpec, hp: Hyperplane, k: int,
                        ef: EntropyFunction | None = None) -> list[PointRecord]:
    """The first k lattice points produced by continued-fraction convergents
    of the line's slope (axis multiples when the slope is rational).

    Convergents with a zero coordinate are dropped: those directions belong
    to other candidate hyperplanes.
    """
    if ps.d != 2:
        raise MathDomainError("convergent sequences are implemented for d = 2")
    if k < 1:
        raise MathDomainError("need k >= 1")
    if ef is None:
        ef = entropy_function_of(ps)
    term = ef.terms[hp.term_indices[0]]
    if term.kind == "finite":
        # both entries are integer multiples of log p: rational slope
        pc = term.component
        assert pc is not None
        ords = pc.finite_ords[term.place_index]
        a, b = ords  # line: -(a x + b y) log(p^f) = 0
        if a == 0 and b == 0:
            raise MathDomainError("degenerate hyperplane")
        g = math.gcd(abs(a), abs(b))
        direction = (-b // g, a // g)
        if direction[0] < 0 or (direction[0] == 0 and direction[1] < 0):
            direction = (-direction[0], -direction[1])
        pts = [(j * direction[0], j * direction[1]) for j in range(1, k + 1)]
        return [point_record(ps, n, ef) for n in pts]
    with mp.workdps(80):
        pc = term.component
        assert pc is not None
        a_ball = pc.lyapunov_entry_ball(term.place_index, 0, 300)
        b_ball = pc.lyapunov_entry_ball(term.place_index, 1, 300)
        a, b = mp.mpf(a_ball[0]), mp.mpf(b_ball[0])
        if a < 0:
            a, b = -a, -b
        if a == 0 or b == 0:
            raise MathDomainError("axis hyperplane: use the finite-place route")
        ratio = abs(b) / a
        convs = _continued_fraction_convergents(ratio, depth=k + 6)
    sign = -1 if b > 0 else 1
    pts = []
    for p, q in convs:
        n = (sign * p, q)
        if n[0] == 0 or n[1] == 0:
            continue
        pts.append(n)
        if len(pts) == k:
            break
    return [point_record(ps, n, ef) for n in pts]
