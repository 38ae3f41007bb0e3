"""Exact periodic-point counts.

Char-0 prime components: |F| is the product over the support places of
|xi^n - 1|_v. Under the package's normalization the archimedean part equals
|N(xi^n - 1)|, so the whole count is assembled from exact integers (norms and
finite valuations); no floating point touches the result, and integrality is
asserted rather than assumed.

Char-p prime components: |F| = q^dim where dim is the F_q-dimension of the
Laurent quotient by the generators together with u^n - 1. The dimension comes
from a grevlex Groebner basis with auxiliary inverse variables; an independent
window oracle (unimodular change of coordinates plus truncated linear algebra)
cross-checks it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .action import CharPComponent, PlacedComponent, PlacedSpec
from .algebra import rank_mod_q
from .errors import ConsistencyError, MathDomainError
from .groebner import GfMPoly, GroebnerBasis
from .numberfield import ord_v


@dataclass(frozen=True)
class CountResult:
    """|F(alpha^n)| with provenance: value = prod(count^mult) over components."""

    value: int
    factored: tuple[int, int] | None = None  # (q, exponent) for char-p prime counts
    per_component: tuple[tuple[int, int], ...] = ()  # (component count, multiplicity)
    upper_bound_only: bool = False


def _require_nonzero(n) -> tuple[int, ...]:
    n = tuple(int(v) for v in n)
    if all(v == 0 for v in n):
        raise MathDomainError("n = 0 is the identity map: infinitely many fixed points")
    return n


# ---------------------------------------------------------------------------
# Char 0
# ---------------------------------------------------------------------------

def count_prime_char0(pc: PlacedComponent, n) -> CountResult:
    """Exact |F| for a char-0 prime component at lattice vector n."""
    n = _require_nonzero(n)
    if len(n) != pc.d:
        raise MathDomainError(f"n has {len(n)} entries, component expects {pc.d}")
    field = pc.component.field
    x = field.sub(field.pow_vector(pc.component.xi, n), field.one())
    if x.is_zero():
        raise MathDomainError(f"xi^{n} = 1: the action is not mixing in this direction")
    total = abs(field.norm(x))
    for place in pc.places:
        if place.kind != "finite":
            continue
        v = ord_v(place, x)
        if v:
            total *= Fraction(place.p ** place.res_degree) ** (-v)
    if total.denominator != 1 or total < 1:
        raise ConsistencyError(
            f"place product at n={n} is {total}, expected a positive integer")
    return CountResult(value=int(total), per_component=((int(total), 1),))


# ---------------------------------------------------------------------------
# Char p via Groebner bases
# ---------------------------------------------------------------------------

def _charp_base_generators(pc: CharPComponent) -> tuple[int, list[GfMPoly]]:
    """Polynomial-ring generators in 2d variables: shifted Laurent generators
    plus u_i * t_i - 1 making each u_i invertible."""
    d, q = pc.d, pc.q
    nvars = 2 * d
    gens: list[GfMPoly] = []
    for g in pc.generators:
        shift = [0] * d
        for exp, _c in g.terms:
            for i, e in enumerate(exp):
                shift[i] = max(shift[i], -e)
        poly: GfMPoly = {}
        for exp, c in g.terms:
            mono = tuple(e + s for e, s in zip(exp, shift)) + (0,) * d
            poly[mono] = c % q
        gens.append(poly)
    for i in range(d):
        mono = [0] * nvars
        mono[i] = 1
        mono[d + i] = 1
        gens.append({tuple(mono): 1, (0,) * nvars: q - 1})
    return nvars, gens


def _relation_for(pc: CharPComponent, n: tuple[int, ...]) -> GfMPoly:
    d, q = pc.d, pc.q
    plus = tuple(max(v, 0) for v in n) + (0,) * d
    minus = tuple(max(-v, 0) for v in n) + (0,) * d
    return {plus: 1, minus: q - 1}


def count_prime_charp(pc: CharPComponent, n) -> CountResult:
    """|F| = q^dim for a char-p prime component; errors if the count is infinite."""
    n = _require_nonzero(n)
    if len(n) != pc.d:
        raise MathDomainError(f"n has {len(n)} entries, component expects {pc.d}")
    nvars, gens = _charp_base_generators(pc)
    gens.append(_relation_for(pc, n))
    gb = GroebnerBasis(pc.q, nvars, gens)
    dim = gb.standard_monomial_count()
    if dim is None:
        raise MathDomainError(
            f"count at n={n} is infinite (quotient not zero-dimensional); "
            "the component violates entropy rank one in this direction")
    return CountResult(value=pc.q**dim, factored=(pc.q, dim),
                       per_component=((pc.q**dim, 1),))


def charp_membership_violations(pc: CharPComponent, radius: float):
    """Lattice vectors 0 < |n| <= radius with u^n - 1 inside the ideal."""
    from .action import _half_lattice

    nvars, gens = _charp_base_generators(pc)
    gb = GroebnerBasis(pc.q, nvars, gens)
    out = []
    for n in _half_lattice(pc.d, radius):
        if not gb.normal_form(_relation_for(pc, n)):
            out.append(n)
    return out


# ---------------------------------------------------------------------------
# Closed form for the standard zero-dimensional example
# ---------------------------------------------------------------------------

def ledrappier_axis_closed_form(n: int) -> CountResult:
    """2^(n - 2^ord_2(n)): the axis count for the ideal <2, 1 + u1 + u2>."""
    if n <= 0:
        raise MathDomainError("the closed form needs n >= 1")
    k = 0
    m = n
    while m % 2 == 0:
        m //= 2
        k += 1
    e = n - 2**k
    return CountResult(value=2**e, factored=(2, e), per_component=((2**e, 1),))


# ---------------------------------------------------------------------------
# Composite counts
# ---------------------------------------------------------------------------

def count_composite(ps: PlacedSpec, n) -> CountResult:
    """Product of component counts raised to their multiplicities.

    For non-Noetherian specs the product is only an upper bound for the true
    count, and the result says so.
    """
    n = _require_nonzero(n)
    per = []
    value = 1
    for comp, mult in ps.entries:
        if isinstance(comp, PlacedComponent):
            c = count_prime_char0(comp, n).value
        else:
            c = count_prime_charp(comp, n).value
        per.append((c, mult))
        value *= c**mult
    factored = None
    if len(per) == 1 and isinstance(ps.entries[0][0], CharPComponent):
        q = ps.entries[0][0].q
        e = round(math.log(value, q)) if value > 1 else 0
        if q**e == value:
            factored = (q, e)
    return CountResult(value=value, factored=factored, per_component=tuple(per),
                       upper_bound_only=not ps.noetherian)


# ---------------------------------------------------------------------------
# Window oracle (independent cross-check for char-p counts, d = 2)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WindowOracle:
    """Result of the truncated-window dimension computation."""

    dims: tuple[tuple[int, int], ...]  # (window, dimension) triples
    stabilized: bool
    count: CountResult | None
    gcd: int
    transform: tuple[tuple[int, int], tuple[int, int]]


def _unimodular_to_axis(n: tuple[int, int]) -> tuple[int, tuple[tuple[int, int], tuple[int, int]]]:
    """U in SL_2(Z) with U n = (gcd, 0)."""
    n1, n2 = n
    g = math.gcd(abs(n1), abs(n2))
    old_r, r = n1, n2
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        qq = old_r // r
        old_r, r = r, old_r - qq * r
        old_s, s = s, old_s - qq * s
        old_t, t = t, old_t - qq * t
    # old_r = +-g; normalize to +g
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    u = ((old_s, old_t), (-n2 // g, n1 // g))
    assert u[0][0] * n1 + u[0][1] * n2 == g
    assert u[1][0] * n1 + u[1][1] * n2 == 0
    assert u[0][0] * u[1][1] - u[0][1] * u[1][0] == 1
    return g, u


def _relation_rows(q: int, g: int, gens_w: list[dict[tuple[int, int], int]],
                   t_big: int) -> list[list[int]]:
    """All shifts w1^alpha w2^m * gen whose support stays in degrees [-t_big, t_big]."""
    ncols = g * (2 * t_big + 1)

    def col(a: int, j: int) -> int:
        return (a % g) + g * (j + t_big)

    rows: list[list[int]] = []
    for poly in gens_w:
        deg = max(j for (_a, j) in poly)
        for alpha in range(g):
            for m in range(-t_big, t_big - deg + 1):
                row = [0] * ncols
                for (a, j), c in poly.items():
                    idx = col(a + alpha, j + m)
                    row[idx] = (row[idx] + c) % q
                rows.append(row)
    return rows


def _band_image_dim(q: int, g: int, gens_w: list[dict[tuple[int, int], int]],
                    t_band: int, t_big: int) -> int:
    """Dimension of the image of the band {w1^a w2^j : |j| <= t_band} in the
    quotient of the big window by all in-window generator shifts."""
    rows = _relation_rows(q, g, gens_w, t_big)
    base = rank_mod_q([r[:] for r in rows], q)
    ncols = g * (2 * t_big + 1)
    for a in range(g):
        for j in range(-t_band, t_band + 1):
            row = [0] * ncols
            row[(a % g) + g * (j + t_big)] = 1
            rows.append(row)
    return rank_mod_q(rows, q) - base


def charp_window_oracle(pc: CharPComponent, n, window: int = 8) -> WindowOracle:
    """Independent count via a unimodular change of coordinates sending n to
    (g, 0) and truncated linear algebra over F_q[w1]/(w1^g - 1).

    The reported dimension is the rank of the middle band of w2-degrees
    inside the quotient of a larger window by all generator shifts; this is
    monotone from above in the window size, so agreement across three window
    sizes plus saturation of the band is the stabilization signal. A
    non-stabilized result is inconclusive, not an error.
    """
    n = _require_nonzero(n)
    if pc.d != 2:
        raise MathDomainError("the window oracle is implemented for d = 2 only")
    g, u = _unimodular_to_axis(n)  # type: ignore[arg-type]
    gens_w = []
    for gen in pc.generators:
        mapped: dict[tuple[int, int], int] = {}
        for (e1, e2), c in gen.terms:
            a = u[0][0] * e1 + u[0][1] * e2
            b = u[1][0] * e1 + u[1][1] * e2
            key = (a % g, b)
            mapped[key] = (mapped.get(key, 0) + c) % pc.q
        mapped = {k: v for k, v in mapped.items() if v}
        if not mapped:
            # generator collapses to zero in this quotient: no constraint
            continue
        low = min(j for (_a, j) in mapped)
        gens_w.append({(a, j - low): c for (a, j), c in mapped.items()})
    max_deg = max((max(j for (_a, j) in poly) for poly in gens_w), default=0)
    t_band = max(window, max_deg)
    dims = []
    for t_big in (2 * t_band, 2 * t_band + 1, 2 * t_band + 2):
        dims.append((t_big, _band_image_dim(pc.q, g, gens_w, t_band, t_big)))
    t_last = dims[-1][0]
    saturated = (_band_image_dim(pc.q, g, gens_w, t_band + 1, t_last) == dims[-1][1])
    stabilized = saturated and dims[0][1] == dims[1][1] == dims[2][1]
    count = None
    if stabilized:
        e = dims[0][1]
        count = CountResult(value=pc.q**e, factored=(pc.q, e),
                            per_component=((pc.q**e, 1),))
    return WindowOracle(dims=tuple(dims), stabilized=stabilized, count=count,
                        gcd=g, transform=u)
