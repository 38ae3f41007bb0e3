"""Univariate polynomial factorization: over F_p, and over Z for monic inputs.

The F_p path is squarefree decomposition + distinct-degree + Cantor-Zassenhaus
splitting (randomized, but seeded from the input so results are deterministic).
The Z path is Zassenhaus: factor mod a good prime, Hensel-lift past the
Mignotte bound, recombine subsets. Degrees stay small here (field degree is
capped at 8), so subset recombination is never a cost concern.

Polynomials over F_p are plain lists of ints in [0, p), ascending degree,
trimmed. Integer polynomials use algebra.Poly.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .algebra import AlgebraError, Poly, is_prime

GfPoly = list[int]


# ---------------------------------------------------------------------------
# Arithmetic in F_p[x]
# ---------------------------------------------------------------------------

def gf_trim(f: GfPoly) -> GfPoly:
    while f and f[-1] == 0:
        f.pop()
    return f


def gf_from_int_poly(f: Poly, p: int) -> GfPoly:
    return gf_trim([int(c) % p for c in f.coeffs])


def gf_add(f: GfPoly, g: GfPoly, p: int) -> GfPoly:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % p
    return gf_trim(out)


def gf_sub(f: GfPoly, g: GfPoly, p: int) -> GfPoly:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] - c) % p
    return gf_trim(out)


def gf_mul(f: GfPoly, g: GfPoly, p: int) -> GfPoly:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return gf_trim([c % p for c in out])


def gf_divmod(f: GfPoly, g: GfPoly, p: int) -> tuple[GfPoly, GfPoly]:
    if not g:
        raise AlgebraError("division by zero polynomial")
    f = f[:]
    q = [0] * max(0, len(f) - len(g) + 1)
    inv = pow(g[-1], -1, p)
    while len(f) >= len(g):
        c = f[-1] * inv % p
        k = len(f) - len(g)
        if c:
            q[k] = c
            for i, b in enumerate(g):
                f[k + i] = (f[k + i] - c * b) % p
        f.pop()
        gf_trim(f)
        if not f:
            break
    return gf_trim(q), gf_trim(f)


def gf_monic(f: GfPoly, p: int) -> GfPoly:
    if not f:
        return []
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def gf_gcd(f: GfPoly, g: GfPoly, p: int) -> GfPoly:
    while g:
        f, g = g, gf_divmod(f, g, p)[1]
    return gf_monic(f, p)


def gf_pow_mod(f: GfPoly, e: int, mod: GfPoly, p: int) -> GfPoly:
    out = [1]
    f = gf_divmod(f, mod, p)[1]
    while e:
        if e & 1:
            out = gf_divmod(gf_mul(out, f, p), mod, p)[1]
        f = gf_divmod(gf_mul(f, f, p), mod, p)[1]
        e >>= 1
    return out


def gf_derivative(f: GfPoly, p: int) -> GfPoly:
    return gf_trim([i * c % p for i, c in enumerate(f)][1:])


def gf_eval(f: GfPoly, x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


# ---------------------------------------------------------------------------
# Factorization in F_p[x]
# ---------------------------------------------------------------------------

def _gf_pth_root(f: GfPoly, p: int) -> GfPoly:
    # f = g(x^p) implies g has the same coefficients (Frobenius fixes F_p)
    return gf_trim([f[i] for i in range(0, len(f), p)])


def gf_squarefree_parts(f: GfPoly, p: int) -> list[tuple[GfPoly, int]]:
    """Squarefree decomposition of a monic f: list of (monic factor, multiplicity)."""
    out: list[tuple[GfPoly, int]] = []
    e = 1
    f = gf_monic(f, p)
    while len(f) > 1:
        fp = gf_derivative(f, p)
        if not fp:
            f = _gf_pth_root(f, p)
            e *= p
            continue
        c = gf_gcd(f, fp, p)
        w = gf_divmod(f, c, p)[0]
        i = 1
        while len(w) > 1:
            y = gf_gcd(w, c, p)
            fac = gf_divmod(w, y, p)[0]
            if len(fac) > 1:
                out.append((fac, i * e))
            w = y
            c = gf_divmod(c, y, p)[0]
            i += 1
        if len(c) > 1:
            f = _gf_pth_root(c, p)
            e *= p
        else:
            break
    return out


def gf_distinct_degree(f: GfPoly, p: int) -> list[tuple[GfPoly, int]]:
    """Split monic squarefree f into products of irreducibles of equal degree."""
    out = []
    h = [0, 1]  # x
    d = 0
    f = f[:]
    while len(f) - 1 > 2 * d:
        d += 1
        h = gf_pow_mod(h, p, f, p)
        g = gf_gcd(gf_sub(h, [0, 1], p), f, p)
        if len(g) > 1:
            out.append((g, d))
            f = gf_divmod(f, g, p)[0]
            h = gf_divmod(h, f, p)[1]
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def gf_equal_degree_split(f: GfPoly, d: int, p: int, rng: random.Random) -> list[GfPoly]:
    """Split monic squarefree f, all of whose irreducible factors have degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        gf_trim(a)
        if len(a) < 2:
            continue
        if p == 2:
            t = a[:]
            acc = a[:]
            for _ in range(d - 1):
                acc = gf_pow_mod(acc, 2, f, p)
                t = gf_add(t, acc, p)
            g = gf_gcd(t, f, p)
        else:
            g = gf_gcd(a, f, p)
            if 0 < len(g) - 1 < n:
                pass
            else:
                b = gf_pow_mod(a, (p**d - 1) // 2, f, p)
                g = gf_gcd(gf_sub(b, [1], p), f, p)
        if 0 < len(g) - 1 < n:
            left = gf_equal_degree_split(g, d, p, rng)
            right = gf_equal_degree_split(gf_divmod(f, g, p)[0], d, p, rng)
            return left + right


def gf_factor(f: GfPoly, p: int) -> list[tuple[GfPoly, int]]:
    """Full monic factorization over F_p: sorted list of (irreducible, multiplicity)."""
    if not is_prime(p):
        raise AlgebraError(f"modulus must be prime, got {p}")
    if len(f) <= 1:
        raise AlgebraError("cannot factor a constant")
    seed = hash((p, tuple(f))) & 0xFFFFFFFF
    rng = random.Random(seed)
    out: list[tuple[GfPoly, int]] = []
    for part, mult in gf_squarefree_parts(f, p):
        for block, d in gf_distinct_degree(part, p):
            for irr in gf_equal_degree_split(block, d, p, rng):
                out.append((irr, mult))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return out


# ---------------------------------------------------------------------------
# Hensel lifting (monic factors of a monic integer polynomial)
# ---------------------------------------------------------------------------

def _zx_mul(f: list[int], g: list[int], m: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % m
    while out and out[-1] == 0:
        out.pop()
    return out


def _zx_sub(f: list[int], g: list[int], m: int) -> list[int]:
    out = [0] * max(len(f), len(g))
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] - c) % m
    while out and out[-1] == 0:
        out.pop()
    return out


def _zx_add(f: list[int], g: list[int], m: int) -> list[int]:
    out = [0] * max(len(f), len(g))
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % m
    while out and out[-1] == 0:
        out.pop()
    return out


def _zx_divmod_monic(f: list[int], g: list[int], m: int) -> tuple[list[int], list[int]]:
    # g must be monic mod m
    f = f[:]
    q = [0] * max(0, len(f) - len(g) + 1)
    while len(f) >= len(g):
        c = f[-1] % m
        k = len(f) - len(g)
        if c:
            q[k] = c
            for i, b in enumerate(g):
                f[k + i] = (f[k + i] - c * b) % m
        f.pop()
        while f and f[-1] % m == 0:
            f.pop()
    while q and q[-1] == 0:
        q.pop()
    return q, f


def _hensel_step(f, g, h, s, t, m):
    """One quadratic lift: f = g*h and s*g + t*h = 1, valid mod m -> mod m^2."""
    m2 = m * m
    e = _zx_sub(f, _zx_mul(g, h, m2), m2)
    q, r = _zx_divmod_monic(_zx_mul(s, e, m2), h, m2)
    g1 = _zx_add(g, _zx_add(_zx_mul(t, e, m2), _zx_mul(q, g, m2), m2), m2)
    h1 = _zx_add(h, r, m2)
    b = _zx_sub(_zx_add(_zx_mul(s, g1, m2), _zx_mul(t, h1, m2), m2), [1], m2)
    c, d = _zx_divmod_monic(_zx_mul(s, b, m2), h1, m2)
    s1 = _zx_sub(s, d, m2)
    t1 = _zx_sub(t, _zx_add(_zx_mul(t, b, m2), _zx_mul(c, g1, m2), m2), m2)
    return g1, h1, s1, t1


def _gf_ext_gcd(f: GfPoly, g: GfPoly, p: int) -> tuple[GfPoly, GfPoly]:
    """(s, t) with s*f + t*g = 1 for coprime f, g over F_p."""
    r0, r1 = f[:], g[:]
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, gf_sub(s0, gf_mul(q, s1, p), p)
        t0, t1 = t1, gf_sub(t0, gf_mul(q, t1, p), p)
    if len(r0) != 1:
        raise AlgebraError("polynomials are not coprime")
    inv = pow(r0[0], -1, p)
    return [c * inv % p for c in s0], [c * inv % p for c in t0]


def hensel_lift_factors(f: Poly, factors: list[GfPoly], p: int, target_exp: int) -> list[list[int]]:
    """Lift pairwise-coprime monic factors of monic f from mod p to mod p^k, k >= target_exp.

    Returns factor coefficient lists reduced mod p^k where k is the reached
    power-of-two exponent (>= target_exp); the product of the lifted factors
    is f mod p^k.
    """
    fz = [int(c) for c in f.coeffs]
    if len(factors) == 1:
        k = 1
        while k < target_exp:
            k *= 2
        m = p**k
        return [[c % m for c in fz]]
    half = len(factors) // 2
    left, right = factors[:half], factors[half:]
    g: GfPoly = [1]
    for fac in left:
        g = gf_mul(g, fac, p)
    h: GfPoly = [1]
    for fac in right:
        h = gf_mul(h, fac, p)
    s, t = _gf_ext_gcd(g, h, p)
    m, k = p, 1
    G, H, S, T = g[:], h[:], s[:], t[:]
    fmod = fz[:]
    while k < target_exp:
        G, H, S, T = _hensel_step(fmod, G, H, S, T, m)
        m, k = m * m, k * 2
    Gp = Poly.of([Fraction(c) for c in G])
    Hp = Poly.of([Fraction(c) for c in H])
    return (hensel_lift_factors(Gp, left, p, target_exp)[: len(left)]
            + hensel_lift_factors(Hp, right, p, target_exp)[: len(right)])


# ---------------------------------------------------------------------------
# Factorization over Z (monic input) and irreducibility
# ---------------------------------------------------------------------------

def _symmetric(c: int, m: int) -> int:
    c %= m
    return c - m if c > m // 2 else c


def _mignotte_bound(f: Poly) -> int:
    norm = math.isqrt(sum(int(c) ** 2 for c in f.coeffs)) + 1
    return (1 << (f.degree + 1)) * norm


def factor_monic_int_poly(f: Poly) -> list[Poly]:
    """Irreducible monic factors of a monic squarefree integer polynomial."""
    if not f.is_monic() or not f.is_integral():
        raise AlgebraError("expected a monic integer polynomial")
    if f.degree == 1:
        return [f]
    disc = discriminant_int(f)
    if disc == 0:
        raise AlgebraError("input must be squarefree")
    best: tuple[int, list[GfPoly]] | None = None
    p = 1
    tried = 0
    while tried < 5:
        p = _next_prime(p)
        if disc % p == 0:
            continue
        tried += 1
        fac = [g for g, _ in gf_factor(gf_from_int_poly(f, p), p)]
        if len(fac) == 1:
            return [f]
        if best is None or len(fac) < len(best[1]):
            best = (p, fac)
    assert best is not None
    p, modular = best
    bound = _mignotte_bound(f)
    target = 1
    while p**target <= 2 * bound:
        target += 1
    lifted = hensel_lift_factors(f, modular, p, target)
    k = 1
    while k < target:
        k *= 2
    m = p**k

    remaining = list(range(len(lifted)))
    current = f
    found: list[Poly] = []
    size = 1
    while 2 * size <= len(remaining):
        progress = False
        for subset in _subsets(remaining, size):
            prod = [1]
            for i in subset:
                prod = _zx_mul(prod, lifted[i], m)
            cand = Poly.of([Fraction(_symmetric(c, m)) for c in prod])
            if cand.degree < 1:
                continue
            q, r = current.divmod(cand)
            if r.is_zero() and q.is_integral() and cand.is_integral():
                found.append(cand)
                current = q
                remaining = [i for i in remaining if i not in subset]
                progress = True
                break
        if not progress:
            size += 1
    if current.degree >= 1:
        found.append(current)
    found.sort(key=lambda g: (g.degree, tuple(g.coeffs)))
    return found


def _subsets(items: list[int], size: int):
    import itertools

    return itertools.combinations(items, size)


def _next_prime(n: int) -> int:
    n += 1
    while not is_prime(n):
        n += 1
    return n


def discriminant_int(f: Poly) -> int:
    from .algebra import discriminant

    d = discriminant(f)
    assert d.denominator == 1
    return int(d)


def irreducible_over_q(f: Poly) -> tuple[bool, Poly | None]:
    """Exact test for a monic integer polynomial; returns (flag, witness factor)."""
    if f.degree == 1:
        return True, None
    from .algebra import Poly as _P

    g = _poly_gcd_q(f, f.derivative())
    if g.degree >= 1:
        return False, g
    for r in _integer_root_candidates(f):
        if f(Fraction(r)) == 0:
            return False, _P.of([-r, 1])
    factors = factor_monic_int_poly(f)
    if len(factors) == 1:
        return True, None
    return False, factors[0]


def _integer_root_candidates(f: Poly) -> list[int]:
    c0 = int(f.coeffs[0])
    if c0 == 0:
        return [0]
    divs = set()
    d = 1
    while d * d <= abs(c0):
        if c0 % d == 0:
            divs.update({d, -d, abs(c0) // d, -(abs(c0) // d)})
        d += 1
    return sorted(divs, key=abs)


def _poly_gcd_q(f: Poly, g: Poly) -> Poly:
    while not g.is_zero():
        f, g = g, f.divmod(g)[1]
    if f.is_zero():
        return f
    return f.scale(1 / f.leading())


# ---------------------------------------------------------------------------
# Roots of unity
# ---------------------------------------------------------------------------

def _euler_phi(n: int) -> int:
    from .algebra import factor_int

    out = n
    for q in factor_int(n):
        out = out // q * (q - 1)
    return out


def unity_order_candidates(degree: int) -> list[int]:
    """Possible orders of a root of unity inside a number field of this degree.

    An order n forces phi(n) to divide the degree; phi(n) >= sqrt(n/2) bounds
    the scan range.
    """
    limit = 2 * degree * degree + 2
    return [n for n in range(1, limit + 1) if degree % _euler_phi(n) == 0]
