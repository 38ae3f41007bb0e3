import random

import pytest

from entrank.algebra import Poly
from entrank.polyfactor import (
    factor_monic_int_poly,
    gf_factor,
    gf_from_int_poly,
    gf_mul,
    hensel_lift_factors,
    irreducible_over_q,
    unity_order_candidates,
)


def _reassemble(factors, p):
    out = [1]
    for f, mult in factors:
        for _ in range(mult):
            out = gf_mul(out, f, p)
    return out


def test_gf_factor_golden_mean_mod_2_irreducible():
    f = gf_from_int_poly(Poly.of([-1, -1, 1]), 2)
    factors = gf_factor(f, 2)
    assert factors == [([1, 1, 1], 1)]


def test_gf_factor_golden_mean_mod_5_ramified():
    f = gf_from_int_poly(Poly.of([-1, -1, 1]), 5)
    factors = gf_factor(f, 5)
    assert factors == [([2, 1], 2)]  # (t + 2)^2


def test_gf_factor_splits_mod_11():
    f = gf_from_int_poly(Poly.of([-1, -1, 1]), 11)
    factors = gf_factor(f, 11)
    assert len(factors) == 2 and all(m == 1 for _g, m in factors)
    assert _reassemble(factors, 11) == f


@pytest.mark.parametrize("p", [2, 3, 5, 13])
def test_gf_factor_random_roundtrip(p):
    rng = random.Random(100 + p)
    for _ in range(25):
        deg = rng.randint(1, 7)
        f = [rng.randrange(p) for _ in range(deg)] + [1]
        factors = gf_factor(f, p)
        assert _reassemble(factors, p) == f
        for g, _m in factors:
            assert g[-1] == 1  # monic irreducible parts


def test_gf_factor_handles_pth_powers():
    # (t^2 + t + 1)^2 mod 2 has zero derivative
    sq = gf_mul([1, 1, 1], [1, 1, 1], 2)
    assert gf_factor(sq, 2) == [([1, 1, 1], 2)]


def test_hensel_lift_product_matches():
    f = Poly.of([1, 0, 0, 0, 1])  # x^4 + 1
    modular = [g for g, _ in gf_factor(gf_from_int_poly(f, 3), 3)]
    lifted = hensel_lift_factors(f, modular, 3, 4)
    m = 3 ** (2 ** 2)  # lifting doubles exponents: reaches 3^4
    prod = [1]
    for blk in lifted:
        out = [0] * (len(prod) + len(blk) - 1)
        for i, a in enumerate(prod):
            for j, b in enumerate(blk):
                out[i + j] = (out[i + j] + a * b) % m
        prod = out
    expected = [c % m for c in (1, 0, 0, 0, 1)]
    assert prod == expected
    for blk, orig in zip(lifted, modular):
        assert [c % 3 for c in blk] == orig


def test_factor_x4_plus_1_irreducible():
    # reducible mod every prime, irreducible over Q
    assert factor_monic_int_poly(Poly.of([1, 0, 0, 0, 1])) == [Poly.of([1, 0, 0, 0, 1])]


def test_factor_products():
    f = Poly.of([-1, 0, 1])  # (x-1)(x+1)
    got = factor_monic_int_poly(f)
    assert got == [Poly.of([-1, 1]), Poly.of([1, 1])]
    g = Poly.of([-1, -1, 1]) * Poly.of([1, 1, 1]) * Poly.of([-2, 1])
    parts = factor_monic_int_poly(g)
    assert sorted(p.degree for p in parts) == [1, 2, 2]
    prod = Poly.of([1])
    for p in parts:
        prod = prod * p
    assert prod == g


def test_irreducible_over_q():
    ok, witness = irreducible_over_q(Poly.of([-1, -1, 1]))
    assert ok and witness is None
    ok, witness = irreducible_over_q(Poly.of([-1, 0, 1]))
    assert not ok and witness is not None and witness.degree >= 1
    # non-squarefree input yields the gcd witness
    ok, witness = irreducible_over_q(Poly.of([1, 2, 1]))
    assert not ok and witness.degree == 1


def test_unity_order_candidates():
    assert unity_order_candidates(1) == [1, 2]
    assert set(unity_order_candidates(2)) == {1, 2, 3, 4, 6}
    cands = unity_order_candidates(8)
    assert {1, 2, 3, 4, 5, 6, 8, 10, 12, 15, 16, 20, 24, 30}.issubset(set(cands))
    assert all(n <= 130 for n in cands)
