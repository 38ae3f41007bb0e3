import math

import pytest

from entrank import (
    CharPComponent,
    SpecError,
    compute_places,
    entropy_rank_one_check,
    mixing_check,
    parse_spec,
    place_spec,
    serialize_spec,
)
from tests.conftest import ratio_shift_spec

LOG2, LOG3 = math.log(2), math.log(3)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def test_parse_x2x3_valid(x2x3_spec):
    assert x2x3_spec.d == 2 and x2x3_spec.noetherian
    comp, mult = x2x3_spec.components[0]
    assert mult == 1 and comp.field.degree == 1


def test_parse_ledrappier_valid(ledrappier_spec):
    comp, _ = ledrappier_spec.components[0]
    assert isinstance(comp, CharPComponent)
    assert comp.q == 2 and len(comp.generators) == 1
    assert len(comp.generators[0].terms) == 3


def test_parse_rejects_zero_xi():
    with pytest.raises(SpecError, match=r"xi\[0\]"):
        parse_spec({"d": 2, "components": [
            {"multiplicity": 1, "char": 0, "min_poly": [0, 1],
             "xi": [[0, 1], [3, 1]]}]})


def test_parse_rejects_mismatched_d():
    with pytest.raises(SpecError, match="xi"):
        parse_spec({"d": 3, "components": [
            {"multiplicity": 1, "char": 0, "min_poly": [0, 1],
             "xi": [[2, 1], [3, 1]]}]})


def test_parse_rejects_bad_schema():
    with pytest.raises(SpecError, match="components"):
        parse_spec({"d": 2})
    with pytest.raises(SpecError, match="char"):
        parse_spec({"d": 1, "components": [{"multiplicity": 1, "char": 4,
                                            "generators": []}]})
    with pytest.raises(SpecError, match="multiplicity"):
        parse_spec({"d": 1, "components": [{"multiplicity": 0, "char": 0,
                                            "min_poly": [0, 1], "xi": [[2, 1]]}]})
    with pytest.raises(SpecError, match="min_poly"):
        parse_spec({"d": 1, "components": [{"multiplicity": 1, "char": 0,
                                            "min_poly": [-1, 0, 1], "xi": [[2, 1], [0, 1]]}]})


def test_parse_rejects_duplicate_exponents():
    with pytest.raises(SpecError, match="duplicate"):
        parse_spec({"d": 1, "components": [
            {"multiplicity": 1, "char": 2,
             "generators": [{"terms": [{"exp": [1], "coeff": 1},
                                       {"exp": [1], "coeff": 1}]}]}]})


def test_serialize_roundtrip(x2x3_spec, ledrappier_spec, golden_mean_spec):
    for spec in (x2x3_spec, ledrappier_spec, golden_mean_spec):
        assert parse_spec(serialize_spec(spec)) == spec


# ---------------------------------------------------------------------------
# places and Lyapunov data
# ---------------------------------------------------------------------------

def test_compute_places_x2x3(x2x3_spec):
    pc = compute_places(x2x3_spec.components[0][0])
    labels = [p.label() for p in pc.places]
    assert labels == ["arch[0](real)", "finite(p=2,f=1,e=1)", "finite(p=3,f=1,e=1)"]
    lyap = [tuple(round(v, 12) for v in row) for row in pc.lyapunov]
    assert lyap == [
        (round(LOG2, 12), round(LOG3, 12)),
        (round(-LOG2, 12), 0.0),
        (0.0, round(-LOG3, 12)),
    ]


def test_compute_places_d1():
    spec = parse_spec({"d": 1, "components": [
        {"multiplicity": 1, "char": 0, "min_poly": [0, 1], "xi": [[2, 1]]}]})
    pc = compute_places(spec.components[0][0])
    assert [p.label() for p in pc.places] == ["arch[0](real)", "finite(p=2,f=1,e=1)"]
    assert abs(pc.lyapunov[0][0] - LOG2) < 1e-12
    assert abs(pc.lyapunov[1][0] + LOG2) < 1e-12


def test_compute_places_golden_mean(golden_mean_spec):
    pc = compute_places(golden_mean_spec.components[0][0])
    labels = [p.label() for p in pc.places]
    assert labels == ["arch[0](real)", "arch[1](real)", "finite(p=2,f=2,e=1)"]
    # xi = (theta, 2): the inert place above 2 sees only the second coordinate
    assert pc.lyapunov[2][0] == 0.0
    assert abs(pc.lyapunov[2][1] + 2 * LOG2) < 1e-12


@pytest.mark.parametrize("spec_name", ["x2x3_spec", "golden_mean_spec"])
def test_lyapunov_rows_sum_to_zero(spec_name, request):
    spec = request.getfixturevalue(spec_name)
    pc = compute_places(spec.components[0][0])
    for i in range(spec.d):
        assert abs(sum(row[i] for row in pc.lyapunov)) < 1e-9


def test_compute_places_deterministic(x2x3_spec):
    a = compute_places(x2x3_spec.components[0][0])
    b = compute_places(x2x3_spec.components[0][0])
    assert [p.label() for p in a.places] == [p.label() for p in b.places]
    assert a.lyapunov == b.lyapunov


def test_ratio_shift_places():
    spec = ratio_shift_spec(2)
    pc = compute_places(spec.components[0][0])
    got = {p.label(): l for p, l in zip(pc.places, pc.lyapunov)}
    assert abs(got["finite(p=2,f=1,e=1)"][1] - 2 * LOG2) < 1e-12
    assert abs(got["arch[0](real)"][1] - (LOG3 - 2 * LOG2)) < 1e-12


# ---------------------------------------------------------------------------
# bounded checks
# ---------------------------------------------------------------------------

def test_mixing_x2x3_clean(x2x3_spec):
    rep = mixing_check(x2x3_spec, radius=10)
    assert rep.passed and not rep.violations


def test_mixing_detects_minus_one():
    spec = parse_spec({"d": 1, "components": [
        {"multiplicity": 1, "char": 0, "min_poly": [0, 1], "xi": [[-1, 1]]}]})
    rep = mixing_check(spec, radius=4)
    assert not rep.passed
    assert any("root of unity of order 2" in v for v in rep.violations)
    assert any("xi^(2,) = 1" in v for v in rep.violations)


def test_mixing_ledrappier_clean(ledrappier_spec):
    rep = mixing_check(ledrappier_spec, radius=6)
    assert rep.passed and not rep.violations


def test_mixing_detects_charp_membership():
    # generator u1 - 1 makes u1^n - 1 a member for every n
    spec = parse_spec({"d": 2, "components": [
        {"multiplicity": 1, "char": 2,
         "generators": [{"terms": [{"exp": [0, 0], "coeff": 1},
                                   {"exp": [1, 0], "coeff": 1}]}]}]})
    rep = mixing_check(spec, radius=3)
    assert not rep.passed
    assert any("(1, 0)" in v for v in rep.violations)


def test_rank_check_char0_passes(x2x3_spec):
    rep = entropy_rank_one_check(x2x3_spec)
    assert rep.passed


def test_rank_check_ledrappier_passes(ledrappier_spec):
    rep = entropy_rank_one_check(ledrappier_spec)
    assert rep.passed


def test_rank_check_full_shift_fails():
    spec = parse_spec({"d": 2, "components": [
        {"multiplicity": 1, "char": 2, "generators": []}]})
    rep = entropy_rank_one_check(spec)
    assert not rep.passed
    assert rep.violations


def test_place_spec_partition(x2x3_spec, ledrappier_spec):
    ps = place_spec(x2x3_spec)
    assert len(ps.placed_char0()) == 1 and not ps.charp()
    ps2 = place_spec(ledrappier_spec)
    assert not ps2.placed_char0() and len(ps2.charp()) == 1
