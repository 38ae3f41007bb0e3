"""Action specifications: prime components with multiplicities, parsing,
validation, place data, and the bounded mixing / finite-entropy checks.

A spec is a JSON document:

    {
      "d": 2,
      "noetherian": true,
      "components": [
        {"multiplicity": 1, "char": 0,
         "min_poly": [0, 1],
         "xi": [[2, 1], [3, 1]]},
        {"multiplicity": 1, "char": 2,
         "generators": [{"terms": [{"exp": [0, 0], "coeff": 1},
                                   {"exp": [1, 0], "coeff": 1},
                                   {"exp": [0, 1], "coeff": 1}]}]}
      ]
    }

Rational coordinates are flat [num, den, num, den, ...] pairs in the power
basis of the component's field (a single pair per coordinate when the field
is Q).
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import factor_int, is_prime
from .errors import MathDomainError, SpecError
from .numberfield import (
    DEFAULT_PREC,
    Element,
    NumberField,
    Place,
    archimedean_places,
    build_field,
    finite_places_above,
    log_abs_v_ball,
    ord_v,
)

# ---------------------------------------------------------------------------
# Components
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Char0Component:
    """A number field K together with d nonzero multiplication parameters."""

    field: NumberField
    xi: tuple[Element, ...]

    @property
    def d(self) -> int:
        return len(self.xi)


@dataclass(frozen=True)
class LaurentPolynomial:
    """Laurent polynomial over F_q: ((exponent vector, coefficient), ...)."""

    terms: tuple[tuple[tuple[int, ...], int], ...]

    def is_zero(self) -> bool:
        return not self.terms


@dataclass(frozen=True)
class CharPComponent:
    """Quotient of F_q[u_1^+-, ..., u_d^+-] by the ideal the generators span."""

    q: int
    d: int
    generators: tuple[LaurentPolynomial, ...]


PrimeComponent = Char0Component | CharPComponent


@dataclass(frozen=True)
class ActionSpec:
    d: int
    noetherian: bool
    components: tuple[tuple[PrimeComponent, int], ...]  # with multiplicities

    def char0_components(self):
        return [(c, m) for c, m in self.components if isinstance(c, Char0Component)]

    def charp_components(self):
        return [(c, m) for c, m in self.components if isinstance(c, CharPComponent)]


# ---------------------------------------------------------------------------
# Parsing and serialization
# ---------------------------------------------------------------------------

def parse_spec(doc: dict) -> ActionSpec:
    """Validate a spec document; error messages carry the JSON path."""
    if not isinstance(doc, dict):
        raise SpecError("spec document must be a JSON object")
    d = doc.get("d")
    if not isinstance(d, int) or d < 1:
        raise SpecError("d: must be an integer >= 1")
    noetherian = doc.get("noetherian", True)
    if not isinstance(noetherian, bool):
        raise SpecError("noetherian: must be a boolean")
    comps = doc.get("components")
    if not isinstance(comps, list) or not comps:
        raise SpecError("components: must be a non-empty list")
    parsed = []
    for i, comp in enumerate(comps):
        path = f"components[{i}]"
        if not isinstance(comp, dict):
            raise SpecError(f"{path}: must be an object")
        mult = comp.get("multiplicity", 1)
        if not isinstance(mult, int) or mult < 1:
            raise SpecError(f"{path}.multiplicity: must be an integer >= 1")
        char = comp.get("char")
        if char == 0:
            parsed.append((_parse_char0(comp, d, path), mult))
        elif isinstance(char, int) and char >= 2:
            parsed.append((_parse_charp(comp, d, path), mult))
        else:
            raise SpecError(f"{path}.char: must be 0 or a prime")
    return ActionSpec(d=d, noetherian=noetherian, components=tuple(parsed))


def _parse_char0(comp: dict, d: int, path: str) -> Char0Component:
    mp_coeffs = comp.get("min_poly")
    if not isinstance(mp_coeffs, list) or not all(isinstance(c, int) for c in mp_coeffs):
        raise SpecError(f"{path}.min_poly: must be a list of integers")
    try:
        field = build_field(mp_coeffs)
    except SpecError as e:
        raise SpecError(f"{path}.min_poly: {e}") from None
    xi_raw = comp.get("xi")
    if not isinstance(xi_raw, list) or len(xi_raw) != d:
        raise SpecError(f"{path}.xi: must be a list of {d} coordinate vectors")
    xs = []
    for j, flat in enumerate(xi_raw):
        if (not isinstance(flat, list) or len(flat) != 2 * field.degree
                or not all(isinstance(v, int) for v in flat)):
            raise SpecError(
                f"{path}.xi[{j}]: expected {2 * field.degree} integers "
                f"([num, den] per power-basis coordinate)")
        coords = []
        for k in range(field.degree):
            num, den = flat[2 * k], flat[2 * k + 1]
            if den == 0:
                raise SpecError(f"{path}.xi[{j}]: zero denominator")
            coords.append(Fraction(num, den))
        el = field.element(coords)
        if el.is_zero():
            raise SpecError(f"{path}.xi[{j}]: coordinate is zero")
        xs.append(el)
    return Char0Component(field=field, xi=tuple(xs))


def _parse_charp(comp: dict, d: int, path: str) -> CharPComponent:
    q = comp["char"]
    if not is_prime(q):
        raise SpecError(f"{path}.char: {q} is not prime")
    gens_raw = comp.get("generators")
    if not isinstance(gens_raw, list):
        raise SpecError(f"{path}.generators: must be a list")
    gens = []
    for j, g in enumerate(gens_raw):
        gpath = f"{path}.generators[{j}]"
        if not isinstance(g, dict) or not isinstance(g.get("terms"), list):
            raise SpecError(f"{gpath}: must be an object with a 'terms' list")
        seen = {}
        for k, t in enumerate(g["terms"]):
            tpath = f"{gpath}.terms[{k}]"
            if not isinstance(t, dict):
                raise SpecError(f"{tpath}: must be an object")
            exp = t.get("exp")
            if (not isinstance(exp, list) or len(exp) != d
                    or not all(isinstance(e, int) for e in exp)):
                raise SpecError(f"{tpath}.exp: must be {d} integers")
            coeff = t.get("coeff")
            if not isinstance(coeff, int):
                raise SpecError(f"{tpath}.coeff: must be an integer")
            c = coeff % q
            key = tuple(exp)
            if key in seen:
                raise SpecError(f"{tpath}.exp: duplicate exponent vector {exp}")
            if c:
                seen[key] = c
        if not seen:
            raise SpecError(f"{gpath}: generator is zero mod {q}")
        gens.append(LaurentPolynomial(terms=tuple(sorted(seen.items()))))
    return CharPComponent(q=q, d=d, generators=tuple(gens))


def parse_spec_json(text: str) -> ActionSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(f"invalid JSON: {e}") from None
    return parse_spec(doc)


def load_spec(path: str) -> ActionSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_spec_json(fh.read())


def serialize_spec(spec: ActionSpec) -> dict:
    comps = []
    for comp, mult in spec.components:
        if isinstance(comp, Char0Component):
            xi = []
            for el in comp.xi:
                flat: list[int] = []
                for c in el.coords:
                    flat.extend([c.numerator, c.denominator])
                xi.append(flat)
            comps.append({
                "multiplicity": mult,
                "char": 0,
                "min_poly": list(comp.field.min_poly),
                "xi": xi,
            })
        else:
            comps.append({
                "multiplicity": mult,
                "char": comp.q,
                "generators": [
                    {"terms": [{"exp": list(e), "coeff": c} for e, c in g.terms]}
                    for g in comp.generators
                ],
            })
    return {"d": spec.d, "noetherian": spec.noetherian, "components": comps}


# ---------------------------------------------------------------------------
# Places and Lyapunov vectors for char-0 components
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlacedComponent:
    """A char-0 component with its support places and Lyapunov vectors.

    The place set is every archimedean place plus every finite place where
    some coordinate of xi has nonzero valuation; with that choice the rows
    of `lyapunov` sum to zero coordinate-wise (product formula).
    """

    component: Char0Component
    places: tuple[Place, ...]
    lyapunov: tuple[tuple[float, ...], ...]
    finite_ords: tuple[tuple[int, ...] | None, ...]  # ord_v(xi_i) rows, None at arch

    @property
    def d(self) -> int:
        return self.component.d

    def lyapunov_entry_ball(self, place_index: int, coord: int, prec: int):
        """High-precision (value, radius) for one Lyapunov entry."""
        import mpmath as mp

        place = self.places[place_index]
        if place.kind == "finite":
            o = self.finite_ords[place_index][coord]
            with mp.workprec(prec):
                v = -o * place.res_degree * mp.log(place.p)
            return v, mp.mpf(2) ** (-prec + 4)
        return log_abs_v_ball(place, self.component.xi[coord], prec)


def compute_places(comp: Char0Component, prec: int = DEFAULT_PREC) -> PlacedComponent:
    field = comp.field
    places: list[Place] = list(archimedean_places(field, prec))
    ord_rows: list[tuple[int, ...] | None] = [None] * len(places)
    primes: set[int] = set()
    for el in comp.xi:
        nrm = field.norm(el)
        primes.update(factor_int(nrm.numerator))
        primes.update(factor_int(nrm.denominator))
    for p in sorted(primes):
        for place in finite_places_above(field, p):
            ords = tuple(ord_v(place, el) for el in comp.xi)
            if any(ords):
                places.append(place)
                ord_rows.append(ords)
    lyap = []
    for place, ords in zip(places, ord_rows):
        if place.kind == "finite":
            logp = math.log(place.p)
            lyap.append(tuple(-o * place.res_degree * logp for o in ords))
        else:
            row = []
            for el in comp.xi:
                val, _ = log_abs_v_ball(place, el, prec)
                row.append(float(val))
            lyap.append(tuple(row))
    return PlacedComponent(component=comp, places=tuple(places),
                           lyapunov=tuple(lyap), finite_ords=tuple(ord_rows))


@dataclass(frozen=True)
class PlacedSpec:
    """ActionSpec with every char-0 component placed (char-p kept as is)."""

    spec: ActionSpec
    entries: tuple[tuple[PlacedComponent | CharPComponent, int], ...]

    @property
    def d(self) -> int:
        return self.spec.d

    @property
    def noetherian(self) -> bool:
        return self.spec.noetherian

    def placed_char0(self):
        return [(c, m) for c, m in self.entries if isinstance(c, PlacedComponent)]

    def charp(self):
        return [(c, m) for c, m in self.entries if isinstance(c, CharPComponent)]


def place_spec(spec: ActionSpec, prec: int = DEFAULT_PREC) -> PlacedSpec:
    entries: list[tuple[PlacedComponent | CharPComponent, int]] = []
    for comp, mult in spec.components:
        if isinstance(comp, Char0Component):
            entries.append((compute_places(comp, prec), mult))
        else:
            entries.append((comp, mult))
    return PlacedSpec(spec=spec, entries=tuple(entries))


# ---------------------------------------------------------------------------
# Bounded mixing and finite-entropy checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckReport:
    name: str
    passed: bool
    verified_up_to_radius: float
    violations: tuple[str, ...]
    notes: tuple[str, ...]


def _half_lattice(d: int, radius: float):
    """One representative of each +-n pair with 0 < |n|_2 <= radius."""
    r = int(math.floor(radius))
    for n in itertools.product(range(-r, r + 1), repeat=d):
        if all(v == 0 for v in n):
            continue
        nz = next(v for v in n if v != 0)
        if nz < 0:
            continue
        if sum(v * v for v in n) <= radius * radius:
            yield n


def mixing_check(spec: ActionSpec, radius: float = 8.0) -> CheckReport:
    """Verify xi^n != 1 (char 0) / u^n - 1 not in the ideal (char p) up to a radius.

    This is a bounded verification, not a proof of mixing.
    """
    violations: list[str] = []
    notes = [f"bounded check: lattice vectors with Euclidean norm <= {radius}"]
    for idx, (comp, _mult) in enumerate(spec.components):
        if isinstance(comp, Char0Component):
            field = comp.field
            for j, el in enumerate(comp.xi):
                order = field.root_of_unity_order(el)
                if order == 1:
                    violations.append(f"components[{idx}]: xi[{j}] = 1")
                elif order is not None:
                    violations.append(
                        f"components[{idx}]: xi[{j}] is a root of unity of order {order}")
            one = field.one()
            for n in _half_lattice(spec.d, radius):
                if field.pow_vector(comp.xi, n) == one:
                    violations.append(f"components[{idx}]: xi^{n} = 1")
        else:
            from .counting import charp_membership_violations

            for n in charp_membership_violations(comp, radius):
                violations.append(f"components[{idx}]: u^{n} - 1 lies in the ideal")
    return CheckReport(name="mixing", passed=not violations,
                       verified_up_to_radius=radius,
                       violations=tuple(violations), notes=tuple(notes))


def entropy_rank_one_check(spec: ActionSpec) -> CheckReport:
    """Necessary finite-entropy checks: char 0 passes by construction, char p
    is probed through the counting engine on a small set of directions."""
    violations: list[str] = []
    notes: list[str] = []
    probe: list[tuple[int, ...]] = []
    for i in range(spec.d):
        probe.append(tuple(1 if j == i else 0 for j in range(spec.d)))
    probe.append(tuple(1 for _ in range(spec.d)))
    for idx, (comp, _mult) in enumerate(spec.components):
        if isinstance(comp, Char0Component):
            notes.append(f"components[{idx}]: number-field component, finite entropy")
            continue
        from .counting import count_prime_charp

        for n in probe:
            try:
                count_prime_charp(comp, n)
            except MathDomainError as e:
                violations.append(f"components[{idx}] at n={n}: {e}")
        notes.append(f"components[{idx}]: probed directions {probe}")
    return CheckReport(name="entropy-rank-one", passed=not violations,
                       verified_up_to_radius=0.0,
                       violations=tuple(violations), notes=tuple(notes))
