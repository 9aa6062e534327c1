"""End-to-end replay of the computation chain with stage-by-stage diffing.

Each stage recomputes one block of results — braid actions, cover
lifts, the assembled and simplified presentation, the patch sweep, the
commutant certificate, abelian invariants, Alexander polynomials, and
the curve checks — and compares the rendered text against the expected
text stored in ``data/expected_stages.json``.  Stage failures are
recorded in the report, never skipped; the report serializes
deterministically so golden tests can pin it byte for byte.

Two knobs exist purely as test hooks: ``braid_convention="flipped"``
interprets every braid letter as its inverse (a plausible rival sign
convention, which the diff must catch), and ``k`` restricts the patch
sweep to a single exponent (whose result must not depend on k).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Callable

from .abelian import abelian_invariants
from .alexander import WeightedPresentation, alexander_polynomial
from .cover import lift_monodromy
from .coset import quotient_order
from .curves import (
    EPS,
    chart_cubic_factors,
    cubic_pencil,
    intersection_multiplicity_origin,
    nodal_cubic,
    parse_polynomial,
    divides,
    singular_parameters,
    verify_node,
    verify_torus_structure,
)
from .presentation import (
    MetacyclicForm,
    Presentation,
    commutant_report,
    format_presentation,
    metacyclic_normal_form,
    parse_presentation,
    patch_fiber,
    tietze_simplify,
    zvk_assemble,
)
from .words import BraidWord, FreeEndo, Word, braid_action, parse_braid, parse_word

MONODROMY_BRAIDS = {
    "m1": "s2",
    "m+": "s1^-3 s2 s1^3",
    "m-": "s1^-1 s2^2 s1 s2^-2 s1",
}

BRAID_QUOTIENT = "gens: s1, s2; rels: s1 s2 s1 s2^-1 s1^-1 s2^-1, s1 s2 s1 s2 s1 s2"

STAGE_NAMES = (
    "braid-actions",
    "cover-lifts",
    "zvk-presentation",
    "patch-sweep",
    "commutant",
    "abelian-invariants",
    "alexander-polynomials",
    "curve-checks",
)


@dataclass(frozen=True)
class StageResult:
    name: str
    expected: str
    computed: str

    @property
    def match(self) -> bool:
        return self.expected == self.computed


@dataclass(frozen=True)
class PipelineReport:
    stages: tuple[StageResult, ...]

    @property
    def overall(self) -> bool:
        return all(s.match for s in self.stages)

    def to_text(self) -> str:
        width = max(len(s.name) for s in self.stages)
        lines = [f"{s.name.ljust(width)}  {'ok' if s.match else 'MISMATCH'}" for s in self.stages]
        passed = sum(1 for s in self.stages if s.match)
        lines.append(f"overall: {'ok' if self.overall else 'FAIL'} ({passed}/{len(self.stages)})")
        for s in self.stages:
            if not s.match:
                lines.append("")
                lines.append(f"--- {s.name}: expected ---")
                lines.append(s.expected)
                lines.append(f"--- {s.name}: computed ---")
                lines.append(s.computed)
        return "\n".join(lines) + "\n"

    def to_structured(self) -> dict:
        return {
            "overall": self.overall,
            "stages": [
                {
                    "name": s.name,
                    "match": s.match,
                    "expected": s.expected,
                    "computed": s.computed,
                }
                for s in self.stages
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_structured(), sort_keys=True, indent=2) + "\n"


def expected_stage_texts() -> dict[str, str]:
    """Expected per-stage text blocks from the packaged data file."""
    path = resources.files("vankampen").joinpath("data/expected_stages.json")
    data = json.loads(path.read_text(encoding="utf-8"))
    out: dict[str, str] = {}
    for stage in data["stages"]:
        out[stage["name"]] = "\n".join(text for _, text in stage["lines"])
    return out


def _braids(convention: str) -> dict[str, BraidWord]:
    out = {}
    for name, text in MONODROMY_BRAIDS.items():
        braid = parse_braid(text, 3)
        out[name] = braid.inverse() if convention == "flipped" else braid
    return out


def _actions(convention: str) -> dict[str, FreeEndo]:
    return {name: braid_action(b) for name, b in _braids(convention).items()}


def _lifts(convention: str) -> dict[str, FreeEndo]:
    return {name: lift_monodromy(a) for name, a in _actions(convention).items()}


def _assembled(convention: str) -> Presentation:
    lifts = _lifts(convention)
    return zvk_assemble(kept=[lifts["m1"]], removed=[("g+", lifts["m+"]), ("g-", lifts["m-"])])


def _patched(convention: str, k_values: tuple[int, ...]) -> Presentation:
    simplified = tietze_simplify(_assembled(convention))
    results = {patch_fiber(simplified, "g+", "g-", k) for k in k_values}
    if len(results) != 1:
        raise ValueError(f"patch results disagree across k: {sorted(map(format_presentation, results))}")
    return results.pop()


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _stage_braid_actions(convention: str, k_values, max_cosets) -> str:
    actions = _actions(convention)
    return "\n".join(f"{name}: {actions[name]}" for name in ("m1", "m+", "m-"))


def _stage_cover_lifts(convention: str, k_values, max_cosets) -> str:
    lifts = _lifts(convention)
    return "\n".join(f"{name}~: {lifts[name]}" for name in ("m1", "m+", "m-"))


def _stage_zvk(convention: str, k_values, max_cosets) -> str:
    raw = _assembled(convention)
    simplified = tietze_simplify(raw)
    return f"raw: {format_presentation(raw)}\nsimplified: {format_presentation(simplified)}"


def _stage_patch(convention: str, k_values, max_cosets) -> str:
    return f"patched: {format_presentation(_patched(convention, k_values))}"


def _stage_commutant(convention: str, k_values, max_cosets) -> str:
    lemma = _patched(convention, k_values)
    form = MetacyclicForm(9, 4)
    a, b = metacyclic_normal_form(form, parse_word("p^-1 g+^-1 p g+"))
    commutator = Word(((("p", a),) if a else ()) + ((("g+", b),) if b else ()))
    report = commutant_report(form)
    order27 = quotient_order(lemma, extra_relators=(parse_word("g+^3"),), max_cosets=max_cosets)
    return "\n".join(
        [
            f"commutator [p^-1, g+^-1]: {commutator}",
            f"generator: {report.generator}",
            f"order: {report.order}",
            f"central: {_yes(report.central)}",
            f"quotient with g+^3 = 1: order {order27}",
        ]
    )


def _stage_abelian(convention: str, k_values, max_cosets) -> str:
    lemma = _patched(convention, k_values)
    braid_quotient = parse_presentation(BRAID_QUOTIENT)
    return "\n".join(
        [
            f"patched group: {abelian_invariants(lemma)}",
            f"braid quotient: {abelian_invariants(braid_quotient)}",
        ]
    )


def _stage_alexander(convention: str, k_values, max_cosets) -> str:
    braid_quotient = parse_presentation(BRAID_QUOTIENT)
    delta = alexander_polynomial(WeightedPresentation(braid_quotient, {"s1": 1, "s2": 1}))
    cyclic = parse_presentation("gens: a; rels: a^6")
    delta_cyclic = alexander_polynomial(WeightedPresentation(cyclic, {"a": 1}))
    return "\n".join(
        [
            f"braid quotient, s1 = s2 = t: {delta}",
            f"cyclic group <a | a^6>: {delta_cyclic}",
        ]
    )


def _stage_curves(convention: str, k_values, max_cosets) -> str:
    third = Fraction(1, 3)
    node_q = verify_node(cubic_pencil(third), (Fraction(2, 5), Fraction(1, 5)))
    node_eps = verify_node(
        cubic_pencil(EPS * third), (Fraction(2, 5) * EPS, Fraction(1, 5) * EPS ** -1)
    )
    swapped = (Fraction(2, 5) * EPS ** -1, Fraction(1, 5) * EPS)
    on_conjugate = not cubic_pencil(EPS ** -1 * third).evaluate(
        {"x": swapped[0], "y": swapped[1]}
    )
    on_direct = not cubic_pencil(EPS * third).evaluate({"x": swapped[0], "y": swapped[1]})
    node_origin = verify_node(nodal_cubic(), (0, 0))
    elimination = singular_parameters()
    divisible = divides(parse_polynomial("27*b^3 - 1", elimination.variables), elimination)
    torus = verify_torus_structure()
    g, h = chart_cubic_factors()
    multiplicity = intersection_multiplicity_origin(g, h)
    return "\n".join(
        [
            f"node of f_b, b = 1/3, at (2/5, 1/5): {_yes(node_q.is_node)}",
            f"node of f_b, b = eps/3, at ((2/5) eps, (1/5) eps^-1): {_yes(node_eps.is_node)}",
            "point ((2/5) eps^-1, (1/5) eps): "
            f"on f at b = eps^-1/3 {_yes(on_conjugate)}, on f at b = eps/3 {_yes(on_direct)}",
            f"node of f_0 at (0, 0): {_yes(node_origin.is_node)}",
            f"singular parameters divisible by 27 b^3 - 1: {_yes(divisible)}",
            f"torus identity constant: {torus.constant if torus.holds else 'none'}",
            f"chart intersection multiplicity at origin: {multiplicity}",
        ]
    )


_STAGE_RUNNERS: tuple[tuple[str, Callable[..., str]], ...] = (
    ("braid-actions", _stage_braid_actions),
    ("cover-lifts", _stage_cover_lifts),
    ("zvk-presentation", _stage_zvk),
    ("patch-sweep", _stage_patch),
    ("commutant", _stage_commutant),
    ("abelian-invariants", _stage_abelian),
    ("alexander-polynomials", _stage_alexander),
    ("curve-checks", _stage_curves),
)


def reproduce_paper(
    k: int | None = None,
    max_cosets: int = 10_000,
    braid_convention: str = "standard",
) -> PipelineReport:
    """Run all stages in order and diff each against its expected text.

    ``k=None`` sweeps the patch exponent over 0..8; a single value
    restricts the sweep (the outcome must be identical either way).
    """
    if braid_convention not in ("standard", "flipped"):
        raise ValueError(f"unknown braid convention {braid_convention!r}")
    if k is not None and not 0 <= k <= 8:
        raise ValueError("k must lie in 0..8")
    k_values = tuple(range(9)) if k is None else (k,)
    expected = expected_stage_texts()
    results = []
    for name, runner in _STAGE_RUNNERS:
        try:
            computed = runner(braid_convention, k_values, max_cosets)
        except Exception as exc:  # recorded, never skipped
            computed = f"error: {exc}"
        results.append(StageResult(name, expected[name], computed))
    return PipelineReport(tuple(results))
