"""Named bookkeeping scenarios run against the built-in cohomology fixtures."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from ..errors import UnknownScenario
from ..fixtures import load_cohomology
from .ledger import LadderSpec, check_exact, middle_of_short_exact
from .leray import DirectImageTable, curve_cohomology, leray_assemble
from .mhs import ZERO, MHSVector, PureSummand, curve_h1, parse_mhs, tate
from .semistable import SemistableFibre, e1_row, euler, limit_from_e1

__all__ = ["Check", "ScenarioReport", "Fixtures", "run_scenario", "SCENARIOS"]


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    expected: Any
    actual: Any
    passed: bool

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "expected": _plain(self.expected),
            "actual": _plain(self.actual),
            "passed": self.passed,
        }


def _plain(x):
    if isinstance(x, MHSVector):
        return x.render()
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


@dataclass
class ScenarioReport:
    name: str
    checks: list[Check] = field(default_factory=list)
    results: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str, anchor: str, expected, actual, passed: bool | None = None) -> Check:
        c = Check(name, anchor, expected, actual, expected == actual if passed is None else passed)
        self.checks.append(c)
        return c

    def to_json(self) -> dict:
        return {
            "scenario": self.name,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
            "results": _plain(self.results),
        }

    def render(self) -> str:
        out = [f"scenario {self.name}: {'PASS' if self.passed else 'FAIL'}"]
        width = max((len(c.name) for c in self.checks), default=0)
        for c in self.checks:
            flag = "ok  " if c.passed else "FAIL"
            out.append(f"  [{flag}] {c.name.ljust(width)}  {_plain(c.actual)}")
            out.append(f"         {'':{width}}  ({c.anchor})")
        return "\n".join(out)


class Fixtures:
    """Parsed view of the cohomology fixture document."""

    def __init__(self, doc: dict | None = None):
        self.doc = doc if doc is not None else load_cohomology()
        self.anchors: dict[str, str] = self.doc["anchors"]
        self.registry = {
            label: PureSummand(
                label,
                spec["weight"],
                spec["dim"],
                tuple(((int(k.split(",")[0]), int(k.split(",")[1])), v) for k, v in spec.get("hodge", {}).items()),
            )
            for label, spec in self.doc.get("summands", {}).items()
        }
        self.expected: dict = self.doc["expected"]

    def mhs(self, text: str) -> MHSVector:
        return parse_mhs(text, self.registry)

    def space(self, name: str) -> tuple[MHSVector, ...]:
        return tuple(self.mhs(t) for t in self.doc["spaces"][name])

    def table(self, name: str) -> DirectImageTable:
        return DirectImageTable.from_json(self.doc["direct_images"][name])


def _dims(table) -> list[int]:
    return [v.dim for v in table]


def _graded(table) -> list[dict]:
    return [v.dim_by_weight() for v in table]


def _vanishing_cycles(fx: Fixtures, rep: ScenarioReport):
    a_van, a_cor, a_five = fx.anchors["vanishing"], fx.anchors["corollary"], fx.anchors["five_term"]
    npts = fx.expected["pinch_points"]
    HH = leray_assemble(fx.table("vanishing"))
    rep.results["vanishing"] = list(HH)
    rep.check("HH^k = 0 for k != 3", a_van, [k for k in range(7) if k != 3],
              [k for k in range(7) if k != 3 and HH[k].is_zero()])
    h3 = HH[3]
    want = {int(w): d for w, d in fx.expected["vanishing_h3_weights"].items()}
    rep.check("HH^3 weight dimensions", a_van, want, h3.dim_by_weight())
    sub = MHSVector.of(curve_h1("E", 1, 1))
    quot = MHSVector.of(tate(2), npts)
    ext = LadderSpec.between_zeros(sub, h3, quot)
    rep.check("0 -> H1(E)(-1) -> HH^3 -> Q(-2)^4 -> 0", a_van, True, check_exact(ext).passed)

    Y0, Yinf = fx.space("Y0"), fx.space("Yinf")
    rep.check("H^k(Y0) = H^k(Yinf) for k != 3, 4", a_cor, _graded(Yinf[:3] + Yinf[5:]), _graded(Y0[:3] + Y0[5:]))
    s3 = LadderSpec.between_zeros(Y0[3], Yinf[3], sub)
    rep.check("0 -> H3(Y0) -> H3(Yinf) -> H1(E)(-1) -> 0", a_cor, True, check_exact(s3).passed)
    s4 = LadderSpec.between_zeros(quot, Y0[4], Yinf[4])
    rep.check("0 -> Q(-2)^4 -> H4(Y0) -> H4(Yinf) -> 0", a_cor, True, check_exact(s4).passed)
    five = LadderSpec.between_zeros(Y0[3], Yinf[3], h3, Y0[4], Yinf[4])
    dims = [t.dim for t in five.terms[1:-1]]
    rep.check("five term dimensions", a_five, fx.expected["five_term_dims"], dims)
    v = check_exact(five)
    rep.check("five term sequence exact (2-4+6-45+41 = 0)", a_five, True, v.passed)
    rep.results["five_term"] = v.alternating
    rep.check("h^2(Y0), h^3(Y0), h^4(Y0)", a_cor, [41, 2, 45], [Y0[2].dim, Y0[3].dim, Y0[4].dim])
    rep.check("h^4(Y0) = h^4(Yinf) + 4", a_cor, Yinf[4].dim + npts, Y0[4].dim)


def _blowup_z0(fx: Fixtures, rep: ScenarioReport):
    a_blow, a_conic = fx.anchors["blowup"], fx.anchors["conic"]
    Y0, Z0_fixture = fx.space("Y0"), fx.space("Z0")
    conic = fx.table("Q")
    r2 = conic.sheaves[2]
    h0_r2 = sum((curve_cohomology(s)[0] for s in r2), ZERO)
    h2_r2 = sum((curve_cohomology(s)[2] for s in r2), ZERO)
    rep.check("H^0(R^2 pi_* Q)", a_blow, fx.mhs(fx.expected["blowup_r2"]["H0"]), h0_r2)
    rep.check("H^2(R^2 pi_* Q)", a_blow, fx.mhs(fx.expected["blowup_r2"]["H2"]), h2_r2)
    rep.check("d_3: H^0(R^2) -> H^3(Y0) vanishes for weight reasons", a_blow, True,
              not (h0_r2.weights() & Y0[3].weights()))
    z2 = middle_of_short_exact(Y0[2], h0_r2)
    z3 = Y0[3].relabel("H3(Y0)", "H3(Z0)")
    z4 = middle_of_short_exact(Y0[4], h2_r2)
    for k, z in ((2, z2), (3, z3), (4, z4)):
        rep.check(f"H^{k}(Z0) matches the fixture weight by weight", a_blow,
                  Z0_fixture[k].dim_by_weight(), z.dim_by_weight())
    rep.check("0 -> H2(Y0) -> H2(Z0) -> H0(R2) -> 0", a_blow, True,
              check_exact(LadderSpec.between_zeros(Y0[2], Z0_fixture[2], h0_r2)).passed)
    rep.check("0 -> H4(Y0) -> H4(Z0) -> H2(R2) -> 0", a_blow, True,
              check_exact(LadderSpec.between_zeros(Y0[4], Z0_fixture[4], h2_r2)).passed)
    triple = [z2.dim, z3.dim, z4.dim]
    rep.results["h_Z0"] = triple
    rep.check("(h^2, h^3, h^4)(Z0)", a_blow, fx.expected["blowup_z0"], triple)
    q = leray_assemble(conic)
    rep.results["Q"] = list(q)
    rep.check("H^*(Q) from the conic bundle", a_conic, fx.expected["q"]["dims"], _dims(q))


def _semistable_limit(fx: Fixtures, rep: ScenarioReport):
    a_pt, a_conic, a_e1, a_lim, a_thm = (fx.anchors[k] for k in ("ptilde", "conic", "e1", "limit", "theorem"))
    pt = leray_assemble(fx.table("Ptilde"))
    q = leray_assemble(fx.table("Q"))
    rep.results["Ptilde"] = list(pt)
    rep.results["Q"] = list(q)
    rep.check("H^*(P~) dimensions", a_pt, fx.expected["ptilde"]["dims"], _dims(pt))
    weights = [next(iter(v.weights())) if not v.is_zero() else None for v in pt]
    rep.check("H^*(P~) weights", a_pt, fx.expected["ptilde"]["weights"], weights)
    rep.check("H^*(P~) equals the fixture table", a_pt, list(fx.space("Ptilde")), list(pt))
    rep.check("H^*(Q) dimensions", a_conic, fx.expected["q"]["dims"], _dims(q))
    rep.check("H^*(Q) equals the fixture table", a_conic, list(fx.space("Q")), list(q))

    fibre = SemistableFibre(fx.space("Z0"), pt, q)
    limit = []
    for k in range(7):
        row = e1_row(fibre, k)
        lim = limit_from_e1(fibre, k, injective_left_surjective_right=True)
        limit.append(lim)
        rep.check(f"E_1 row k={k}: {row.render()}", a_e1, f"pure of weight {k}", lim, passed=lim.is_pure(k))
    betti = [v.dim for v in limit]
    rep.results["limit"] = limit
    rep.results["limit_betti"] = betti
    rep.check("limit Betti numbers", a_e1, fx.expected["limit_betti"], betti)
    h3 = fibre.z0[3] + MHSVector.of(curve_h1("E", 1, 1))
    rep.check("H^3_lim = H^3(Z0) + H^1(E)(-1)", a_lim, h3, limit[3])
    rows_chi = sum((-1) ** k * (e1_row(fibre, k).middle.dim - e1_row(fibre, k).left.dim - e1_row(fibre, k).right.dim)
                   for k in range(7))
    rep.check("Euler characteristic of the rows", a_e1, rows_chi, euler(limit))
    h = fx.expected["hodge_general"]
    rep.check("Euler characteristic = 2(h11 - h12)", a_thm, 2 * (h["h11"] - h["h12"]), euler(limit))
    rep.check("b^2 = h11, b^3 = 2 + 2 h12", a_thm, [h["h11"], 2 + 2 * h["h12"]], [betti[2], betti[3]])
    rep.check("limit agrees with H^*(Yinf) weight by weight", a_thm, _graded(fx.space("Yinf")), _graded(limit))


SCENARIOS: dict[str, Callable[[Fixtures, ScenarioReport], None]] = {
    "vanishing-cycles": _vanishing_cycles,
    "blowup-Z0": _blowup_z0,
    "semistable-limit": _semistable_limit,
}


def run_scenario(name: str, fixtures: Fixtures | None = None) -> ScenarioReport:
    if name not in SCENARIOS:
        raise UnknownScenario(f"unknown scenario {name!r}; choose from {', '.join(SCENARIOS)}")
    rep = ScenarioReport(name)
    SCENARIOS[name](fixtures or Fixtures(), rep)
    return rep
