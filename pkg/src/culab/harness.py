"""Theorem harness: every structural invariant, evaluated on one model.

Each check counts the instances it examined and collects violations.
Verdicts that came back Unknown never count against a statement; a
violation means two Proven/Refuted verdicts contradict a theorem or a
returned witness fails the independent re-check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import glimm, recheck, softness
from .core import CuModel, FiniteModel, basis_chain, sup_chain
from .errors import CuError, TheoremViolation, UnsupportedModel
from .structure import (
    Scale,
    check_axiom,
    classify_finiteness,
    default_scale,
    enumerate_ideals,
    ideal_generated,
    quotient,
    validate_model,
)
from .sweeps import below, lhd
from .verdict import DEFAULT_BUDGET, Budget, Status, Verdict

MAX_VIOLATIONS = 5

# (premise, conclusion, axioms the arrow needs, also needs residual stable finiteness)
DIAGRAM = (
    ("strongly_soft", "weakly_soft", (), False),
    ("weakly_soft", "functionally_soft", (), False),
    ("weakly_soft", "purely_noncompact", (), False),
    ("purely_noncompact", "weakly_purely_noncompact", (), False),
    ("functionally_soft", "weakly_purely_noncompact", (), False),
    ("weakly_purely_noncompact", "functionally_soft", ("O5",), False),
    ("functionally_soft", "strongly_soft", ("O5",), True),
)


@dataclass
class Check:
    name: str
    checked: int = 0
    violations: list[str] = field(default_factory=list)
    skipped: str = ""

    @property
    def ok(self) -> bool:
        return not self.violations

    def fail(self, detail: str):
        if len(self.violations) < MAX_VIOLATIONS:
            self.violations.append(detail)
        else:
            self.violations[-1] = f"{detail} (and more)"

    def expect(self, cond: bool, detail: str):
        self.checked += 1
        if not cond:
            self.fail(detail)

    def to_json(self) -> dict:
        out = {"name": self.name, "checked": self.checked, "ok": self.ok, "violations": list(self.violations)}
        if self.skipped:
            out["skipped"] = self.skipped
        return out


@dataclass
class HarnessReport:
    kind: str
    checks: list[Check]

    @property
    def violations(self) -> list[tuple[str, str]]:
        return [(c.name, v) for c in self.checks for v in c.violations]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"kind": self.kind, "ok": self.ok, "checks": [c.to_json() for c in self.checks]}


def _implies(a: Verdict, b: Verdict) -> bool:
    """A -> B is contradicted only by Proven A with Refuted B."""
    return not (a.proven and b.refuted)


def _inside(ideal, v) -> bool:
    return ideal.model.ideal_member(ideal.data, v)


def sample(model: CuModel, budget: Budget) -> list:
    return model.candidates(budget.grid)


class _Run:
    def __init__(self, model: CuModel, scale: Scale, budget: Budget):
        self.model, self.scale, self.budget = model, scale, budget
        self.els = sample(model, budget)
        self.f = model.format
        self.axioms = {a: check_axiom(model, a, budget) for a in ("O5", "O6", "O7")}
        self.checks: list[Check] = []

    def check(self, name: str) -> Check:
        c = Check(name)
        self.checks.append(c)
        return c

    def has(self, *axioms) -> bool:
        return all(self.axioms[a].proven for a in axioms)

    def soft(self, x) -> softness.SoftnessReport:
        return softness.classify_softness(self.model, self.model.wrap(x), self.budget)

    # -- core ------------------------------------------------------------------

    def laws(self):
        c = self.check("monoid_laws")
        c.checked = 1
        for v in validate_model(self.model, self.budget):
            c.fail(v)

    def way_below(self):
        m, f = self.model, self.f
        c = self.check("way_below_auxiliary")
        for x, y in itertools.product(self.els, repeat=2):
            if not m.way_below(x, y):
                continue
            c.expect(m.leq(x, y), f"{f(x)} << {f(y)} but not <=")
            for xp in self.els:
                if not m.leq(xp, x):
                    continue
                for yp in self.els:
                    if m.leq(y, yp):
                        c.expect(m.way_below(xp, yp), f"{f(xp)} <= {f(x)} << {f(y)} <= {f(yp)} but not {f(xp)} << {f(yp)}")
        c3 = self.check("O3")
        for x, y in itertools.combinations_with_replacement(self.els, 2):
            s = m.add(x, y)
            for xp in below(m, x, self.budget):
                for yp in below(m, y, self.budget):
                    c3.expect(m.way_below(m.add(xp, yp), s), f"O3 fails at x'={f(xp)}, y'={f(yp)}, x={f(x)}, y={f(y)}")

    def omega(self):
        m, f = self.model, self.f
        c = self.check("omega_idempotent")
        for x in self.els:
            w = m.omega(x)
            c.expect(m.add(w, w) == w and m.omega(w) == w, f"inf*{f(x)} = {f(w)} is not idempotent")

    def chains(self):
        from .core import ChainDescriptor

        m, f, depth = self.model, self.f, self.budget.basis
        c = self.check("basis_chain")
        for x in self.els:
            ch = basis_chain(m, m.wrap(x))
            terms = [t.value for t in ch.terms(m, depth + 1)]
            c.expect(all(m.way_below(t, x) for t in terms), f"basis term not way below {f(x)}")
            c.expect(all(m.leq(a, b) for a, b in zip(terms, terms[1:])), f"basis chain of {f(x)} not increasing")
            c.expect(sup_chain(m, ch).value == x, f"basis chain of {f(x)} has the wrong supremum")
        c4 = self.check("O4_pointwise_sum")
        for x, y in itertools.combinations_with_replacement(self.els, 2):
            a, b = basis_chain(m, m.wrap(x)), basis_chain(m, m.wrap(y))
            s = sup_chain(m, ChainDescriptor.pointwise_sum(a, b)).value
            c4.expect(s == m.add(x, y), f"sup of summed chains of {f(x)}, {f(y)} is {f(s)}")

    # -- structure -------------------------------------------------------------

    def ideals(self):
        m, f = self.model, self.f
        c = self.check("ideal_membership")
        cq = self.check("quotient_morphism")
        cz = self.check("quotient_extremes")
        try:
            ideals = enumerate_ideals(m)
        except UnsupportedModel as exc:
            c.skipped = cq.skipped = cz.skipped = str(exc)
            return
        c.expect(len({i.data for i in ideals}) == len(ideals), "enumerate_ideals repeats an ideal")
        for ideal in ideals:
            for x in self.els:
                gen = ideal_generated(m, m.wrap(x))
                inside = all(_inside(ideal, y) for y in self.els if _inside(gen, y))
                c.expect(_inside(ideal, x) == inside, f"{f(x)} vs ideal {ideal}")
                c.expect(_inside(ideal, m.zero) and (not _inside(ideal, x) or _inside(ideal, m.omega(x))), f"ideal {ideal} not closed at {f(x)}")
            q = quotient(m, ideal)
            t = q.target
            p = q._project
            cq.expect(p(m.zero) == t.zero, f"projection onto quotient by {ideal} does not fix zero")
            for x, y in itertools.product(self.els, repeat=2):
                cq.expect(p(m.add(x, y)) == t.add(p(x), p(y)), f"projection not additive at ({f(x)},{f(y)}) mod {ideal}")
                if m.leq(x, y):
                    cq.expect(t.leq(p(x), p(y)), f"projection not monotone at ({f(x)},{f(y)}) mod {ideal}")
            for y in sample(t, self.budget):
                cq.expect(p(q._lift(y)) == y, f"lift of {t.format(y)} does not project back mod {ideal}")
            for x in self.els:
                try:
                    softness.map_element(q, m.wrap(x), self.budget)
                    cq.expect(True, "")
                except TheoremViolation as exc:
                    cq.expect(False, f"mod {ideal}: {exc}")
            members = [x for x in self.els if _inside(ideal, x)]
            if len(members) == 1:
                cz.expect(
                    all(m.leq(x, y) == t.leq(p(x), p(y)) for x, y in itertools.product(self.els, repeat=2)),
                    "quotient by the zero ideal is not an order embedding",
                )
                if isinstance(m, FiniteModel):
                    cz.expect(t.size == m.size, "quotient by the zero ideal changes the size")
            if all(_inside(ideal, x) for x in self.els):
                cz.expect(all(p(x) == t.zero for x in self.els), "quotient by the whole model is not trivial")
                if t.is_finite:
                    cz.expect(len(t.elements()) == 1, "quotient by the whole model has more than one element")

    def finiteness(self):
        rep = classify_finiteness(self.model, self.budget)
        c = self.check("finiteness_chain")
        c.expect(_implies(rep.weak_cancellation, rep.residually_stably_finite), "weak cancellation without RSF")
        c.expect(_implies(rep.residually_stably_finite, rep.stably_finite), "RSF without stable finiteness")
        self.rsf = rep.residually_stably_finite

    def axiom_certificates(self):
        c = self.check("axiom_certificates")
        if not isinstance(self.model, FiniteModel):
            c.skipped = "raw re-check needs a finite table"
            return
        for a, v in self.axioms.items():
            if v.refuted:
                c.expect(recheck.axiom_instance_fails(self.model, a, v.certificate), f"{a} certificate does not re-check")
            else:
                c.expect(v.proven, f"{a} undecided on a finite model")

    # -- softness --------------------------------------------------------------

    def diagram(self):
        f = self.f
        c = self.check("softness_diagram")
        rsf = self.rsf.proven
        for x in self.els:
            r = self.soft(x)
            for a, b, axioms, needs_rsf in DIAGRAM:
                if not self.has(*axioms) or (needs_rsf and not rsf):
                    continue
                c.expect(_implies(getattr(r, a), getattr(r, b)), f"{a} but not {b} at {f(x)}")
            if self.has("O5") and rsf:
                statuses = {v.status for _, v in r.items()}
                c.expect(not {Status.PROVEN, Status.REFUTED} <= statuses, f"softness notions disagree at {f(x)}")

    def compact_forms(self):
        m, f = self.model, self.f
        c = self.check("compact_closed_forms")
        n_cap = len(self.els) + 1
        for x in self.els:
            if not m.is_compact(x) or not isinstance(m, FiniteModel):
                continue
            r = softness.classify_softness(m, m.wrap(x), self.budget, method="sweep")
            idem = m.add(x, x) == x
            stab = any(m.multiple(x, n + 1) == m.multiple(x, n) for n in range(1, n_cap))
            for name in ("strongly_soft", "weakly_soft", "purely_noncompact"):
                v = getattr(r, name)
                c.expect(v.unknown or v.proven == idem, f"{name} sweep disagrees with 2x=x at {f(x)}")
            for name in ("functionally_soft", "weakly_purely_noncompact"):
                v = getattr(r, name)
                c.expect(v.unknown or v.proven == stab, f"{name} sweep disagrees with (n+1)x=nx at {f(x)}")

    def submonoid(self):
        m, f = self.model, self.f
        c = self.check("soft_submonoid")
        if not isinstance(m, FiniteModel):
            c.skipped = "finite carriers only"
            return
        soft = {e.value for e in softness.soft_submonoid(m)}
        c.expect(m.zero in soft, "0 is not soft")
        for y in soft:
            for x in m.elements():
                if y in soft and x in soft:
                    c.expect(m.add(x, y) in soft, f"{f(x)}+{f(y)} not soft")
                if lhd(m, x, y):
                    c.expect(m.add(x, y) in soft, f"absorption fails: {f(x)} <= inf*{f(y)} but {f(x)}+{f(y)} not soft")
        for x in m.elements():
            c.expect((x in soft) == recheck.strongly_soft_raw(m, x), f"soft submonoid disagrees with the definition at {f(x)}")

    def char_strong_soft(self):
        m, f = self.model, self.f
        c = self.check("strong_softness_characterizations")
        if not isinstance(m, FiniteModel):
            c.skipped = "checked exhaustively on finite carriers"
            return
        for x in self.els:
            vs = softness.char_strong_soft(m, m.wrap(x), self.budget)
            statuses = {v.status for v in vs.values()}
            c.expect(len(statuses) == 1, f"characterizations disagree at {f(x)}")

    def soft_witnesses(self):
        m, f = self.model, self.f
        c = self.check("strongly_soft_witness_recheck")
        for x in self.els:
            for xp in below(m, x, self.budget):
                v = softness.strongly_soft_witness(m, m.wrap(xp), m.wrap(x), self.budget)
                if v.proven:
                    c.expect(recheck.complement_ok(m, xp, x, v.witness["t"]), f"t fails for ({f(xp)}, {f(x)})")
                elif v.refuted and isinstance(m, FiniteModel):
                    c.expect(recheck.no_complement(m, xp, x), f"certificate fails for ({f(xp)}, {f(x)})")

    # -- glimm -----------------------------------------------------------------

    def glimm_implications(self):
        m, s, b = self.model, self.scale, self.budget
        c = self.check("glimm_implications")
        ab = glimm.has_abundance_soft(m, s, b)
        c.expect(_implies(ab, glimm.has_property_V(m, s, b)), "abundance without property (V)")
        weak = glimm.weakly_two_omega_divisible(m, s, b)
        if self.has("O6"):
            c.expect(_implies(ab, weak), "abundance and O6 without weak divisibility")
            full = glimm.weakly_two_omega_divisible(m, Scale.full(m), b)
            c.expect(_implies(weak, full), "weak divisibility on the scale does not spread to the model")
            for x in self.els:
                if self.soft(x).weakly_soft.proven:
                    ok = all(glimm.element_weak_divisors(m, xp, x, b) is not None for xp in below(m, x, b))
                    c.expect(ok, f"{self.f(x)} weakly soft but not weakly divisible")
        c.expect(_implies(glimm.two_omega_divisible(m, s, b), weak), "divisible but not weakly divisible")

    def equivalences(self):
        m, s, b = self.model, self.scale, self.budget
        for rep in (glimm.cu_equiv_ab_soft(m, s, b), glimm.char_div_equiv(m, s, b)):
            c = self.check(rep.name)
            if not rep.applicable:
                c.skipped = "O5-O7 not all proven"
                continue
            c.expect(rep.agree, f"conditions disagree: {rep.disagreements()}")

    def constructions(self):
        m, s, b, f = self.model, self.scale, self.budget, self.f
        c = self.check("construction_recheck")
        members = s.members(b)
        if self.has("O6", "O7"):
            for x, y in itertools.product(self.els, repeat=2):
                if not lhd(m, x, y):
                    continue
                for xp in below(m, x, b):
                    v = self._run(c, glimm.lhd_interpolate, m, m.wrap(xp), m.wrap(x), m.wrap(y), b)
                    if v is not None and v.proven:
                        w = v.witness
                        c.expect(
                            recheck.lhd_interpolate_ok(m, xp, x, y, w["y_prime"], w["z"]),
                            f"lhd_interpolate witness fails at ({f(xp)}, {f(x)}, {f(y)})",
                        )
        split = glimm.has_2_splitting(m, s, b)
        if self.has("O5", "O6", "O7") and split.proven:
            for x in members:
                v = self._run(c, glimm.soft_dominator, m, s, m.wrap(x), b)
                if v is not None and v.proven:
                    c.expect(recheck.soft_dominator_ok(m, x, v.witness["y"]), f"soft dominator fails at {f(x)}")
                for xp in below(m, x, b):
                    v = self._run(c, glimm.pre_cu_equiv, m, s, m.wrap(xp), m.wrap(x), b)
                    if v is not None and v.proven:
                        w = v.witness
                        c.expect(
                            recheck.pre_cu_equiv_ok(m, xp, x, w["y"], w["z"]),
                            f"pre_cu_equiv witness fails at ({f(xp)}, {f(x)})",
                        )
        elif self.has("O5", "O6", "O7") and split.refuted:
            for x in members:
                v = glimm.soft_dominator(m, s, m.wrap(x), b)
                c.expect(not v.proven, f"soft dominator claimed for {f(x)} without 2-splitting")
        if self.has("O5") and glimm.two_omega_divisible(m, Scale.full(m), b).proven:
            for x in self.els:
                for k in range(1, b.n + 1):
                    v = self._run(c, glimm.div_soft_divisor, m, m.wrap(x), k, b)
                    if v is None:
                        continue
                    if m.is_finite:
                        c.expect(v.proven, f"div_soft_divisor fails for k={k} at {f(x)}")
                    if v.proven:
                        c.expect(recheck.div_soft_divisor_ok(m, x, k, v.witness["y"]), f"divisor fails for k={k} at {f(x)}")
                    if k <= 3:
                        chain = basis_chain(m, m.wrap(x))
                        kv = self._run(c, glimm.k_div_seq, m, k, chain, b)
                        if kv is not None and kv.proven and chain.form == "list":
                            w = kv.witness
                            c.expect(
                                recheck.k_div_seq_ok(m, k, list(chain.data), w["y_prefix"], w["y_cycle"]),
                                f"k_div_seq fails for k={k} at {f(x)}",
                            )

    @staticmethod
    def _run(c: Check, fn, *args):
        try:
            return fn(*args)
        except CuError as exc:
            c.expect(False, f"{fn.__name__}: {type(exc).__name__}: {exc}")
            return None


STAGES = (
    "laws",
    "way_below",
    "omega",
    "chains",
    "ideals",
    "finiteness",
    "axiom_certificates",
    "diagram",
    "compact_forms",
    "submonoid",
    "char_strong_soft",
    "soft_witnesses",
    "glimm_implications",
    "equivalences",
    "constructions",
)


def verify(model: CuModel, scale: Scale | None = None, budget: Budget = DEFAULT_BUDGET) -> HarnessReport:
    """Run every invariant on ``model``; the report is clean iff no theorem is contradicted."""
    run = _Run(model, scale or default_scale(model), budget)
    for stage in STAGES:
        getattr(run, stage)()
    return HarnessReport(model.kind, run.checks)
