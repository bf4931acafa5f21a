"""Classification bundles: every predicate of a model gathered into one document."""

from __future__ import annotations

from . import glimm, recheck
from .core import CuModel, FiniteModel
from .softness import classify_softness
from .structure import Scale, check_axioms, classify_finiteness, default_scale, enumerate_ideals, quotient
from .errors import UnsupportedModel
from .verdict import DEFAULT_BUDGET, Budget, Verdict

MODEL_PREDICATES = (
    "O5",
    "O6",
    "O7",
    "stably_finite",
    "residually_stably_finite",
    "weak_cancellation",
    "two_omega_divisible",
    "weakly_two_omega_divisible",
    "ideal_filtered",
    "property_V",
    "abundance_soft",
    "hereditary_2_splitting",
    "soft_divisor_all",
)


def model_predicates(model: CuModel, scale: Scale | None = None, budget: Budget = DEFAULT_BUDGET) -> dict[str, Verdict]:
    """Model-level verdicts keyed by the names in MODEL_PREDICATES."""
    scale = scale or default_scale(model)
    out: dict[str, Verdict] = dict(check_axioms(model, budget))
    out.update(classify_finiteness(model, budget).items())
    div = glimm.classify_divisibility(model, scale, budget, ks=())
    out.update(div.items())
    out.update(glimm.classify_glimm(model, scale, budget).items())
    return out


def _recheck(model: CuModel, elements, axioms) -> dict:
    """Independent re-check of the finite-table verdicts in the bundle."""
    if not isinstance(model, FiniteModel):
        return {"ok": True, "checked": 0, "note": "raw re-check needs a finite table"}
    bad, n = [], 0
    for x, report in elements:
        n += 1
        if report.strongly_soft.proven != recheck.strongly_soft_raw(model, x):
            bad.append(f"strongly_soft at {model.format(x)}")
    for name, v in axioms.items():
        if v.refuted:
            n += 1
            if not recheck.axiom_instance_fails(model, name, v.certificate):
                bad.append(f"{name} certificate")
    return {"ok": not bad, "checked": n, "failures": bad}


def classify_model(model: CuModel, scale: Scale | None = None, budget: Budget = DEFAULT_BUDGET) -> dict:
    """Full report as a JSON-ready dict with deterministic key order."""
    scale = scale or default_scale(model)
    els = model.candidates(budget.grid)
    soft = [(x, classify_softness(model, model.wrap(x), budget)) for x in els]
    preds = model_predicates(model, scale, budget)
    axioms = {a: preds[a] for a in ("O5", "O6", "O7")}
    try:
        ideals = [
            {"ideal": str(i), "quotient_size": len(quotient(model, i).target.elements())} if model.is_finite
            else {"ideal": str(i)}
            for i in enumerate_ideals(model)
        ]
    except UnsupportedModel as exc:
        ideals = {"note": str(exc)}
    return {
        "kind": model.kind,
        "scale": str(scale),
        "elements": [
            {"element": model.format(x), **{name: v.to_json() for name, v in r.items()}} for x, r in soft
        ],
        "axioms": {k: v.to_json() for k, v in axioms.items()},
        "model": {k: v.to_json() for k, v in preds.items() if k not in axioms},
        "equivalences": {
            "soft_dominators": glimm.cu_equiv_ab_soft(model, scale, budget).to_json(),
            "divisibility": glimm.char_div_equiv(model, scale, budget).to_json(),
        },
        "ideals": ideals,
        "recheck": _recheck(model, soft, axioms),
    }


def _line(name: str, v: dict) -> str:
    parts = [v["status"]]
    data = v.get("witness") or v.get("certificate")
    if data:
        parts.append(" ".join(f"{k}={_flat(val)}" for k, val in data.items()))
    if v.get("note"):
        parts.append(f"({v['note']})")
    return f"  {name}: " + " ".join(parts)


def _flat(val) -> str:
    if isinstance(val, list):
        return "[" + ",".join(_flat(v) for v in val) + "]"
    return str(val)


def render_text(report: dict) -> str:
    lines = [f"model: {report['kind']}  scale: {report['scale']}", "elements:"]
    for e in report["elements"]:
        lines.append(f" {e['element']}")
        lines += [_line(k, v) for k, v in e.items() if k != "element"]
    lines.append("axioms:")
    lines += [_line(k, v) for k, v in report["axioms"].items()]
    lines.append("model predicates:")
    lines += [_line(k, v) for k, v in report["model"].items()]
    lines.append("equivalences:")
    for name, eq in report["equivalences"].items():
        state = "applicable" if eq["applicable"] else "not applicable"
        agree = "agree" if not eq["disagreements"] else f"disagree {eq['disagreements']}"
        conds = " ".join(f"({k}) {v['status']}" for k, v in eq["conditions"].items())
        lines.append(f"  {name}: {conds}; {state}; {agree}" + (f" ({eq['note']})" if eq.get("note") else ""))
    rc = report["recheck"]
    lines.append(f"recheck: {'ok' if rc['ok'] else 'FAILED'} ({rc['checked']} checked)")
    return "\n".join(lines) + "\n"
