"""Softness and pure noncompactness of elements.

For x' << x the three softness shades ask for room below x:

* strongly soft: some t with x' + t << x and x' << inf*t;
* weakly soft: some t_1..t_n with x' + t_j << x and x' << t_1 + ... + t_n;
* functionally soft: some n with (n+1)x' << n*x.

Pure noncompactness looks at every quotient S/I in which the image x_I is
compact and asks for 2x_I = x_I (or (n+1)x_I = n*x_I for the weak form).

All searches over witnesses are exact on the supported families: on finite
carriers they are exhaustive, and on ``nbar``/``lsc``/products every
witness can be replaced by a support representative (see
``CuModel.support_reps``), which lies in the search pool.  What remains
sampled on infinite carriers is the universal quantifier over x' << x,
which runs over the first ``budget.basis`` basis terms; such verdicts carry
the note ``sampled``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import ChainDescriptor, CuModel, Element
from .errors import (
    HypothesisViolated,
    NotWayBelow,
    PreconditionNotEstablished,
    TheoremViolation,
    UnsupportedModel,
)
from .structure import QuotientMap, Scale, enumerate_ideals, quotient
from .sweeps import SAMPLED, below, exact_below, interpolate, lhd, pool, total
from .verdict import DEFAULT_BUDGET, Budget, Status, Verdict, proven, refuted, unknown

SOFTNESS_FLAGS = (
    "strongly_soft",
    "weakly_soft",
    "functionally_soft",
    "purely_noncompact",
    "weakly_purely_noncompact",
)

# flags preserved by generalized Cu-morphisms
MORPHISM_FLAGS = ("strongly_soft", "weakly_soft", "functionally_soft")


@dataclass
class SoftnessReport:
    element: Element
    strongly_soft: Verdict
    weakly_soft: Verdict
    functionally_soft: Verdict
    purely_noncompact: Verdict
    weakly_purely_noncompact: Verdict

    def items(self) -> list[tuple[str, Verdict]]:
        return [(name, getattr(self, name)) for name in SOFTNESS_FLAGS]

    def statuses(self) -> dict[str, Status]:
        return {name: v.status for name, v in self.items()}


def _cache(model: CuModel, name: str) -> dict:
    return model.__dict__.setdefault(name, {})


# ---------------------------------------------------------------------------
# single x' searches (payload level)


def find_complement(model: CuModel, xp, x, budget: Budget):
    """Least t in the pool with x' + t << x and x' << inf*t, or None."""
    wb, ad = model.way_below, model.add
    for t in pool(model, budget, (x, xp)):
        if wb(ad(xp, t), x) and wb(xp, model.omega(t)):
            return t
    return None


def find_complement_tuple(model: CuModel, xp, x, budget: Budget, limit: int = 4096):
    """A tuple (t_1..t_n) with x' + t_j << x and x' << sum t_j.

    Returns None when no tuple exists.  Every admissible t dominates an
    admissible support representative generating the same ideal, so the
    sum of admissible pool elements decides existence.
    """
    wb, ad = model.way_below, model.add
    admissible = [t for t in pool(model, budget, (x, xp)) if wb(ad(xp, t), x)]
    single = next((t for t in admissible if wb(xp, t)), None)
    if single is not None:
        return (single,)
    parts = [t for t in admissible if t != model.zero]
    s = total(model, parts)
    if not model.leq(xp, model.omega(s)):
        return None
    acc = s
    for k in range(1, limit + 1):
        if wb(xp, acc):
            return tuple(parts) * k
        nxt = ad(acc, s)
        if nxt == acc:
            break
        acc = nxt
    return "unknown"


# ---------------------------------------------------------------------------
# the five predicates


def _terms(model, x, budget):
    return below(model, x, budget)


def strongly_soft(model: CuModel, x, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    x = model.unwrap(x)
    t = None
    for xp in _terms(model, x, budget):
        t = find_complement(model, xp, x, budget)
        if t is None:
            return refuted("strongly_soft", x_prime=model.wrap(xp))
    note = "" if exact_below(model, x) else SAMPLED
    return proven("strongly_soft", note=note, x_prime=model.wrap(xp), t=model.wrap(t))


def weakly_soft(model: CuModel, x, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    x = model.unwrap(x)
    ts = ()
    for xp in _terms(model, x, budget):
        ts = find_complement_tuple(model, xp, x, budget)
        if ts is None:
            return refuted("weakly_soft", x_prime=model.wrap(xp))
        if ts == "unknown":
            return unknown("weakly_soft", note="tuple search exhausted", x_prime=model.wrap(xp))
    note = "" if exact_below(model, x) else SAMPLED
    return proven("weakly_soft", note=note, x_prime=model.wrap(xp), t=tuple(model.wrap(t) for t in ts))


def functionally_soft(model: CuModel, x, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    x = model.unwrap(x)
    n = None
    for xp in _terms(model, x, budget):
        n = model.functional_exponent(xp, x)
        if n is None:
            return refuted("functionally_soft", x_prime=model.wrap(xp))
    note = "" if exact_below(model, x) else SAMPLED
    return proven("functionally_soft", note=note, x_prime=model.wrap(xp), n=n)


def quotient_maps(model: CuModel) -> list[QuotientMap]:
    cache = model.__dict__.setdefault("_quotient_cache", [])
    if not cache:
        cache.extend(quotient(model, ideal) for ideal in enumerate_ideals(model))
    return cache


def _pnc(model: CuModel, x, weak: bool) -> Verdict:
    name = "weakly_purely_noncompact" if weak else "purely_noncompact"
    x = model.unwrap(x)
    try:
        maps = quotient_maps(model)
    except UnsupportedModel as exc:
        return unknown(name, note=str(exc))
    for q in maps:
        target = q.target
        xi = q._project(x)
        if not target.is_compact(xi):
            continue
        if weak:
            ok = target.stabilizes(xi)
        else:
            ok = target.add(xi, xi) == xi
        if not ok:
            return refuted(name, ideal=str(q.ideal), image=target.wrap(xi))
    return proven(name)


def purely_noncompact(model: CuModel, x, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    return _pnc(model, x, weak=False)


def weakly_purely_noncompact(model: CuModel, x, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    return _pnc(model, x, weak=True)


def _compact_forms(model: CuModel, x) -> dict[str, Verdict]:
    """Closed forms for compact x: idempotence, resp. eventually constant multiples."""
    idem = model.add(x, x) == x
    n = model.stabilizes(x)
    w = model.wrap
    note = "compact closed form"
    out = {}
    for name in ("strongly_soft", "weakly_soft", "purely_noncompact"):
        if idem:
            wit = {"strongly_soft": {"t": w(x)}, "weakly_soft": {"t": (w(x),)}}.get(name, {})
            out[name] = proven(name, note=note, **wit)
        else:
            out[name] = refuted(name, note=note, x=w(x), twice=w(model.add(x, x)))
    for name in ("functionally_soft", "weakly_purely_noncompact"):
        if n:
            out[name] = proven(name, note=note, n=n)
        else:
            out[name] = refuted(name, note=note, x=w(x))
    return out


def classify_softness(model: CuModel, x, budget: Budget = DEFAULT_BUDGET, method: str = "auto") -> SoftnessReport:
    """All five predicates for x.

    ``method="auto"`` uses the closed forms for compact elements;
    ``method="sweep"`` always runs the quantifier sweeps.
    """
    v = model.unwrap(x)
    cache = _cache(model, "_softness_cache")
    key = (v, budget, method)
    if key not in cache:
        if method == "auto" and model.is_compact(v):
            forms = _compact_forms(model, v)
        elif method in ("auto", "sweep"):
            h = model.wrap(v)
            forms = {
                "strongly_soft": strongly_soft(model, h, budget),
                "weakly_soft": weakly_soft(model, h, budget),
                "functionally_soft": functionally_soft(model, h, budget),
                "purely_noncompact": purely_noncompact(model, h, budget),
                "weakly_purely_noncompact": weakly_purely_noncompact(model, h, budget),
            }
        else:
            raise ValueError(f"unknown method {method!r}")
        cache[key] = SoftnessReport(model.wrap(v), **forms)
    return cache[key]


def is_strongly_soft(model: CuModel, x, budget: Budget = DEFAULT_BUDGET) -> Status:
    return classify_softness(model, x, budget).strongly_soft.status


def soft_status(model: CuModel, v, budget: Budget = DEFAULT_BUDGET) -> Status:
    """Strong softness status of a payload."""
    return is_strongly_soft(model, model.wrap(v), budget)


def strongly_soft_witness(model: CuModel, x_prime, x, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Least t with x' + t << x and x' << inf*t."""
    xp, xv = model.unwrap(x_prime), model.unwrap(x)
    if not model.way_below(xp, xv):
        raise NotWayBelow(f"{model.format(xp)} is not way below {model.format(xv)}")
    t = find_complement(model, xp, xv, budget)
    if t is None:
        return refuted("strongly_soft_witness", x_prime=model.wrap(xp), x=model.wrap(xv))
    return proven("strongly_soft_witness", t=model.wrap(t))


def char_strong_soft(model: CuModel, x, budget: Budget = DEFAULT_BUDGET) -> dict[str, Verdict]:
    """The three equivalent characterizations of strong softness.

    ``definition``: the defining condition; ``soft_complement``: for every
    x' << x a strongly soft t with x' + t <= x <= inf*t; ``complement``:
    for every x' << x some t with x' + t <= x and x' <= inf*t.
    """
    xv = model.unwrap(x)
    le, ad, om = model.leq, model.add, model.omega
    out = {"definition": strongly_soft(model, model.wrap(xv), budget)}
    for name, soft_only in (("soft_complement", True), ("complement", False)):
        verdict = proven(name, note="" if exact_below(model, xv) else SAMPLED)
        for xp in _terms(model, xv, budget):
            if soft_only:
                ok = any(
                    le(ad(xp, t), xv) and le(xv, om(t)) and soft_status(model, t, budget) is Status.PROVEN
                    for t in pool(model, budget, (xv,))
                )
            else:
                ok = any(le(ad(xp, t), xv) and le(xp, om(t)) for t in pool(model, budget, (xv,)))
            if not ok:
                status_cls = refuted if model.is_finite or name == "complement" else unknown
                verdict = status_cls(name, x_prime=model.wrap(xp))
                break
        out[name] = verdict
    return out


# ---------------------------------------------------------------------------
# the soft submonoid


def soft_submonoid(model: CuModel) -> list[Element]:
    """Strongly soft elements of a finite model: exactly the idempotents."""
    if not model.is_finite:
        raise UnsupportedModel("the soft submonoid is only enumerated on finite carriers")
    soft = [x for x in model.elements() if model.add(x, x) == x]
    members = set(soft)
    if model.zero not in members or any(model.add(a, b) not in members for a in soft for b in soft):
        raise TheoremViolation("strongly soft elements are not closed under addition")
    return [model.wrap(x) for x in soft]


@dataclass(frozen=True)
class Summands:
    """An eventually periodic sequence: ``prefix`` then ``cycle`` repeated forever."""

    prefix: tuple
    cycle: tuple

    def __post_init__(self):
        if not self.cycle:
            raise ValueError("the periodic part must be nonempty")

    def term(self, n: int):
        if n < len(self.prefix):
            return self.prefix[n]
        return self.cycle[(n - len(self.prefix)) % len(self.cycle)]

    def presented(self) -> list:
        """Terms needed to check a condition between consecutive entries."""
        return [self.term(n) for n in range(len(self.prefix) + len(self.cycle) + 1)]


def _as_summands(model: CuModel, seq) -> Summands:
    if isinstance(seq, Summands):
        return Summands(tuple(model.unwrap(v) for v in seq.prefix), tuple(model.unwrap(v) for v in seq.cycle))
    if isinstance(seq, ChainDescriptor) and seq.form == "list":
        vals = [model.unwrap(v) for v in seq.data]
        return Summands(tuple(vals[:-1]), (vals[-1],))
    if isinstance(seq, (list, tuple)):
        vals = [model.unwrap(v) for v in seq]
        return Summands(tuple(vals[:-1]), (vals[-1],))
    raise HypothesisViolated("summands must be finitely described (stabilizing list or periodic)")


def series_sum(model: CuModel, seq: Summands):
    """sum_n y_n for an eventually periodic sequence of payloads."""
    return model.add(total(model, seq.prefix), model.omega(total(model, seq.cycle)))


def sum_soft(model: CuModel, seq, budget: Budget = DEFAULT_BUDGET) -> Element:
    """sum_n y_n for y_n <= inf*y_{n+1}; the result is strongly soft."""
    s = _as_summands(model, seq)
    terms = s.presented()
    for n, (a, b) in enumerate(zip(terms, terms[1:])):
        if not lhd(model, a, b):
            raise HypothesisViolated(f"y_{n} is not below inf*y_{n + 1}", index=n)
    y = series_sum(model, s)
    if soft_status(model, y, budget) is Status.REFUTED:
        raise TheoremViolation(f"sum {model.format(y)} of an ideal-increasing sequence is not strongly soft")
    return model.wrap(y)


# ---------------------------------------------------------------------------
# soft interpolation and morphisms


def soft_interpolate(
    model: CuModel,
    scale: Scale,
    x_prime,
    x,
    budget: Budget = DEFAULT_BUDGET,
    assume: bool = False,
) -> Verdict:
    """Strongly soft y with x' << y << x for strongly soft x in the scale.

    Built as z' + u: z' << z interpolate x' << x, t satisfies z + t <= x <=
    inf*t, t' << t has z << inf*t', and u is strongly soft with
    t' in the ideal of u and u << t.  With ``assume=True`` the hypotheses
    (softness of x, abundance) are not checked beforehand; the result is
    still verified.
    """
    from .glimm import has_abundance_soft

    xp, xv = model.unwrap(x_prime), model.unwrap(x)
    name = "soft_interpolate"
    if not model.way_below(xp, xv):
        raise NotWayBelow(f"{model.format(xp)} is not way below {model.format(xv)}")
    if not scale.contains(xv):
        raise PreconditionNotEstablished(f"{model.format(xv)} is not in the scale")
    if not assume:
        if not soft_status(model, xv, budget) is Status.PROVEN:
            raise PreconditionNotEstablished(f"{model.format(xv)} is not known to be strongly soft")
        if not has_abundance_soft(model, scale, budget).proven:
            raise PreconditionNotEstablished("abundance of strongly soft elements is not established")
    le, ad, wb, om = model.leq, model.add, model.way_below, model.omega
    zp = interpolate(model, xp, xv, budget)
    z = interpolate(model, zp, xv, budget) if zp is not None else None
    if z is None:
        return unknown(name, note="no interpolant in sample")
    cands = pool(model, budget, (xv, z, zp))
    t = next((c for c in cands if le(ad(z, c), xv) and le(xv, om(c))), None)
    if t is None:
        return unknown(name, note="no complement t in sample", z=model.wrap(z))
    tp = next((c for c in [*model.basis_terms(t, budget.basis), *cands] if wb(c, t) and wb(z, om(c))), None)
    if tp is None:
        return unknown(name, note="no t' in sample", t=model.wrap(t))
    u = next(
        (c for c in cands if wb(c, t) and lhd(model, tp, c) and soft_status(model, c, budget) is Status.PROVEN),
        None,
    )
    if u is None:
        return unknown(name, note="no strongly soft u in sample", t=model.wrap(t), t_prime=model.wrap(tp))
    y = ad(zp, u)
    if not (wb(xp, y) and wb(y, xv)) or soft_status(model, y, budget) is Status.REFUTED:
        raise TheoremViolation(f"interpolant {model.format(y)} fails x' << y << x or softness")
    w = model.wrap
    return proven(name, y=w(y), z_prime=w(zp), z=w(z), t=w(t), t_prime=w(tp), u=w(u))


def map_element(phi: QuotientMap, x, budget: Budget = DEFAULT_BUDGET, check: bool = True) -> Element:
    """phi(x); with ``check`` the softness flags proven for x must be proven for phi(x)."""
    image = phi.project(x)
    if check:
        src = classify_softness(phi.source, x, budget)
        dst = classify_softness(phi.target, image, budget)
        for name in MORPHISM_FLAGS:
            if getattr(src, name).proven and getattr(dst, name).refuted:
                raise TheoremViolation(f"{name} of {src.element} is lost in the image {image}")
    return image


def classify_all(model: CuModel, elements: Iterable, budget: Budget = DEFAULT_BUDGET) -> list[SoftnessReport]:
    return [classify_softness(model, x, budget) for x in elements]
