"""Ideals, quotients, scales, finiteness properties and the axioms O5-O7."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .core import CuModel, Element, FiniteModel, LscModel, NbarModel, ProductModel, table_violations
from .errors import NotAnIdeal, UnsupportedModel
from .sweeps import SAMPLED, pool, top_below
from .verdict import DEFAULT_BUDGET, Budget, Verdict, conjoin, proven, refuted, unknown

AXIOMS = ("O5", "O6", "O7")


# ---------------------------------------------------------------------------
# ideals


@dataclass(frozen=True)
class Ideal:
    """An ideal of ``model`` in the model's native representation.

    Finite models use the element set, ``nbar`` a flag (everything or {0}),
    ``lsc`` the open set carrying the support, products a tuple of factor
    representations.
    """

    model: CuModel = field(repr=False)
    data: object

    def contains(self, x) -> bool:
        return self.model.ideal_member(self.data, self.model.unwrap(x))

    def members(self) -> list[Element]:
        return [self.model.wrap(v) for v in self.model.elements() if self.model.ideal_member(self.data, v)]

    def __str__(self) -> str:
        return describe_ideal(self.model, self.data)


def describe_ideal(model: CuModel, data) -> str:
    if isinstance(model, FiniteModel):
        return "{" + ",".join(model.names[i] for i in sorted(data)) + "}"
    if isinstance(model, NbarModel):
        return "all" if data else "{0}"
    if isinstance(model, LscModel):
        return "open{" + ",".join(model.points[i] for i in sorted(data)) + "}"
    if isinstance(model, ProductModel):
        return "(" + " x ".join(describe_ideal(f, d) for f, d in zip(model.factors, data)) + ")"
    return repr(data)


def ideal_generated(model: CuModel, x) -> Ideal:
    """The ideal {y : y <= inf*x}."""
    return Ideal(model, model.ideal_support(model.unwrap(x)))


def ideal_from_elements(model: FiniteModel, elements: Iterable) -> Ideal:
    """Ideal of a finite model from an explicit element set."""
    members = frozenset(model.unwrap(e) for e in elements)
    if model.zero not in members:
        raise NotAnIdeal("an ideal contains zero")
    for x in members:
        if any(y not in members for y in model.down[x]):
            raise NotAnIdeal(f"not downward closed below {model.names[x]}")
    for x, y in itertools.product(members, repeat=2):
        if model.add(x, y) not in members:
            raise NotAnIdeal(f"not closed under {model.names[x]}+{model.names[y]}")
    return Ideal(model, members)


def enumerate_ideals(model: CuModel) -> list[Ideal]:
    return [Ideal(model, d) for d in model.ideal_supports()]


@dataclass(frozen=True)
class QuotientMap:
    source: CuModel = field(repr=False)
    ideal: Ideal
    target: CuModel = field(repr=False)
    _project: Callable = field(repr=False)
    _lift: Callable = field(repr=False)

    def project(self, x) -> Element:
        return self.target.wrap(self._project(self.source.unwrap(x)))

    def lift(self, y) -> Element:
        """Minimal representative of a target element in the source."""
        return self.source.wrap(self._lift(self.target.unwrap(y)))

    __call__ = project


def quotient(model: CuModel, ideal: Ideal) -> QuotientMap:
    """S/I with x <=_I y iff x <= y + w for some w in I."""
    if not isinstance(ideal, Ideal) or ideal.model is not model:
        raise NotAnIdeal("ideal does not belong to this model")
    try:
        known = model.ideal_supports()
    except UnsupportedModel:
        known = None
    if known is not None and ideal.data not in known:
        raise NotAnIdeal(f"{ideal} is not an ideal of this model")
    target, project, lift = model.quotient_parts(ideal.data)
    return QuotientMap(model, ideal, target, project, lift)


# ---------------------------------------------------------------------------
# scales


@dataclass(frozen=True)
class Scale:
    """A scale: ``full``, ``subset`` (finite element set) or ``downset`` of generators."""

    model: CuModel = field(repr=False)
    kind: str = "full"
    data: tuple | frozenset = ()

    @classmethod
    def full(cls, model: CuModel) -> "Scale":
        return cls(model, "full", ())

    @classmethod
    def subset(cls, model: CuModel, elements: Iterable) -> "Scale":
        return cls(model, "subset", frozenset(model.unwrap(e) for e in elements))

    @classmethod
    def downset(cls, model: CuModel, generators: Iterable) -> "Scale":
        return cls(model, "downset", tuple(model.unwrap(g) for g in generators))

    def contains(self, v) -> bool:
        if self.kind == "full":
            return True
        if self.kind == "subset":
            return v in self.data
        return any(self.model.leq(v, g) for g in self.data)

    def members(self, budget: Budget = DEFAULT_BUDGET) -> list:
        return [v for v in self.model.candidates(budget.grid) if self.contains(v)]

    def __str__(self) -> str:
        if self.kind == "full":
            return "full"
        vals = sorted(self.data, key=self.model.sort_key)
        label = "{" if self.kind == "subset" else "down{"
        return label + ",".join(self.model.format(v) for v in vals) + "}"


def default_scale(model: CuModel) -> Scale:
    if model.declared_scale is not None:
        return Scale.subset(model, model.declared_scale)
    return Scale.full(model)


def is_scale(model: CuModel, scale: Scale) -> bool:
    """Downward hereditary, closed under suprema, and generating the whole model."""
    if scale.model is not model:
        return False
    if scale.kind == "full":
        return True
    if scale.kind == "subset":
        if not model.is_finite:
            return False
        members = scale.data
        for x in members:
            if any(not scale.contains(y) for y in model.elements() if model.leq(y, x)):
                return False
        gens = members
    else:
        gens = scale.data  # finite unions of principal downsets are hereditary and sup-closed
    total = model.zero
    for g in gens:
        total = model.add(total, g)
    return model.omega(total) == model.top()


# ---------------------------------------------------------------------------
# validation


def _sample(model: CuModel, budget: Budget) -> list:
    return model.candidates(budget.grid)


def validate_model(model: CuModel, budget: Budget = DEFAULT_BUDGET) -> list[str]:
    """Every violation of the ordered monoid laws (exhaustive on finite tables, sampled otherwise)."""
    if isinstance(model, FiniteModel):
        return table_violations(model.le, model.table)
    out = []
    els = _sample(model, budget)
    f = model.format
    le, ad, wb = model.leq, model.add, model.way_below
    for a in els:
        if not le(a, a):
            out.append(f"reflexivity at {f(a)}")
        if ad(a, model.zero) != a:
            out.append(f"identity at {f(a)}")
        if not le(model.zero, a):
            out.append(f"zero-least at {f(a)}")
        if not le(model.omega(a), model.top()) or ad(model.omega(a), model.omega(a)) != model.omega(a):
            out.append(f"omega at {f(a)}")
    for a, b in itertools.product(els, repeat=2):
        if ad(a, b) != ad(b, a):
            out.append(f"commutativity at ({f(a)},{f(b)})")
        if a != b and le(a, b) and le(b, a):
            out.append(f"antisymmetry at ({f(a)},{f(b)})")
        if wb(a, b) and not le(a, b):
            out.append(f"way-below inside order at ({f(a)},{f(b)})")
    for a, b, c in itertools.product(els, repeat=3):
        if ad(ad(a, b), c) != ad(a, ad(b, c)):
            out.append(f"associativity at ({f(a)},{f(b)},{f(c)})")
        if le(a, b) and le(b, c) and not le(a, c):
            out.append(f"transitivity at ({f(a)},{f(b)},{f(c)})")
        if le(a, b) and not le(ad(a, c), ad(b, c)):
            out.append(f"order-compatibility at ({f(a)},{f(b)},{f(c)})")
    return out


# ---------------------------------------------------------------------------
# finiteness


@dataclass
class FinitenessReport:
    stably_finite: Verdict
    residually_stably_finite: Verdict
    weak_cancellation: Verdict

    def items(self):
        return [
            ("stably_finite", self.stably_finite),
            ("residually_stably_finite", self.residually_stably_finite),
            ("weak_cancellation", self.weak_cancellation),
        ]


def stably_finite(model: CuModel, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """x + y << x forces y = 0."""
    els = _sample(model, budget)
    for x in els:
        for y in els:
            if y != model.zero and model.way_below(model.add(x, y), x):
                return refuted("stably_finite", x=model.wrap(x), y=model.wrap(y))
    return proven("stably_finite", note="" if model.is_finite else SAMPLED)


def weak_cancellation(model: CuModel, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """x + z << y + z forces x << y."""
    els = _sample(model, budget)
    wb, ad = model.way_below, model.add
    for x, y, z in itertools.product(els, repeat=3):
        if wb(ad(x, z), ad(y, z)) and not wb(x, y):
            return refuted("weak_cancellation", x=model.wrap(x), y=model.wrap(y), z=model.wrap(z))
    return proven("weak_cancellation", note="" if model.is_finite else SAMPLED)


def residually_stably_finite(model: CuModel, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    try:
        ideals = enumerate_ideals(model)
    except UnsupportedModel as exc:
        return unknown("residually_stably_finite", note=str(exc))
    notes = set()
    for ideal in ideals:
        q = quotient(model, ideal)
        v = stably_finite(q.target, budget)
        if v.refuted:
            cert = {"ideal": str(ideal)}
            cert.update({k: model.wrap(q._lift(e.value)) for k, e in v.certificate.items()})
            return refuted("residually_stably_finite", **cert)
        if v.note:
            notes.add(v.note)
    return proven("residually_stably_finite", note="; ".join(sorted(notes)))


def classify_finiteness(model: CuModel, budget: Budget = DEFAULT_BUDGET) -> FinitenessReport:
    return FinitenessReport(
        stably_finite(model, budget),
        residually_stably_finite(model, budget),
        weak_cancellation(model, budget),
    )


# ---------------------------------------------------------------------------
# axioms O5-O7
#
# Each conclusion is downward monotone in the primed variables, so on finite
# carriers (where << is <=) it suffices to take x' = x and y' = y.  On
# infinite carriers the primed variables are the deepest sampled basis terms.


def _bounded(model: CuModel, z) -> bool:
    # the witness lies below z; below a compact grid element the sample is complete
    return model.is_finite or model.is_compact(z)


def _witness_search(model, budget, extra, test):
    for c in pool(model, budget, extra):
        if test(c):
            return c
    return None


def _o5(model: CuModel, budget: Budget) -> Verdict:
    le, ad, wb = model.leq, model.add, model.way_below
    els = _sample(model, budget)
    exact = model.is_finite
    for x, y in itertools.product(els, repeat=2):
        xp, yp = top_below(model, x, budget), top_below(model, y, budget)
        s = ad(x, y)
        for z in els:
            if not le(s, z):
                continue
            c = _witness_search(
                model, budget, (z, x, y, xp, yp),
                lambda c: le(ad(xp, c), z) and le(z, ad(x, c)) and wb(yp, c),
            )
            if c is None:
                cert = dict(x_prime=xp, x=x, y_prime=yp, y=y, z=z)
                cert = {k: model.wrap(v) for k, v in cert.items()}
                return refuted("O5", **cert) if _bounded(model, z) else unknown("O5", note="no witness in sample", **cert)
    return proven("O5", note="" if exact else SAMPLED)


def _o6(model: CuModel, budget: Budget) -> Verdict:
    le, ad = model.leq, model.add
    els = _sample(model, budget)
    exact = model.is_finite
    for x in els:
        xp = top_below(model, x, budget)
        lower_x = [e for e in pool(model, budget, (x,)) if le(e, x)]
        for y, z in itertools.combinations_with_replacement(els, 2):
            if not le(x, ad(y, z)):
                continue
            es = [e for e in lower_x if le(e, y)]
            fs = [f for f in lower_x if le(f, z)]
            found = any(le(xp, ad(e, f)) for e in es for f in fs)
            if not found:
                cert = {k: model.wrap(v) for k, v in dict(x_prime=xp, x=x, y=y, z=z).items()}
                return refuted("O6", **cert) if _bounded(model, x) else unknown("O6", note="no witness in sample", **cert)
    return proven("O6", note="" if exact else SAMPLED)


def _o7(model: CuModel, budget: Budget) -> Verdict:
    le, ad, wb = model.leq, model.add, model.way_below
    els = _sample(model, budget)
    exact = model.is_finite
    for x, y in itertools.combinations_with_replacement(els, 2):
        xp, yp = top_below(model, x, budget), top_below(model, y, budget)
        s = ad(x, y)
        for z in els:
            if not (le(x, z) and le(y, z)):
                continue
            w = _witness_search(
                model, budget, (z, x, y, s),
                lambda w: wb(xp, w) and wb(yp, w) and le(w, z) and le(w, s),
            )
            if w is None:
                cert = dict(x_prime=xp, x=x, y_prime=yp, y=y, z=z)
                cert = {k: model.wrap(v) for k, v in cert.items()}
                return refuted("O7", **cert) if _bounded(model, z) else unknown("O7", note="no witness in sample", **cert)
    return proven("O7", note="" if exact else SAMPLED)


_CHECKERS = {"O5": _o5, "O6": _o6, "O7": _o7}


def check_axiom(model: CuModel, which: str, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    if which not in _CHECKERS:
        raise ValueError(f"unknown axiom {which!r}; expected one of {AXIOMS}")
    cache = model.__dict__.setdefault("_axiom_cache", {})
    key = (which, budget)
    if key not in cache:
        cache[key] = _CHECKERS[which](model, budget)
    return cache[key]


def check_axioms(model: CuModel, budget: Budget = DEFAULT_BUDGET) -> dict[str, Verdict]:
    return {a: check_axiom(model, a, budget) for a in AXIOMS}


def axioms_hold(model: CuModel, which: Iterable[str], budget: Budget = DEFAULT_BUDGET) -> Verdict:
    return conjoin("+".join(which), [check_axiom(model, a, budget) for a in which])
