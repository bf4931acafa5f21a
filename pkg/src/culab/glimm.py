"""Divisibility, ideal-filteredness, property (V), abundance of soft elements and 2-splitting.

Every predicate here is a universal statement over a scale (pairs
x' << x in the scale, or tuples for property (V)) with an existential
witness.  Finite carriers are swept exhaustively.  Infinite carriers are
swept over the value grid; a failing instance there yields Refuted only
when the witness search is exhaustive (always true when candidates can be
replaced by support representatives), and Unknown otherwise.

The constructive operations at the end follow the step-by-step arguments
behind each statement.  Wherever an argument says "choose", the canonically
least valid candidate is taken.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .core import ChainDescriptor, CuModel, Element, basis_chain
from .errors import HypothesisViolated, NoWitness, NotWayBelow, PreconditionNotEstablished, TheoremViolation
from .softness import Summands, series_sum, soft_status, sum_soft
from .structure import Scale, check_axiom
from .sweeps import SAMPLED, below, interpolate, lhd, multiple_reaching, pool, top_below, total
from .verdict import DEFAULT_BUDGET, Budget, Status, Verdict, conjoin, proven, refuted, unknown


def _memo(model: CuModel, key, compute):
    cache = model.__dict__.setdefault("_glimm_cache", {})
    if key not in cache:
        cache[key] = compute()
    return cache[key]


def _soft(model: CuModel, y, budget: Budget) -> bool:
    return soft_status(model, y, budget) is Status.PROVEN


def _finish(name: str, model: CuModel, failure, exact: bool) -> Verdict:
    """Verdict from the first failing instance (or None)."""
    if failure is None:
        return proven(name, note="" if model.is_finite else SAMPLED)
    cert = {k: model.wrap(v) for k, v in failure.items()}
    if exact or model.is_finite:
        return refuted(name, **cert)
    return unknown(name, note="no witness in sample", **cert)


def _pairs(model: CuModel, scale: Scale, budget: Budget):
    for x in scale.members(budget):
        for xp in below(model, x, budget):
            yield xp, x


# ---------------------------------------------------------------------------
# divisibility


def element_divisor(model: CuModel, xp, x, k: int, budget: Budget):
    """Least y with k*y <= x and x' <= n*y for some n; returns (y, n) or None."""
    for y in pool(model, budget, (x, xp)):
        if model.leq(model.multiple(y, k), x) and model.leq(xp, model.omega(y)):
            n = multiple_reaching(model, xp, y)
            if n is not None:
                return y, n
    return None


def element_weak_divisors(model: CuModel, xp, x, budget: Budget, limit: int = 4096):
    """A tuple (y_1..y_n) with 2*y_j <= x and x' <= sum y_j, or None."""
    halves = [y for y in pool(model, budget, (x, xp)) if model.leq(model.add(y, y), x) and y != model.zero]
    if model.leq(xp, model.zero):
        return ()
    s = total(model, halves)
    if not model.leq(xp, model.omega(s)):
        return None
    single = next((y for y in halves if model.leq(xp, y)), None)
    if single is not None:
        return (single,)
    acc = s
    for k in range(1, limit + 1):
        if model.leq(xp, acc):
            return tuple(halves) * k
        acc = model.add(acc, s)
    return None


def k_omega_divisible(model: CuModel, scale: Scale, k: int = 2, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Every x' << x in the scale has y with k*y <= x and x' <= n*y."""
    name = "two_omega_divisible" if k == 2 else f"{k}_omega_divisible"

    def compute():
        for xp, x in _pairs(model, scale, budget):
            if element_divisor(model, xp, x, k, budget) is None:
                return _finish(name, model, {"x_prime": xp, "x": x}, exact=True)
        return _finish(name, model, None, True)

    return _memo(model, (name, scale, budget), compute)


def two_omega_divisible(model: CuModel, scale: Scale, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    return k_omega_divisible(model, scale, 2, budget)


def weakly_two_omega_divisible(model: CuModel, scale: Scale, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    name = "weakly_two_omega_divisible"

    def compute():
        for xp, x in _pairs(model, scale, budget):
            if element_weak_divisors(model, xp, x, budget) is None:
                return _finish(name, model, {"x_prime": xp, "x": x}, exact=True)
        return _finish(name, model, None, True)

    return _memo(model, (name, scale, budget), compute)


@dataclass
class DivisibilityReport:
    two_omega_divisible: Verdict
    weakly_two_omega_divisible: Verdict
    k_omega_divisible: dict[int, Verdict] = field(default_factory=dict)

    def items(self) -> list[tuple[str, Verdict]]:
        out = [
            ("two_omega_divisible", self.two_omega_divisible),
            ("weakly_two_omega_divisible", self.weakly_two_omega_divisible),
        ]
        out += [(f"{k}_omega_divisible", v) for k, v in sorted(self.k_omega_divisible.items())]
        return out


def classify_divisibility(
    model: CuModel, scale: Scale, budget: Budget = DEFAULT_BUDGET, ks: tuple[int, ...] = (2, 3)
) -> DivisibilityReport:
    return DivisibilityReport(
        two_omega_divisible(model, scale, budget),
        weakly_two_omega_divisible(model, scale, budget),
        {k: k_omega_divisible(model, scale, k, budget) for k in ks},
    )


# ---------------------------------------------------------------------------
# ideal-filteredness and property (V)


def is_ideal_filtered(model: CuModel, scale: Scale, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """v' << v << inf*x, inf*y with x, y in the scale gives z with v' << inf*z and z << x, y."""
    name = "ideal_filtered"
    wb, om = model.way_below, model.omega

    def compute():
        members = scale.members(budget)
        vs = pool(model, budget)
        for x, y in itertools.combinations_with_replacement(members, 2):
            wx, wy = om(x), om(y)
            below_both = [v for v in vs if wb(v, wx) and wb(v, wy)]
            for vp in vs:
                if not any(wb(vp, v) for v in below_both):
                    continue
                z = next((z for z in pool(model, budget, (x, y)) if wb(z, x) and wb(z, y) and wb(vp, om(z))), None)
                if z is None:
                    return _finish(name, model, {"v_prime": vp, "x": x, "y": y}, exact=True)
        return _finish(name, model, None, True)

    return _memo(model, (name, scale, budget), compute)


def _splitting_pair(model: CuModel, s, x, budget: Budget):
    """Least (y, z) with y + z <= x and s <= inf*y, inf*z."""
    cands = [c for c in pool(model, budget, (x,)) if model.leq(c, x) and lhd(model, s, c)]
    for y in cands:
        for z in cands:
            if model.leq(model.add(y, z), x):
                return y, z
    return None


def has_property_V(model: CuModel, scale: Scale, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """d_i' << d_i << c, c + d_i << x in the scale gives y + z <= x with d_1'+d_2' <= inf*y, inf*z."""
    name = "property_V"
    wb, ad = model.way_below, model.add

    def compute():
        members = scale.members(budget)
        seen = {}
        for x in members:
            for c in members:
                if not wb(c, x):
                    continue
                ds = [d for d in members if wb(d, c) and wb(ad(c, d), x)]
                for d1, d2 in itertools.combinations_with_replacement(ds, 2):
                    s = ad(top_below(model, d1, budget), top_below(model, d2, budget))
                    if (s, x) not in seen:
                        seen[(s, x)] = _splitting_pair(model, s, x, budget)
                    if seen[(s, x)] is None:
                        return _finish(name, model, {"d1": d1, "d2": d2, "c": c, "x": x}, exact=True)
        return _finish(name, model, None, True)

    return _memo(model, (name, scale, budget), compute)


# ---------------------------------------------------------------------------
# abundance, 2-splitting, soft dominators


def has_abundance_soft(model: CuModel, scale: Scale, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Every x' << x in the scale has a strongly soft y <= x generating x'."""
    name = "abundance_soft"

    def compute():
        for xp, x in _pairs(model, scale, budget):
            found = any(
                model.leq(y, x) and lhd(model, xp, y) and _soft(model, y, budget)
                for y in pool(model, budget, (x,))
            )
            if not found:
                return _finish(name, model, {"x_prime": xp, "x": x}, exact=False)
        return _finish(name, model, None, True)

    return _memo(model, (name, scale, budget), compute)


def has_2_splitting(model: CuModel, scale: Scale, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Every x' << x in the scale has y + z <= x with x' in the ideals of y and of z."""
    name = "hereditary_2_splitting"

    def compute():
        for xp, x in _pairs(model, scale, budget):
            if _splitting_pair(model, xp, x, budget) is None:
                return _finish(name, model, {"x_prime": xp, "x": x}, exact=True)
        return _finish(name, model, None, True)

    return _memo(model, (name, scale, budget), compute)


def soft_divisor_all(model: CuModel, scale: Scale, budget: Budget = DEFAULT_BUDGET, k: int = 1) -> Verdict:
    """Every x in the scale has a strongly soft y with k*y <= x <= inf*y."""
    name = "soft_divisor_all" if k == 1 else f"soft_{k}_divisor_all"

    def compute():
        for x in scale.members(budget):
            found = any(
                model.leq(model.multiple(y, k), x) and lhd(model, x, y) and _soft(model, y, budget)
                for y in pool(model, budget, (x,))
            )
            if not found:
                return _finish(name, model, {"x": x}, exact=False)
        return _finish(name, model, None, True)

    return _memo(model, (name, scale, budget, k), compute)


@dataclass
class GlimmReport:
    scale: Scale
    ideal_filtered: Verdict
    property_V: Verdict
    abundance_soft: Verdict
    hereditary_2_splitting: Verdict
    soft_divisor_all: Verdict

    def items(self) -> list[tuple[str, Verdict]]:
        names = ("ideal_filtered", "property_V", "abundance_soft", "hereditary_2_splitting", "soft_divisor_all")
        return [(n, getattr(self, n)) for n in names]


def classify_glimm(model: CuModel, scale: Scale, budget: Budget = DEFAULT_BUDGET) -> GlimmReport:
    return GlimmReport(
        scale,
        is_ideal_filtered(model, scale, budget),
        has_property_V(model, scale, budget),
        has_abundance_soft(model, scale, budget),
        has_2_splitting(model, scale, budget),
        soft_divisor_all(model, scale, budget),
    )


# ---------------------------------------------------------------------------
# equivalence reports


@dataclass
class EquivalenceReport:
    """Verdicts of statements that a theorem declares equivalent."""

    name: str
    conditions: dict[str, Verdict]
    assumptions: dict[str, Verdict]
    note: str = ""

    @property
    def applicable(self) -> bool:
        return all(v.proven for v in self.assumptions.values())

    def disagreements(self) -> list[tuple[str, str]]:
        out = []
        for (a, va), (b, vb) in itertools.combinations(self.conditions.items(), 2):
            if {va.status, vb.status} == {Status.PROVEN, Status.REFUTED}:
                out.append((a, b))
        return out

    @property
    def agree(self) -> bool:
        return not self.disagreements()

    def to_json(self) -> dict:
        return {
            "conditions": {k: v.to_json() for k, v in self.conditions.items()},
            "assumptions": {k: v.to_json() for k, v in self.assumptions.items()},
            "applicable": self.applicable,
            "disagreements": [list(p) for p in self.disagreements()],
            **({"note": self.note} if self.note else {}),
        }


def cu_equiv_ab_soft(model: CuModel, scale: Scale, budget: Budget = DEFAULT_BUDGET) -> EquivalenceReport:
    """(1) soft dominators, (2) abundance, (3) 2-splitting; equivalent under O5-O7."""
    return EquivalenceReport(
        "soft_dominator_equivalence",
        {
            "1": soft_divisor_all(model, scale, budget).renamed("1"),
            "2": has_abundance_soft(model, scale, budget).renamed("2"),
            "3": has_2_splitting(model, scale, budget).renamed("3"),
        },
        {a: check_axiom(model, a, budget) for a in ("O5", "O6", "O7")},
    )


def char_div_equiv(model: CuModel, scale: Scale, budget: Budget = DEFAULT_BUDGET) -> EquivalenceReport:
    """The five characterizations of (2,omega)-divisibility through soft elements.

    The underlying equivalence also needs an axiom O8 that has no decision
    procedure here, so agreement is an empirical observation only.
    """
    full = Scale.full(model)
    ifd = is_ideal_filtered(model, scale, budget)
    conds = {
        "1": two_omega_divisible(model, full, budget),
        "2": two_omega_divisible(model, scale, budget),
        "3": conjoin("3", [weakly_two_omega_divisible(model, scale, budget), ifd, has_property_V(model, scale, budget)]),
        "4": conjoin("4", [ifd, soft_divisor_all(model, full, budget, k=2)]),
        "5": conjoin("5", [ifd, has_abundance_soft(model, scale, budget)]),
    }
    conds["1"], conds["2"] = conds["1"].renamed("1"), conds["2"].renamed("2")
    return EquivalenceReport(
        "divisibility_equivalence",
        conds,
        {a: check_axiom(model, a, budget) for a in ("O5", "O6", "O7")},
        note="O8 not checked",
    )


# ---------------------------------------------------------------------------
# constructions


class _Missing(Exception):
    """A chosen object could not be found in the candidate pool."""


def _require(value, what: str):
    if value is None:
        raise _Missing(what)
    return value


def _fail(model: CuModel, name: str, exc: _Missing) -> Verdict:
    if model.is_finite:
        raise NoWitness(f"{name}: no {exc} although the hypotheses hold")
    return unknown(name, note=f"no {exc} in sample")


def _require_axioms(model: CuModel, axioms, budget: Budget):
    for a in axioms:
        v = check_axiom(model, a, budget)
        if not v.proven:
            raise PreconditionNotEstablished(f"axiom {a} is {v.status.value}")


def _lhd_part1(model: CuModel, xp, y, budget: Budget):
    """y' with x' in the ideal of y' and y' << y."""
    cands = sorted(set(model.basis_terms(y, budget.basis)).union(pool(model, budget, (y,))), key=model.sort_key)
    return _require(next((c for c in cands if model.way_below(c, y) and lhd(model, xp, c)), None), "y'")


def _lhd_part2(model: CuModel, xp, x, y, budget: Budget) -> dict:
    """z <= y with x' in the ideal of z and z in the ideal of x."""
    le, wb, ad = model.leq, model.way_below, model.add
    xpp = _require(interpolate(model, xp, x, budget), "x''")
    n = _require(multiple_reaching(model, xpp, y), "n with x'' <= n*y")
    lows = [e for e in pool(model, budget, (xpp, y)) if le(e, xpp) and le(e, y)]
    maximal = [e for e in lows if not any(f != e and le(e, f) for f in lows)]

    def primes(es):
        for d in range(budget.basis + 1):
            eps = tuple(model.truncate(e, d) for e in es)
            if all(wb(a, b) for a, b in zip(eps, es)) and wb(xp, total(model, eps)):
                return eps
        return None

    es = eps = None
    for combo in itertools.islice(itertools.combinations_with_replacement(maximal, n), 20000):
        eps = primes(combo)
        if eps is not None:
            es = combo
            break
    _require(es, "e_1..e_n")
    s = total(model, es)
    z = _require(
        next(
            (c for c in pool(model, budget, (y, s, *es)) if all(wb(a, c) for a in eps) and le(c, y) and le(c, s)),
            None,
        ),
        "z",
    )
    if not (le(z, y) and lhd(model, xp, z) and lhd(model, z, x)):
        raise TheoremViolation(f"z={model.format(z)} fails z <= y or the ideal relations")
    return {"x_pp": xpp, "n": n, "e": es, "e_prime": eps, "z": z}


def lhd_interpolate(
    model: CuModel, x_prime, x, y, budget: Budget = DEFAULT_BUDGET, part: int = 2, assume: bool = False
) -> Verdict:
    """For x' << x in the ideal of y: part 1 gives y' << y generating x';
    part 2 (needs O6, O7) gives z <= y with x' in the ideal of z and z in the ideal of x."""
    name = "lhd_interpolate"
    xp, xv, yv = model.unwrap(x_prime), model.unwrap(x), model.unwrap(y)
    if not model.way_below(xp, xv):
        raise NotWayBelow(f"{model.format(xp)} is not way below {model.format(xv)}")
    if not lhd(model, xv, yv):
        raise HypothesisViolated(f"{model.format(xv)} is not in the ideal generated by {model.format(yv)}")
    if part == 2 and not assume:
        _require_axioms(model, ("O6", "O7"), budget)
    w = model.wrap
    try:
        yp = _lhd_part1(model, xp, yv, budget)
        if part == 1:
            return proven(name, y_prime=w(yp))
        steps = _lhd_part2(model, xp, xv, yv, budget)
    except _Missing as exc:
        return _fail(model, name, exc)
    return proven(
        name,
        y_prime=w(yp),
        z=w(steps["z"]),
        x_pp=w(steps["x_pp"]),
        n=steps["n"],
        e=tuple(map(w, steps["e"])),
        e_prime=tuple(map(w, steps["e_prime"])),
    )


def _pre_cu_equiv(model: CuModel, xp, x, budget: Budget) -> dict:
    le, ad, wb = model.leq, model.add, model.way_below
    x1 = _require(interpolate(model, xp, x, budget), "x1")
    x2 = _require(interpolate(model, x1, x, budget), "x2")
    x3 = _require(interpolate(model, x2, x, budget), "x3")
    s, t = _require(_splitting_pair(model, x3, x, budget), "splitting pair")
    sp = _lhd_part2(model, x1, x2, s, budget)["z"]
    spp = _lhd_part1(model, xp, sp, budget)
    tp = _lhd_part1(model, x2, t, budget)
    c = _require(
        next(
            (c for c in pool(model, budget, (x, t, s, sp)) if le(ad(spp, c), x) and le(x, ad(sp, c)) and wb(tp, c)),
            None,
        ),
        "c",
    )
    if not (le(ad(spp, c), x) and lhd(model, xp, spp) and lhd(model, x, c)):
        raise TheoremViolation(f"y={model.format(spp)}, z={model.format(c)} fail the splitting conclusion")
    return {"x1": x1, "x2": x2, "x3": x3, "s": s, "t": t, "s_prime": sp, "s_pp": spp, "t_prime": tp, "y": spp, "z": c}


def _require_splitting(model: CuModel, scale: Scale, budget: Budget) -> Verdict:
    v = has_2_splitting(model, scale, budget)
    if not v.proven:
        raise PreconditionNotEstablished(f"hereditary 2-splitting is {v.status.value}")
    return v


def pre_cu_equiv(
    model: CuModel, scale: Scale, x_prime, x, budget: Budget = DEFAULT_BUDGET, assume: bool = False
) -> Verdict:
    """y + z <= x with x' in the ideal of y and x in the ideal of z."""
    name = "pre_cu_equiv"
    xp, xv = model.unwrap(x_prime), model.unwrap(x)
    if not model.way_below(xp, xv):
        raise NotWayBelow(f"{model.format(xp)} is not way below {model.format(xv)}")
    if not scale.contains(xv):
        raise PreconditionNotEstablished(f"{model.format(xv)} is not in the scale")
    if not assume:
        _require_axioms(model, ("O5", "O6", "O7"), budget)
        _require_splitting(model, scale, budget)
    try:
        steps = _pre_cu_equiv(model, xp, xv, budget)
    except _Missing as exc:
        return _fail(model, name, exc)
    return proven(name, **{k: model.wrap(v) for k, v in steps.items()})


def soft_dominator(model: CuModel, scale: Scale, x, budget: Budget = DEFAULT_BUDGET, max_steps: int = 64) -> Verdict:
    """Strongly soft y with y <= x <= inf*y, built from 2-splitting."""
    name = "soft_dominator"
    xv = model.unwrap(x)
    if not scale.contains(xv):
        raise PreconditionNotEstablished(f"{model.format(xv)} is not in the scale")
    split = has_2_splitting(model, scale, budget)
    if split.refuted:
        return refuted(name, note="hereditary 2-splitting fails", **split.certificate)
    _require_axioms(model, ("O5", "O6", "O7"), budget)
    _require_splitting(model, scale, budget)
    if not model.is_compact(xv):
        return unknown(name, note="basis chain of x does not stabilize")
    # the basis chain of a compact x is constant, so each step depends only on z_n
    w = model.wrap
    try:
        zs, ys, index = [xv], [], {xv: 0}
        for _ in range(max_steps):
            z = zs[-1]
            zp = _lhd_part1(model, xv, z, budget)
            step = _pre_cu_equiv(model, zp, z, budget)
            y_next = _lhd_part2(model, xv, xv, step["y"], budget)["z"]
            ys.append(y_next)
            if step["z"] in index:
                start = index[step["z"]]
                break
            index[step["z"]] = len(zs)
            zs.append(step["z"])
        else:
            return unknown(name, note="construction did not become periodic")
    except _Missing as exc:
        return _fail(model, name, exc)
    seq = Summands(tuple(ys[:start]), tuple(ys[start:]))
    y = sum_soft(model, seq, budget).value
    if not (model.leq(y, xv) and lhd(model, xv, y)):
        raise TheoremViolation(f"soft dominator {model.format(y)} fails y <= x <= inf*y")
    return proven(
        name,
        y=w(y),
        z=tuple(map(w, zs)),
        y_prefix=tuple(map(w, seq.prefix)),
        y_cycle=tuple(map(w, seq.cycle)),
    )


def _require_divisible(model: CuModel, budget: Budget):
    _require_axioms(model, ("O5",), budget)
    v = two_omega_divisible(model, Scale.full(model), budget)
    if not v.proven:
        raise PreconditionNotEstablished(f"(2,omega)-divisibility is {v.status.value}")


def _chain_terms(model: CuModel, chain: ChainDescriptor):
    if chain.form == "list":
        vals = [model.unwrap(t) for t in chain.data]
    elif chain.form == "truncation" and model.is_compact(model.unwrap(chain.data[0])):
        vals = [model.unwrap(chain.data[0])]
    else:
        return None
    for i, (a, b) in enumerate(zip(vals, vals[1:] + vals[-1:])):
        if not model.way_below(a, b):
            raise HypothesisViolated(f"chain term {i} is not way below term {i + 1}", index=i)
    return vals


def _k_div_seq(model: CuModel, k: int, xs: list, budget: Budget, max_steps: int = 64) -> dict:
    le, ad, wb, om, mul = model.leq, model.add, model.way_below, model.omega, model.multiple
    x = xs[-1]

    def xn(n):
        return xs[min(n, len(xs) - 1)]

    def first(test, extra=()):
        return next((c for c in pool(model, budget, extra) if test(c)), None)

    def complement(yv, zv):
        # k*y + c <= z <= (k+1)*c with y << c
        return _require(
            first(lambda c: le(ad(mul(yv, k), c), zv) and le(zv, mul(c, k + 1)) and wb(yv, c), (zv,)), "complement c"
        )

    z0 = _require(first(lambda z: wb(mul(z, k + 1), x) and wb(xn(0), om(z)), (x,)), "z_0")
    y0 = _require(first(lambda y: wb(y, z0) and wb(xn(0), om(y)), (z0,)), "y_0")
    ys, cs, zs, cps = [y0], [complement(y0, x)], [z0], []
    seen = {}
    n = 0
    while True:
        if n >= len(xs) - 1:
            state = (ys[n], cs[n])
            if state in seen:
                start = seen[state]
                break
            seen[state] = n
        if n > max_steps:
            raise _Missing("periodic continuation")
        yn, cn, xnext = ys[n], cs[n], xn(n + 1)
        cp = _require(first(lambda c: wb(c, cn) and wb(yn, c) and wb(xnext, om(c)), (cn,)), "c_n'")
        zn = _require(first(lambda z: wb(mul(z, k + 1), cn) and wb(cp, om(z)), (cn,)), "z_n")
        yv = _require(first(lambda y: wb(y, zn) and wb(cp, om(y)), (zn,)), "y_n")
        cps.append(cp)
        zs.append(zn)
        ys.append(yv)
        cs.append(complement(yv, cn))
        n += 1
    seq = Summands(tuple(ys[:start]), tuple(ys[start:n]))
    return {"seq": seq, "c": cs[: n + 1], "z": zs, "c_prime": cps}


def _check_k_div(model: CuModel, k: int, xs: list, seq: Summands):
    x = xs[-1]
    scaled = Summands(tuple(model.multiple(y, k) for y in seq.prefix), tuple(model.multiple(y, k) for y in seq.cycle))
    if not model.leq(series_sum(model, scaled), x):
        raise TheoremViolation("sum of k*y_n exceeds the supremum of the chain")
    terms = seq.presented()
    for n in range(len(terms) - 1):
        nxt = terms[n + 1]
        if not (model.way_below(terms[n], model.omega(nxt)) and model.way_below(xs[min(n + 1, len(xs) - 1)], model.omega(nxt))):
            raise TheoremViolation(f"y_{n + 1} fails to generate y_{n} and x_{n + 1}")


def k_div_seq(
    model: CuModel, k: int, chain: ChainDescriptor, budget: Budget = DEFAULT_BUDGET, assume: bool = False
) -> Verdict:
    """(y_n) with sum k*y_n <= sup x_n and y_n, x_{n+1} << inf*y_{n+1}."""
    name = "k_div_seq"
    if k < 1:
        raise ValueError("k must be positive")
    if not assume:
        _require_divisible(model, budget)
    xs = _chain_terms(model, chain)
    if xs is None:
        return unknown(name, note="chain does not stabilize")
    try:
        out = _k_div_seq(model, k, xs, budget)
    except _Missing as exc:
        return _fail(model, name, exc)
    seq = out["seq"]
    _check_k_div(model, k, xs, seq)
    w = model.wrap
    return proven(
        name,
        y_prefix=tuple(map(w, seq.prefix)),
        y_cycle=tuple(map(w, seq.cycle)),
        c=tuple(map(w, out["c"])),
        z=tuple(map(w, out["z"])),
    )


def div_soft_divisor(model: CuModel, x, k: int = 2, budget: Budget = DEFAULT_BUDGET, assume: bool = False) -> Verdict:
    """Strongly soft y with k*y <= x <= inf*y."""
    name = "div_soft_divisor"
    xv = model.unwrap(x)
    if not assume:
        _require_divisible(model, budget)
    seqv = k_div_seq(model, k, basis_chain(model, xv), budget, assume=True)
    if not seqv.proven:
        return seqv.renamed(name)
    seq = Summands(
        tuple(e.value for e in seqv.witness["y_prefix"]), tuple(e.value for e in seqv.witness["y_cycle"])
    )
    y = sum_soft(model, seq, budget).value
    if not (model.leq(model.multiple(y, k), xv) and lhd(model, xv, y)):
        raise TheoremViolation(f"{model.format(y)} fails k*y <= x <= inf*y")
    return proven(name, y=model.wrap(y), y_prefix=seqv.witness["y_prefix"], y_cycle=seqv.witness["y_cycle"])
