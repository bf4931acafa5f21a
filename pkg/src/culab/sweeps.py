"""Payload-level helpers shared by the decision procedures."""

from __future__ import annotations

from typing import Iterable

from .core import CuModel
from .verdict import Budget

SAMPLED = "sampled"


def _cache(model: CuModel) -> dict:
    return model.__dict__.setdefault("_sweep_cache", {})


def pool(model: CuModel, budget: Budget, extra: Iterable = ()) -> list:
    """Canonically sorted candidates for existential searches.

    On finite carriers this is everything.  On infinite carriers it is the
    value grid plus the support representatives (which make many searches
    exact) plus any instance-specific elements.
    """
    key = ("pool", budget.grid)
    cache = _cache(model)
    if key not in cache:
        base = set(model.candidates(budget.grid))
        if not model.is_finite:
            base.update(model.support_reps())
        cache[key] = sorted(base, key=model.sort_key)
    base = cache[key]
    extra = set(extra)
    if not extra:
        return base
    return sorted(extra.union(base), key=model.sort_key)


def lhd(model: CuModel, a, b) -> bool:
    """a lies in the ideal generated by b."""
    return model.leq(a, model.omega(b))


def exact_below(model: CuModel, x) -> bool:
    """Whether the basis chain of x stabilizes, so sweeps over x' << x are exhaustive."""
    return model.is_finite or model.is_compact(x)


def top_below(model: CuModel, x, budget: Budget):
    """Largest sampled x' << x (x itself when x is compact)."""
    if model.is_compact(x):
        return x
    return model.truncate(x, budget.basis)


def below(model: CuModel, x, budget: Budget) -> list:
    return model.below(x, budget.basis)


def interpolate(model: CuModel, a, b, budget: Budget):
    """Some c with a << c << b, preferring a itself, then basis terms of b."""
    wb = model.way_below
    for c in [a, *model.basis_terms(b, budget.basis), *pool(model, budget)]:
        if wb(a, c) and wb(c, b):
            return c
    return None


def multiple_reaching(model: CuModel, a, y, limit: int = 100000):
    """Least n >= 1 with a <= n*y, or None if the multiples stop growing first."""
    s = y
    for n in range(1, limit + 1):
        if model.leq(a, s):
            return n
        nxt = model.add(s, y)
        if nxt == s:
            return None
        s = nxt
    return None


def total(model: CuModel, values: Iterable):
    s = model.zero
    for v in values:
        s = model.add(s, v)
    return s
