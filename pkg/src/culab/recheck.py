"""Independent re-verification of witnesses and certificates.

These checks restate each definition directly.  On finite tables they read
the order matrix and addition table themselves (multiples, infinite
multiples and way-below are recomputed here), so a bug in the search code
cannot also hide in the checker.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .core import CuModel, FiniteModel


class RawOps:
    """Order, addition, way-below and inf-multiples straight from the definitions."""

    def __init__(self, model: CuModel):
        self.model = model
        self.finite = isinstance(model, FiniteModel)

    def le(self, a, b) -> bool:
        return self.model.le[a][b] if self.finite else self.model.leq(a, b)

    def add(self, a, b):
        return self.model.table[a][b] if self.finite else self.model.add(a, b)

    def wb(self, a, b) -> bool:
        # every increasing sequence in a finite poset is eventually constant
        return self.le(a, b) if self.finite else self.model.way_below(a, b)

    def times(self, a, n: int):
        out = self.zero()
        for _ in range(n):
            out = self.add(out, a)
        return out

    def zero(self):
        if self.finite:
            n = self.model.size
            return next(e for e in range(n) if all(self.model.table[e][x] == x for x in range(n)))
        return self.model.zero

    def omega(self, a):
        if not self.finite:
            return self.model.omega(a)
        s = a
        while True:
            nxt = self.add(s, a)
            if nxt == s:
                return s
            s = nxt

    def carrier(self) -> list:
        return list(range(self.model.size)) if self.finite else self.model.elements()

    def below(self, x, depth: int) -> list:
        if self.finite:
            return [a for a in self.carrier() if self.le(a, x)]
        return [self.model.truncate(x, n) for n in range(depth + 1)]


def _raw(model):
    return RawOps(model)


def _v(e):
    return getattr(e, "value", e)


def complement_ok(model, xp, x, t) -> bool:
    r = _raw(model)
    xp, x, t = _v(xp), _v(x), _v(t)
    return r.wb(r.add(xp, t), x) and r.wb(xp, r.omega(t))


def strongly_soft_raw(model, x, depth: int = 12) -> bool:
    """Defining condition of strong softness, exhaustive over the carrier (finite models)."""
    r = _raw(model)
    x = _v(x)
    cands = r.carrier()
    return all(any(complement_ok(model, xp, x, t) for t in cands) for xp in r.below(x, depth) if r.wb(xp, x))


def no_complement(model, xp, x) -> bool:
    """Certificate check: no t at all works for x' << x (finite carriers)."""
    r = _raw(model)
    return r.wb(_v(xp), _v(x)) and not any(complement_ok(model, xp, x, t) for t in r.carrier())


def soft_dominator_ok(model, x, y, soft: bool = True) -> bool:
    r = _raw(model)
    x, y = _v(x), _v(y)
    ok = r.le(y, x) and r.le(x, r.omega(y))
    return ok and (not soft or not r.finite or strongly_soft_raw(model, y))


def div_soft_divisor_ok(model, x, k: int, y) -> bool:
    r = _raw(model)
    x, y = _v(x), _v(y)
    ok = r.le(r.times(y, k), x) and r.le(x, r.omega(y))
    return ok and (not r.finite or strongly_soft_raw(model, y))


def pre_cu_equiv_ok(model, xp, x, y, z) -> bool:
    r = _raw(model)
    xp, x, y, z = map(_v, (xp, x, y, z))
    return r.le(r.add(y, z), x) and r.le(xp, r.omega(y)) and r.le(x, r.omega(z))


def lhd_interpolate_ok(model, xp, x, y, y_prime, z=None) -> bool:
    r = _raw(model)
    xp, x, y, yp = map(_v, (xp, x, y, y_prime))
    ok = r.le(xp, r.omega(yp)) and r.wb(yp, y)
    if z is not None:
        z = _v(z)
        ok = ok and r.le(z, y) and r.le(xp, r.omega(z)) and r.le(z, r.omega(x))
    return ok


def k_div_seq_ok(model, k: int, xs: Sequence, prefix: Sequence, cycle: Sequence) -> bool:
    """sum k*y_n <= sup x_n and y_n, x_{n+1} << inf*y_{n+1} for an eventually periodic (y_n)."""
    r = _raw(model)
    xs = [_v(a) for a in xs]
    prefix, cycle = [_v(a) for a in prefix], [_v(a) for a in cycle]
    ys = prefix + cycle + cycle[:1]
    s = r.zero()
    for y in prefix:
        s = r.add(s, r.times(y, k))
    c = r.zero()
    for y in cycle:
        c = r.add(c, r.times(y, k))
    s = r.add(s, r.omega(c))
    if not r.le(s, xs[-1]):
        return False
    for n in range(len(ys) - 1):
        xn1 = xs[min(n + 1, len(xs) - 1)]
        if not (r.wb(ys[n], r.omega(ys[n + 1])) and r.wb(xn1, r.omega(ys[n + 1]))):
            return False
    return True


def axiom_instance_fails(model, which: str, cert: dict) -> bool:
    """Certificate check for O5-O7 on finite carriers: no witness exists at the instance."""
    r = _raw(model)
    c = {k: _v(v) for k, v in cert.items()}
    els = r.carrier()
    if which == "O5":
        xp, x, yp, y, z = c["x_prime"], c["x"], c["y_prime"], c["y"], c["z"]
        if not (r.wb(xp, x) and r.wb(yp, y) and r.le(r.add(x, y), z)):
            return False
        return not any(r.le(r.add(xp, w), z) and r.le(z, r.add(x, w)) and r.wb(yp, w) for w in els)
    if which == "O6":
        xp, x, y, z = c["x_prime"], c["x"], c["y"], c["z"]
        if not (r.wb(xp, x) and r.le(x, r.add(y, z))):
            return False
        return not any(
            r.le(e, x) and r.le(e, y) and r.le(f, x) and r.le(f, z) and r.le(xp, r.add(e, f))
            for e, f in itertools.product(els, repeat=2)
        )
    if which == "O7":
        xp, x, yp, y, z = c["x_prime"], c["x"], c["y_prime"], c["y"], c["z"]
        if not (r.wb(xp, x) and r.le(x, z) and r.wb(yp, y) and r.le(y, z)):
            return False
        return not any(r.wb(xp, w) and r.wb(yp, w) and r.le(w, z) and r.le(w, r.add(x, y)) for w in els)
    raise ValueError(which)
