"""Effectively presented Cu-semigroups.

A model exposes its structure on raw payloads (indices for finite tables,
extended naturals for ``nbar``, value tuples for ``lsc`` and ``product``).
User code normally goes through :class:`Element` handles and the module
level functions, which check that handles belong to the model they are
used with.

Supported families:

* ``finite-table`` -- explicit order matrix and addition table.  Every
  increasing sequence stabilizes, so every element is compact and the
  way-below relation is the order itself.
* ``e-k`` -- the elementary semigroup {0, 1, ..., k, inf} with truncated
  overflow addition (a finite table with extended-natural labels).
* ``nbar`` -- the extended natural numbers.
* ``lsc`` -- monotone maps from a finite T0 space (given by its
  specialization order) into ``nbar``, pointwise order and addition.
* ``product`` -- componentwise structure on a tuple of models.
"""

from __future__ import annotations

import itertools
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Sequence

from .errors import ElementModelMismatch, NotIncreasing, NotT0, UnsupportedModel, ValidationError

INF = math.inf


def ext_key(v):
    """Sort key for extended naturals (inf last)."""
    return (1, 0) if v == INF else (0, v)


def format_ext(v) -> str:
    return "inf" if v == INF else str(v)


def parse_ext(v):
    if isinstance(v, str):
        if v.strip().lower() in ("inf", "infinity", "∞"):
            return INF
        return int(v)
    if isinstance(v, float):
        if v == INF:
            return INF
        if v.is_integer():
            return int(v)
    return v


def ext_exponent(a, b) -> int | None:
    """Least n >= 1 with (n+1)a << n*b in the extended naturals."""
    if a == INF:
        return None
    if a == 0 or b == INF:
        return 1
    if b > a:
        return max(1, -(-a // (b - a)))
    return None


def _is_ext(v) -> bool:
    if v == INF:
        return True
    return isinstance(v, int) and not isinstance(v, bool) and v >= 0


@dataclass(frozen=True)
class Element:
    """Handle for a carrier element of a specific model."""

    model: "CuModel" = field(repr=False)
    value: Any

    def __str__(self) -> str:
        return self.model.format(self.value)

    def __repr__(self) -> str:
        return f"<{self.model.kind}:{self}>"

    def __add__(self, other: "Element") -> "Element":
        return add(self.model, self, other)


class CuModel(ABC):
    """Abstract effectively-presented Cu-semigroup.

    Subclasses implement the payload-level primitives.  All of them are pure;
    a model never changes after construction.
    """

    kind = "abstract"
    is_finite = False
    zero: Any = None
    declared_scale: tuple | None = None

    # -- handles -----------------------------------------------------------

    def coerce(self, value):
        return value

    def elem(self, value) -> Element:
        """Return the handle for a user-facing value (label, number, tuple)."""
        if isinstance(value, Element):
            if value.model is not self:
                raise ElementModelMismatch(f"{value!r} does not belong to this {self.kind} model")
            return value
        v = self.coerce(value)
        if not self.contains(v):
            raise ValueError(f"{value!r} is not an element of this {self.kind} model")
        return Element(self, v)

    def wrap(self, payload) -> Element:
        return Element(self, payload)

    def unwrap(self, x):
        """Payload of ``x``; accepts handles of this model or raw values."""
        if isinstance(x, Element):
            if x.model is not self:
                raise ElementModelMismatch(f"{x!r} does not belong to this {self.kind} model")
            return x.value
        return self.elem(x).value

    # -- primitives ------------------------------------------------------------

    @abstractmethod
    def contains(self, v) -> bool: ...

    @abstractmethod
    def leq(self, a, b) -> bool: ...

    @abstractmethod
    def add(self, a, b): ...

    @abstractmethod
    def way_below(self, a, b) -> bool: ...

    @abstractmethod
    def omega(self, a): ...

    @abstractmethod
    def truncate(self, a, n: int):
        """n-th term of the canonical basis chain of ``a``."""

    @abstractmethod
    def format(self, a) -> str: ...

    @abstractmethod
    def sort_key(self, a): ...

    @abstractmethod
    def grid(self, level: int) -> list:
        """Finite sample of the carrier, sorted canonically; ``elements()`` for finite models."""

    @abstractmethod
    def support_reps(self) -> list:
        """Finite set R such that every t has some r in R with r <= t and inf*r == inf*t."""

    @abstractmethod
    def top(self): ...

    @abstractmethod
    def stabilization_bound(self) -> int:
        """N such that (n+1)x == n*x for some n >= 1 iff it holds for some n <= N."""

    def elements(self) -> list:
        raise UnsupportedModel(f"{self.kind} model has an infinite carrier")

    def multiple(self, a, n: int):
        out = self.zero
        for _ in range(n):
            out = self.add(out, a)
        return out

    def is_compact(self, a) -> bool:
        return self.way_below(a, a)

    def stabilizes(self, a) -> int | None:
        """Least n >= 1 with (n+1)a == n*a, or None if the multiples keep growing."""
        s = a
        for n in range(1, self.stabilization_bound() + 1):
            nxt = self.add(s, a)
            if nxt == s:
                return n
            s = nxt
        return None

    def functional_exponent(self, a, b) -> int | None:
        """Least n >= 1 with (n+1)a << n*b, or None if there is none."""
        na, nb = a, b
        for n in range(1, 4 * self.stabilization_bound() + 2):
            na1 = self.add(na, a)
            if self.way_below(na1, nb):
                return n
            nb1 = self.add(nb, b)
            if self.add(na1, a) == na1 and nb1 == nb:
                return None
            na, nb = na1, nb1
        raise AssertionError("multiples failed to stabilize")

    def candidates(self, level: int) -> list:
        return self.elements() if self.is_finite else self.grid(level)

    def below(self, x, depth: int) -> list:
        """Sample of {x' : x' << x}: everything on finite carriers, basis terms otherwise."""
        if self.is_finite:
            return [y for y in self.elements() if self.way_below(y, x)]
        return self.basis_terms(x, depth)

    def basis_terms(self, x, depth: int) -> list:
        out = []
        for n in range(depth + 1):
            t = self.truncate(x, n)
            if not out or out[-1] != t:
                out.append(t)
        return out

    # -- ideals ----------------------------------------------------------------

    def ideal_support(self, x) -> Hashable:
        """Representation of the ideal {y : y <= inf*x}."""
        raise UnsupportedModel(f"no ideal representation for {self.kind}")

    def ideal_supports(self) -> list:
        raise UnsupportedModel(f"cannot enumerate ideals of {self.kind}")

    def ideal_member(self, data, x) -> bool:
        raise UnsupportedModel(f"no ideal representation for {self.kind}")

    def quotient_parts(self, data):
        """(target model, projection, minimal lift) for the quotient by an ideal."""
        raise UnsupportedModel(f"cannot form quotients of {self.kind}")


# ---------------------------------------------------------------------------
# finite tables


def table_violations(le: Sequence[Sequence], table: Sequence[Sequence]) -> list[str]:
    """Every violation of the positively ordered commutative monoid laws."""
    n = len(le)
    out: list[str] = []
    for i in range(n):
        for j in range(n):
            v = table[i][j]
            if not (isinstance(v, int) and 0 <= v < n):
                out.append(f"range at ({i},{j})")
    if out:
        return out
    for i in range(n):
        if not le[i][i]:
            out.append(f"reflexivity at {i}")
    for i in range(n):
        for j in range(i + 1, n):
            if le[i][j] and le[j][i]:
                out.append(f"antisymmetry at ({i},{j})")
    for i, j, k in itertools.product(range(n), repeat=3):
        if le[i][j] and le[j][k] and not le[i][k]:
            out.append(f"transitivity at ({i},{j},{k})")
    for i in range(n):
        for j in range(i + 1, n):
            if table[i][j] != table[j][i]:
                out.append(f"commutativity at ({i},{j})")
    for i, j, k in itertools.product(range(n), repeat=3):
        if table[table[i][j]][k] != table[i][table[j][k]]:
            out.append(f"associativity at ({i},{j},{k})")
    zeros = [e for e in range(n) if all(table[e][x] == x and table[x][e] == x for x in range(n))]
    if not zeros:
        out.append("identity: no neutral element")
    else:
        z = zeros[0]
        for i in range(n):
            if not le[z][i]:
                out.append(f"zero-least at {i}")
    for i, j, k in itertools.product(range(n), repeat=3):
        if le[i][j] and not le[table[i][k]][table[j][k]]:
            out.append(f"order-compatibility at ({i},{j},{k})")
    return out


class FiniteModel(CuModel):
    """Finite Cu-semigroup given by an order matrix and an addition table."""

    kind = "finite-table"
    is_finite = True

    def __init__(self, leq, add, names: Sequence[str] | None = None, *, validate: bool = True):
        n = len(leq)
        if n == 0:
            raise ValidationError(["empty carrier"])
        self.size = n
        self.le = tuple(tuple(bool(v) for v in row) for row in leq)
        self.table = tuple(tuple(int(v) for v in row) for row in add)
        if any(len(r) != n for r in self.le) or len(self.table) != n or any(len(r) != n for r in self.table):
            raise ValidationError(["shape: matrices must be square of the same size"])
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(n))
        if len(self.names) != n or len(set(self.names)) != n:
            raise ValidationError(["names: need one distinct name per element"])
        if validate:
            violations = table_violations(self.le, self.table)
            if violations:
                raise ValidationError(violations)
        self.zero = next(e for e in range(n) if all(self.table[e][x] == x for x in range(n)))
        self._index = {name: i for i, name in enumerate(self.names)}
        self.up = tuple(tuple(j for j in range(n) if self.le[i][j]) for i in range(n))
        self.down = tuple(tuple(j for j in range(n) if self.le[j][i]) for i in range(n))
        self._omega = tuple(self._compute_omega(x) for x in range(n))
        self._top = self._omega[self._sum_all()]

    def _sum_all(self):
        s = self.zero
        for x in range(self.size):
            s = self.table[s][x]
        return s

    def _compute_omega(self, x):
        s = x
        for _ in range(self.size + 1):
            nxt = self.table[s][x]
            if nxt == s:
                return s
            s = nxt
        raise AssertionError("multiples failed to stabilize within the carrier size")

    def coerce(self, value):
        if isinstance(value, str) and value in self._index:
            return self._index[value]
        return value

    def contains(self, v) -> bool:
        return isinstance(v, int) and not isinstance(v, bool) and 0 <= v < self.size

    def leq(self, a, b) -> bool:
        return self.le[a][b]

    def add(self, a, b):
        return self.table[a][b]

    def way_below(self, a, b) -> bool:
        return self.le[a][b]

    def is_compact(self, a) -> bool:
        return True

    def omega(self, a):
        return self._omega[a]

    def truncate(self, a, n):
        return a

    def format(self, a) -> str:
        return self.names[a]

    def sort_key(self, a):
        return a

    def elements(self) -> list:
        return list(range(self.size))

    def grid(self, level):
        return list(range(self.size))

    def support_reps(self):
        return list(range(self.size))

    def top(self):
        return self._top

    def stabilization_bound(self):
        return self.size

    def below(self, x, depth):
        return list(self.down[x])

    def idempotents(self) -> list[int]:
        return [e for e in range(self.size) if self.table[e][e] == e]

    def ideal_support(self, x):
        return frozenset(self.down[self._omega[x]])

    def ideal_supports(self):
        # finite ideals are exactly the downsets of idempotents
        return sorted({frozenset(self.down[e]) for e in self.idempotents()}, key=lambda s: (len(s), sorted(s)))

    def ideal_member(self, data, x):
        return x in data

    def quotient_parts(self, data):
        e = self.zero
        for w in data:
            e = self.table[e][w]
        n = self.size
        pre = [[self.le[x][self.table[y][e]] for y in range(n)] for x in range(n)]
        rep = [min(y for y in range(n) if pre[x][y] and pre[y][x]) for x in range(n)]
        reps = sorted(set(rep))
        pos = {r: i for i, r in enumerate(reps)}
        le = [[pre[a][b] for b in reps] for a in reps]
        tbl = [[pos[rep[self.table[a][b]]] for b in reps] for a in reps]
        target = FiniteModel(le, tbl, [self.names[r] for r in reps])
        project = lambda x: pos[rep[x]]  # noqa: E731
        lift = lambda y: reps[y]  # noqa: E731
        return target, project, lift

    def __repr__(self):
        return f"FiniteModel({list(self.names)})"


class EkModel(FiniteModel):
    """The elementary Cu-semigroup E_k = {0, 1, ..., k, inf}.

    Values are given as extended naturals: ``E.elem(2)``, ``E.elem(INF)``.
    """

    kind = "e-k"

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("E_k needs k >= 1")
        self.k = k
        n = k + 2
        le = [[i <= j for j in range(n)] for i in range(n)]
        add = [[i + j if i + j <= k else k + 1 for j in range(n)] for i in range(n)]
        super().__init__(le, add, [str(i) for i in range(k + 1)] + ["inf"], validate=False)

    def coerce(self, value):
        if isinstance(value, Element):
            return value.value
        v = parse_ext(value)
        if v == INF:
            return self.k + 1
        if isinstance(v, int) and 0 <= v <= self.k:
            return v
        return -1

    def value_of(self, x) -> int | float:
        v = self.unwrap(x) if isinstance(x, Element) else x
        return INF if v == self.k + 1 else v

    def __repr__(self):
        return f"EkModel({self.k})"


def trivial_model() -> FiniteModel:
    return FiniteModel([[1]], [[0]], ["0"])


# ---------------------------------------------------------------------------
# extended naturals


class NbarModel(CuModel):
    """The extended natural numbers {0, 1, 2, ..., inf}."""

    kind = "nbar"
    zero = 0

    def coerce(self, value):
        return parse_ext(value)

    def contains(self, v):
        return _is_ext(v)

    def leq(self, a, b):
        return a <= b

    def add(self, a, b):
        return a + b

    def way_below(self, a, b):
        return a <= b and a != INF

    def omega(self, a):
        return 0 if a == 0 else INF

    def truncate(self, a, n):
        return min(a, n)

    def format(self, a):
        return format_ext(a)

    def sort_key(self, a):
        return ext_key(a)

    def grid(self, level):
        return list(range(level + 1)) + [INF]

    def support_reps(self):
        return [0, 1]

    def top(self):
        return INF

    def stabilization_bound(self):
        return 1

    def multiple(self, a, n):
        return a * n if a != INF else (INF if n else 0)

    def functional_exponent(self, a, b):
        return ext_exponent(a, b)

    # ideals: False = {0}, True = everything
    def ideal_support(self, x):
        return x != 0

    def ideal_supports(self):
        return [False, True]

    def ideal_member(self, data, x):
        return data or x == 0

    def quotient_parts(self, data):
        if not data:
            return self, (lambda x: x), (lambda y: y)
        return trivial_model(), (lambda x: 0), (lambda y: 0)

    def __repr__(self):
        return "NbarModel()"


# ---------------------------------------------------------------------------
# lower-semicontinuous functions on a finite T0 space


class LscModel(CuModel):
    """Monotone maps from a finite poset of points into ``nbar``.

    ``leq[i][j]`` means point i lies below point j in the specialization
    order; open sets are the up-sets.  Payloads are value tuples indexed
    like ``points``.
    """

    kind = "lsc"

    def __init__(self, points: Sequence[str], leq: Sequence[Sequence]):
        m = len(points)
        self.points = tuple(str(p) for p in points)
        self.pleq = tuple(tuple(bool(v) for v in row) for row in leq)
        if len(self.pleq) != m or any(len(r) != m for r in self.pleq):
            raise ValueError("specialization matrix must be square over the points")
        for i in range(m):
            if not self.pleq[i][i]:
                raise ValueError(f"specialization order not reflexive at {self.points[i]}")
        for i, j, k in itertools.product(range(m), repeat=3):
            if self.pleq[i][j] and self.pleq[j][k] and not self.pleq[i][k]:
                raise ValueError("specialization order not transitive")
        for i in range(m):
            for j in range(i + 1, m):
                if self.pleq[i][j] and self.pleq[j][i]:
                    raise NotT0(f"points {self.points[i]} and {self.points[j]} are topologically indistinguishable")
        self.m = m
        self.is_finite = m == 0
        self.zero = (0,) * m
        self._pairs = [(i, j) for i in range(m) for j in range(m) if i != j and self.pleq[i][j]]
        self._opens = self._up_sets()

    def _up_sets(self):
        out = []
        for bits in itertools.product((0, 1), repeat=self.m):
            if all(bits[j] for i, j in self._pairs if bits[i]):
                out.append(frozenset(i for i in range(self.m) if bits[i]))
        return sorted(out, key=lambda s: (len(s), sorted(s)))

    def open_sets(self) -> list[frozenset]:
        return list(self._opens)

    def coerce(self, value):
        if isinstance(value, (list, tuple)):
            return tuple(parse_ext(v) for v in value)
        if self.m == 1 and not isinstance(value, tuple):
            return (parse_ext(value),)
        return value

    def contains(self, v):
        return (
            isinstance(v, tuple)
            and len(v) == self.m
            and all(_is_ext(a) for a in v)
            and all(v[i] <= v[j] for i, j in self._pairs)
        )

    def leq(self, a, b):
        return all(x <= y for x, y in zip(a, b))

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def way_below(self, a, b):
        return all(x <= y and x != INF for x, y in zip(a, b))

    def omega(self, a):
        return tuple(0 if x == 0 else INF for x in a)

    def truncate(self, a, n):
        return tuple(min(x, n) for x in a)

    def multiple(self, a, n):
        return tuple(x * n if x != INF else (INF if n else 0) for x in a)

    def functional_exponent(self, a, b):
        out = 1
        for x, y in zip(a, b):
            n = ext_exponent(x, y)
            if n is None:
                return None
            out = max(out, n)
        return out

    def format(self, a):
        return "(" + ",".join(format_ext(x) for x in a) + ")"

    def sort_key(self, a):
        return tuple(ext_key(x) for x in a)

    def grid(self, level):
        vals = list(range(level + 1)) + [INF]
        out = [v for v in itertools.product(vals, repeat=self.m) if all(v[i] <= v[j] for i, j in self._pairs)]
        return sorted(out, key=self.sort_key)

    def elements(self):
        if self.m == 0:
            return [()]
        return super().elements()

    def support_reps(self):
        return sorted((tuple(1 if i in u else 0 for i in range(self.m)) for u in self._opens), key=self.sort_key)

    def top(self):
        return (INF,) * self.m

    def stabilization_bound(self):
        return 1

    def support(self, a) -> frozenset:
        return frozenset(i for i, x in enumerate(a) if x != 0)

    def ideal_support(self, x):
        return self.support(x)

    def ideal_supports(self):
        return list(self._opens)

    def ideal_member(self, data, x):
        return self.support(x) <= data

    def quotient_parts(self, data):
        keep = [i for i in range(self.m) if i not in data]
        target = LscModel([self.points[i] for i in keep], [[self.pleq[i][j] for j in keep] for i in keep])

        def project(f):
            return tuple(f[i] for i in keep)

        def lift(g):
            vals = dict(zip(keep, g))
            out = []
            for q in range(self.m):
                if q in vals:
                    out.append(vals[q])
                else:
                    below = [vals[p] for p in keep if self.pleq[p][q]]
                    out.append(max(below, key=ext_key) if below else 0)
            return tuple(out)

        return target, project, lift

    def __repr__(self):
        return f"LscModel({list(self.points)})"


# ---------------------------------------------------------------------------
# products


class ProductModel(CuModel):
    kind = "product"

    def __init__(self, factors: Sequence[CuModel]):
        if not factors:
            raise ValueError("product needs at least one factor")
        self.factors = tuple(factors)
        self.is_finite = all(f.is_finite for f in self.factors)
        self.zero = tuple(f.zero for f in self.factors)

    def coerce(self, value):
        if isinstance(value, (list, tuple)) and len(value) == len(self.factors):
            return tuple(f.coerce(v.value if isinstance(v, Element) else v) for f, v in zip(self.factors, value))
        return value

    def contains(self, v):
        return isinstance(v, tuple) and len(v) == len(self.factors) and all(f.contains(a) for f, a in zip(self.factors, v))

    def leq(self, a, b):
        return all(f.leq(x, y) for f, x, y in zip(self.factors, a, b))

    def add(self, a, b):
        return tuple(f.add(x, y) for f, x, y in zip(self.factors, a, b))

    def way_below(self, a, b):
        return all(f.way_below(x, y) for f, x, y in zip(self.factors, a, b))

    def omega(self, a):
        return tuple(f.omega(x) for f, x in zip(self.factors, a))

    def truncate(self, a, n):
        return tuple(f.truncate(x, n) for f, x in zip(self.factors, a))

    def multiple(self, a, n):
        return tuple(f.multiple(x, n) for f, x in zip(self.factors, a))

    def functional_exponent(self, a, b):
        # each factor condition is monotone in n once a << b
        out = 1
        for f, x, y in zip(self.factors, a, b):
            n = f.functional_exponent(x, y)
            if n is None:
                return None
            out = max(out, n)
        return out

    def format(self, a):
        return "(" + ",".join(f.format(x) for f, x in zip(self.factors, a)) + ")"

    def sort_key(self, a):
        return tuple(f.sort_key(x) for f, x in zip(self.factors, a))

    def grid(self, level):
        return sorted(itertools.product(*(f.candidates(level) for f in self.factors)), key=self.sort_key)

    def elements(self):
        if not self.is_finite:
            return super().elements()
        return list(itertools.product(*(f.elements() for f in self.factors)))

    def support_reps(self):
        return sorted(itertools.product(*(f.support_reps() for f in self.factors)), key=self.sort_key)

    def top(self):
        return tuple(f.top() for f in self.factors)

    def stabilization_bound(self):
        return max(f.stabilization_bound() for f in self.factors)

    def below(self, x, depth):
        if self.is_finite:
            return [y for y in self.elements() if self.way_below(y, x)]
        return self.basis_terms(x, depth)

    def ideal_support(self, x):
        return tuple(f.ideal_support(a) for f, a in zip(self.factors, x))

    def ideal_supports(self):
        # ideals of a positive product are products of ideals
        return list(itertools.product(*(f.ideal_supports() for f in self.factors)))

    def ideal_member(self, data, x):
        return all(f.ideal_member(d, a) for f, d, a in zip(self.factors, data, x))

    def quotient_parts(self, data):
        parts = [f.quotient_parts(d) for f, d in zip(self.factors, data)]
        target = ProductModel([p[0] for p in parts])
        projections = [p[1] for p in parts]
        lifts = [p[2] for p in parts]
        return (
            target,
            lambda x: tuple(p(a) for p, a in zip(projections, x)),
            lambda y: tuple(l(b) for l, b in zip(lifts, y)),
        )

    def __repr__(self):
        return f"ProductModel({list(self.factors)})"


# ---------------------------------------------------------------------------
# chains


@dataclass(frozen=True)
class ChainDescriptor:
    """Finite description of an increasing sequence.

    ``form`` is ``"list"`` (entries, last one repeats forever),
    ``"truncation"`` (n-th term is the base element capped at level n), or
    ``"sum"`` (pointwise sum of two descriptors).
    """

    form: str
    data: tuple

    @classmethod
    def stabilizing(cls, terms: Iterable[Element]) -> "ChainDescriptor":
        terms = tuple(terms)
        if not terms:
            raise ValueError("a stabilizing chain needs at least one term")
        return cls("list", terms)

    @classmethod
    def truncation(cls, base: Element) -> "ChainDescriptor":
        return cls("truncation", (base,))

    @classmethod
    def pointwise_sum(cls, a: "ChainDescriptor", b: "ChainDescriptor") -> "ChainDescriptor":
        return cls("sum", (a, b))

    def term(self, model: CuModel, n: int) -> Element:
        if self.form == "list":
            x = self.data[min(n, len(self.data) - 1)]
            return model.wrap(model.unwrap(x))
        if self.form == "truncation":
            return model.wrap(model.truncate(model.unwrap(self.data[0]), n))
        if self.form == "sum":
            a, b = self.data
            return model.wrap(model.add(a.term(model, n).value, b.term(model, n).value))
        raise ValueError(f"unknown chain form {self.form!r}")

    def terms(self, model: CuModel, count: int) -> list[Element]:
        return [self.term(model, n) for n in range(count)]


# ---------------------------------------------------------------------------
# public operations on handles


def leq(model: CuModel, x, y) -> bool:
    return model.leq(model.unwrap(x), model.unwrap(y))


def add(model: CuModel, x, y) -> Element:
    return model.wrap(model.add(model.unwrap(x), model.unwrap(y)))


def way_below(model: CuModel, x, y) -> bool:
    return model.way_below(model.unwrap(x), model.unwrap(y))


def omega_multiple(model: CuModel, x) -> Element:
    """sup_n n*x."""
    return model.wrap(model.omega(model.unwrap(x)))


def is_compact(model: CuModel, x) -> bool:
    return model.is_compact(model.unwrap(x))


def sup_chain(model: CuModel, chain: ChainDescriptor) -> Element:
    if chain.form == "list":
        vals = [model.unwrap(t) for t in chain.data]
        for i, (a, b) in enumerate(zip(vals, vals[1:])):
            if not model.leq(a, b):
                raise NotIncreasing(f"term {i} is not below term {i + 1}")
        return model.wrap(vals[-1])
    if chain.form == "truncation":
        return model.wrap(model.unwrap(chain.data[0]))
    if chain.form == "sum":
        a, b = chain.data
        return add(model, sup_chain(model, a), sup_chain(model, b))
    raise ValueError(f"unknown chain form {chain.form!r}")


def basis_chain(model: CuModel, x) -> ChainDescriptor:
    """A way-below increasing chain with supremum ``x``."""
    v = model.unwrap(x)
    if model.is_compact(v):
        return ChainDescriptor.stabilizing([model.wrap(v)])
    return ChainDescriptor.truncation(model.wrap(v))


def product(a: CuModel, b: CuModel) -> ProductModel:
    return ProductModel([a, b])


def lsc_model(points: Sequence[str], leq_matrix: Sequence[Sequence]) -> LscModel:
    return LscModel(points, leq_matrix)


def sierpinski() -> LscModel:
    """Sierpinski space: open point u above closed point v; payloads (f(u), f(v))."""
    return LscModel(["u", "v"], [[1, 0], [1, 1]])


def discrete_space(m: int) -> LscModel:
    return LscModel([f"p{i}" for i in range(m)], [[i == j for j in range(m)] for i in range(m)])


def to_table(model: CuModel) -> FiniteModel:
    """Re-present a finite model as an index table (element order preserved)."""
    if isinstance(model, FiniteModel) and type(model) is FiniteModel:
        return model
    els = model.elements()
    pos = {v: i for i, v in enumerate(els)}
    le = [[model.leq(a, b) for b in els] for a in els]
    tbl = [[pos[model.add(a, b)] for b in els] for a in els]
    return FiniteModel(le, tbl, [model.format(a) for a in els])
