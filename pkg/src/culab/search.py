"""Exhaustive enumeration of small finite models and counterexample hunting.

Models of size n are built in two stages.  First every partial order on
the nonzero elements is listed up to isomorphism (0 is put below
everything).  Then, for each order, addition tables are filled row-major
by backtracking: a + b must lie above both a and b, and every completed
cell is checked against order-compatibility and associativity with the
cells already present.  Isomorphic tables coming from automorphisms of the
order are removed with a canonical form.

Note: on finite carriers weak and strong softness coincide (both reduce to
2x = x), so an empty hunt for an element that is weakly but not strongly
soft says nothing about infinite models.
"""

from __future__ import annotations

import ast
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .core import FiniteModel
from .errors import ParseError
from .report import MODEL_PREDICATES, model_predicates
from .softness import SOFTNESS_FLAGS, classify_softness
from .structure import AXIOMS, Scale, check_axiom
from .verdict import DEFAULT_BUDGET, Budget, Status, Verdict

Table = tuple  # (leq rows, add rows), both tuples of tuples


# ---------------------------------------------------------------------------
# canonical forms


def _relabel(le, add, perm) -> Table:
    """Table after moving element i to position perm[i]."""
    n = len(perm)
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    le2 = tuple(tuple(int(le[inv[a]][inv[b]]) for b in range(n)) for a in range(n))
    add2 = tuple(tuple(perm[add[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
    return le2, add2


def _perms_fixing(n: int, z: int):
    rest = [i for i in range(n) if i != z]
    for p in itertools.permutations(range(1, n)):
        perm = [0] * n
        perm[z] = 0
        for i, q in zip(rest, p):
            perm[i] = q
        yield perm


def canonical_table(le, add, zero: int = 0) -> Table:
    """Lexicographically least (leq, add) over relabelings sending zero to 0."""
    n = len(le)
    return min(_relabel(le, add, perm) for perm in _perms_fixing(n, zero))


def canonical_form(model: FiniteModel) -> Table:
    return canonical_table(model.le, model.table, model.zero)


def model_from_table(table: Table, names: Iterable[str] | None = None) -> FiniteModel:
    le, add = table
    n = len(le)
    if names is None:
        names = ["0"] + [f"e{i}" for i in range(1, n)]
    return FiniteModel(le, add, list(names))


# ---------------------------------------------------------------------------
# partial orders


def _orders(m: int) -> list[tuple]:
    """Partial orders on m points, one per isomorphism class, naturally labeled.

    Each is a tuple of strict relations (i, j) with i < j.
    """
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    seen, out = set(), []
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        rel = {p for p, b in zip(pairs, bits) if b}
        if any((i, j) in rel and (j, k) in rel and (i, k) not in rel for i, j, k in itertools.combinations(range(m), 3)):
            continue
        key = min(tuple(sorted((p[i], p[j]) for i, j in rel)) for p in itertools.permutations(range(m)))
        if key not in seen:
            seen.add(key)
            out.append(tuple(sorted(rel)))
    return out


def _order_matrix(n: int, rel) -> list[list[bool]]:
    le = [[i == j or i == 0 for j in range(n)] for i in range(n)]
    for i, j in rel:
        le[i + 1][j + 1] = True
    return le


# ---------------------------------------------------------------------------
# addition tables


def _tables_for_order(n: int, rel) -> list[Table]:
    le = _order_matrix(n, rel)
    up = [[j for j in range(n) if le[i][j]] for i in range(n)]
    add = [[None] * n for _ in range(n)]
    for i in range(n):
        add[0][i] = add[i][0] = i
    cells = [(i, j) for i in range(1, n) for j in range(i, n)]
    out: list[Table] = []

    def consistent(i, j) -> bool:
        v = add[i][j]
        # order-compatibility against every defined cell in the same row or column
        for a, b in ((i, j), (j, i)):
            for c in range(n):
                w = add[c][b]
                if w is None:
                    continue
                if le[a][c] and not le[v][w]:
                    return False
                if le[c][a] and not le[w][v]:
                    return False
        # associativity wherever all four entries are known
        for a, b in ((i, j), (j, i)):
            for c in range(n):
                bc, ab = add[b][c], add[a][b]
                if bc is None:
                    continue
                lhs, rhs = add[ab][c], add[a][bc]
                if lhs is not None and rhs is not None and lhs != rhs:
                    return False
        return True

    def full_check() -> bool:
        r = range(n)
        return all(add[add[a][b]][c] == add[a][add[b][c]] for a in r for b in r for c in r)

    def fill(k: int):
        if k == len(cells):
            if full_check():
                out.append(
                    (tuple(tuple(int(v) for v in row) for row in le), tuple(tuple(row) for row in add))
                )
            return
        i, j = cells[k]
        for v in sorted(set(up[i]) & set(up[j])):
            add[i][j] = add[j][i] = v
            if consistent(i, j):
                fill(k + 1)
        add[i][j] = add[j][i] = None

    fill(0)
    return out


def _canonical_tables_for_order(args) -> list[Table]:
    n, rel = args
    return sorted({canonical_table(le, add) for le, add in _tables_for_order(n, rel)})


def enumerate_tables(n: int, jobs: int = 1) -> list[Table]:
    """Canonical tables of all size-n models, sorted."""
    if n < 1:
        raise ValueError("size must be at least 1")
    if n == 1:
        return [(((1,),), ((0,),))]
    work = [(n, rel) for rel in _orders(n - 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_canonical_tables_for_order, work))
    else:
        parts = [_canonical_tables_for_order(w) for w in work]
    return sorted(set().union(*parts))


@dataclass(frozen=True)
class Constraints:
    required_axioms: frozenset = frozenset()
    budget: Budget = DEFAULT_BUDGET

    def admits(self, model: FiniteModel) -> bool:
        return all(check_axiom(model, a, self.budget).proven for a in sorted(self.required_axioms))


def enumerate_models(n: int, constraints: Constraints | None = None, jobs: int = 1) -> Iterator[FiniteModel]:
    """Every size-n model exactly once up to isomorphism, in canonical order."""
    for table in enumerate_tables(n, jobs):
        model = model_from_table(table)
        if constraints is None or constraints.admits(model):
            yield model


def count_models(n: int, jobs: int = 1) -> int:
    return len(enumerate_tables(n, jobs))


# ---------------------------------------------------------------------------
# target expressions

ALIASES = {
    "divisible": "two_omega_divisible",
    "weakly_divisible": "weakly_two_omega_divisible",
    "abundance": "abundance_soft",
    "two_splitting": "hereditary_2_splitting",
    "splitting": "hereditary_2_splitting",
}
QUANTIFIERS = ("exists", "forall")
_SYMBOLS = {"∧": " and ", "∨": " or ", "¬": " not ", "&": " and ", "|": " or ", "~": " not ", "!": " not "}


def _normalize(text: str) -> str:
    for sym, word in _SYMBOLS.items():
        text = text.replace(sym, word)
    return text.replace("2_splitting", "two_splitting").replace("hereditary_two_splitting", "hereditary_2_splitting")


def _resolve(name: str, element_level: bool) -> str:
    name = ALIASES.get(name, name)
    if name in ("true", "false"):
        return name
    allowed = SOFTNESS_FLAGS if element_level else MODEL_PREDICATES
    if name not in allowed:
        where = "inside exists/forall" if element_level else "at model level"
        raise ParseError(f"unknown predicate {name!r} {where}")
    return name


def parse_target(text: str) -> ast.Expression:
    """Parse and validate a boolean target; raises ParseError."""
    src = _normalize(text).strip()
    if not src:
        raise ParseError("empty target expression")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"malformed target {text!r}: {exc.msg}") from None

    def walk(node, element_level: bool):
        if isinstance(node, ast.BoolOp):
            for v in node.values:
                walk(v, element_level)
        elif isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.Not):
            walk(node.operand, element_level)
        elif isinstance(node, ast.Name):
            node.id = _resolve(node.id, element_level)
        elif isinstance(node, ast.Constant) and isinstance(node.value, bool):
            pass
        elif (
            isinstance(node, ast.Call)
            and isinstance(node.func, ast.Name)
            and node.func.id in QUANTIFIERS
            and not element_level
            and len(node.args) == 1
            and not node.keywords
        ):
            walk(node.args[0], True)
        else:
            raise ParseError(f"unsupported construct in target {text!r}: {ast.dump(node)[:60]}")

    walk(tree.body, False)
    return tree


def _and(vals):
    vals = list(vals)
    if Status.REFUTED in vals:
        return Status.REFUTED
    return Status.UNKNOWN if Status.UNKNOWN in vals else Status.PROVEN


def _or(vals):
    vals = list(vals)
    if Status.PROVEN in vals:
        return Status.PROVEN
    return Status.UNKNOWN if Status.UNKNOWN in vals else Status.REFUTED


def _not(v):
    return {Status.PROVEN: Status.REFUTED, Status.REFUTED: Status.PROVEN}.get(v, Status.UNKNOWN)


def evaluate_target(tree: ast.Expression, model, scale: Scale | None = None, budget: Budget = DEFAULT_BUDGET) -> Status:
    """Three-valued evaluation; model predicates are computed lazily."""
    cache: dict[str, Verdict] = {}

    def model_pred(name):
        if not cache:
            cache.update(model_predicates(model, scale, budget))
        return cache[name].status

    def ev(node, x=None):
        if isinstance(node, ast.BoolOp):
            vals = [ev(v, x) for v in node.values]
            return _and(vals) if isinstance(node.op, ast.And) else _or(vals)
        if isinstance(node, ast.UnaryOp):
            return _not(ev(node.operand, x))
        if isinstance(node, ast.Constant):
            return Status.PROVEN if node.value else Status.REFUTED
        if isinstance(node, ast.Name):
            if node.id in ("true", "false"):
                return Status.PROVEN if node.id == "true" else Status.REFUTED
            if x is None:
                return model_pred(node.id)
            return getattr(classify_softness(model, model.wrap(x), budget), node.id).status
        if isinstance(node, ast.Call):
            vals = [ev(node.args[0], y) for y in model.candidates(budget.grid)]
            return _or(vals) if node.func.id == "exists" else _and(vals)
        raise AssertionError(node)

    return ev(tree.body)


# ---------------------------------------------------------------------------
# hunting


@dataclass(frozen=True)
class SearchSpec:
    """What to look for: models up to ``max_size`` with the given axioms whose classification satisfies ``target``.

    The one-element model satisfies every predicate, so it is skipped unless
    ``min_size`` is lowered to 1.
    """

    max_size: int
    required_axioms: frozenset = frozenset()
    target: str = "true"
    limit: int | None = None
    min_size: int = 2

    def __post_init__(self):
        if self.max_size < 1 or self.min_size < 1:
            raise ValueError("sizes must be at least 1")
        bad = set(self.required_axioms) - set(AXIOMS)
        if bad:
            raise ValueError(f"unknown axioms {sorted(bad)}")
        object.__setattr__(self, "required_axioms", frozenset(self.required_axioms))
        parse_target(self.target)


@dataclass
class SearchResult:
    size: int
    canonical: Table
    model: FiniteModel = field(repr=False)
    classification: dict = field(default_factory=dict)
    elements: dict = field(default_factory=dict)
    extracts: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        le, add = self.canonical
        return {
            "size": self.size,
            "leq": [list(r) for r in le],
            "add": [list(r) for r in add],
            "classification": self.classification,
            "elements": self.elements,
            "extracts": self.extracts,
        }


def _target_names(tree) -> set[str]:
    return {n.id for n in ast.walk(tree) if isinstance(n, ast.Name) and n.id not in QUANTIFIERS}


def _examine(args):
    """Worker: (table, spec, budget) -> result dict or None."""
    table, spec, budget = args
    model = model_from_table(table)
    if not Constraints(spec.required_axioms, budget).admits(model):
        return None
    tree = parse_target(spec.target)
    if evaluate_target(tree, model, None, budget) is not Status.PROVEN:
        return None
    return _result(model, table, tree, budget)


def _result(model: FiniteModel, table: Table, tree, budget: Budget) -> SearchResult:
    preds = model_predicates(model, None, budget)
    names = _target_names(tree)
    elements = {}
    for x in model.elements():
        r = classify_softness(model, model.wrap(x), budget)
        elements[model.format(x)] = {k: v.status.value for k, v in r.items()}
    return SearchResult(
        model.size,
        table,
        model,
        {k: v.status.value for k, v in preds.items()},
        elements,
        {k: v.to_json() for k, v in preds.items() if k in names},
    )


def hunt(spec: SearchSpec, budget: Budget = DEFAULT_BUDGET, jobs: int = 1) -> list[SearchResult]:
    """All canonical models (up to ``limit``) satisfying the spec, smallest first."""
    tree = parse_target(spec.target)
    if isinstance(tree.body, ast.Name) and tree.body.id == "false":
        return []
    if isinstance(tree.body, ast.Constant) and tree.body.value is False:
        return []
    results: list[SearchResult] = []
    for n in range(spec.min_size, spec.max_size + 1):
        tables = enumerate_tables(n, jobs)
        work = [(t, spec, budget) for t in tables]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                found = list(pool.map(_examine, work, chunksize=4))
        else:
            found = [_examine(w) for w in work]
        for r in found:
            if r is None:
                continue
            results.append(r)
            if spec.limit is not None and len(results) >= spec.limit:
                return results
    return results
