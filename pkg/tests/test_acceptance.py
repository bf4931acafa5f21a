"""Acceptance gate: one test per criterion, each recording a PASS/FAIL line.

The lines are printed in the terminal summary (see conftest.py).
"""

import itertools
import time

from culab import INF, ChainDescriptor, EkModel, NbarModel, omega_multiple, recheck, sierpinski, to_table
from culab.core import basis_chain
from culab.glimm import (
    char_div_equiv,
    cu_equiv_ab_soft,
    div_soft_divisor,
    has_2_splitting,
    k_div_seq,
    lhd_interpolate,
    pre_cu_equiv,
    soft_dominator,
    two_omega_divisible,
)
from culab.harness import DIAGRAM, verify
from culab.report import classify_model
from culab.search import count_models, enumerate_models, enumerate_tables
from culab.softness import classify_softness, soft_submonoid, strongly_soft_witness
from culab.structure import Scale, check_axiom, classify_finiteness, enumerate_ideals, quotient

import oracles
from conftest import RESULTS, corpus, small_models, zero_inf

# pinned tolerances (seconds)
E2_SECONDS = 1.0
DIAGRAM_SECONDS = 120.0
SIZE4_SECONDS = 60.0
SIZE5_SECONDS = 15 * 60.0

CORPUS = corpus()
SMALL = small_models(4)
FINITE = [to_table(m) for m in CORPUS.values() if m.is_finite] + SMALL
ALL = list(CORPUS.values()) + SMALL
GOOD = [m for m in SMALL if all(check_axiom(m, a).proven for a in ("O5", "O6", "O7"))]


def record(n: int, ok: bool, detail: str):
    RESULTS[n] = (ok, detail)
    assert ok, detail


def test_criterion_01_elementary_fidelity():
    start = time.perf_counter()
    problems = []
    for k in (1, 2, 3, 4):
        E = EkModel(k)
        x = E.elem(1)
        r = classify_softness(E, x)
        got = {name: v.status.value for name, v in r.items()}
        want = {
            "strongly_soft": "Refuted",
            "weakly_soft": "Refuted",
            "functionally_soft": "Proven",
            "purely_noncompact": "Refuted",
            "weakly_purely_noncompact": "Proven",
        }
        if got != want:
            problems.append(f"E_{k} flags {got}")
        inf = E.elem(INF).value
        if omega_multiple(E, x).value != inf:
            problems.append(f"E_{k} omega(1)")
        if not (E.multiple(x.value, k + 2) == E.multiple(x.value, k + 1) == inf):
            problems.append(f"E_{k} multiples")
        if E.add(x.value, x.value) == x.value:
            problems.append(f"E_{k} 2x=x")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < E2_SECONDS
    record(1, ok, f"E_1..E_4 element 1 classified exactly in {elapsed:.3f}s {problems or ''}".strip())


def test_criterion_02_softness_diagram():
    start = time.perf_counter()
    violations, checked = [], 0
    for m in ALL:
        axioms = {a: check_axiom(m, a) for a in ("O5",)}
        rsf = classify_finiteness(m).residually_stably_finite.proven
        for x in m.candidates(2):
            r = classify_softness(m, m.wrap(x))
            for a, b, need, needs_rsf in DIAGRAM:
                if any(not axioms[ax].proven for ax in need) or (needs_rsf and not rsf):
                    continue
                checked += 1
                if getattr(r, a).proven and getattr(r, b).refuted:
                    violations.append((m.kind, m.format(x), a, b))
    elapsed = time.perf_counter() - start
    ok = not violations and elapsed < DIAGRAM_SECONDS
    record(2, ok, f"{checked} implication instances, {len(violations)} violations, {elapsed:.1f}s")


def test_criterion_03_compact_closed_forms():
    mismatches, checked = [], 0
    for m in FINITE:
        for x in m.elements():
            r = classify_softness(m, m.wrap(x), method="sweep")
            idem = m.add(x, x) == x
            stable = any(
                m.multiple(x, n + 1) == m.multiple(x, n) for n in range(1, m.size + 1)
            )
            for name, want in (
                ("strongly_soft", idem),
                ("weakly_soft", idem),
                ("purely_noncompact", idem),
                ("functionally_soft", stable),
            ):
                checked += 1
                if getattr(r, name).proven != want:
                    mismatches.append((m.table, x, name))
    record(3, not mismatches, f"{checked} sweep-vs-closed-form comparisons, {len(mismatches)} mismatches")


def test_criterion_04_soft_submonoid():
    violations, checked = [], 0
    for m in ALL:
        if m.is_finite:
            m = to_table(m)
            soft = {e.value for e in soft_submonoid(m)}
            pool = m.elements()
        else:
            pool = m.candidates(2)
            soft = {x for x in pool if classify_softness(m, m.wrap(x)).strongly_soft.proven}
        checked += 1
        if m.zero not in soft:
            violations.append((m.kind, "zero"))
        for a, b in itertools.product(soft, repeat=2):
            s = m.add(a, b)
            checked += 1
            if (s not in soft) if m.is_finite else not classify_softness(m, m.wrap(s)).strongly_soft.proven:
                violations.append((m.kind, "closure", a, b))
        for y in soft:
            for x in pool:
                if m.leq(x, m.omega(y)):
                    checked += 1
                    if not classify_softness(m, m.wrap(m.add(x, y))).strongly_soft.proven:
                        violations.append((m.kind, "absorption", x, y))
    record(4, not violations, f"{checked} closure/absorption instances, {len(violations)} violations")


def test_criterion_05_soft_dominator_equivalence():
    bad = []
    for m in GOOD:
        r = cu_equiv_ab_soft(m, Scale.full(m))
        if not (r.applicable and r.agree):
            bad.append(m.table)
    record(5, bool(GOOD) and not bad, f"{len(GOOD)} models with O5-O7, {len(bad)} disagreements")


def test_criterion_06_divisibility_equivalence():
    bad = [m.table for m in GOOD if not char_div_equiv(m, Scale.full(m)).agree]
    e2 = {v.status.value for v in char_div_equiv(EkModel(2), Scale.full(EkModel(2))).conditions.values()}
    zi = zero_inf()
    top = {v.status.value for v in char_div_equiv(zi, Scale.full(zi)).conditions.values()}
    ok = not bad and e2 == {"Refuted"} and top == {"Proven"}
    record(6, ok, f"{len(GOOD)} models with O5-O7, {len(bad)} disagreements; E_2 all Refuted, {{0,inf}} all Proven")


def test_criterion_07_constructions_recheck():
    failures, checked = [], 0

    def expect(cond, what):
        nonlocal checked
        checked += 1
        if not cond:
            failures.append(what)

    for m in FINITE:
        s = Scale.full(m)
        good = all(check_axiom(m, a).proven for a in ("O5", "O6", "O7"))
        split = good and has_2_splitting(m, s).proven
        divisible = check_axiom(m, "O5").proven and two_omega_divisible(m, s).proven
        for x in m.elements():
            if classify_softness(m, m.wrap(x)).strongly_soft.proven:
                for xp in m.elements():
                    if m.leq(xp, x):
                        v = strongly_soft_witness(m, m.wrap(xp), m.wrap(x))
                        expect(recheck.complement_ok(m, xp, x, v.witness["t"]), ("witness", x, xp))
            if split:
                v = soft_dominator(m, s, m.wrap(x))
                expect(recheck.soft_dominator_ok(m, x, v.witness["y"]), ("dominator", x))
                for xp in m.elements():
                    if m.leq(xp, x):
                        w = pre_cu_equiv(m, s, m.wrap(xp), m.wrap(x)).witness
                        expect(recheck.pre_cu_equiv_ok(m, xp, x, w["y"], w["z"]), ("pre_cu_equiv", xp, x))
            if good:
                for xp, y in itertools.product(m.elements(), repeat=2):
                    if m.leq(xp, x) and m.leq(x, m.omega(y)):
                        w = lhd_interpolate(m, m.wrap(xp), m.wrap(x), m.wrap(y)).witness
                        expect(recheck.lhd_interpolate_ok(m, xp, x, y, w["y_prime"], w["z"]), ("lhd", xp, x, y))
            if divisible:
                for k in (1, 2, 3):
                    v = div_soft_divisor(m, m.wrap(x), k)
                    expect(recheck.div_soft_divisor_ok(m, x, k, v.witness["y"]), ("divisor", x, k))
                    chain = basis_chain(m, x)
                    w = k_div_seq(m, k, chain).witness
                    expect(recheck.k_div_seq_ok(m, k, [x], w["y_prefix"], w["y_cycle"]), ("k_div_seq", x, k))
    zi = zero_inf()
    for x in zi.elements():
        y = div_soft_divisor(zi, zi.wrap(x), 5).witness["y"].value
        expect(zi.leq(zi.multiple(y, 5), x) and zi.leq(x, zi.omega(y)), ("5y <= x <= inf*y", x))
    j = to_table(CORPUS["join_square"])
    top = j.elem("top")
    w = k_div_seq(j, 3, ChainDescriptor.stabilizing([top, top])).witness
    expect(recheck.k_div_seq_ok(j, 3, [top, top], w["y_prefix"], w["y_cycle"]), "join square k=3")
    record(7, not failures, f"{checked} witnesses re-verified, {len(failures)} failures")


def _isomorphic_on(model, q, pool) -> bool:
    # payload-level projection; pool holds payloads
    images = [q._project(x) for x in pool]
    if len(set(images)) != len(pool):
        return False
    t = q.target
    for (a, fa), (b, fb) in itertools.product(zip(pool, images), repeat=2):
        if model.leq(a, b) != t.leq(fa, fb):
            return False
        if q._project(model.add(a, b)) != t.add(fa, fb):
            return False
    return True


def test_criterion_08_quotients():
    problems = []
    s = sierpinski()
    ideal = next(i for i in enumerate_ideals(s) if len(i.data) == 1)
    q = quotient(s, ideal)
    nb = NbarModel()
    grid = list(range(39)) + [INF]
    for a, b in itertools.product(grid, repeat=2):
        pa, pb = (a,), (b,)
        if q.target.leq(pa, pb) != nb.leq(a, b) or q.target.add(pa, pb) != (nb.add(a, b),):
            problems.append(("sierpinski", a, b))
        if q.target.way_below(pa, pb) != nb.way_below(a, b):
            problems.append(("sierpinski wb", a, b))
    for a in grid:
        if q.project((a, a)).value != (a,):
            problems.append(("surjective", a))
    for name, m in CORPUS.items():
        ideals = enumerate_ideals(m)
        pool = m.elements() if m.is_finite else m.candidates(2)
        if not _isomorphic_on(m, quotient(m, ideals[0]), pool):
            problems.append((name, "S/0"))
        top = quotient(m, ideals[-1]).target
        if (top.elements() if top.is_finite else top.candidates(2)) != [top.zero]:
            problems.append((name, "S/S"))
    record(8, not problems, f"Sierpinski quotient = nbar on {len(grid)}-element grid; S/0 and S/S on {len(CORPUS)} models; {problems or 'ok'}")


def test_criterion_09_enumeration_oracle():
    got = {n: count_models(n) for n in (1, 2, 3)}
    naive = {n: oracles.naive_models(n) for n in (1, 2, 3)}
    same = all({oracles.orbit(le, add) for le, add in enumerate_tables(n)} == naive[n] for n in (1, 2, 3))
    ok = same and got == {n: len(v) for n, v in naive.items()} and got[2] == 1
    record(9, ok, f"counts {got} match the naive oracle")


def _sweep(sizes, jobs: int) -> int:
    """Enumerate, classify and run the harness; returns the violation count."""
    violations = 0
    for size in sizes:
        for m in enumerate_models(size, jobs=jobs):
            classify_model(m)
            violations += len(verify(m).violations)
    return violations


def test_criterion_10_performance():
    start = time.perf_counter()
    v4 = _sweep(range(1, 5), jobs=1)
    t4 = time.perf_counter() - start
    start = time.perf_counter()
    v5 = _sweep([5], jobs=4)
    t5 = time.perf_counter() - start
    ok = v4 == 0 and v5 == 0 and t4 < SIZE4_SECONDS and t5 < SIZE5_SECONDS
    record(10, ok, f"size <= 4 sweep {t4:.1f}s ({v4} violations); size 5 with 4 jobs {t5:.1f}s ({v5} violations)")
