"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line.

The lines are printed as they are produced (visible with ``-s``) and again
in the terminal summary by the hook in conftest.py.
"""

import io
import subprocess
import sys
import time

import numpy as np
import pytest
from conftest import corpus, group, table
from reference_tables import REFERENCE, computed_rows, reference_rows

from ctlab.chartab import character_table
from ctlab.chartools import (
    cod_set,
    det_order,
    det_order_newton,
    induce,
    inner_product,
    restrict,
)
from ctlab.exactnum import canonical, cyclic_product, embed, negate_exponents
from ctlab.permgroup import derived_subgroup, o_p_residual, sylow_subgroup
from ctlab.structure import normal_subgroups, normal_subgroups_bruteforce
from ctlab.verify import (
    COUNTEREXAMPLE,
    THEOREMS,
    Context,
    nonabelian_confirmations,
    run_corpus,
    trace_proof,
)

RESULTS: dict[str, list[tuple[bool, str]]] = {}


def record(criterion: str, ok: bool, detail: str) -> None:
    RESULTS.setdefault(criterion, []).append((ok, detail))
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} ({detail})")


def summary_lines() -> list[str]:
    out = []
    for c in sorted(RESULTS, key=int):
        parts = RESULTS[c]
        ok = all(p[0] for p in parts)
        out.append(f"criterion {c}: {'PASS' if ok else 'FAIL'} ({'; '.join(p[1] for p in parts)})")
    return out


# -- 1. orthogonality and degree identities ----------------------------------------


def _scaled_sum(terms, E):
    acc = np.zeros(E, dtype=np.int64)
    for weight, x, y in terms:
        e = int(np.lcm(x.order, y.order))
        prod = cyclic_product(embed(x.mults, x.order, e), negate_exponents(embed(y.mults, y.order, e)))
        acc += weight * embed(prod, e, E)
    return canonical(acc, E)


def _integer(n, E):
    return canonical(embed([n], 1, E), E)


def _table_identities(tab) -> list[str]:
    G, cls = tab.group, tab.classes
    E = G.exponent
    bad = []
    for a in tab:
        for b in tab:
            got = _scaled_sum([(int(cls.sizes[t]), a.values[t], b.values[t]) for t in range(cls.k)], E)
            if got != _integer(G.order * (a.index == b.index), E):
                bad.append(f"row orthogonality X.{a.index},X.{b.index}")
    for s in range(cls.k):
        for t in range(cls.k):
            got = _scaled_sum([(1, chi.values[s], chi.values[t]) for chi in tab], E)
            if got != _integer(G.order // int(cls.sizes[s]) if s == t else 0, E):
                bad.append(f"column orthogonality {s},{t}")
    degs = tab.degrees
    if len(tab) != cls.k:
        bad.append("row count")
    if sum(d * d for d in degs) != G.order:
        bad.append("sum of squared degrees")
    if any(G.order % d for d in degs):
        bad.append("degree divisibility")
    if degs.count(1) != G.order // derived_subgroup(G).order:
        bad.append("linear character count")
    return bad


def test_criterion_1_orthogonality_and_degrees():
    t0 = time.perf_counter()
    failures = []
    for name, G in corpus():
        failures += [f"{name}: {b}" for b in _table_identities(character_table(G))]
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 10
    record("1", ok, f"{len(corpus())} groups, {len(failures)} failures, {elapsed:.2f}s of 10s")
    assert not failures, failures[:5]
    assert elapsed < 10


# -- 2. reference tables ---------------------------------------------------------------


def test_criterion_2_reference_tables():
    mismatched = [name for name in REFERENCE if computed_rows(table(name), REFERENCE[name]["columns"]) != reference_rows(name)]
    record("2", not mismatched, f"{len(REFERENCE) - len(mismatched)}/{len(REFERENCE)} tables match")
    assert not mismatched


# -- 3. codegree oracle -------------------------------------------------------------------


def test_criterion_3_codegree_oracle():
    checks = {
        "cod(S3) = {1,2,3}": {chi.codegree for chi in table("S3")} == {1, 2, 3},
        "cod(Q8) = {1,2,4}": {chi.codegree for chi in table("Q8")} == {1, 2, 4},
        "cod(A4) contains 4": 4 in {chi.codegree for chi in table("A4")},
        "cod(A4|V4) = {4}": cod_set(table("A4"), derived_subgroup(group("A4"))) == {4},
    }
    bad = [k for k, v in checks.items() if not v]
    record("3", not bad, f"{len(checks) - len(bad)}/{len(checks)} sub-claims hold")
    assert not bad


@pytest.mark.xfail(strict=True, reason="stated value contradicts the Irr(G|N) definition; see decisions ledger")
def test_criterion_3_s3_over_a3_stated_value():
    got = cod_set(table("S3"), derived_subgroup(group("S3")))
    record("3", got == {2, 3}, f"cod(S3|A3) = {sorted(got)}, stated [2, 3]")
    assert got == {2, 3}


# -- 4. normal subgroups ------------------------------------------------------------------


def test_criterion_4_normal_subgroup_oracle():
    t0 = time.perf_counter()
    small = [(n, G) for n, G in corpus() if G.order <= 48]
    mismatched = []
    for name, G in small:
        fast = {N.members.tobytes() for N in normal_subgroups(table(name))}
        slow = {N.members.tobytes() for N in normal_subgroups_bruteforce(G)}
        if fast != slow:
            mismatched.append(name)
    s4 = normal_subgroups(table("S4"))
    s4_orders = sorted(N.order for N in s4)
    s4_ok = s4_orders == [1, 4, 12, 24] and all(N.is_normal_in_parent for N in s4)
    A4 = derived_subgroup(group("S4"))
    s4_ok = s4_ok and A4 in list(s4) and derived_subgroup(A4) in list(s4)
    elapsed = time.perf_counter() - t0
    ok = not mismatched and s4_ok and elapsed < 60
    record("4", ok, f"{len(small)} groups, mismatches {mismatched}, S4 orders {s4_orders}, {elapsed:.2f}s of 60s")
    assert not mismatched and s4_ok and elapsed < 60


# -- 5, 6. corpus runs ---------------------------------------------------------------


@pytest.fixture(scope="module")
def all_theorems_run():
    return run_corpus(corpus(), THEOREMS, sink=io.StringIO(), jobs=1)


def test_criterion_5_theorem_a_corpus_run():
    t0 = time.perf_counter()
    summary = run_corpus(corpus(), ("A",), sink=io.StringIO(), jobs=1)
    elapsed = time.perf_counter() - t0
    nonab = nonabelian_confirmations(summary["_results"], "A")
    ok = summary["counterexamples"] == 0 and nonab >= 20 and elapsed < 300
    record(
        "5",
        ok,
        f"{summary['triples']} triples, {summary['counterexamples']} counterexamples, "
        f"{nonab} nonabelian confirmations (need 20), {elapsed:.2f}s of 300s",
    )
    assert summary["counterexamples"] == 0
    assert nonab >= 20
    assert elapsed < 300


def test_criterion_6_corollary_runs(all_theorems_run):
    summary = all_theorems_run
    counts = {t: 0 for t in ("thompson", "berkovich", "isaacs-knutson")}
    seen = dict(counts)
    for res in summary["_results"]:
        for r in res.reports:
            if r.theorem in counts:
                seen[r.theorem] += 1
                counts[r.theorem] += r.verdict == COUNTEREXAMPLE
    ok = not any(counts.values()) and all(seen.values())
    record("6", ok, ", ".join(f"{t}: {seen[t]} reports, {counts[t]} counterexamples" for t in counts))
    assert ok


# -- 7. proof traces, det claim, Frobenius reciprocity --------------------------------------


def test_criterion_7_proof_traces():
    ctx = Context()
    failed, traced, applicable = [], 0, 0
    for name, G in corpus():
        tab = ctx.table(G)
        for N in ctx.lattice(G):
            for p in G.primes:
                tr = trace_proof(tab, N, p, name, ctx)
                traced += 1
                applicable += sum(s.applicable for s in tr.steps)
                failed += [f"{name} |N|={N.order} p={p} step {s.step}" for s in tr.steps if s.applicable and not s.holds]

    det_bad, det_checked = [], 0
    for name, G in corpus():
        for N in ctx.lattice(G):
            for p in G.primes:
                M = o_p_residual(N, p)
                MT = ctx.table(M)
                det_checked += len(MT)
                det_bad += [name for alpha in MT if det_order(alpha) % p == 0]

    frob_bad, pairs = [], 0
    for name, G in corpus():
        if G.order > 200:
            continue
        tab = ctx.table(G)
        subs = {H.members.tobytes(): H for H in list(ctx.lattice(G)) + [sylow_subgroup(G, p) for p in G.primes]}
        for H in subs.values():
            TH = ctx.table(H)
            pairs += 1
            for theta in TH:
                ind = induce(theta, tab)
                for chi in tab:
                    if inner_product(ind, chi) != inner_product(theta, restrict(chi, TH)):
                        frob_bad.append(f"{name} |H|={H.order}")

    ok = not failed and not det_bad and not frob_bad
    record(
        "7",
        ok,
        f"{traced} traces, {applicable} applicable steps, {len(failed)} failed; "
        f"det claim on {det_checked} characters, {len(det_bad)} failed; "
        f"Frobenius on {pairs} (H <= G) pairs, {len(frob_bad)} failed",
    )
    assert not failed, failed[:5]
    assert not det_bad, det_bad[:5]
    assert not frob_bad, frob_bad[:5]


# -- 8. det routes -----------------------------------------------------------------


def test_criterion_8_det_order_routes():
    bad, n = [], 0
    for name, G in corpus():
        if G.order > 24:
            continue
        for chi in table(name):
            n += 1
            if det_order(chi) != det_order_newton(chi):
                bad.append(f"{name} X.{chi.index}")
    record("8", not bad, f"{n} characters, {len(bad)} disagreements")
    assert not bad


# -- 9. determinism ---------------------------------------------------------------


def test_criterion_9_byte_identical_runs():
    cmd = [sys.executable, "-m", "ctlab", "verify", "--theorem", "all"]
    runs = [subprocess.run(cmd, capture_output=True, check=False) for _ in range(2)]
    codes = [r.returncode for r in runs]
    same = runs[0].stdout == runs[1].stdout
    ok = same and codes == [0, 0] and len(runs[0].stdout) > 0
    lines = runs[0].stdout.count(b"\n")
    record("9", ok, f"{lines} lines, identical={same}, exit codes {codes}")
    assert ok
