import io
import json

from conftest import corpus, group, table

from ctlab.permgroup import derived_subgroup
from ctlab.structure import normal_subgroups
from ctlab.verify import (
    CONFIRMED,
    COUNTEREXAMPLE,
    THEOREMS,
    VACUOUS,
    Context,
    check_berkovich,
    check_isaacs_knutson,
    check_theorem_A,
    check_thompson,
    nonabelian_confirmations,
    public_summary,
    run_corpus,
    trace_proof,
)

REPORT_FIELDS = ["theorem", "group", "N", "p", "hypothesis", "complement_found", "witness_order", "solvable", "verdict"]


def whole(name):
    return table(name).group.whole()


def sel(name, order, index=0):
    return normal_subgroups(table(name)).select(order, index)


# -- Theorem A ---------------------------------------------------------------------


def test_theorem_a_s3_two():
    # Irr(S3|A3) is the faithful character alone, cod 3, so p = 2 satisfies the hypothesis
    r = check_theorem_A(table("S3"), whole("S3"), 2)
    assert r.hypothesis and r.witness_order == 3 and r.solvable and r.verdict == CONFIRMED


def test_theorem_a_s3_three_is_vacuous():
    r = check_theorem_A(table("S3"), whole("S3"), 3)
    assert not r.hypothesis and r.verdict == VACUOUS


def test_theorem_a_a4_three():
    r = check_theorem_A(table("A4"), whole("A4"), 3)
    assert r.hypothesis and r.complement_found and r.witness_order == 4 and r.solvable
    assert r.verdict == CONFIRMED


def test_theorem_a_abelian_n():
    tab = table("S4")
    V4 = sel("S4", 4)
    for p in (2, 3):
        r = check_theorem_A(tab, V4, p)
        assert r.hypothesis and r.verdict == CONFIRMED


# -- degree-set theorems -------------------------------------------------------------


def test_thompson_examples():
    for p in (2, 3):
        r = check_thompson(table("C6"), p)
        assert r.hypothesis and r.complement_found
    r = check_thompson(table("Q8"), 2)
    assert r.hypothesis and r.witness_order == 1 and r.verdict == CONFIRMED
    r = check_thompson(table("S3"), 3)
    assert not r.hypothesis and r.verdict == VACUOUS
    assert r.solvable is None


def test_berkovich_examples():
    tab = table("S3")
    r = check_berkovich(tab, tab.group.trivial(), 2)
    assert r.hypothesis and r.witness_order == 1
    r = check_berkovich(tab, derived_subgroup(tab.group), 2)
    assert r.hypothesis and r.witness_order == 3 and r.verdict == CONFIRMED
    r = check_berkovich(table("A4"), sel("A4", 4), 3)
    assert r.hypothesis and r.witness_order == 4 and r.verdict == CONFIRMED


def test_isaacs_knutson_examples():
    r = check_isaacs_knutson(table("S4"), sel("S4", 4), 3)
    assert r.hypothesis and r.verdict == CONFIRMED
    # cd(S3|A3) = {2}: the sign character has A3 in its kernel
    r = check_isaacs_knutson(table("S3"), whole("S3"), 2)
    assert r.hypothesis and r.verdict == CONFIRMED
    r = check_isaacs_knutson(table("S3"), whole("S3"), 3)
    assert r.verdict == VACUOUS
    r = check_isaacs_knutson(table("Q8"), whole("Q8"), 2)
    assert r.hypothesis and r.witness_order == 1 and r.solvable and r.verdict == CONFIRMED


def test_verdict_rule():
    for name, G in corpus()[:20]:
        for N in normal_subgroups(table(name)):
            for p in G.primes:
                for r in (check_theorem_A(table(name), N, p), check_isaacs_knutson(table(name), N, p)):
                    assert (r.verdict == VACUOUS) == (not r.hypothesis)
                    assert (r.verdict == COUNTEREXAMPLE) == (r.hypothesis and not (r.complement_found and r.solvable))


def test_report_schema():
    r = check_theorem_A(table("S3"), whole("S3"), 2, name="S3")
    d = r.to_dict()
    assert list(d) == REPORT_FIELDS
    assert d["N"] == {"order": 6, "classes": [0, 1, 2]}
    assert "timing_ms" in r.to_dict(timing=True)


# -- proof traces ------------------------------------------------------------------------


def test_trace_s3_three():
    tr = trace_proof(table("S3"), whole("S3"), 3)
    s1, s2 = tr.step(1), tr.step(2)
    assert s1.holds and s1.witness == {"M": 6, "P": 3, "S": 3}
    assert s2.applicable and s2.holds and s2.witness["lin"] == 3 and s2.witness["fixed"] == 3
    assert tr.ok


def test_trace_p_not_dividing_n():
    tr = trace_proof(table("S4"), sel("S4", 4), 3)
    assert tr.step(1).witness["P"] == 1
    assert all(not tr.step(i).applicable for i in range(2, 7))
    assert tr.ok


def test_trace_s4_a4_two():
    tr = trace_proof(table("S4"), sel("S4", 12), 2)
    assert tr.step(1).witness == {"M": 12, "P": 4, "S": 8}
    for i in (1, 2, 3):
        assert tr.step(i).applicable and tr.step(i).holds
    assert tr.step(3).witness["alpha_degree"] == 3
    assert tr.ok


def test_trace_never_fails_on_corpus():
    s = run_corpus(corpus(), which=(), trace=True)
    assert s["trace_failures"] == 0
    steps = [st for res in s["_results"] for tr in res.traces for st in tr.steps]
    for i in range(1, 9):
        assert any(st.step == i and st.applicable for st in steps), i
    # orbit count behind the choice of an invariant lambda: |Lin(P)| = #fixed (mod p)
    for res in s["_results"]:
        for tr in res.traces:
            st = tr.step(2)
            if st.applicable:
                assert (st.witness["lin"] - st.witness["fixed"]) % tr.p == 0


def test_trace_invariance_side_of_step_seven_is_exercised():
    s = run_corpus(corpus(), which=(), trace=True)
    hits = [
        tr for res in s["_results"] for tr in res.traces
        if tr.step(7).applicable and tr.step(7).witness["invariant"] == tr.step(7).witness["k"]
        and tr.step(7).witness["M"] > 1
    ]
    assert hits
    assert all(tr.step(7).witness["C_M_S"] == tr.step(7).witness["M"] for tr in hits)


def test_trace_sl23_q8_three():
    tab = table("SL23")
    Q8 = sel("SL23", 8)
    w = trace_proof(tab, Q8, 3).step(7).witness
    assert w["M"] == 2 and w["invariant"] == w["k"] == 2 and w["C_M_S"] == 2


# -- corpus runs ----------------------------------------------------------------------


def test_empty_corpus_run():
    buf = io.StringIO()
    s = run_corpus([], THEOREMS, buf)
    assert public_summary(s)["triples"] == 0 and buf.getvalue() == ""
    assert set(public_summary(s)) == {"triples", "confirmed", "vacuous", "counterexamples", "elapsed_ms"}


def test_default_corpus_theorem_a():
    s = run_corpus(corpus(), ("A",))
    assert s["counterexamples"] == 0
    assert nonabelian_confirmations(s["_results"]) >= 20


def test_default_corpus_all_theorems_and_order():
    buf = io.StringIO()
    s = run_corpus(corpus(), THEOREMS, buf)
    assert s["counterexamples"] == 0
    recs = [json.loads(line) for line in buf.getvalue().splitlines()]
    assert len(recs) == s["confirmed"] + s["vacuous"]
    names = [n for n, _ in corpus()]
    keys = [(names.index(r["group"]), r["N"]["order"], r["N"]["classes"], r["p"]) for r in recs]
    assert keys == sorted(keys)


def test_parallel_run_emits_identical_stream():
    subset = [c for c in corpus() if c[1].order <= 24]
    a, b = io.StringIO(), io.StringIO()
    run_corpus(subset, THEOREMS, a, trace=True)
    run_corpus(subset, THEOREMS, b, trace=True, jobs=3)
    assert a.getvalue() == b.getvalue()


def test_context_reuses_tables():
    ctx = Context()
    N = sel("S4", 12)
    assert ctx.table(N) is ctx.table(N)
    assert ctx.table(group("S3")) is ctx.table(group("S3"))
