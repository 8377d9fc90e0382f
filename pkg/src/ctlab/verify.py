"""Theorem harness over (G, N normal in G, p in pi(G)) triples.

Checks the codegree theorem (no member of cod(G|N') divisible by p implies N
has a normal p-complement and is solvable), the three degree-set theorems it
generalizes, and traces the intermediate claims of its proof on concrete
instances.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence, TextIO

from .chartab import CharacterTable, IrreducibleEntry, character_table
from .chartools import (
    cd_set,
    constituents,
    det_order,
    induce,
    inner_product,
    irr_over,
    is_invariant,
    lin,
    restrict,
)
from .permgroup import (
    GroupLike,
    PermGroup,
    Subgroup,
    centralizer,
    derived_subgroup,
    is_solvable,
    o_p_residual,
    subgroup_in,
    sylow_subgroup,
)
from .structure import (
    NormalLattice,
    class_indices,
    has_normal_p_complement,
    normal_subgroups,
    theorem_A_hypothesis,
)

THEOREMS = ("A", "thompson", "berkovich", "isaacs-knutson")

CONFIRMED = "confirmed"
VACUOUS = "vacuous"
COUNTEREXAMPLE = "COUNTEREXAMPLE"


class Context:
    """Per-run caches of standalone groups, tables and lattices.

    Keys are the exact construction (degree and generator images), so a
    cached result never depends on which computation populated it.
    """

    def __init__(self):
        self._groups: dict[tuple, PermGroup] = {}
        self._tables: dict[tuple, CharacterTable] = {}
        self._lattices: dict[tuple, NormalLattice] = {}

    @staticmethod
    def _key(grp: PermGroup) -> tuple:
        return grp.degree, tuple(g.images for g in grp.generators)

    def group(self, H: GroupLike) -> PermGroup:
        if isinstance(H, PermGroup):
            return H
        key = (self._key(H.parent), H.members.tobytes())
        grp = self._groups.get(key)
        if grp is None:
            grp = H.as_group
            self._groups[key] = grp
        return grp

    def table(self, H: GroupLike) -> CharacterTable:
        grp = self.group(H)
        key = self._key(grp)
        tab = self._tables.get(key)
        if tab is None:
            tab = character_table(grp)
            self._tables[key] = tab
        return tab

    def lattice(self, H: GroupLike) -> NormalLattice:
        grp = self.group(H)
        key = self._key(grp)
        lat = self._lattices.get(key)
        if lat is None:
            lat = normal_subgroups(self.table(grp))
            self._lattices[key] = lat
        return lat

    def complement(self, N: GroupLike, p: int) -> Subgroup | None:
        """Normal p-complement of N as a subgroup of N's parent, or None."""
        found, K = has_normal_p_complement(self.group(N), p, tables=self.table)
        if not found:
            return None
        if isinstance(N, Subgroup):
            return subgroup_in(N.parent, K)
        return K


def n_identifier(N: Subgroup) -> dict:
    return {"order": N.order, "classes": list(class_indices(N))}


@dataclass
class VerificationReport:
    theorem: str
    group: str
    N: dict
    p: int
    hypothesis: bool
    complement_found: bool
    witness_order: int | None
    solvable: bool | None
    verdict: str
    timing_ms: float = 0.0
    n_nonabelian: bool = field(default=False, compare=False)

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "theorem": self.theorem,
            "group": self.group,
            "N": self.N,
            "p": self.p,
            "hypothesis": self.hypothesis,
            "complement_found": self.complement_found,
            "witness_order": self.witness_order,
            "solvable": self.solvable,
            "verdict": self.verdict,
        }
        if timing:
            d["timing_ms"] = round(self.timing_ms, 3)
        return d


def _verdict(hypothesis: bool, conclusion: bool) -> str:
    if not hypothesis:
        return VACUOUS
    return CONFIRMED if conclusion else COUNTEREXAMPLE


def _report(theorem, name, N, p, hyp, K, solvable, conclusion, t0) -> VerificationReport:
    return VerificationReport(
        theorem=theorem,
        group=name,
        N=n_identifier(N),
        p=p,
        hypothesis=hyp,
        complement_found=K is not None,
        witness_order=None if K is None else K.order,
        solvable=solvable,
        verdict=_verdict(hyp, conclusion),
        timing_ms=(time.perf_counter() - t0) * 1000,
        n_nonabelian=not N.is_abelian(),
    )


def check_theorem_A(table: CharacterTable, N: Subgroup, p: int, name: str = "G", ctx: Context | None = None) -> VerificationReport:
    ctx = ctx or Context()
    t0 = time.perf_counter()
    N = subgroup_in(table.group, N)
    hyp = theorem_A_hypothesis(table, N, p)
    K = ctx.complement(N, p)
    solv = is_solvable(N)
    return _report("A", name, N, p, hyp, K, solv, K is not None and solv, t0)


def check_thompson(table: CharacterTable, p: int, name: str = "G", ctx: Context | None = None) -> VerificationReport:
    """p divides every degree exceeding 1  =>  G has a normal p-complement."""
    ctx = ctx or Context()
    t0 = time.perf_counter()
    G = table.group.whole()
    hyp = all(d % p == 0 for d in cd_set(table) if d > 1)
    K = ctx.complement(G, p)
    return _report("thompson", name, G, p, hyp, K, None, K is not None, t0)


def check_berkovich(table: CharacterTable, N: Subgroup, p: int, name: str = "G", ctx: Context | None = None) -> VerificationReport:
    """p divides every nonlinear degree in Irr(G|N)  =>  N has a normal p-complement."""
    ctx = ctx or Context()
    t0 = time.perf_counter()
    N = subgroup_in(table.group, N)
    hyp = all(chi.degree % p == 0 for chi in irr_over(table, N) if chi.degree > 1)
    K = ctx.complement(N, p)
    return _report("berkovich", name, N, p, hyp, K, None, K is not None, t0)


def check_isaacs_knutson(table: CharacterTable, N: Subgroup, p: int, name: str = "G", ctx: Context | None = None) -> VerificationReport:
    """p divides every member of cd(G|N')  =>  N is solvable with a normal p-complement."""
    ctx = ctx or Context()
    t0 = time.perf_counter()
    N = subgroup_in(table.group, N)
    hyp = all(d % p == 0 for d in cd_set(table, derived_subgroup(N)))
    K = ctx.complement(N, p)
    solv = is_solvable(N)
    return _report("isaacs-knutson", name, N, p, hyp, K, solv, K is not None and solv, t0)


# -- proof tracing ---------------------------------------------------------


@dataclass
class StepRecord:
    step: int
    name: str
    applicable: bool
    holds: bool | None
    witness: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"step": self.step, "name": self.name, "applicable": self.applicable, "holds": self.holds, "witness": self.witness}


@dataclass
class ProofTrace:
    group: str
    N: dict
    p: int
    steps: list[StepRecord]

    @property
    def ok(self) -> bool:
        return all(s.holds for s in self.steps if s.applicable)

    def step(self, i: int) -> StepRecord:
        return next(s for s in self.steps if s.step == i)

    def to_dict(self) -> dict:
        return {"trace": True, "group": self.group, "N": self.N, "p": self.p, "steps": [s.to_dict() for s in self.steps]}


STEP_NAMES = {
    1: "sylow_intersection_normal",
    2: "invariant_nonprincipal_linear",
    3: "invariant_pprime_constituent",
    4: "det_order_coprime",
    5: "extension_exists",
    6: "pprime_constituent_of_induced",
    7: "glauberman_invariance",
    8: "fixed_point_free_solvable",
}


def _skip(i: int, reason: str) -> StepRecord:
    return StepRecord(i, STEP_NAMES[i], False, None, {"reason": reason})


def _invariant_under(theta: IrreducibleEntry, S: Subgroup) -> bool:
    return is_invariant(theta, S.generator_perms())


def _fixed_classes(M: PermGroup, S: Subgroup) -> int:
    """Classes of M mapped to themselves by conjugation with every generator of S."""
    cls = M.classes
    count = 0
    for t, r in enumerate(cls.reps):
        m = M.element(r)
        if all(int(cls.class_of[M.index(s.inverse() * m * s)]) == t for s in S.generator_perms()):
            count += 1
    return count


def trace_proof(table: CharacterTable, N: Subgroup, p: int, name: str = "G", ctx: Context | None = None) -> ProofTrace:
    ctx = ctx or Context()
    G = table.group
    N = subgroup_in(G, N)
    steps: list[StepRecord] = []

    # (1) M = O^p(N), P in Syl_p(M), S in Syl_p(G) containing P; P = S cap M normal in S
    M = o_p_residual(N, p)
    P = sylow_subgroup(M, p)
    S = sylow_subgroup(G.whole(), p, containing=P)
    holds = (S & M) == P and P.is_normalized_by(S.generators)
    steps.append(StepRecord(1, STEP_NAMES[1], True, holds, {"M": M.order, "P": P.order, "S": S.order}))

    if P.order == 1:
        for i in range(2, 7):
            steps.append(_skip(i, "P = 1"))
    else:
        steps.extend(_trace_complement_part(ctx, table, M, P, S, p))

    steps.extend(_trace_solvable_part(ctx, table, N, S, p))
    return ProofTrace(name, n_identifier(N), p, steps)


def _trace_complement_part(ctx, table, M, P, S, p) -> list[StepRecord]:
    out = []
    TP = ctx.table(P)
    lins = lin(TP)
    fixed = [lam for lam in lins if _invariant_under(lam, S)]
    nonprincipal = [lam for lam in fixed if not lam.is_trivial()]
    congruent = (len(lins) - len(fixed)) % p == 0
    out.append(
        StepRecord(
            2,
            STEP_NAMES[2],
            True,
            bool(nonprincipal) and congruent,
            {"lin": len(lins), "fixed": len(fixed), "lambda": nonprincipal[0].index if nonprincipal else None},
        )
    )
    if not nonprincipal:
        return out + [_skip(i, "no invariant lambda") for i in range(3, 7)]

    TM = ctx.table(M)
    # (3) every S-invariant nonprincipal lambda: lambda^M has an S-invariant p'-degree constituent
    alphas: dict[int, IrreducibleEntry] = {}
    each_has = True
    first_alpha = None
    for lam in nonprincipal:
        induced = induce(lam, TM)
        cands = [a for a, _ in constituents(induced) if a.degree % p and _invariant_under(a, S)]
        each_has &= bool(cands)
        for a in cands:
            alphas.setdefault(a.index, a)
        if first_alpha is None and cands:
            first_alpha = cands[0]
    out.append(
        StepRecord(
            3,
            STEP_NAMES[3],
            True,
            each_has,
            {"index_MP": M.order // P.order, "alpha_degree": None if first_alpha is None else first_alpha.degree, "candidates": len(alphas)},
        )
    )
    if not alphas:
        return out + [_skip(i, "no invariant alpha") for i in range(4, 7)]
    cands = [alphas[i] for i in sorted(alphas)]

    # (4) p does not divide o(alpha)
    orders = [det_order(a) for a in cands]
    out.append(StepRecord(4, STEP_NAMES[4], True, all(o % p for o in orders), {"det_orders": orders}))

    # (5) alpha extends to MS
    MS = M.join(S)
    TMS = ctx.table(MS)
    extensions = []
    for a in cands:
        beta = next((b for b in TMS if b.degree == a.degree and restrict(b, TM).equals(a)), None)
        extensions.append(beta)
    out.append(
        StepRecord(
            5,
            STEP_NAMES[5],
            True,
            all(b is not None for b in extensions),
            {"MS": MS.order, "beta_degrees": [None if b is None else b.degree for b in extensions]},
        )
    )
    betas = [b for b in extensions if b is not None]
    if not betas:
        return out + [_skip(6, "no extension")]

    # (6) beta^G has a p'-degree constituent; Frobenius reciprocity on the witness
    ok = True
    witness = None
    for beta in betas:
        induced = induce(beta, table)
        chis = [chi for chi, _ in constituents(induced) if chi.degree % p]
        if not chis:
            ok = False
            continue
        chi = chis[0]
        lhs = inner_product(induced, chi)
        rhs = inner_product(beta, restrict(chi, TMS))
        ok &= lhs == rhs
        if witness is None:
            witness = {"chi": chi.index, "chi_degree": chi.degree, "frobenius": [lhs, rhs]}
    out.append(StepRecord(6, STEP_NAMES[6], True, ok, witness or {}))
    return out


def _trace_solvable_part(ctx, table, N, S, p) -> list[StepRecord]:
    K = ctx.complement(N, p)
    if K is None:
        return [_skip(7, "N has no normal p-complement"), _skip(8, "N has no normal p-complement")]
    M = derived_subgroup(N) & K
    if M.order == 1:
        return [_skip(7, "N' cap K = 1"), _skip(8, "N' cap K = 1")]
    TM = ctx.table(M)
    invariant = [th for th in TM if _invariant_under(th, S)]
    all_inv = len(invariant) == len(TM)
    C = centralizer(M, S)
    kC = ctx.group(C).classes.k if C.order > 1 else 1
    claims = {
        # all characters invariant => S centralizes M
        "all_invariant_implies_central": (not all_inv) or C == M,
        # Brauer's permutation lemma
        "fixed_chars_eq_fixed_classes": len(invariant) == _fixed_classes(ctx.group(M), S),
        # coprime action: |Irr_S(M)| = k(C_M(S))
        "glauberman_count": len(invariant) == kC,
    }
    if theorem_A_hypothesis(table, N, p):
        claims["hypothesis_forces_trivial_centralizer"] = len(invariant) == 1 and C.order == 1
    witness = {"M": M.order, "invariant": len(invariant), "k": len(TM), "C_M_S": C.order, **claims}
    steps = [StepRecord(7, STEP_NAMES[7], True, all(claims.values()), witness)]
    if C.order == 1:
        steps.append(StepRecord(8, STEP_NAMES[8], True, is_solvable(M), {"M": M.order}))
    else:
        steps.append(_skip(8, "C_M(S) > 1"))
    return steps


# -- corpus runs -----------------------------------------------------------


@dataclass
class GroupResult:
    name: str
    records: list[dict]
    reports: list[VerificationReport]
    traces: list[ProofTrace]
    triples: int


def verify_group(
    name: str,
    G: PermGroup,
    which: Sequence[str] = THEOREMS,
    trace: bool = False,
    timing: bool = False,
    ctx: Context | None = None,
) -> GroupResult:
    ctx = ctx or Context()
    table = ctx.table(G)
    lattice = ctx.lattice(G)
    records: list[dict] = []
    reports: list[VerificationReport] = []
    traces: list[ProofTrace] = []
    triples = 0
    for N in lattice:
        for p in G.primes:
            triples += 1
            batch = []
            if "A" in which:
                batch.append(check_theorem_A(table, N, p, name, ctx))
            if "thompson" in which and N.order == G.order:
                batch.append(check_thompson(table, p, name, ctx))
            if "berkovich" in which:
                batch.append(check_berkovich(table, N, p, name, ctx))
            if "isaacs-knutson" in which:
                batch.append(check_isaacs_knutson(table, N, p, name, ctx))
            for r in batch:
                reports.append(r)
                records.append(r.to_dict(timing))
            if trace:
                tr = trace_proof(table, N, p, name, ctx)
                traces.append(tr)
                records.append(tr.to_dict())
    return GroupResult(name, records, reports, traces, triples)


def _verify_worker(args) -> GroupResult:
    name, gens, degree, which, trace, timing = args
    return verify_group(name, PermGroup(gens, degree), which, trace, timing)


def run_corpus(
    corpus: Iterable[tuple[str, PermGroup]],
    which: Sequence[str] = THEOREMS,
    sink: TextIO | None = None,
    trace: bool = False,
    timing: bool = False,
    jobs: int = 1,
) -> dict[str, Any]:
    """Run the checkers over every triple; write JSON Lines to ``sink``.

    Output order is corpus order, then N by lattice order, then p ascending,
    regardless of ``jobs``.
    """
    t0 = time.perf_counter()
    corpus = list(corpus)
    which = [w for w in THEOREMS if w in set(which)]
    if jobs > 1 and len(corpus) > 1:
        args = [(n, G.generators, G.degree, which, trace, timing) for n, G in corpus]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(_verify_worker, args)
            results = list(results)
    else:
        ctx = Context()
        results = []
        for n, G in corpus:
            results.append(verify_group(n, G, which, trace, timing, ctx))
    summary = {"triples": 0, "confirmed": 0, "vacuous": 0, "counterexamples": 0}
    trace_failures = 0
    for res in results:
        summary["triples"] += res.triples
        for r in res.reports:
            if r.verdict == CONFIRMED:
                summary["confirmed"] += 1
            elif r.verdict == VACUOUS:
                summary["vacuous"] += 1
            else:
                summary["counterexamples"] += 1
        trace_failures += sum(not t.ok for t in res.traces)
        if sink is not None:
            for rec in res.records:
                sink.write(json.dumps(rec, sort_keys=False, separators=(",", ":")) + "\n")
    if trace:
        summary["trace_failures"] = trace_failures
    summary["elapsed_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    summary["_results"] = results
    return summary


def public_summary(summary: dict) -> dict:
    return {k: v for k, v in summary.items() if not k.startswith("_")}


def nonabelian_confirmations(results: Iterable[GroupResult], theorem: str = "A") -> int:
    """Confirmed reports whose N is nonabelian (|N'| > 1)."""
    return sum(1 for res in results for r in res.reports if r.theorem == theorem and r.verdict == CONFIRMED and r.n_nonabelian)
