"""Character functionals: kernels, codegrees, Irr(G|N), induction, restriction,
inner products, invariance under conjugation, determinants.

Values across a subgroup boundary are matched by looking up the subgroup's
class representatives (as permutations) in the larger group; both groups act
on the same points.
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

import numpy as np

from .chartab import ClassFunction, IrreducibleEntry
from .errors import ConsistencyError, InputError
from .exactnum import (
    CyclotomicValue,
    canonical,
    cyclic_product,
    cyclotomic_polynomial,
    embed,
    negate_exponents,
)
from .permgroup import GroupLike, PermGroup, Permutation, Subgroup, subgroup_in

if TYPE_CHECKING:
    from .chartab import CharacterTable

__all__ = [
    "ClassFunction",
    "kernel",
    "codegree",
    "irr_over",
    "cod_set",
    "cod_multiset",
    "cd_set",
    "lin",
    "restrict",
    "induce",
    "inner_product",
    "constituents",
    "is_invariant",
    "det_character",
    "det_order",
    "det_order_newton",
    "fusion",
    "trivial_character",
]


def kernel(chi: IrreducibleEntry) -> Subgroup:
    G = chi.group
    cls = chi.table.classes
    mask = np.zeros(G.order, dtype=bool)
    for t, v in enumerate(chi.values):
        if v.is_identity_eigenvalues():
            mask[cls.members[t]] = True
    return G.subgroup_from_mask(mask, check=False)


def codegree(chi: IrreducibleEntry) -> int:
    index = chi.group.order // chi.kernel.order
    if index % chi.degree:
        raise ConsistencyError(f"|G:ker chi| = {index} not divisible by chi(1) = {chi.degree}")
    return index // chi.degree


def _normal_in(table: "CharacterTable", N: GroupLike) -> Subgroup:
    N = subgroup_in(table.group, N)
    if not N.is_normal_in_parent:
        raise InputError("subgroup is not normal in the group")
    return N


def irr_over(table: "CharacterTable", N: GroupLike) -> list[IrreducibleEntry]:
    """Irr(G|N): rows whose kernel does not contain N."""
    N = _normal_in(table, N)
    return [chi for chi in table if not N <= chi.kernel]


def cod_set(table: "CharacterTable", N: GroupLike) -> set[int]:
    return {chi.codegree for chi in irr_over(table, N)}


def cod_multiset(table: "CharacterTable", N: GroupLike) -> list[int]:
    return sorted(chi.codegree for chi in irr_over(table, N))


def cd_set(table: "CharacterTable", N: GroupLike | None = None) -> set[int]:
    """cd(G), or cd(G|N) when N is given."""
    rows = table.rows if N is None else irr_over(table, N)
    return {chi.degree for chi in rows}


def lin(table: "CharacterTable") -> list[IrreducibleEntry]:
    return [chi for chi in table if chi.degree == 1]


def trivial_character(table: "CharacterTable") -> ClassFunction:
    cls = table.classes
    return ClassFunction(table, [CyclotomicValue.integer(1, e) for e in cls.element_orders])


def fusion(sub: "CharacterTable", table: "CharacterTable") -> list[int]:
    """Class of ``table.group`` containing each class representative of ``sub``."""
    H, G = sub.group, table.group
    reps = H.perms[list(sub.classes.reps)]
    try:
        idx = G.lookup(reps)
    except (ConsistencyError, KeyError):
        raise InputError("group is not a subgroup of the target group") from None
    return [int(table.classes.class_of[i]) for i in idx]


def restrict(chi: ClassFunction, sub: "CharacterTable") -> ClassFunction:
    f = fusion(sub, chi.table)
    return ClassFunction(sub, [chi.values[t] for t in f])


def induce(theta: ClassFunction, table: "CharacterTable") -> ClassFunction:
    """theta^G(g) = |C_G(g)| * sum over H-classes h in g^G of theta(h)/|C_H(h)|."""
    sub = theta.table
    H, G = sub.group, table.group
    if G.order % H.order:
        raise InputError("subgroup order does not divide group order")
    f = fusion(sub, table)
    cls = table.classes
    acc = [np.zeros(e, dtype=np.int64) for e in cls.element_orders]
    for s, t in enumerate(f):
        cg = G.order // cls.sizes[t]
        ch = H.order // sub.classes.sizes[s]
        if cg % ch:
            raise ConsistencyError("centralizer orders are not compatible")
        acc[t] += np.asarray(theta.values[s].mults, dtype=np.int64) * (cg // ch)
    out = ClassFunction(table, [CyclotomicValue(len(a), tuple(a)) for a in acc])
    if not out.values[0].equals(theta.values[0] * (G.order // H.order)):
        raise ConsistencyError("induced degree is not theta(1) * |G:H|")
    return out


def inner_product(a: ClassFunction, b: ClassFunction) -> int:
    """(1/|G|) sum_t |C_t| a(g_t) conj(b(g_t)), exact."""
    if a.table is not b.table:
        raise InputError("class functions live on different tables")
    G = a.group
    cls = a.table.classes
    E = G.exponent
    total = np.zeros(E, dtype=np.int64)
    for t in range(cls.k):
        x, y = a.values[t], b.values[t]
        e = cls.element_orders[t]
        prod = cyclic_product(embed(x.mults, x.order, e), negate_exponents(embed(y.mults, y.order, e)))
        total += cls.sizes[t] * embed(prod, e, E)
    c = canonical(total, E)
    if any(c[1:]) or c[0] % G.order:
        raise InputError("inner product is not an integer; inputs are not virtual characters")
    return c[0] // G.order


def constituents(phi: ClassFunction) -> list[tuple[IrreducibleEntry, int]]:
    out = []
    total = 0
    for chi in phi.table:
        m = inner_product(phi, chi)
        if m < 0:
            raise InputError("negative multiplicity: not a character")
        if m:
            out.append((chi, m))
            total += m * chi.degree
    if total != phi.degree:
        raise ConsistencyError("constituent degrees do not add up")
    return out


def _conjugator_perms(S) -> list[Permutation]:
    if isinstance(S, PermGroup):
        return list(S.generators)
    if isinstance(S, Subgroup):
        return S.generator_perms()
    return list(S)


def is_invariant(theta: ClassFunction, S) -> bool:
    """theta(s**-1 m s) == theta(m) for all generators s of S and class reps m.

    ``S`` may be a PermGroup, a Subgroup, or a list of Permutations acting on
    the same points as theta's group.
    """
    M = theta.group
    cls = theta.table.classes
    gens = _conjugator_perms(S)
    for s in gens:
        sinv = s.inverse()
        for g in M.generators:
            if not M.contains(sinv * g * s):
                raise InputError("conjugating group does not normalize the subgroup")
    for s in gens:
        sinv = s.inverse()
        for t, r in enumerate(cls.reps):
            m = M.element(r)
            u = int(cls.class_of[M.index(sinv * m * s)])
            if u != t and not theta.values[u].equals(theta.values[t]):
                return False
    return True


def _det_exponents(chi: ClassFunction) -> list[int]:
    return [sum(j * m for j, m in enumerate(v.mults)) % v.order for v in chi.values]


def det_character(chi: IrreducibleEntry) -> IrreducibleEntry:
    """det chi as the matching linear row of the table."""
    exps = _det_exponents(chi)
    for lam in lin(chi.table):
        if all(v.mults[s] == 1 for v, s in zip(lam.values, exps)):
            return lam
    raise ConsistencyError("det chi matches no linear character")


def det_order(chi: IrreducibleEntry) -> int:
    det_character(chi)
    exps = _det_exponents(chi)
    return math.lcm(*(v.order // math.gcd(v.order, s) for v, s in zip(chi.values, exps)))


def _canon_mul(a: tuple[int, ...], b: tuple[int, ...], e: int) -> tuple[int, ...]:
    pad = np.zeros(e, dtype=np.int64)
    qa, qb = pad.copy(), pad.copy()
    qa[: len(a)] = a
    qb[: len(b)] = b
    return canonical(cyclic_product(qa, qb), e)


def det_order_newton(chi: ClassFunction) -> int:
    """o(chi) from power sums chi(g**k) via Newton's identities.

    Independent of the eigenvalue multiplicities except through the values
    chi(g**k) themselves, compared as complex numbers.
    """
    cls = chi.table.classes
    n = chi.degree
    order = 1
    for t in range(cls.k):
        e = cls.element_orders[t]
        width = len(cyclotomic_polynomial(e)) - 1
        p = [None] + [
            canonical(embed(chi.values[cls.power(t, k)].mults, chi.values[cls.power(t, k)].order, e), e)
            for k in range(1, n + 1)
        ]
        one = (1,) + (0,) * (width - 1)
        el = [one]
        for k in range(1, n + 1):
            acc = np.zeros(width, dtype=np.int64)
            for i in range(1, k + 1):
                term = np.asarray(_canon_mul(el[k - i], p[i], e), dtype=np.int64)
                acc += term if i % 2 else -term
            if np.any(acc % k):
                raise ConsistencyError("Newton identity produced a non-integral coefficient")
            el.append(tuple(int(x) for x in acc // k))
        det = el[n]
        s = next((s for s in range(e) if CyclotomicValue.root(s, e).canonical() == det), None)
        if s is None:
            raise ConsistencyError("determinant is not a root of unity")
        order = math.lcm(order, e // math.gcd(e, s))
    return order
