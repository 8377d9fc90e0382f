"""Normal subgroups from character kernels, normal p-complements, and the
codegree hypothesis."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .chartab import CharacterTable, character_table
from .chartools import cod_set
from .errors import InputError
from .exactnum import is_prime, p_part
from .permgroup import GroupLike, PermGroup, Subgroup, derived_subgroup, subgroup_in

TableProvider = Callable[[PermGroup], CharacterTable]


@dataclass
class NormalLattice:
    group: PermGroup
    members: list[Subgroup]
    containment: np.ndarray  # containment[a, b]: members[a] <= members[b]

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def of_order(self, n: int) -> list[Subgroup]:
        return [N for N in self.members if N.order == n]

    def select(self, order: int, index: int = 0) -> Subgroup:
        cands = self.of_order(order)
        if not 0 <= index < len(cands):
            raise InputError(f"no normal subgroup with order {order} and index {index}")
        return cands[index]

    def index_of(self, N: Subgroup) -> tuple[int, int]:
        """Selector (order, index-within-order) of a member."""
        same = self.of_order(N.order)
        for i, M in enumerate(same):
            if M == N:
                return N.order, i
        raise InputError("subgroup is not in the lattice")


def class_indices(N: Subgroup) -> tuple[int, ...]:
    """Class indices of the parent contained in a normal subgroup."""
    cls = N.parent.classes
    return tuple(sorted({int(c) for c in cls.class_of[N.members]}))


def _sort_key(N: Subgroup):
    return (N.order, class_indices(N))


def _lattice(G: PermGroup, members: list[Subgroup]) -> NormalLattice:
    members = sorted(members, key=_sort_key)
    n = len(members)
    cont = np.zeros((n, n), dtype=bool)
    for a in range(n):
        for b in range(n):
            cont[a, b] = members[a] <= members[b]
    return NormalLattice(G, members, cont)


def normal_subgroups(table: CharacterTable) -> NormalLattice:
    """All normal subgroups as intersections of irreducible kernels."""
    G = table.group
    cls = table.classes
    kernels = {frozenset(class_indices(chi.kernel)) for chi in table}
    closed = set(kernels)
    frontier = set(kernels)
    while frontier:
        new = set()
        for a in frontier:
            for b in closed:
                c = a & b
                if c not in closed:
                    new.add(c)
        closed |= new
        frontier = new
    members = []
    for cset in closed:
        mask = np.zeros(G.order, dtype=bool)
        for c in cset:
            mask[cls.members[c]] = True
        members.append(G.subgroup_from_mask(mask, check=False))
    return _lattice(G, members)


def normal_subgroups_bruteforce(G: PermGroup) -> NormalLattice:
    """Oracle: subgroups generated by every union of classes, kept if normal.

    Exponential in the class count; meant for small groups.
    """
    cls = G.classes
    found: dict[bytes, Subgroup] = {}
    for r in range(cls.k):
        for combo in itertools.combinations(range(1, cls.k), r):
            elems = np.concatenate([cls.members[c] for c in combo]) if combo else np.array([], dtype=np.int64)
            H = G.subgroup_from_mask(G.generated_mask(elems), check=False)
            if H.is_normal_in_parent:
                found.setdefault(H.members.tobytes(), H)
    return _lattice(G, list(found.values()))


def _default_tables(H: PermGroup) -> CharacterTable:
    return character_table(H)


def has_normal_p_complement(
    N: GroupLike, p: int, tables: TableProvider = _default_tables
) -> tuple[bool, Subgroup | None]:
    """Whether N has a normal subgroup of order |N|_{p'}; returns the witness.

    N is treated as a group in its own right; the witness is a subgroup of
    N's standalone realization.
    """
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    H = N if isinstance(N, PermGroup) else N.as_group
    target = H.order // p_part(H.order, p)
    lattice = normal_subgroups(tables(H))
    for K in lattice.of_order(target):
        if not K.is_normal_in_parent or K.order % p == 0 or p_part(H.order // K.order, p) != H.order // K.order:
            raise AssertionError("normal p-complement witness fails its invariants")
        return True, K
    return False, None


def theorem_A_hypothesis(table: CharacterTable, N: GroupLike, p: int) -> bool:
    """No member of cod(G|N') is divisible by p."""
    G = table.group
    if p not in G.primes:
        raise InputError(f"{p} does not divide |G| = {G.order}")
    N = subgroup_in(G, N)
    if not N.is_normal_in_parent:
        raise InputError("N is not normal in G")
    Nd = derived_subgroup(N)
    return all(c % p for c in cod_set(table, Nd))
