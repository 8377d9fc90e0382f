"""Permutation groups by full element enumeration.

Conventions: points are 0-based, a product ``x * y`` means "apply x, then y",
so ``(x * y)[i] == y[x[i]]``, and conjugation is ``x ** g == g**-1 * x * g``.
Every group keeps its elements as rows of an integer array in breadth-first
order from the identity (index 0). Subgroups are boolean masks over the
parent's element indices.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

from . import kernels
from .errors import ConsistencyError, InputError, ResourceError
from .exactnum import is_prime, p_part, prime_divisors


@dataclass
class Caps:
    max_degree: int = 64
    max_order: int = 100_000

    @classmethod
    def from_env(cls) -> "Caps":
        caps = cls()
        if os.environ.get("CTLAB_MAX_DEGREE"):
            caps.max_degree = int(os.environ["CTLAB_MAX_DEGREE"])
        if os.environ.get("CTLAB_MAX_ORDER"):
            caps.max_order = int(os.environ["CTLAB_MAX_ORDER"])
        return caps


CAPS = Caps.from_env()


class Permutation:
    """A bijection of {0, ..., degree-1} stored as its image list."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise InputError(f"not a permutation: {images}")
        self.images = images

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int, one_based: bool = True) -> "Permutation":
        img = list(range(degree))
        seen: set[int] = set()
        off = 1 if one_based else 0
        for cyc in cycles:
            pts = [int(c) - off for c in cyc]
            for q in pts:
                if not 0 <= q < degree:
                    raise InputError(f"point {q + off} outside 1..{degree}" if one_based else f"point {q} out of range")
                if q in seen:
                    raise InputError(f"point {q + off} repeated in cycle notation")
                seen.add(q)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                img[a] = b
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(other.images[i] for i in self.images)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        out = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 0-based."""
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths (including fixed points) in decreasing order."""
        lengths = [len(c) for c in self.cycles()]
        fixed = self.degree - sum(lengths)
        return tuple(sorted(lengths, reverse=True)) + (1,) * fixed

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(c + 1) for c in cy) + ")" for cy in cyc)

    def __repr__(self):
        return f"Permutation({str(self)})"


@dataclass(frozen=True)
class ConjugacyClassData:
    k: int
    reps: tuple[int, ...]
    sizes: tuple[int, ...]
    class_of: np.ndarray
    members: tuple[np.ndarray, ...]
    element_orders: tuple[int, ...]
    powers: tuple[tuple[int, ...], ...]  # powers[i][m] = class of rep_i ** m, m < order
    inverse_class: tuple[int, ...]

    def power(self, i: int, m: int) -> int:
        return self.powers[i][m % self.element_orders[i]]

    def centralizer_order(self, group_order: int, i: int) -> int:
        return group_order // self.sizes[i]


class PermGroup:
    """A finite permutation group with all elements enumerated."""

    def __init__(self, generators: Sequence[Permutation], degree: int, *, max_order: int | None = None):
        if degree < 1:
            raise InputError("degree must be at least 1")
        if degree > CAPS.max_degree:
            raise ResourceError(f"degree {degree} exceeds the degree cap {CAPS.max_degree}")
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.degree != degree:
                raise InputError(f"generator {g} has degree {g.degree}, expected {degree}")
            gens.append(g)
        self.degree = degree
        self.generators = tuple(gens)
        cap = CAPS.max_order if max_order is None else max_order
        self.perms = _enumerate(self.generators, degree, cap)
        self.perms.setflags(write=False)
        self.order = len(self.perms)
        self.primes = tuple(prime_divisors(self.order))
        self._setup_lookup()
        self._right: dict[int, np.ndarray] = {}
        self._left: dict[int, np.ndarray] = {}
        self._conj: dict[int, np.ndarray] = {}

    # -- lookup ---------------------------------------------------------

    def _setup_lookup(self) -> None:
        rows = self.perms.astype(np.int64)
        base: list[int] = []
        distinct = 1
        # greedy base: points whose images separate all elements
        for pt in range(self.degree):
            if distinct == self.order:
                break
            cnt = len(np.unique(rows[:, base + [pt]], axis=0))
            if cnt > distinct:
                base.append(pt)
                distinct = cnt
        self.base = tuple(base)
        self._wide = self.degree ** max(1, len(base)) >= 2**62
        if self._wide:
            self._dict = {tuple(r): i for i, r in enumerate(rows[:, base].tolist())}
        else:
            k = self._encode(rows)
            order = np.argsort(k, kind="stable")
            self._sorted_keys = k[order]
            self._sorted_idx = order

    def _encode(self, rows: np.ndarray) -> np.ndarray:
        k = np.zeros(len(rows), dtype=np.int64)
        for pt in self.base:
            k = k * self.degree + rows[:, pt].astype(np.int64)
        return k

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        """Element indices of the permutations given as rows (must be members)."""
        rows = np.asarray(rows)
        if rows.ndim == 1:
            rows = rows[None, :]
        if self._wide:
            idx = np.array([self._dict[tuple(r)] for r in rows[:, list(self.base)].tolist()], dtype=np.int64)
        else:
            keys = self._encode(rows)
            pos = np.searchsorted(self._sorted_keys, keys)
            pos = np.minimum(pos, self.order - 1)
            if not np.array_equal(self._sorted_keys[pos], keys):
                raise ConsistencyError("permutation is not an element of the group")
            idx = self._sorted_idx[pos]
        if not np.array_equal(self.perms[idx], rows):
            raise ConsistencyError("permutation is not an element of the group")
        return idx

    def contains(self, perm: Permutation) -> bool:
        if perm.degree != self.degree:
            return False
        try:
            self.lookup(np.array(perm.images))
        except (ConsistencyError, KeyError):
            return False
        return True

    def index(self, perm: Permutation) -> int:
        try:
            return int(self.lookup(np.array(perm.images))[0])
        except KeyError:
            raise ConsistencyError("permutation is not an element of the group") from None

    def element(self, i: int) -> Permutation:
        return Permutation(self.perms[i].tolist())

    @property
    def elements(self) -> list[Permutation]:
        return [self.element(i) for i in range(self.order)]

    @cached_property
    def key(self) -> bytes:
        """Fingerprint of the element set (independent of generators)."""
        rows = self.perms.astype(np.int16)
        order = np.lexsort(rows.T[::-1])
        return self.degree.to_bytes(2, "little") + rows[order].tobytes()

    # -- element arithmetic ---------------------------------------------

    @cached_property
    def inverse(self) -> np.ndarray:
        inv_rows = np.argsort(self.perms, axis=1)
        return self.lookup(inv_rows)

    @cached_property
    def element_orders(self) -> np.ndarray:
        rows = self.perms.astype(np.int64)
        ident = np.arange(self.degree)
        pos = rows.copy()
        length = np.zeros_like(rows)
        for t in range(1, self.degree + 1):
            hit = (pos == ident) & (length == 0)
            length[hit] = t
            pos = np.take_along_axis(rows, pos, axis=1)
        return np.lcm.reduce(length, axis=1)

    @cached_property
    def exponent(self) -> int:
        return int(np.lcm.reduce(self.element_orders)) if self.order > 1 else 1

    def mul(self, a: int, b: int) -> int:
        return int(self.right_action(b)[a])

    def right_action(self, g: int) -> np.ndarray:
        """x -> x * g on element indices."""
        act = self._right.get(g)
        if act is None:
            act = self.lookup(self.perms[g][self.perms])
            self._right[g] = act
        return act

    def left_action(self, g: int) -> np.ndarray:
        """x -> g * x on element indices."""
        act = self._left.get(g)
        if act is None:
            act = self.lookup(np.take_along_axis(self.perms, np.broadcast_to(self.perms[g], self.perms.shape), axis=1))
            self._left[g] = act
        return act

    def conj_action(self, g: int) -> np.ndarray:
        """x -> g**-1 * x * g on element indices."""
        act = self._conj.get(g)
        if act is None:
            act = self.right_action(g)[self.left_action(int(self.inverse[g]))]
            self._conj[g] = act
        return act

    def conjugates(self, x: int) -> np.ndarray:
        """g -> g**-1 * x * g for every element g."""
        inv_rows = self.perms[self.inverse]
        tmp = self.perms[x][inv_rows]  # x[g^-1[i]]
        rows = np.take_along_axis(self.perms, tmp, axis=1)
        return self.lookup(rows)

    def generator_indices(self) -> tuple[int, ...]:
        return tuple(self.index(g) for g in self.generators)

    # -- subgroups ------------------------------------------------------

    def closure_mask(self, gens: Iterable[int]) -> np.ndarray:
        gens = list(dict.fromkeys(int(g) for g in gens))
        if not gens:
            mask = np.zeros(self.order, dtype=bool)
            mask[0] = True
            return mask
        acts = np.stack([self.right_action(g) for g in gens])
        return kernels.closure(acts, np.array([0], dtype=np.int64))

    def generated_mask(self, elements: Iterable[int]) -> np.ndarray:
        """Closure of a possibly large element list, adding generators greedily."""
        gens: list[int] = []
        mask = self.closure_mask(())
        for x in elements:
            if not mask[x]:
                gens.append(int(x))
                mask = self.closure_mask(gens)
        return mask

    def subgroup(self, gens: Iterable[int]) -> "Subgroup":
        return Subgroup(self, self.closure_mask(gens))

    def subgroup_from_mask(self, mask: np.ndarray, check: bool = True) -> "Subgroup":
        return Subgroup(self, np.asarray(mask, dtype=bool), check=check)

    def whole(self) -> "Subgroup":
        return Subgroup(self, np.ones(self.order, dtype=bool), check=False)

    def trivial(self) -> "Subgroup":
        m = np.zeros(self.order, dtype=bool)
        m[0] = True
        return Subgroup(self, m, check=False)

    @cached_property
    def classes(self) -> ConjugacyClassData:
        return _conjugacy_classes(self)

    def is_abelian(self) -> bool:
        gens = self.generator_indices()
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)

    def __repr__(self):
        return f"PermGroup(order={self.order}, degree={self.degree})"


def _enumerate(gens: Sequence[Permutation], degree: int, cap: int) -> np.ndarray:
    dtype = np.int16
    ident = np.arange(degree, dtype=dtype)
    rows = [ident]
    seen = {ident.tobytes(): 0}
    garr = [np.array(g.images, dtype=dtype) for g in gens]
    frontier = ident[None, :]
    while len(frontier):
        nxt = []
        for g in garr:
            prod = g[frontier]
            for r in prod:
                b = r.tobytes()
                if b not in seen:
                    seen[b] = len(rows)
                    rows.append(r)
                    nxt.append(r)
                    if len(rows) > cap:
                        raise ResourceError(f"group order exceeds the order cap {cap}")
        frontier = np.array(nxt, dtype=dtype).reshape(-1, degree)
    return np.array(rows, dtype=dtype)


def _conjugacy_classes(G: PermGroup) -> ConjugacyClassData:
    gens = G.generator_indices()
    if gens:
        labels = kernels.orbits(np.stack([G.conj_action(g) for g in gens]))
    else:
        labels = np.zeros(G.order, dtype=np.int64)
    nraw = int(labels.max()) + 1
    members = [np.flatnonzero(labels == c) for c in range(nraw)]
    orders = G.element_orders
    keyed = sorted(range(nraw), key=lambda c: (int(orders[members[c][0]]), len(members[c]), int(members[c][0])))
    remap = np.empty(nraw, dtype=np.int64)
    for new, old in enumerate(keyed):
        remap[old] = new
    class_of = remap[labels]
    class_of.setflags(write=False)
    members_sorted = tuple(members[old] for old in keyed)
    reps = tuple(int(m[0]) for m in members_sorted)
    sizes = tuple(len(m) for m in members_sorted)
    elt_orders = tuple(int(orders[r]) for r in reps)
    powers = []
    for r, e in zip(reps, elt_orders):
        act = G.right_action(r)
        cur, seq = 0, []
        for _ in range(e):
            seq.append(int(class_of[cur]))
            cur = int(act[cur])
        if cur != 0:
            raise ConsistencyError("element order mismatch in power map")
        powers.append(tuple(seq))
    inverse_class = tuple(p[-1] if len(p) > 1 else p[0] for p in powers)
    if sum(sizes) != G.order or sizes[0] != 1 or reps[0] != 0:
        raise ConsistencyError("class partition is inconsistent")
    return ConjugacyClassData(
        k=nraw,
        reps=reps,
        sizes=sizes,
        class_of=class_of,
        members=members_sorted,
        element_orders=elt_orders,
        powers=tuple(powers),
        inverse_class=inverse_class,
    )


class Subgroup:
    """A subgroup of ``parent`` given by a membership mask."""

    def __init__(self, parent: PermGroup, mask: np.ndarray, check: bool = True, generators: Sequence[int] | None = None):
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (parent.order,):
            raise InputError("mask does not match the parent group")
        self.parent = parent
        self.mask = mask
        self.mask.setflags(write=False)
        self.members = np.flatnonzero(mask)
        self.order = len(self.members)
        if generators is None:
            generators = _greedy_generators(parent, self.members)
        self.generators = tuple(int(g) for g in generators)
        if check:
            if not np.array_equal(parent.closure_mask(self.generators), mask):
                raise InputError("element set is not closed under multiplication")
        if parent.order % self.order:
            raise ConsistencyError("Lagrange violated")

    @cached_property
    def is_normal_in_parent(self) -> bool:
        return self.is_normalized_by(self.parent.generator_indices())

    def is_normalized_by(self, gens: Iterable[int]) -> bool:
        for g in gens:
            if not self.mask[self.parent.conj_action(int(g))[self.members]].all():
                return False
        return True

    def __contains__(self, x: int) -> bool:
        return bool(self.mask[x])

    def __le__(self, other: "Subgroup") -> bool:
        return bool(other.mask[self.members].all())

    def __lt__(self, other: "Subgroup") -> bool:
        return self <= other and self.order < other.order

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent is other.parent and np.array_equal(self.mask, other.mask)

    def __hash__(self):
        return hash(self.members.tobytes())

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, self.mask & other.mask, check=False)

    def join(self, other: "Subgroup") -> "Subgroup":
        return self.parent.subgroup(self.generators + other.generators)

    def is_trivial(self) -> bool:
        return self.order == 1

    def generator_perms(self) -> list[Permutation]:
        return [self.parent.element(g) for g in self.generators]

    @cached_property
    def as_group(self) -> PermGroup:
        """The subgroup as a standalone group on the same points."""
        return PermGroup(self.generator_perms(), self.parent.degree)

    def is_abelian(self) -> bool:
        g = self.generators
        P = self.parent
        return all(P.mul(a, b) == P.mul(b, a) for a in g for b in g)

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent.order})"


GroupLike = Union[PermGroup, Subgroup]


def as_subgroup(H: GroupLike) -> Subgroup:
    return H.whole() if isinstance(H, PermGroup) else H


def subgroup_in(G: PermGroup, H: GroupLike) -> Subgroup:
    """Realize a group on the same points as a Subgroup of ``G``."""
    if isinstance(H, Subgroup) and H.parent is G:
        return H
    grp = H if isinstance(H, PermGroup) else H.as_group
    idx = G.lookup(grp.perms)
    mask = np.zeros(G.order, dtype=bool)
    mask[idx] = True
    return Subgroup(G, mask, check=False)


def _greedy_generators(G: PermGroup, members: np.ndarray) -> list[int]:
    gens: list[int] = []
    cur = np.zeros(G.order, dtype=bool)
    cur[0] = True
    for m in members:
        if not cur[m]:
            gens.append(int(m))
            cur = G.closure_mask(gens)
    return gens


# -- operations --------------------------------------------------------


def group_from_generators(generators: Sequence[Permutation], degree: int, max_order: int | None = None) -> PermGroup:
    return PermGroup(generators, degree, max_order=max_order)


def conjugacy_classes(G: PermGroup) -> ConjugacyClassData:
    return G.classes


def commutator(G: PermGroup, a: int, b: int) -> int:
    """[a, b] = a**-1 b**-1 a b."""
    inv = G.inverse
    return G.mul(G.mul(G.mul(int(inv[a]), int(inv[b])), a), b)


def normal_closure(G: PermGroup, gens: Iterable[int], within: GroupLike) -> Subgroup:
    """Smallest subgroup containing ``gens`` normalized by ``within``."""
    W = as_subgroup(within)
    cur = list(dict.fromkeys(int(g) for g in gens))
    mask = G.closure_mask(cur)
    changed = True
    while changed:
        changed = False
        for w in W.generators:
            act = G.conj_action(w)
            for x in list(cur):
                y = int(act[x])
                if not mask[y]:
                    cur.append(y)
                    mask = G.closure_mask(cur)
                    changed = True
    return Subgroup(G, mask, check=False)


def derived_subgroup(H: GroupLike) -> Subgroup:
    H = as_subgroup(H)
    G = H.parent
    gens = H.generators
    comms = {commutator(G, a, b) for i, a in enumerate(gens) for b in gens[i + 1:]}
    comms.discard(0)
    return normal_closure(G, sorted(comms), H)


def derived_series(H: GroupLike) -> list[Subgroup]:
    cur = as_subgroup(H)
    series = [cur]
    while True:
        nxt = derived_subgroup(cur)
        if nxt.order == cur.order:
            return series
        series.append(nxt)
        cur = nxt


def is_solvable(H: GroupLike) -> bool:
    return derived_series(H)[-1].order == 1


def centralizer(M: GroupLike, S: GroupLike) -> Subgroup:
    """Elements of M commuting with every generator of S."""
    M = as_subgroup(M)
    S = as_subgroup(S)
    if M.parent is not S.parent:
        raise InputError("subgroups of different parents")
    G = M.parent
    mask = M.mask.copy()
    for s in S.generators:
        mask &= G.right_action(s) == G.left_action(s)
    return Subgroup(G, mask, check=False)


def normalizer(H: GroupLike, within: GroupLike | None = None) -> Subgroup:
    H = as_subgroup(H)
    G = H.parent
    mask = np.ones(G.order, dtype=bool) if within is None else as_subgroup(within).mask.copy()
    for h in H.generators:
        mask &= H.mask[G.conjugates(h)]
    return Subgroup(G, mask, check=False)


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise InputError(f"{p} is not prime")


def sylow_subgroup(G: GroupLike, p: int, containing: Subgroup | None = None) -> Subgroup:
    """A Sylow p-subgroup, grown inside normalizers; deterministic.

    When ``containing`` (a p-subgroup) is given the result contains it.
    """
    _check_prime(p)
    H = as_subgroup(G)
    P_group = H.parent
    target = p_part(H.order, p)
    P = P_group.trivial() if containing is None else containing
    if not (P <= H) or P.order != p_part(P.order, p):
        raise InputError("starting subgroup is not a p-subgroup of the group")
    while P.order < target:
        N = normalizer(P, within=H)
        step = None
        for x in N.members:
            if P.mask[x]:
                continue
            # x**p in P: x has order p modulo P
            y, act = int(x), P_group.right_action(int(x))
            for _ in range(p - 1):
                y = int(act[y])
            if P.mask[y]:
                step = int(x)
                break
        if step is None:
            raise ConsistencyError("Sylow growth stalled")
        P = P_group.subgroup(P.generators + (step,))
    return P


def o_p_residual(N: GroupLike, p: int) -> Subgroup:
    """O^p(N): the subgroup generated by the p'-elements of N."""
    _check_prime(p)
    N = as_subgroup(N)
    G = N.parent
    orders = G.element_orders[N.members]
    p_prime = [int(x) for x, o in zip(N.members, orders) if o % p]
    return Subgroup(G, G.generated_mask(p_prime), check=False)
