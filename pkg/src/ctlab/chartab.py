"""Character tables by the Dixon-Schneider method.

Class matrices are split into common eigenspaces over F_l, where l is the
smallest prime with l = 1 (mod exponent) and l > 2*sqrt(|G|). Each common
eigenvector gives the central character w_t = |C_t| chi(g_t) / chi(1), from
which chi(1) and then chi(g_t) mod l are recovered and lifted to exact
eigenvalue multiplicities.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .errors import ConsistencyError
from .exactnum import (
    CyclotomicValue,
    ModularScalar,
    dixon_prime,
    evaluate_mod,
    lift_value,
    root_of_unity,
)
from .permgroup import ConjugacyClassData, PermGroup


@dataclass(frozen=True)
class ClassMatrix:
    index: int
    entries: np.ndarray  # entries[j, t] = #{(x, y) in C_i x C_j : x y = rep_t}


class ClassFunction:
    """Exact values, one per conjugacy class of ``table.group``."""

    def __init__(self, table: "CharacterTable", values: Sequence[CyclotomicValue]):
        if len(values) != table.classes.k:
            raise ValueError("need one value per class")
        self.table = table
        self.values = tuple(values)

    @property
    def group(self) -> PermGroup:
        return self.table.group

    @property
    def degree(self) -> int:
        return self.values[0].as_integer()

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        return ClassFunction(self.table, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        return ClassFunction(self.table, [a - b for a, b in zip(self.values, other.values)])

    def __mul__(self, other):
        if isinstance(other, int):
            return ClassFunction(self.table, [v * other for v in self.values])
        return ClassFunction(self.table, [a * b for a, b in zip(self.values, other.values)])

    __rmul__ = __mul__

    def equals(self, other: "ClassFunction") -> bool:
        return self.table is other.table and all(a.equals(b) for a, b in zip(self.values, other.values))

    def __repr__(self):
        return f"ClassFunction({', '.join(str(v) for v in self.values)})"


class IrreducibleEntry(ClassFunction):
    """One row of a character table."""

    def __init__(self, table: "CharacterTable", index: int, degree: int, values: Sequence[CyclotomicValue]):
        super().__init__(table, values)
        self.index = index
        self._degree = degree

    @property
    def degree(self) -> int:
        return self._degree

    @cached_property
    def kernel(self):
        from .chartools import kernel

        return kernel(self)

    @cached_property
    def codegree(self) -> int:
        from .chartools import codegree

        return codegree(self)

    @cached_property
    def det_order(self) -> int:
        from .chartools import det_order

        return det_order(self)

    def is_trivial(self) -> bool:
        return self.index == 0

    def __repr__(self):
        return f"chi_{self.index}(deg={self.degree})"


class CharacterTable:
    def __init__(self, group: PermGroup, classes: ConjugacyClassData, prime: int, rows: list[tuple[int, list[CyclotomicValue]]]):
        self.group = group
        self.classes = classes
        self.prime = prime
        self.rows = [IrreducibleEntry(self, i, d, v) for i, (d, v) in enumerate(rows)]

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[IrreducibleEntry]:
        return iter(self.rows)

    def __getitem__(self, i: int) -> IrreducibleEntry:
        return self.rows[i]

    @property
    def trivial(self) -> IrreducibleEntry:
        return self.rows[0]

    @property
    def degrees(self) -> list[int]:
        return [r.degree for r in self.rows]

    def class_function(self, values: Sequence[CyclotomicValue]) -> ClassFunction:
        return ClassFunction(self, values)

    def __repr__(self):
        return f"CharacterTable(order={self.group.order}, k={len(self.rows)})"


def class_matrix(G: PermGroup, classes: ConjugacyClassData, i: int) -> ClassMatrix:
    k = classes.k
    xs_inv = G.inverse[classes.members[i]]
    out = np.zeros((k, k), dtype=np.int64)
    for t, rep in enumerate(classes.reps):
        ys = G.right_action(rep)[xs_inv]  # x**-1 * rep_t
        out[:, t] = np.bincount(classes.class_of[ys], minlength=k)
    return ClassMatrix(i, out)


def _column_echelon(basis: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Columns spanning the same space, with an identity block on pivot rows."""
    r, piv = kernels.rref_mod(basis.T, p)
    r = r[: len(piv)]
    return r.T.copy(), piv


def _split(space: np.ndarray, pivots: np.ndarray, mat: np.ndarray, p: int) -> list[tuple[np.ndarray, np.ndarray]]:
    d = space.shape[1]
    image = kernels.matmul_mod(mat, space, p)
    restricted = image[pivots]  # coordinates w.r.t. the echelon basis
    roots = kernels.poly_roots_mod(kernels.charpoly_mod(restricted, p), p)
    parts = []
    for lam in roots:
        shifted = (restricted - int(lam) * np.eye(d, dtype=np.int64)) % p
        coeffs = kernels.nullspace_mod(shifted, p)
        if len(coeffs) == 0:
            continue
        sub = kernels.matmul_mod(space, coeffs.T, p)
        parts.append(_column_echelon(sub, p))
    if sum(s.shape[1] for s, _ in parts) != d:
        raise ConsistencyError("class matrix is not diagonalizable over F_l")
    return parts


def eigenvectors(G: PermGroup, classes: ConjugacyClassData, p: int) -> list[np.ndarray]:
    """Common eigenvectors of all class matrices, each scaled so entry 0 is 1."""
    k = classes.k
    spaces = [_column_echelon(np.eye(k, dtype=np.int64), p)]
    order = sorted(range(1, k), key=lambda i: (classes.sizes[i], i))
    for i in order:
        if all(s.shape[1] == 1 for s, _ in spaces):
            break
        mat = class_matrix(G, classes, i).entries % p
        nxt = []
        for space, piv in spaces:
            if space.shape[1] == 1:
                nxt.append((space, piv))
            else:
                nxt.extend(_split(space, piv, mat, p))
        spaces = nxt
    if any(s.shape[1] != 1 for s, _ in spaces):
        raise ConsistencyError("eigenspace splitting incomplete after all class matrices")
    vecs = []
    for space, _ in spaces:
        v = space[:, 0] % p
        if v[0] == 0:
            raise ConsistencyError("eigenvector vanishes on the identity class")
        vecs.append(v * pow(int(v[0]), p - 2, p) % p)
    return vecs


def character_table(G: PermGroup) -> CharacterTable:
    cls = G.classes
    k = cls.k
    p = dixon_prime(G.order, G.exponent)
    vecs = eigenvectors(G, cls, p)
    half = (p - 1) // 2
    inv_size = [pow(s, p - 2, p) for s in cls.sizes]
    root_E = root_of_unity(p, G.exponent)
    rows = []
    for w in vecs:
        s = sum(int(w[t]) * int(w[cls.inverse_class[t]]) * inv_size[t] for t in range(k)) % p
        if s == 0:
            raise ConsistencyError("degree normalization vanished mod l")
        sq = G.order * pow(s, p - 2, p) % p
        degree = next((d for d in range(1, half + 1) if d * d % p == sq), None)
        if degree is None or G.order % degree:
            raise ConsistencyError("no admissible degree for eigenvector")
        modvals = [degree * int(w[t]) * inv_size[t] % p for t in range(k)]
        values = []
        for t in range(k):
            e = cls.element_orders[t]
            root_e = pow(root_E, G.exponent // e, p)
            powers = [modvals[cls.power(t, j)] for j in range(e)]
            v = lift_value(powers, e, ModularScalar(root_e, p), degree)
            if evaluate_mod(v, p, root_e) != modvals[t]:
                raise ConsistencyError("lifted value does not reproduce its residue")
            values.append(v)
        rows.append((degree, values))
    rows.sort(key=_row_key)
    if rows[0][0] != 1 or any(not v.is_identity_eigenvalues() for v in rows[0][1]):
        raise ConsistencyError("first row is not the trivial character")
    return CharacterTable(G, cls, p, rows)


def _row_key(row):
    degree, values = row
    # descending multiplicity vectors put the trivial character first
    return (degree, tuple(tuple(-m for m in v.mults) for v in values))
