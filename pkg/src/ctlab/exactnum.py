"""Exact arithmetic: the Dixon prime field and cyclotomic character values.

A character value chi(g) at an element of order e is stored as the multiset of
eigenvalues of a representing matrix: ``mults[j]`` is how often exp(2*pi*i*j/e)
occurs. Virtual characters and other class functions reuse the same carrier
with signed coefficients. Semantic equality and integrality go through the
canonical form, i.e. coordinates in the power basis of Z[zeta_e].
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import ConsistencyError, InputError, ResourceError

PRIME_SEARCH_CAP = 2**31


# --- small number theory -------------------------------------------------


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_divisors(n: int) -> list[int]:
    """Sorted list of the distinct primes dividing ``n``."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def p_part(n: int, p: int) -> int:
    """Largest power of ``p`` dividing ``n``."""
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_p_power(n: int, p: int) -> bool:
    return n >= 1 and p_part(n, p) == n


def multiplicative_order(a: int, n: int) -> int:
    """Order of ``a`` in (Z/nZ)^*."""
    if math.gcd(a, n) != 1:
        raise InputError(f"{a} is not a unit mod {n}")
    k, x = 1, a % n
    while x != 1 % n:
        x = (x * a) % n
        k += 1
    return k


# --- the Dixon prime field -----------------------------------------------


def dixon_prime(order: int, exponent: int) -> int:
    """Smallest prime l with l = 1 (mod exponent) and l > 2*sqrt(order)."""
    if order < 1 or exponent < 1:
        raise InputError("order and exponent must be positive")
    # l > 2 sqrt(order)  <=>  l*l > 4*order
    cand = exponent + 1
    while True:
        if cand >= PRIME_SEARCH_CAP:
            raise ResourceError(f"Dixon prime search exceeded cap {PRIME_SEARCH_CAP}")
        if cand * cand > 4 * order and is_prime(cand):
            return cand
        cand += exponent


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Smallest generator of (Z/pZ)^*."""
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if p == 2:
        return 1
    factors = prime_divisors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise ConsistencyError("no primitive root found")  # unreachable for prime p


def root_of_unity(p: int, e: int) -> int:
    """The canonical primitive e-th root of unity in F_p (needs e | p-1)."""
    if (p - 1) % e:
        raise InputError(f"F_{p} has no primitive {e}-th root of unity")
    return pow(primitive_root(p), (p - 1) // e, p)


@dataclass(frozen=True)
class ModularScalar:
    """An element of F_l; ``modulus`` must be prime."""

    value: int
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, ModularScalar):
            if other.modulus != self.modulus:
                raise InputError("mixed moduli")
            return other.value
        return int(other)

    def __add__(self, other):
        return ModularScalar(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return ModularScalar(self.value - self._coerce(other), self.modulus)

    def __rsub__(self, other):
        return ModularScalar(self._coerce(other) - self.value, self.modulus)

    def __mul__(self, other):
        return ModularScalar(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return ModularScalar(-self.value, self.modulus)

    def inverse(self) -> "ModularScalar":
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero in F_l")
        return ModularScalar(pow(self.value, self.modulus - 2, self.modulus), self.modulus)

    def __truediv__(self, other):
        return self * ModularScalar(self._coerce(other), self.modulus).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return ModularScalar(pow(self.value, k, self.modulus), self.modulus)

    def __int__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, ModularScalar):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))


# --- cyclotomic values ---------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _exact_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        q[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    if any(num):
        raise ConsistencyError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def _reduction_matrix(e: int) -> np.ndarray:
    """Row j holds the power-basis coordinates of zeta_e**j."""
    phi = cyclotomic_polynomial(e)
    deg = len(phi) - 1
    red = np.zeros((e, deg), dtype=np.int64)
    cur = [0] * deg
    cur[0] = 1
    for j in range(e):
        red[j] = cur
        # multiply by x and reduce with x^deg = -sum(phi[:deg] x^i)
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * phi[i] for i, c in enumerate(cur)]
    red.setflags(write=False)
    return red


def canonical(coeffs: Sequence[int], e: int) -> tuple[int, ...]:
    """Power-basis coordinates of sum_j coeffs[j] * zeta_e**j."""
    vec = np.asarray(coeffs, dtype=np.int64)
    return tuple(int(v) for v in vec @ _reduction_matrix(e))


def embed(coeffs: Sequence[int], e: int, big: int) -> np.ndarray:
    """Rewrite a vector over zeta_e as one over zeta_big (e | big)."""
    if big % e:
        raise InputError(f"{e} does not divide {big}")
    out = np.zeros(big, dtype=np.int64)
    out[np.arange(e) * (big // e)] = np.asarray(coeffs, dtype=np.int64)
    return out


def cyclic_product(a: Sequence[int], b: Sequence[int]) -> np.ndarray:
    """Product in Z[x]/(x^e - 1) of two coefficient vectors of length e."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    e = len(a)
    full = np.convolve(a, b)
    out = full[:e].copy()
    out[: len(full) - e] += full[e:]
    return out


def negate_exponents(coeffs: Sequence[int]) -> np.ndarray:
    """Complex conjugation: zeta**j -> zeta**(-j)."""
    a = np.asarray(coeffs, dtype=np.int64)
    return np.roll(a[::-1], 1)


@dataclass(frozen=True)
class CyclotomicValue:
    """sum_j mults[j] * exp(2*pi*i*j/order)."""

    order: int
    mults: tuple[int, ...]

    def __post_init__(self):
        if self.order < 1 or len(self.mults) != self.order:
            raise InputError("multiplicity vector length must equal the order")
        object.__setattr__(self, "mults", tuple(int(m) for m in self.mults))

    @classmethod
    def integer(cls, n: int, order: int = 1) -> "CyclotomicValue":
        return cls(order, (n,) + (0,) * (order - 1))

    @classmethod
    def root(cls, j: int, order: int) -> "CyclotomicValue":
        m = [0] * order
        m[j % order] = 1
        return cls(order, tuple(m))

    @property
    def count(self) -> int:
        """Sum of multiplicities; equals the degree for a genuine character."""
        return sum(self.mults)

    def canonical(self) -> tuple[int, ...]:
        return canonical(self.mults, self.order)

    def is_rational_integer(self) -> bool:
        c = self.canonical()
        return not any(c[1:])

    def as_integer(self) -> int:
        c = self.canonical()
        if any(c[1:]):
            raise InputError(f"{self} is not a rational integer")
        return c[0]

    def is_identity_eigenvalues(self) -> bool:
        """All eigenvalues equal 1 (the kernel-membership test)."""
        return all(m == 0 for m in self.mults[1:])

    def conjugate(self) -> "CyclotomicValue":
        return CyclotomicValue(self.order, tuple(negate_exponents(self.mults)))

    def galois(self, u: int) -> "CyclotomicValue":
        """Apply zeta -> zeta**u (u a unit mod order)."""
        out = [0] * self.order
        for j, m in enumerate(self.mults):
            out[(j * u) % self.order] += m
        return CyclotomicValue(self.order, tuple(out))

    def __add__(self, other: "CyclotomicValue") -> "CyclotomicValue":
        a, b, e = _align(self, other)
        return CyclotomicValue(e, tuple(a + b))

    def __sub__(self, other: "CyclotomicValue") -> "CyclotomicValue":
        a, b, e = _align(self, other)
        return CyclotomicValue(e, tuple(a - b))

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicValue(self.order, tuple(m * other for m in self.mults))
        a, b, e = _align(self, other)
        return CyclotomicValue(e, tuple(cyclic_product(a, b)))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def equals(self, other: "CyclotomicValue") -> bool:
        """Equality as complex numbers."""
        a, b, e = _align(self, other)
        return not any(canonical(a - b, e))

    def __str__(self) -> str:
        return render_value(self)


def _align(x: CyclotomicValue, y: CyclotomicValue):
    if x.order == y.order:
        return np.asarray(x.mults, dtype=np.int64), np.asarray(y.mults, dtype=np.int64), x.order
    e = math.lcm(x.order, y.order)
    return embed(x.mults, x.order, e), embed(y.mults, y.order, e), e


def render_value(v: CyclotomicValue) -> str:
    """GAP-style rendering; rational integers print as plain integers."""
    if v.is_rational_integer():
        return str(v.as_integer())
    terms = []
    for j, m in enumerate(v.mults):
        if not m:
            continue
        if j == 0:
            base = "1"
        else:
            g = math.gcd(j, v.order)
            e, k = v.order // g, j // g
            base = f"E({e})" if k == 1 else f"E({e})^{k}"
        if j == 0:
            terms.append(str(m))
        elif m == 1:
            terms.append(base)
        elif m == -1:
            terms.append("-" + base)
        else:
            terms.append(f"{m}*{base}")
    return "+".join(terms).replace("+-", "-")


def lift_value(
    modular_values: Sequence[ModularScalar | int],
    e: int,
    root: ModularScalar | int,
    degree: int | None = None,
) -> CyclotomicValue:
    """Recover eigenvalue multiplicities from chi(g**k) mod l, k = 0..e-1.

    ``root`` must have multiplicative order exactly ``e`` in F_l. Each
    multiplicity is m_j = (1/e) sum_k chi(g**k) root**(-j*k), lifted to [0, l).
    """
    if len(modular_values) != e:
        raise InputError("need one value per power g**k, k = 0..e-1")
    if isinstance(root, ModularScalar):
        ell = root.modulus
        w = root.value
    else:
        if not modular_values or not isinstance(modular_values[0], ModularScalar):
            raise InputError("modulus unknown: pass ModularScalar values or root")
        ell = modular_values[0].modulus
        w = int(root) % ell
    if pow(w, e, ell) != 1 or any(pow(w, e // q, ell) == 1 for q in prime_divisors(e)):
        raise InputError(f"{w} is not a primitive {e}-th root of unity mod {ell}")
    vals = [int(v) % ell for v in modular_values]
    if degree is None:
        degree = vals[0]
    inv_e = pow(e, ell - 2, ell)
    winv = pow(w, ell - 2, ell)
    mults = []
    for j in range(e):
        step = pow(winv, j, ell)
        acc, wk = 0, 1
        for k in range(e):
            acc += vals[k] * wk
            wk = (wk * step) % ell
        m = (acc % ell) * inv_e % ell
        if m > degree:
            raise ConsistencyError(
                f"lifted multiplicity {m} exceeds degree {degree} (mod {ell}); table is inconsistent"
            )
        mults.append(m)
    if sum(mults) != degree:
        raise ConsistencyError("lifted multiplicities do not sum to the degree")
    return CyclotomicValue(e, tuple(mults))


def evaluate_mod(v: CyclotomicValue, ell: int, root_e: int) -> int:
    """Image of ``v`` in F_l under zeta_e -> root_e."""
    acc, w = 0, 1
    for m in v.mults:
        acc += m * w
        w = (w * root_e) % ell
    return acc % ell


def value_as_complex(v: CyclotomicValue) -> tuple[complex, float]:
    """Floating approximation and a bound on its absolute error."""
    z = sum(m * cmath.exp(2j * math.pi * j / v.order) for j, m in enumerate(v.mults) if m)
    bound = max(1, sum(abs(m) for m in v.mults)) * np.finfo(float).eps * v.order
    return complex(z), float(bound)


def sum_values(values: Iterable[CyclotomicValue], e: int) -> np.ndarray:
    """Sum of values as a vector over zeta_e (each value's order divides e)."""
    acc = np.zeros(e, dtype=np.int64)
    for v in values:
        acc += embed(v.mults, v.order, e)
    return acc
