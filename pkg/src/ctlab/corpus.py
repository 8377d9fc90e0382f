"""Group spec parser and corpus files.

Grammar (see ``data/groupspec.ebnf``)::

    spec     = factor { "x" factor }
    factor   = family | explicit
    family   = ("C" | "D" | "Q" | "S" | "A") number | "SL23" | "F20"
    explicit = "perm:" number ":" "[" [ gen { ";" gen } ] "]"
    gen      = "()" | cycle { cycle }
    cycle    = "(" number { ws number } ")"

Corpus files hold one spec per line, optionally named as ``name = spec``;
``#`` starts a comment.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Union

from .errors import InputError, ResourceError, SpecSyntaxError
from .permgroup import CAPS, PermGroup, Permutation


@dataclass(frozen=True)
class Family:
    name: str  # C, D, Q, S, A, SL23, F20
    n: int = 0

    def render(self) -> str:
        return self.name if self.name in ("SL23", "F20") else f"{self.name}{self.n}"


@dataclass(frozen=True)
class Explicit:
    degree: int
    gens: tuple[tuple[tuple[int, ...], ...], ...]  # 1-based cycles per generator

    def render(self) -> str:
        parts = []
        for g in self.gens:
            parts.append("".join("(" + " ".join(map(str, c)) + ")" for c in g) or "()")
        return f"perm:{self.degree}:[{';'.join(parts)}]"


Factor = Union[Family, Explicit]


@dataclass(frozen=True)
class GroupSpec:
    factors: tuple[Factor, ...]

    def render(self) -> str:
        return "x".join(f.render() for f in self.factors)

    @property
    def expression(self) -> str:
        return self.render()

    def expected_order(self) -> int | None:
        out = 1
        for f in self.factors:
            o = family_order(f) if isinstance(f, Family) else None
            if o is None:
                return None
            out *= o
        return out


def family_order(f: Family) -> int:
    return {
        "C": lambda n: n,
        "D": lambda n: n,
        "Q": lambda n: n,
        "S": math.factorial,
        "A": lambda n: max(1, math.factorial(n) // 2),
        "SL23": lambda n: 24,
        "F20": lambda n: 20,
    }[f.name](f.n)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise SpecSyntaxError(msg, self.text, self.pos)

    def peek(self, s: str) -> bool:
        return self.text.startswith(s, self.pos)

    def expect(self, s: str) -> None:
        if not self.peek(s):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def number(self) -> int:
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            self.error("expected a number")
        self.pos = m.end()
        return int(m.group())

    def spec(self) -> GroupSpec:
        factors = [self.factor()]
        while self.pos < len(self.text):
            self.expect("x")
            factors.append(self.factor())
        return GroupSpec(tuple(factors))

    def factor(self) -> Factor:
        for fixed in ("SL23", "F20"):
            if self.peek(fixed):
                self.pos += len(fixed)
                return Family(fixed)
        if self.peek("perm:"):
            return self.explicit()
        if self.pos < len(self.text) and self.text[self.pos] in "CDQSA":
            name = self.text[self.pos]
            self.pos += 1
            start = self.pos
            n = self.number()
            fam = Family(name, n)
            _check_family(fam, self, start)
            return fam
        self.error("unknown group family")

    def explicit(self) -> Explicit:
        self.expect("perm:")
        start = self.pos
        degree = self.number()
        if degree < 1:
            self.pos = start
            self.error("degree must be positive")
        self.expect(":")
        self.expect("[")
        gens = []
        if not self.peek("]"):
            gens.append(self.generator(degree))
            while self.peek(";"):
                self.pos += 1
                gens.append(self.generator(degree))
        self.expect("]")
        return Explicit(degree, tuple(gens))

    def generator(self, degree: int) -> tuple[tuple[int, ...], ...]:
        self.skip_ws()
        if self.peek("()"):
            self.pos += 2
            self.skip_ws()
            return ()
        cycles = []
        seen: set[int] = set()
        while self.peek("("):
            self.pos += 1
            pts = []
            self.skip_ws()
            while not self.peek(")"):
                start = self.pos
                q = self.number()
                if not 1 <= q <= degree:
                    self.pos = start
                    self.error(f"point {q} outside 1..{degree}")
                if q in seen:
                    self.pos = start
                    self.error(f"point {q} repeated")
                seen.add(q)
                pts.append(q)
                self.skip_ws()
                if self.pos >= len(self.text):
                    self.error("unterminated cycle")
            self.pos += 1
            if len(pts) > 1:
                cycles.append(tuple(pts))
            self.skip_ws()
        if not cycles and not seen:
            self.error("expected a cycle")
        return tuple(cycles)


def _check_family(f: Family, parser: _Parser, start: int) -> None:
    bad = (
        (f.name == "C" and f.n < 1)
        or (f.name == "D" and (f.n < 2 or f.n % 2))
        or (f.name == "Q" and (f.n < 4 or f.n % 4))
        or (f.name in "SA" and f.n < 1)
    )
    if bad:
        parser.pos = start
        parser.error(f"invalid parameter for family {f.name}")


def parse_spec(text: str) -> GroupSpec:
    text = text.strip()
    if not text:
        raise SpecSyntaxError("empty group spec", text, 0)
    return _Parser(text).spec()


# -- realization ---------------------------------------------------------


def _cyclic(n: int) -> tuple[int, list[list[int]]]:
    return n, [[(i + 1) % n for i in range(n)]] if n > 1 else []


def _dihedral(order: int) -> tuple[int, list[list[int]]]:
    n = order // 2
    if n == 1:
        return 2, [[1, 0]]
    if n == 2:
        return 4, [[1, 0, 3, 2], [2, 3, 0, 1]]
    rot = [(i + 1) % n for i in range(n)]
    ref = [(-i) % n for i in range(n)]
    return n, [rot, ref]


def _dicyclic(order: int) -> tuple[int, list[list[int]]]:
    # right-regular action on words a^i b^j, i < 2n, j < 2
    n = order // 4
    m = 2 * n

    def idx(i, j):
        return (i % m) + m * j

    a_img = [0] * order
    b_img = [0] * order
    for i in range(m):
        for j in range(2):
            # (a^i b^j) a = a^(i+1) if j == 0, a^(i-1) b if j == 1
            a_img[idx(i, j)] = idx(i + 1, 0) if j == 0 else idx(i - 1, 1)
            # (a^i b^j) b = a^i b if j == 0, a^(i+n) if j == 1
            b_img[idx(i, j)] = idx(i, 1) if j == 0 else idx(i + n, 0)
    return order, [a_img, b_img]


def _symmetric(n: int) -> tuple[int, list[list[int]]]:
    if n <= 1:
        return 1, []
    trans = [1, 0] + list(range(2, n))
    cyc = [(i + 1) % n for i in range(n)]
    return n, [trans, cyc] if n > 2 else [trans]


def _alternating(n: int) -> tuple[int, list[list[int]]]:
    if n <= 2:
        return max(n, 1), []
    gens = []
    for k in range(2, n):
        img = list(range(n))
        img[0], img[1], img[k] = 1, k, 0  # (1 2 k+1)
        gens.append(img)
    return n, gens


def _sl23() -> tuple[int, list[list[int]]]:
    vecs = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]

    def act(m):
        (p, q), (r, s) = m
        return [vecs.index(((p * x + q * y) % 3, (r * x + s * y) % 3)) for x, y in vecs]

    return 8, [act(((1, 1), (0, 1))), act(((1, 0), (1, 1)))]


def _f20() -> tuple[int, list[list[int]]]:
    return 5, [[(x + 1) % 5 for x in range(5)], [(2 * x) % 5 for x in range(5)]]


def _factor_gens(f: Factor) -> tuple[int, list[list[int]]]:
    if isinstance(f, Explicit):
        return f.degree, [list(Permutation.from_cycles(g, f.degree).images) for g in f.gens]
    return {
        "C": lambda: _cyclic(f.n),
        "D": lambda: _dihedral(f.n),
        "Q": lambda: _dicyclic(f.n),
        "S": lambda: _symmetric(f.n),
        "A": lambda: _alternating(f.n),
        "SL23": _sl23,
        "F20": _f20,
    }[f.name]()


def resolve(spec: GroupSpec) -> PermGroup:
    parts = [_factor_gens(f) for f in spec.factors]
    degree = sum(d for d, _ in parts)
    gens = []
    offset = 0
    for d, gs in parts:
        for g in gs:
            img = list(range(degree))
            for i, j in enumerate(g):
                img[offset + i] = offset + j
            gens.append(Permutation(img))
        offset += d
    expected = spec.expected_order()
    if expected is not None and expected > CAPS.max_order:
        raise ResourceError(f"group order {expected} exceeds the order cap {CAPS.max_order}")
    G = PermGroup(gens, degree)
    if expected is not None and G.order != expected:
        raise AssertionError(f"{spec.render()} has order {G.order}, expected {expected}")
    return G


def parse_group_spec(text: str) -> PermGroup:
    return resolve(parse_spec(text))


# -- corpus files --------------------------------------------------------


def parse_corpus_text(text: str, source: str = "<corpus>") -> list[tuple[str, GroupSpec]]:
    out: list[tuple[str, GroupSpec]] = []
    names: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" in line:
            name, _, expr = (s.strip() for s in line.partition("="))
        else:
            name, expr = line, line
        try:
            spec = parse_spec(expr)
        except InputError as exc:
            raise InputError(f"{source}:{lineno}: {exc}") from exc
        if name in names:
            raise InputError(f"{source}:{lineno}: duplicate name {name!r} (first on line {names[name]})")
        names[name] = lineno
        out.append((name, spec))
    return out


def load_corpus(path: str | Path) -> list[tuple[str, PermGroup]]:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    out = []
    for name, spec in parse_corpus_text(text, str(path)):
        out.append((name, resolve(spec)))
    return out


def default_corpus_text() -> str:
    return resources.files("ctlab").joinpath("data/default_corpus.txt").read_text(encoding="utf-8")


def default_corpus() -> list[tuple[str, PermGroup]]:
    return [(name, resolve(spec)) for name, spec in parse_corpus_text(default_corpus_text(), "default_corpus.txt")]
