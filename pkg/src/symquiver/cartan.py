"""Symmetrizable Cartan matrices, symmetrizers, orientations and Dynkin types.

Vertices are 0-based in code and 1-based in every message and file format.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence


class CartanError(ValueError):
    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


class OrientationError(ValueError):
    pass


@dataclass(frozen=True)
class CartanMatrix:
    c: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.c)

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self.c[i][j]

    def neighbors(self, i: int) -> list[int]:
        return [j for j in range(self.n) if j != i and self.c[i][j] != 0]

    def edges(self) -> list[tuple[int, int]]:
        """Unordered edges {i, j} as pairs with i < j."""
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n) if self.c[i][j] != 0]

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        comps = []
        for s in range(self.n):
            if s in seen:
                continue
            comp, queue = [], deque([s])
            seen.add(s)
            while queue:
                v = queue.popleft()
                comp.append(v)
                for w in self.neighbors(v):
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.c]


def _ratio_symmetrizer(c: Sequence[Sequence[int]]) -> tuple[list[int] | None, list[str]]:
    """Solve c_i c_ij = c_j c_ji along spanning trees; None if inconsistent."""
    n = len(c)
    ratio: list[Fraction | None] = [None] * n
    problems: list[str] = []
    for s in range(n):
        if ratio[s] is not None:
            continue
        ratio[s] = Fraction(1)
        comp = [s]
        queue = deque([s])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if j == i or c[i][j] == 0 or c[j][i] == 0:
                    continue
                if ratio[j] is None:
                    ratio[j] = ratio[i] * c[i][j] / c[j][i]
                    comp.append(j)
                    queue.append(j)
        # clear denominators, then remove common factors, per component
        den = lcm(*(r.denominator for r in (ratio[k] for k in comp)))
        nums = [int(ratio[k] * den) for k in comp]
        g = 0
        for x in nums:
            g = gcd(g, x)
        for k, x in zip(comp, nums):
            ratio[k] = Fraction(x // g)
    d = [int(r) for r in ratio]
    for i in range(n):
        for j in range(n):
            if d[i] * c[i][j] != d[j] * c[j][i]:
                problems.append(f"C4: no symmetrizer (cycle condition fails at {i + 1},{j + 1})")
                return None, problems
    return d, problems


def cartan_violations(raw: Sequence[Sequence[int]]) -> list[str]:
    n = len(raw)
    if any(len(r) != n for r in raw):
        return ["matrix is not square"]
    out: list[str] = []
    for i in range(n):
        if raw[i][i] != 2:
            out.append(f"C1: c[{i + 1}][{i + 1}] = {raw[i][i]}, expected 2")
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if raw[i][j] > 0:
                out.append(f"C2: c[{i + 1}][{j + 1}] = {raw[i][j]} is positive")
            if (raw[i][j] == 0) != (raw[j][i] == 0) and i < j:
                out.append(f"C3: c[{i + 1}][{j + 1}] = {raw[i][j]} but c[{j + 1}][{i + 1}] = {raw[j][i]}")
    if not out:
        _, problems = _ratio_symmetrizer(raw)
        out.extend(problems)
    return out


def validate_cartan(raw: Sequence[Sequence[int]]) -> CartanMatrix:
    """Validate axioms (C1)-(C4); raises :class:`CartanError` listing every violation."""
    try:
        rows = [[int(x) for x in r] for r in raw]
    except (TypeError, ValueError):
        raise CartanError(["entries must be integers"])
    if not rows:
        raise CartanError(["empty matrix"])
    problems = cartan_violations(rows)
    if problems:
        raise CartanError(problems)
    return CartanMatrix(tuple(tuple(r) for r in rows))


def minimal_symmetrizer(c: CartanMatrix) -> tuple[int, ...]:
    d, _ = _ratio_symmetrizer(c.c)
    assert d is not None
    return tuple(d)


def is_symmetrizer(c: CartanMatrix, d: Sequence[int]) -> bool:
    if len(d) != c.n or any(x <= 0 for x in d):
        return False
    return all(d[i] * c[i, j] == d[j] * c[j, i] for i in range(c.n) for j in range(c.n))


def check_symmetrizer(c: CartanMatrix, d: Sequence[int]) -> tuple[int, ...]:
    d = tuple(int(x) for x in d)
    if not is_symmetrizer(c, d):
        raise CartanError([f"C4: {list(d)} is not a symmetrizer"])
    return d


@dataclass(frozen=True)
class DerivedConstants:
    """g_ij, f_ij and k_ij for every ordered pair (i, j) joined by an edge."""

    g: dict[tuple[int, int], int]
    f: dict[tuple[int, int], int]
    k: dict[tuple[int, int], int]


def derived_constants(c: CartanMatrix, d: Sequence[int]) -> DerivedConstants:
    g, f, k = {}, {}, {}
    for i in range(c.n):
        for j in c.neighbors(i):
            gij = abs(gcd(c[i, j], c[j, i]))
            g[i, j] = gij
            f[i, j] = abs(c[i, j]) // gij
            k[i, j] = gcd(d[i], d[j])
    return DerivedConstants(g, f, k)


def quadratic_form(c: CartanMatrix, d: Sequence[int], x: Sequence[int]) -> int:
    n = c.n
    total = sum(d[i] * x[i] * x[i] for i in range(n))
    for i in range(n):
        for j in range(i + 1, n):
            total -= d[i] * abs(c[i, j]) * x[i] * x[j]
    return total


def bilinear_form(c: CartanMatrix, d: Sequence[int], x: Sequence[int], y: Sequence[int]) -> int:
    n = c.n
    return sum(x[i] * y[j] * d[i] * c[i, j] for i in range(n) for j in range(n) if x[i] and y[j])


# orientations


Orientation = frozenset  # of (i, j) pairs, meaning arrows j -> i


def validate_orientation(c: CartanMatrix, pairs: Iterable[Sequence[int]]) -> frozenset[tuple[int, int]]:
    omega = frozenset((int(i), int(j)) for i, j in pairs)
    for i, j in omega:
        if not (0 <= i < c.n and 0 <= j < c.n) or i == j or c[i, j] == 0:
            raise OrientationError(f"({i + 1},{j + 1}) is not an edge")
    for i, j in c.edges():
        both = ((i, j) in omega) + ((j, i) in omega)
        if both == 2:
            raise OrientationError(f"edge {{{i + 1},{j + 1}}} covered twice")
        if both == 0:
            raise OrientationError(f"edge {{{i + 1},{j + 1}}} not oriented")
    # acyclicity via Kahn's algorithm on arrows j -> i
    indeg = [0] * c.n
    for i, j in omega:
        indeg[i] += 1
    queue = deque(v for v in range(c.n) if indeg[v] == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for i, j in omega:
            if j == v:
                indeg[i] -= 1
                if indeg[i] == 0:
                    queue.append(i)
    if seen != c.n:
        raise OrientationError("orientation contains a cycle")
    return omega


def flip_orientation(omega: Iterable[tuple[int, int]], i: int) -> frozenset[tuple[int, int]]:
    return frozenset((b, a) if i in (a, b) else (a, b) for a, b in omega)


def default_orientation(c: CartanMatrix) -> frozenset[tuple[int, int]]:
    """Every edge oriented from the larger to the smaller index."""
    return frozenset(c.edges())


def is_sink(omega: Iterable[tuple[int, int]], i: int) -> bool:
    """No arrow starts at i, i.e. no pair (k, i)."""
    return not any(j == i for _, j in omega)


def is_source(omega: Iterable[tuple[int, int]], i: int) -> bool:
    return not any(a == i for a, _ in omega)


# Dynkin recognition


@dataclass(frozen=True)
class DynkinType:
    components: tuple[tuple[str, int], ...] | None = None

    @property
    def is_dynkin(self) -> bool:
        return self.components is not None

    def label(self) -> str:
        if self.components is None:
            return "NotDynkin"
        return "+".join(f"{fam}{rank}" for fam, rank in self.components)

    def __str__(self) -> str:
        return self.label()


def _component_type(c: CartanMatrix, comp: list[int]) -> tuple[str, int] | None:
    n = len(comp)
    if n == 1:
        return ("A", 1)
    edges = [(i, j) for i in comp for j in comp if i < j and c[i, j] != 0]
    if len(edges) != n - 1:
        return None  # a connected graph with a cycle
    adj: dict[int, list[int]] = {v: [] for v in comp}
    value: dict[tuple[int, int], tuple[int, int]] = {}
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
        value[i, j] = (abs(c[j, i]), abs(c[i, j]))
        value[j, i] = (abs(c[i, j]), abs(c[j, i]))
    multi = [(i, j) for i, j in edges if value[i, j] != (1, 1)]
    for e in multi:
        if sorted(value[e]) not in ([1, 2], [1, 3]):
            return None
    if len(multi) > 1:
        return None
    degrees = {v: len(adj[v]) for v in comp}
    if multi:
        i, j = multi[0]
        if sorted(value[i, j]) == [1, 3]:
            return ("G", 2) if n == 2 else None
        if max(degrees.values()) > 2:
            return None
        if n == 2:
            return ("B", 2)
        ends = [v for v in comp if degrees[v] == 1]
        # walk the path from one end
        path = [ends[0]]
        while len(path) < n:
            nxt = [w for w in adj[path[-1]] if w not in path]
            path.append(nxt[0])
        pos = {v: k for k, v in enumerate(path)}
        a, b = sorted((i, j), key=pos.get)
        if pos[a] == 0:
            path.reverse()
            a, b = b, a
        if pos[b] == n - 1 or path[-1] == b:
            # the multiple edge is the last one, running a -> b
            return ("B", n) if value[a, b] == (2, 1) else ("C", n)
        if n == 4 and {pos[a], pos[b]} == {1, 2}:
            return ("F", 4)
        return None
    branch = [v for v in comp if degrees[v] >= 3]
    if not branch:
        return ("A", n)
    if len(branch) > 1 or degrees[branch[0]] > 3:
        return None
    center = branch[0]
    arms = []
    for w in adj[center]:
        length, prev, cur = 1, center, w
        while degrees[cur] == 2:
            nxt = [x for x in adj[cur] if x != prev][0]
            prev, cur = cur, nxt
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ("D", n)
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return ("E", n)
    return None


def _leading_minors_positive(c: CartanMatrix, d: Sequence[int], comp: list[int]) -> bool:
    m = [[Fraction(d[i] * c[i, j]) for j in comp] for i in comp]
    n = len(comp)
    # Gaussian elimination without pivoting: all pivots positive iff all leading minors positive
    for k in range(n):
        if m[k][k] <= 0:
            return False
        for r in range(k + 1, n):
            f = m[r][k] / m[k][k]
            for s in range(k, n):
                m[r][s] -= f * m[k][s]
    return True


def is_positive_definite(c: CartanMatrix, d: Sequence[int] | None = None) -> bool:
    d = minimal_symmetrizer(c) if d is None else d
    return all(_leading_minors_positive(c, d, comp) for comp in c.components())


def component_types(c: CartanMatrix) -> list[tuple[str, int] | None]:
    """Dynkin label of each connected component, None for a non-Dynkin one."""
    return [_component_type(c, comp) for comp in c.components()]


def dynkin_type(c: CartanMatrix) -> DynkinType:
    """Match each component against the Dynkin graphs, cross-checked by definiteness."""
    comps = []
    d = minimal_symmetrizer(c)
    for comp in c.components():
        t = _component_type(c, comp)
        pd = _leading_minors_positive(c, d, comp)
        if (t is not None) != pd:
            raise AssertionError(f"graph match {t} disagrees with definiteness {pd} on component {comp}")
        if t is None:
            return DynkinType(None)
        comps.append(t)
    return DynkinType(tuple(comps))
