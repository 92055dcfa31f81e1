"""Weyl group reflections, admissible sequences, Coxeter transformations, roots."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .cartan import (
    CartanMatrix,
    bilinear_form,
    default_orientation,
    dynkin_type,
    flip_orientation,
    is_sink,
    is_source,
)

RootVector = tuple[int, ...]


class NotDynkinError(ValueError):
    pass


def simple_root(n: int, i: int) -> RootVector:
    return tuple(1 if k == i else 0 for k in range(n))


def reflect(c: CartanMatrix, i: int, v: Sequence[int]) -> RootVector:
    """s_i(v) where s_i(alpha_j) = alpha_j - c_ij alpha_i."""
    coeff = sum(c[i, j] * v[j] for j in range(c.n))
    out = list(v)
    out[i] -= coeff
    return tuple(out)


def reflect_word(c: CartanMatrix, word: Sequence[int], v: Sequence[int]) -> RootVector:
    """Apply s_{w[0]} s_{w[1]} ... s_{w[-1]} to v (rightmost first)."""
    out = tuple(v)
    for i in reversed(word):
        out = reflect(c, i, out)
    return out


def plus_admissible_sequence(c: CartanMatrix, omega: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    """Sinks in turn, smallest index first, flipping the orientation at each step."""
    omega = frozenset(omega)
    seq: list[int] = []
    left = set(range(c.n))
    while left:
        i = min(v for v in left if is_sink(omega, v))
        seq.append(i)
        left.remove(i)
        omega = flip_orientation(omega, i)
    return tuple(seq)


def minus_admissible_sequence(c: CartanMatrix, omega: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    omega = frozenset(omega)
    seq: list[int] = []
    left = set(range(c.n))
    while left:
        i = min(v for v in left if is_source(omega, v))
        seq.append(i)
        left.remove(i)
        omega = flip_orientation(omega, i)
    return tuple(seq)


def beta_gamma_vectors(c: CartanMatrix, omega: Iterable[tuple[int, int]]) -> tuple[list[RootVector], list[RootVector]]:
    """beta_k = s_{i1}...s_{i(k-1)}(alpha_{ik}) and gamma_k = s_{in}...s_{i(k+1)}(alpha_{ik})."""
    seq = plus_admissible_sequence(c, omega)
    n = c.n
    betas, gammas = [], []
    for k, ik in enumerate(seq):
        betas.append(reflect_word(c, seq[:k], simple_root(n, ik)))
        gammas.append(reflect_word(c, tuple(reversed(seq[k + 1:])), simple_root(n, ik)))
    return betas, gammas


def coxeter_apply(c: CartanMatrix, omega: Iterable[tuple[int, int]], k: int, v: Sequence[int]) -> RootVector:
    """c^k(v) with c^+ = s_{in}...s_{i1}; negative k uses c^- = s_{i1}...s_{in}."""
    seq = plus_admissible_sequence(c, omega)
    out = tuple(v)
    if k >= 0:
        word = tuple(reversed(seq))  # rightmost applied first: s_{i1} first
    else:
        word = seq
    for _ in range(abs(k)):
        out = reflect_word(c, word, out)
    return out


def is_positive(v: Sequence[int]) -> bool:
    return all(x >= 0 for x in v) and any(v)


def positive_roots(c: CartanMatrix, check: bool = True) -> set[RootVector]:
    """Positive roots as the vectors c^{-r}(beta_i) that stay in N^n."""
    if not dynkin_type(c).is_dynkin:
        raise NotDynkinError("positive root enumeration needs Dynkin type")
    omega = default_orientation(c)
    betas, _ = beta_gamma_vectors(c, omega)
    roots: set[RootVector] = set()
    for b in betas:
        v = b
        while is_positive(v):
            roots.add(v)
            v = coxeter_apply(c, omega, -1, v)
    if check:
        oracle = reflection_closure_oracle(c, cap=10_000)
        if oracle.capped or oracle.roots != roots:
            raise AssertionError("Coxeter sweep disagrees with the reflection-closure oracle")
    return roots


@dataclass(frozen=True)
class OracleResult:
    roots: frozenset[RootVector]
    capped: bool


def reflection_closure_oracle(c: CartanMatrix, cap: int = 1000) -> OracleResult:
    """Breadth-first closure of the simple roots under all s_i, kept in N^n."""
    n = c.n
    seen = {simple_root(n, i) for i in range(n)}
    queue = deque(sorted(seen))
    while queue:
        v = queue.popleft()
        for i in range(n):
            w = reflect(c, i, v)
            if is_positive(w) and w not in seen:
                if len(seen) >= cap:
                    return OracleResult(frozenset(seen), True)
                seen.add(w)
                queue.append(w)
    return OracleResult(frozenset(seen), False)


def fundamental_region_member(c: CartanMatrix, d: Sequence[int], v: Sequence[int]) -> bool:
    """v nonzero with connected support and (v, alpha_i) <= 0 for all i."""
    n = c.n
    if any(x < 0 for x in v) or not any(v):
        return False
    supp = [i for i in range(n) if v[i]]
    reach = {supp[0]}
    queue = deque([supp[0]])
    while queue:
        a = queue.popleft()
        for b in supp:
            if b not in reach and c[a, b] != 0:
                reach.add(b)
                queue.append(b)
    if len(reach) != len(supp):
        return False
    return all(bilinear_form(c, d, v, simple_root(n, i)) <= 0 for i in range(n))
