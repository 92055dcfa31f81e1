"""Canonical modules: generalized simples E_i, simples S_i, projectives P_i, injectives I_i."""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Sequence

from .algebra import AlgebraSpec
from .linalg import ExactMatrix, block_diag, kernel_with_coordinates, unvec
from .rep import Representation, _System

# A basis label of He_i: (verts, letters, a) is the element
# eps_{v_t}^a l_t ... l_1 with l_s = alpha_{v_s v_(s-1)}^(g_s) eps_{v_(s-1)}^(r_s).
Label = tuple[tuple[int, ...], tuple[tuple[int, int], ...], int]


def generalized_simple(spec: AlgebraSpec, i: int) -> Representation:
    dims = [spec.ci(i) if k == i else 0 for k in range(spec.n)]
    return Representation(spec, dims, {i: ExactMatrix.shift(spec.ci(i), spec.field)})


def simple(spec: AlgebraSpec, i: int) -> Representation:
    dims = [1 if k == i else 0 for k in range(spec.n)]
    return Representation(spec, dims)


def projective_labels(spec: AlgebraSpec, i: int) -> list[Label]:
    """K-basis of He_i in tensor-algebra normal form, sorted canonically."""
    labels: list[Label] = []
    stack: list[tuple[tuple[int, ...], tuple[tuple[int, int], ...]]] = [((i,), ())]
    while stack:
        verts, letters = stack.pop()
        v = verts[-1]
        for a in range(spec.ci(v)):
            labels.append((verts, letters, a))
        for k, src in spec.orientation:
            if src != v:
                continue
            # arrow alpha_kv: v -> k, left letters alpha_kv^(g) eps_v^r, r < f_kv
            for g in range(spec.g(k, v)):
                for r in range(spec.f(k, v)):
                    stack.append((verts + (k,), letters + ((g, r),)))
    labels.sort(key=lambda x: (len(x[0]), x[0], x[1], x[2]))
    return labels


def _act_eps(spec: AlgebraSpec, x: Label) -> Label | None:
    verts, letters, a = x
    if a + 1 >= spec.ci(verts[-1]):
        return None
    return (verts, letters, a + 1)


def _act_arrow(spec: AlgebraSpec, k: int, g: int, x: Label) -> Label | None:
    """alpha_kv^(g) * x, rewritten via eps_k^(f_vk) alpha_kv = alpha_kv eps_v^(f_kv)."""
    verts, letters, a = x
    v = verts[-1]
    q, r = divmod(a, spec.f(k, v))
    b = q * spec.f(v, k)
    if b >= spec.ci(k):
        return None
    return (verts + (k,), letters + ((g, r),), b)


def projective(spec: AlgebraSpec, i: int) -> Representation:
    if spec.kind != "H":
        raise ValueError("projectives are built over H")
    return _projective_cached(spec, i)


@lru_cache(maxsize=256)
def _projective_cached(spec: AlgebraSpec, i: int) -> Representation:
    labels = projective_labels(spec, i)
    by_vertex: dict[int, list[Label]] = {k: [] for k in range(spec.n)}
    for x in labels:
        by_vertex[x[0][-1]].append(x)
    index = {x: pos for k in by_vertex for pos, x in enumerate(by_vertex[k])}
    dims = [len(by_vertex[k]) for k in range(spec.n)]
    eps = {}
    for k in range(spec.n):
        data = [[0] * dims[k] for _ in range(dims[k])]
        for x in by_vertex[k]:
            y = _act_eps(spec, x)
            if y is not None:
                data[index[y]][index[x]] = 1
        eps[k] = ExactMatrix(dims[k], dims[k], data, spec.field, _trusted=True)
    arrows = {}
    for a in spec.arrows:
        k, v, g = a
        data = [[0] * dims[v] for _ in range(dims[k])]
        for x in by_vertex[v]:
            y = _act_arrow(spec, k, g, x)
            if y is not None:
                data[index[y]][index[x]] = 1
        arrows[a] = ExactMatrix(dims[k], dims[v], data, spec.field, _trusted=True)
    return Representation(spec, dims, eps, arrows)


def injective(spec: AlgebraSpec, i: int) -> Representation:
    """K-dual of the projective at i over the opposite orientation."""
    if spec.kind != "H":
        raise ValueError("injectives are built over H")
    p = projective(spec.opposite(), i)
    eps = {k: m.T for k, m in p.eps.items()}
    arrows = {(a, b, g): p.arrows[(b, a, g)].T for a, b, g in spec.arrows}
    return Representation(spec, p.dims, eps, arrows)


def free_eps(ci: int, r: int, field) -> ExactMatrix:
    return block_diag([ExactMatrix.shift(ci, field)] * r, field=field) if r else ExactMatrix.zeros(0, 0, field)


def random_locally_free(spec: AlgebraSpec, ranks: Sequence[int], rng: random.Random, bound: int = 2) -> Representation:
    """A random H-module with the given rank vector: free eps-actions, random solutions of the commutativity relations."""
    if spec.kind != "H":
        raise ValueError("random modules are drawn over H")
    fd = spec.field
    dims = [spec.ci(k) * ranks[k] for k in range(spec.n)]
    eps = {k: free_eps(spec.ci(k), ranks[k], fd) for k in range(spec.n)}
    arrows = {}
    for a in spec.arrows:
        i, j, _ = a
        if not dims[i] or not dims[j]:
            continue
        sys = _System([(dims[i], dims[j])])
        sys.add_sylvester(0, eps[j] ** spec.f(i, j), 0, eps[i] ** spec.f(j, i))
        kb, _ = kernel_with_coordinates(sys.matrix(fd))
        vals = [0] * (dims[i] * dims[j])
        for c in range(kb.cols):
            coef = fd.random_element(rng, bound)
            if coef:
                for r in range(kb.rows):
                    if kb[r, c]:
                        vals[r] += coef * kb[r, c]
        arrows[a] = unvec([fd.coerce(x) for x in vals], dims[i], dims[j], fd)
    return Representation(spec, dims, eps, arrows)
