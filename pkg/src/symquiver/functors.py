"""Reflection and Coxeter functors, the AR translation on locally free modules, tau-orbits."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    AlgebraSpec,
    adjunction,
    arrows_from_adjoint,
    arrows_from_structure,
    tensor_eps,
)
from .cartan import dynkin_type, flip_orientation, is_sink, is_source
from .construct import projective
from .linalg import (
    ExactMatrix,
    block_diag,
    column_basis,
    complement_basis,
    hstack,
    kernel_with_coordinates,
    rank,
    vstack,
)
from .rep import NotLocallyFreeError, Representation, is_locally_free, rank_vector
from .roots import NotDynkinError, minus_admissible_sequence, plus_admissible_sequence

DEFAULT_CAP = 256


class FunctorError(ValueError):
    pass


def twist(m: Representation) -> Representation:
    """Negate every arrow matrix, keep the loops."""
    return Representation(m.spec, m.dims, m.eps, {a: -x for a, x in m.arrows.items()})


@dataclass
class _Local:
    nbrs: list[int]
    sizes: list[int]  # dimension of i_H_j (x) M_j per neighbour
    eps: ExactMatrix  # eps_i on the direct sum
    inmap: ExactMatrix  # M_i,in: sum -> M_i
    outmap: ExactMatrix  # M_i,out: M_i -> sum


def _local(m: Representation, i: int) -> _Local:
    spec = m.spec
    nbrs = spec.neighbors(i)
    eps_blocks, ins, outs, sizes = [], [], [], []
    for j in nbrs:
        t_eps = tensor_eps(spec, i, j, m.eps[j])
        eps_blocks.append(t_eps)
        sizes.append(t_eps.rows)
        s = m.structure(i, j)
        ins.append(s if spec.sgn(i, j) > 0 else -s)
        outs.append(adjunction(spec, j, i, m.structure(j, i), m.eps[i]))
    fd = m.field
    total = sum(sizes)
    eps = block_diag(eps_blocks, field=fd) if eps_blocks else ExactMatrix.zeros(0, 0, fd)
    inmap = hstack(ins, rows=m.dims[i], field=fd)
    outmap = vstack(outs, cols=m.dims[i], field=fd)
    assert inmap.cols == total and outmap.rows == total
    return _Local(nbrs, sizes, eps, inmap, outmap)


def _rebuild(m: Representation, i: int, loc: _Local, new_dim: int, new_eps: ExactMatrix,
             new_in: ExactMatrix, new_out: ExactMatrix) -> Representation:
    """Replace vertex i given the new in-map (sum -> new M_i) and out-map (new M_i -> sum)."""
    spec = m.spec
    dims = list(m.dims)
    dims[i] = new_dim
    eps = dict(m.eps)
    eps[i] = new_eps
    arrows = dict(m.arrows)
    off = 0
    for j, size in zip(loc.nbrs, loc.sizes):
        comp_in = new_in.submatrix(None, range(off, off + size))
        comp_out = new_out.submatrix(range(off, off + size), None)
        off += size
        if (i, j) in spec.pairs:
            s = comp_in if spec.sgn(i, j) > 0 else -comp_in
            for g, a in enumerate(arrows_from_structure(spec, i, j, s, m.dims[j])):
                arrows[(i, j, g)] = a
        if (j, i) in spec.pairs:
            for g, a in enumerate(arrows_from_adjoint(spec, i, j, comp_out, m.dims[j])):
                arrows[(j, i, g)] = a
    return Representation(spec, dims, eps, arrows)


def _sigma_plus(m: Representation, i: int) -> Representation:
    loc = _local(m, i)
    total = sum(loc.sizes)
    k, free = kernel_with_coordinates(loc.inmap) if total else (ExactMatrix.zeros(0, 0, m.field), [])
    new_eps = (loc.eps @ k).submatrix(free, None)
    new_in = (loc.outmap @ loc.inmap).submatrix(free, None)
    return _rebuild(m, i, loc, k.cols, new_eps, new_in, k)


def _sigma_minus(m: Representation, i: int) -> Representation:
    loc = _local(m, i)
    b = column_basis(loc.outmap)
    e, pi = complement_basis(b)
    new_eps = pi @ loc.eps @ e
    new_out = loc.outmap @ loc.inmap @ e
    return _rebuild(m, i, loc, e.cols, new_eps, pi, new_out)


def sigma_plus(m: Representation, i: int) -> Representation:
    """Replace M_i by Ker(M_i,in); in-map M_out o M_in, out-map the inclusion."""
    if m.spec.kind != "Pi":
        raise ValueError("sigma_plus acts on Pi-modules")
    return _sigma_plus(m, i)


def sigma_minus(m: Representation, i: int) -> Representation:
    """Replace M_i by Cok(M_i,out); in-map the projection, out-map induced by M_out o M_in."""
    if m.spec.kind != "Pi":
        raise ValueError("sigma_minus acts on Pi-modules")
    return _sigma_minus(m, i)


def sub_at(m: Representation, i: int) -> int:
    """dim Ker(M_i,out), the socle-type part removed by Sigma_i^+ Sigma_i^-."""
    loc = _local(m, i)
    return m.dims[i] - rank(loc.outmap) if m.dims[i] else 0


def _reflect_h(m: Representation, i: int, plus: bool) -> Representation:
    spec = m.spec
    if spec.kind != "H":
        raise ValueError("reflection functors act on H-modules")
    if plus and not is_sink(spec.orientation, i):
        raise FunctorError(f"vertex {i + 1} is not a sink")
    if not plus and not is_source(spec.orientation, i):
        raise FunctorError(f"vertex {i + 1} is not a source")
    pi = m.with_spec(spec.as_kind("Pi"))
    out = _sigma_plus(pi, i) if plus else _sigma_minus(pi, i)
    new_spec = spec.with_orientation(flip_orientation(spec.orientation, i))
    for a in out.arrows:
        if a not in set(new_spec.arrows) and not out.arrows[a].is_zero():
            raise AssertionError("reflected module has arrows against the new orientation")
    return out.with_spec(new_spec)


def reflection_plus(m: Representation, i: int) -> Representation:
    """F_i^+ for a sink i; the result lives over H(C, D, s_i(Omega))."""
    return _reflect_h(m, i, True)


def reflection_minus(m: Representation, i: int) -> Representation:
    return _reflect_h(m, i, False)


def coxeter_plus(m: Representation, sequence: tuple[int, ...] | None = None) -> Representation:
    spec = m.spec
    seq = plus_admissible_sequence(spec.cartan, spec.orientation) if sequence is None else sequence
    out = m
    for i in seq:
        out = reflection_plus(out, i)
    if out.spec.orientation != spec.orientation:
        raise AssertionError("Coxeter functor did not return to the starting orientation")
    return out


def coxeter_minus(m: Representation, sequence: tuple[int, ...] | None = None) -> Representation:
    spec = m.spec
    seq = minus_admissible_sequence(spec.cartan, spec.orientation) if sequence is None else sequence
    out = m
    for i in seq:
        out = reflection_minus(out, i)
    if out.spec.orientation != spec.orientation:
        raise AssertionError("Coxeter functor did not return to the starting orientation")
    return out


def tau(m: Representation) -> Representation:
    if not is_locally_free(m)[0]:
        raise NotLocallyFreeError("tau is computed as T C^+ only on locally free modules")
    return twist(coxeter_plus(m))


def tau_minus(m: Representation) -> Representation:
    if not is_locally_free(m)[0]:
        raise NotLocallyFreeError("tau^- is computed as T C^- only on locally free modules")
    return twist(coxeter_minus(m))


@dataclass
class TauOrbit:
    start: Representation
    items: list[tuple[Representation, tuple[int, ...]]]
    terminated: bool

    @property
    def capped(self) -> bool:
        return not self.terminated

    @property
    def rank_vectors(self) -> list[tuple[int, ...]]:
        return [r for _, r in self.items]


def tau_orbit(spec: AlgebraSpec, i: int, cap: int = DEFAULT_CAP) -> TauOrbit:
    """P_i, tau^-(P_i), tau^-2(P_i), ... until zero or ``cap`` members."""
    start = projective(spec, i)
    items = []
    cur = start
    while not cur.is_zero():
        if len(items) >= cap:
            return TauOrbit(start, items, False)
        items.append((cur, rank_vector(cur)))
        cur = tau_minus(cur)
    return TauOrbit(start, items, True)


def classify_tau_locally_free(spec: AlgebraSpec, cap: int = DEFAULT_CAP) -> list[tuple[int, ...]]:
    """Rank vectors of all tau-locally free modules, one per isomorphism class."""
    if not dynkin_type(spec.cartan).is_dynkin:
        raise NotDynkinError("classification needs Dynkin type")
    found: list[tuple[int, ...]] = []
    for i in range(spec.n):
        orbit = tau_orbit(spec, i, cap)
        if not orbit.terminated:
            raise AssertionError("tau-orbit did not terminate in Dynkin type")
        found.extend(orbit.rank_vectors)
    if len(found) != len(set(found)):
        raise AssertionError("rank vector repeated across tau-orbits")
    return sorted(found)


class CriteriaDisagreement(AssertionError):
    pass


def restricted_in_map(m: Representation, i: int) -> ExactMatrix:
    """sum_{(i,j) in Omega} i_H_j (x) M_j -> M_i built from the structure maps."""
    spec = m.spec
    parts = [m.structure(i, j) for j in spec.neighbors(i) if (i, j) in spec.orientation]
    return hstack(parts, rows=m.dims[i], field=m.field)


def is_gorenstein_projective(m: Representation) -> bool:
    """Injectivity of every restricted in-map, checked against C^+(M) = 0."""
    if m.spec.kind != "H":
        raise ValueError("Gorenstein-projective test works over H")
    injective = all(rank(restricted_in_map(m, i)) == restricted_in_map(m, i).cols for i in range(m.n))
    vanishes = coxeter_plus(m).is_zero()
    if injective != vanishes:
        raise CriteriaDisagreement(f"in-map injectivity {injective} but C^+(M) = 0 is {vanishes}")
    return injective
