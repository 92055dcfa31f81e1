"""Matrix representations of H and Pi and their homological invariants."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import (
    AlgebraSpec,
    Arrow,
    adjunction,
    arrow_key,
    one_tensor,
    parse_arrow_key,
    structure_map,
    tensor_eps,
)
from .cartan import CartanMatrix
from .linalg import (
    QQ,
    ExactMatrix,
    block_diag,
    inverse,
    is_invertible,
    kernel_with_coordinates,
    rank,
    solve,
    unvec,
    vec,
)


class SpecMismatchError(ValueError):
    pass


class NotLocallyFreeError(ValueError):
    pass


class Representation:
    """Vertex dimensions, loop matrices eps_i and arrow matrices (target x source)."""

    __slots__ = ("spec", "dims", "eps", "arrows")

    def __init__(self, spec: AlgebraSpec, dims: Sequence[int], eps: dict[int, ExactMatrix] | None = None,
                 arrows: dict[Arrow, ExactMatrix] | None = None):
        fd = spec.field
        self.spec = spec
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != spec.n:
            raise ValueError("one dimension per vertex expected")
        eps = eps or {}
        arrows = arrows or {}
        self.eps = {}
        for i in range(spec.n):
            m = eps.get(i)
            if m is None:
                m = ExactMatrix.zeros(self.dims[i], self.dims[i], fd)
            if m.shape != (self.dims[i], self.dims[i]):
                raise ValueError(f"eps {i + 1} has shape {m.shape}, expected {(self.dims[i],) * 2}")
            self.eps[i] = m
        known = set(spec.arrows)
        for a in arrows:
            if a not in known:
                raise ValueError(f"{arrow_key(a)} is not an arrow of this quiver")
        self.arrows = {}
        for a in spec.arrows:
            i, j, _ = a
            m = arrows.get(a)
            if m is None:
                m = ExactMatrix.zeros(self.dims[i], self.dims[j], fd)
            if m.shape != (self.dims[i], self.dims[j]):
                raise ValueError(f"{arrow_key(a)} has shape {m.shape}, expected {(self.dims[i], self.dims[j])}")
            self.arrows[a] = m

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def field(self):
        return self.spec.field

    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim() == 0

    def arrow_list(self, i: int, j: int) -> list[ExactMatrix]:
        return [self.arrows[(i, j, g)] for g in range(self.spec.g(i, j))] if (i, j) in self.spec.pairs else []

    def structure(self, i: int, j: int) -> ExactMatrix:
        """i_H_j (x) M_j -> M_i; zero when (i, j) carries no arrows in this quiver."""
        if (i, j) in self.spec.pairs:
            return structure_map(self.spec, i, j, self.eps[i], self.arrow_list(i, j))
        width = self.spec.g(i, j) * self.spec.f(j, i) * self.dims[j]
        return ExactMatrix.zeros(self.dims[i], width, self.field)

    def with_spec(self, spec: AlgebraSpec) -> "Representation":
        return Representation(spec, self.dims, self.eps, {a: m for a, m in self.arrows.items() if a in set(spec.arrows)})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Representation):
            return NotImplemented
        return (self.spec == other.spec and self.dims == other.dims and self.eps == other.eps
                and self.arrows == other.arrows)

    def __repr__(self) -> str:
        return f"Representation({self.spec.kind}, dims={list(self.dims)})"

    def to_json(self) -> dict:
        return {
            "dims": list(self.dims),
            "eps": {str(i + 1): m.to_json() for i, m in self.eps.items()},
            "arrows": {arrow_key(a): m.to_json() for a, m in self.arrows.items()},
            "kind": self.spec.kind,
        }

    @classmethod
    def from_json(cls, spec: AlgebraSpec, data: dict) -> "Representation":
        fd = spec.field
        dims = data["dims"]
        eps = {int(k) - 1: ExactMatrix.from_json(v, fd) for k, v in data.get("eps", {}).items()}
        arrows = {parse_arrow_key(k): ExactMatrix.from_json(v, fd) for k, v in data.get("arrows", {}).items()}
        return cls(spec, dims, eps, arrows)


@dataclass(frozen=True)
class Violation:
    relation: str
    where: str
    witness: tuple | None = None

    def __str__(self) -> str:
        return f"{self.relation} at {self.where}"


def _witness(m: ExactMatrix) -> tuple | None:
    """A standard basis vector e_k with m e_k != 0, reported 1-based."""
    for c in range(m.cols):
        if any(m[r, c] for r in range(m.rows)):
            return (c + 1,)
    return None


def mesh(m: Representation, i: int) -> ExactMatrix:
    """sum_j sgn(i,j) sum_f eps_i^f M(alpha_ij) M(alpha_ji) eps_i^(f_ji-1-f)."""
    spec = m.spec
    total = ExactMatrix.zeros(m.dims[i], m.dims[i], m.field)
    for j in spec.neighbors(i):
        inmap = m.structure(i, j)
        outmap = adjunction(spec, j, i, m.structure(j, i), m.eps[i])
        term = inmap @ outmap
        total = total + (term if spec.sgn(i, j) > 0 else -term)
    return total


def validate(m: Representation) -> list[Violation]:
    spec = m.spec
    out: list[Violation] = []
    for i in range(spec.n):
        e = m.eps[i] ** spec.ci(i)
        if not e.is_zero():
            power = f"^{spec.ci(i)}" if spec.ci(i) > 1 else ""
            out.append(Violation(f"eps{i + 1}{power} = 0", f"vertex {i + 1}", _witness(e)))
    for a in spec.arrows:
        i, j, g = a
        lhs = (m.eps[i] ** spec.f(j, i)) @ m.arrows[a]
        rhs = m.arrows[a] @ (m.eps[j] ** spec.f(i, j))
        if lhs != rhs:
            out.append(Violation("commutativity", arrow_key(a), _witness(lhs - rhs)))
    if spec.kind == "Pi":
        for i in range(spec.n):
            r = mesh(m, i)
            if not r.is_zero():
                out.append(Violation("mesh", f"vertex {i + 1}", _witness(r)))
    return out


def is_locally_free(m: Representation) -> tuple[bool, tuple[int, ...] | None]:
    ranks = []
    for i in range(m.n):
        ci, d = m.spec.ci(i), m.dims[i]
        if d % ci != 0 or m.eps[i].rank() != d - d // ci:
            return False, None
        ranks.append(d // ci)
    return True, tuple(ranks)


def rank_vector(m: Representation) -> tuple[int, ...]:
    ok, r = is_locally_free(m)
    if not ok:
        raise NotLocallyFreeError("rank vector needs a locally free module")
    return r


def _require_same_spec(m: Representation, n: Representation) -> None:
    if m.spec != n.spec:
        raise SpecMismatchError("representations over different algebras")


# linear systems on tuples of matrices


class _System:
    """Unknown matrices X_k (p_k x q_k) stacked row-major; equations appended as dense rows."""

    def __init__(self, shapes: Sequence[tuple[int, int]]):
        self.shapes = list(shapes)
        self.offsets = []
        off = 0
        for p, q in shapes:
            self.offsets.append(off)
            off += p * q
        self.nvars = off
        self.rows: list[list] = []

    def add_sylvester(self, left: int, a: ExactMatrix | None, right: int, b: ExactMatrix | None, sign: int = -1) -> None:
        """Equations X_left @ a + sign * b @ X_right = 0 (either term may be absent)."""
        if a is not None:
            p, q = self.shapes[left][0], a.cols
        else:
            p, q = b.rows, self.shapes[right][1]
        new = [[0] * self.nvars for _ in range(p * q)]
        if a is not None:
            ql = self.shapes[left][1]
            off = self.offsets[left]
            am = a._m
            for r in range(p):
                for k in range(ql):
                    row_a = am[k]
                    var = off + r * ql + k
                    for c in range(q):
                        if row_a[c]:
                            new[r * q + c][var] += row_a[c]
        if b is not None:
            qr = self.shapes[right][1]
            off = self.offsets[right]
            bm = b._m
            for r in range(p):
                row_b = bm[r]
                for k in range(len(row_b)):
                    if row_b[k]:
                        coef = sign * row_b[k]
                        for c in range(q):
                            new[r * q + c][off + k * qr + c] += coef
        self.rows.extend(new)

    def matrix(self, field) -> ExactMatrix:
        p = field.p
        rows = self.rows if p is None else [[x % p for x in r] for r in self.rows]
        return ExactMatrix(len(rows), self.nvars, rows, field, _trusted=True)

    def split(self, v: Sequence, field) -> list[ExactMatrix]:
        return [unvec(v[o:o + p * q], p, q, field) for o, (p, q) in zip(self.offsets, self.shapes)]


def commutant_basis(eps_a: ExactMatrix, eps_b: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    """Hom_{K[eps]}(A, B) as the kernel of X -> X eps_a - eps_b X, with coordinate rows."""
    sys = _System([(eps_b.rows, eps_a.rows)])
    sys.add_sylvester(0, eps_a, 0, eps_b)
    return kernel_with_coordinates(sys.matrix(eps_a.field))


@dataclass(frozen=True)
class HomSpace:
    dim: int
    basis: tuple[tuple[ExactMatrix, ...], ...]


def _hom_system(m: Representation, n: Representation) -> _System:
    spec = m.spec
    sys = _System([(n.dims[k], m.dims[k]) for k in range(spec.n)])
    for k in range(spec.n):
        sys.add_sylvester(k, m.eps[k], k, n.eps[k])
    for a in spec.arrows:
        i, j, _ = a
        sys.add_sylvester(i, m.arrows[a], j, n.arrows[a])
    return sys


def hom_space(m: Representation, n: Representation) -> HomSpace:
    """All tuples (f_k) commuting with every loop and arrow, as one nullspace."""
    _require_same_spec(m, n)
    sys = _hom_system(m, n)
    if sys.nvars == 0:
        return HomSpace(0, ())
    k, _ = kernel_with_coordinates(sys.matrix(m.field))
    basis = []
    for c in range(k.cols):
        col = [k[r, c] for r in range(k.rows)]
        basis.append(tuple(sys.split(col, m.field)))
    return HomSpace(k.cols, tuple(basis))


def hom_dim(m: Representation, n: Representation) -> int:
    _require_same_spec(m, n)
    sys = _hom_system(m, n)
    if sys.nvars == 0:
        return 0
    return sys.nvars - rank(sys.matrix(m.field))


def is_morphism(m: Representation, n: Representation, phi: Sequence[ExactMatrix]) -> bool:
    for k in range(m.n):
        if phi[k] @ m.eps[k] != n.eps[k] @ phi[k]:
            return False
    for a in m.spec.arrows:
        i, j, _ = a
        if phi[i] @ m.arrows[a] != n.arrows[a] @ phi[j]:
            return False
    return True


def euler_form(cartan: CartanMatrix, symmetrizer: Sequence[int], orientation: Iterable[tuple[int, int]],
               a: Sequence[int], b: Sequence[int]) -> int:
    """<a, b>_H = sum c_i a_i b_i - sum_{(j,i) in Omega} c_i |c_ij| a_i b_j."""
    total = sum(symmetrizer[i] * a[i] * b[i] for i in range(cartan.n))
    for j, i in orientation:
        total -= symmetrizer[i] * abs(cartan[i, j]) * a[i] * b[j]
    return total


def _flatten(mats: Iterable[ExactMatrix]) -> list:
    out: list = []
    for x in mats:
        out.extend(vec(x))
    return out


def ext1_dim(m: Representation, n: Representation) -> int:
    """dim Ext^1_H(M, N) as the cokernel of the map delta of the bimodule resolution."""
    _require_same_spec(m, n)
    if m.spec.kind != "H":
        raise ValueError("ext1_dim works over H; use pimod for Pi")
    if not is_locally_free(m)[0]:
        raise NotLocallyFreeError("first argument must be locally free")
    spec = m.spec
    fd = m.field
    # target: Hom_Hj(j_H_i (x) M_i, N_j) for (j, i) in Omega
    target_dim = 0
    tensor = {}
    for j, i in spec.pairs:
        t_eps = tensor_eps(spec, j, i, m.eps[i])
        tensor[j, i] = t_eps
        kb, _ = commutant_basis(t_eps, n.eps[j])
        target_dim += kb.cols
    images = []
    for k in range(spec.n):
        kb, _ = commutant_basis(m.eps[k], n.eps[k])
        for c in range(kb.cols):
            phi = unvec([kb[r, c] for r in range(kb.rows)], n.dims[k], m.dims[k], fd)
            comps = []
            for j, i in spec.pairs:
                cols = tensor[j, i].rows
                if k == j:
                    comps.append(phi @ m.structure(j, i))
                else:
                    comps.append(ExactMatrix.zeros(n.dims[j], cols, fd))
                if k == i:
                    comps[-1] = comps[-1] - n.structure(j, i) @ one_tensor(spec, j, i, phi)
            images.append(_flatten(comps))
    if not images or not images[0]:
        return target_dim
    r = rank(ExactMatrix(len(images), len(images[0]), images, fd, _trusted=True))
    return target_dim - r


def is_rigid(m: Representation) -> bool:
    return ext1_dim(m, m) == 0


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    certain: bool
    certificate: tuple[ExactMatrix, ...] | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.isomorphic


def is_isomorphic(m: Representation, n: Representation, trials: int = 20, rng: random.Random | None = None) -> IsoResult:
    """Randomized isomorphism test; a positive answer carries an invertible morphism."""
    _require_same_spec(m, n)
    if m.dims != n.dims:
        return IsoResult(False, True, None, "dimension vectors differ")
    if m.dim() == 0:
        return IsoResult(True, True, tuple(ExactMatrix.zeros(0, 0, m.field) for _ in range(m.n)), "zero modules")
    hmn = hom_space(m, n)
    if hmn.dim != hom_dim(n, m):
        return IsoResult(False, True, None, "Hom dimensions differ")
    if hmn.dim == 0:
        return IsoResult(False, True, None, "no nonzero morphisms")
    rng = rng or random.Random(0)
    fd = m.field
    for _ in range(trials):
        coeffs = [fd.random_element(rng, 7) for _ in range(hmn.dim)]
        phi = []
        for k in range(m.n):
            acc = ExactMatrix.zeros(n.dims[k], m.dims[k], fd)
            for c, b in zip(coeffs, hmn.basis):
                if c:
                    acc = acc + b[k].scale(c)
            phi.append(acc)
        if all(is_invertible(p) for p in phi):
            return IsoResult(True, True, tuple(phi), "invertible morphism found")
    return IsoResult(False, False, None, f"no invertible morphism in {trials} trials")


def direct_sum(m: Representation, n: Representation) -> Representation:
    _require_same_spec(m, n)
    fd = m.field
    dims = [a + b for a, b in zip(m.dims, n.dims)]
    eps = {k: block_diag([m.eps[k], n.eps[k]], field=fd) for k in range(m.n)}
    arrows = {a: block_diag([m.arrows[a], n.arrows[a]], field=fd) for a in m.spec.arrows}
    return Representation(m.spec, dims, eps, arrows)


def projective_dimension_vectors(spec: AlgebraSpec) -> list[tuple[int, ...]]:
    """dim P_i = c_i alpha_i + sum_{(j,i) in Omega} |c_ji| dim P_j, by recursion."""
    memo: dict[int, tuple[int, ...]] = {}

    def dimp(i: int) -> tuple[int, ...]:
        if i not in memo:
            v = [0] * spec.n
            v[i] = spec.ci(i)
            for j, k in spec.orientation:
                if k == i:
                    w = dimp(j)
                    mult = abs(spec.cartan[j, i])
                    v = [a + mult * b for a, b in zip(v, w)]
            memo[i] = tuple(v)
        return memo[i]

    return [dimp(i) for i in range(spec.n)]


def coxeter_matrix(spec: AlgebraSpec) -> list[list[int]]:
    """Phi_H = -C_H^T C_H^{-1} where C_H has the columns dim P_k."""
    cols = projective_dimension_vectors(spec)
    ch = ExactMatrix.from_rows([[cols[k][i] for k in range(spec.n)] for i in range(spec.n)], QQ)
    phi = -(ch.T @ inverse(ch))
    out = []
    for r in range(spec.n):
        row = []
        for c in range(spec.n):
            x = phi[r, c]
            if x != int(x):
                raise AssertionError("Coxeter matrix is not integral")
            row.append(int(x))
        out.append(row)
    return out


def apply_int_matrix(a: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(a[r][c] * v[c] for c in range(len(v))) for r in range(len(a)))


def restrict_to(m: Representation, vertex_bases: dict[int, ExactMatrix]) -> Representation:
    """Submodule spanned at each vertex by the given column bases (assumed invariant)."""
    spec = m.spec
    dims = [vertex_bases[k].cols for k in range(spec.n)]

    def coords(k: int, img: ExactMatrix) -> ExactMatrix:
        x = solve(vertex_bases[k], img)
        if x is None:
            raise ValueError("subspace is not invariant")
        return x

    eps = {k: coords(k, m.eps[k] @ vertex_bases[k]) for k in range(spec.n)}
    arrows = {a: coords(a[0], m.arrows[a] @ vertex_bases[a[1]]) for a in spec.arrows}
    return Representation(spec, dims, eps, arrows)
