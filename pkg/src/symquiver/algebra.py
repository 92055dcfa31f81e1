"""The algebras H(C,D,Omega) and Pi(C,D): quivers, relations, bimodule bookkeeping.

Conventions used throughout the package:

* a pair (i, j) in Omega gives arrows alpha_ij^(g): j -> i, g = 0..g_ij-1;
* i_H_j (x) N_j is realized on |c_ji| blocks (g, f), f = 0..f_ji-1, each a
  copy of N_j, the block (g, f) holding eps_i^f alpha_ij^(g) (x) n;
* the structure map i_H_j (x) M_j -> M_i has block (g, f) = eps_i^f M(alpha_ij^(g)).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .cartan import (
    CartanMatrix,
    DerivedConstants,
    check_symmetrizer,
    derived_constants,
    minimal_symmetrizer,
    validate_cartan,
    validate_orientation,
)
from .linalg import (
    QQ,
    ExactMatrix,
    FieldDescriptor,
    block_diag,
    column_basis,
    complement_basis,
    hstack,
    inverse,
    vstack,
)

Arrow = tuple[int, int, int]  # (i, j, g): alpha_ij^(g), j -> i


@dataclass(frozen=True)
class AlgebraSpec:
    kind: str  # "H" or "Pi"
    cartan: CartanMatrix
    symmetrizer: tuple[int, ...]
    orientation: frozenset[tuple[int, int]]
    field: FieldDescriptor = QQ

    def __post_init__(self) -> None:
        if self.kind not in ("H", "Pi"):
            raise ValueError("kind must be 'H' or 'Pi'")

    @property
    def n(self) -> int:
        return self.cartan.n

    @cached_property
    def derived(self) -> DerivedConstants:
        return derived_constants(self.cartan, self.symmetrizer)

    def ci(self, i: int) -> int:
        return self.symmetrizer[i]

    def g(self, i: int, j: int) -> int:
        return self.derived.g[i, j]

    def f(self, i: int, j: int) -> int:
        return self.derived.f[i, j]

    def sgn(self, i: int, j: int) -> int:
        return 1 if (i, j) in self.orientation else -1

    def neighbors(self, i: int) -> list[int]:
        return self.cartan.neighbors(i)

    @cached_property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        """Omega for kind H, the doubled set for kind Pi."""
        if self.kind == "H":
            return tuple(sorted(self.orientation))
        return tuple(sorted(self.orientation | {(j, i) for i, j in self.orientation}))

    @cached_property
    def arrows(self) -> tuple[Arrow, ...]:
        return tuple((i, j, g) for i, j in self.pairs for g in range(self.g(i, j)))

    def with_orientation(self, omega: frozenset[tuple[int, int]]) -> "AlgebraSpec":
        return AlgebraSpec(self.kind, self.cartan, self.symmetrizer, frozenset(omega), self.field)

    def as_kind(self, kind: str) -> "AlgebraSpec":
        return AlgebraSpec(kind, self.cartan, self.symmetrizer, self.orientation, self.field)

    def with_field(self, field: FieldDescriptor) -> "AlgebraSpec":
        return AlgebraSpec(self.kind, self.cartan, self.symmetrizer, self.orientation, field)

    def opposite(self) -> "AlgebraSpec":
        return self.with_orientation(frozenset((j, i) for i, j in self.orientation))

    # relations, symbolically

    def relations(self) -> list[str]:
        out = []
        for i in range(self.n):
            out.append(f"{_pow(f'eps{i + 1}', self.ci(i))} = 0")
        for i, j in self.pairs:
            for g in range(self.g(i, j)):
                a = _arrow_name(i, j, g, self.g(i, j))
                lhs = _word(_pow(f"eps{i + 1}", self.f(j, i)), a)
                rhs = _word(a, _pow(f"eps{j + 1}", self.f(i, j)))
                out.append(f"{lhs} = {rhs}")
        if self.kind == "Pi":
            for i in range(self.n):
                terms = []
                for j in self.neighbors(i):
                    s = "+" if self.sgn(i, j) > 0 else "-"
                    for g in range(self.g(i, j)):
                        for f in range(self.f(j, i)):
                            left = _pow(f"eps{i + 1}", f)
                            right = _pow(f"eps{i + 1}", self.f(j, i) - 1 - f)
                            word = _word(left, _arrow_name(i, j, g, self.g(i, j)), _arrow_name(j, i, g, self.g(i, j)), right)
                            terms.append((s, word))
                if terms:
                    body = ("-" if terms[0][0] == "-" else "") + terms[0][1]
                    body += "".join(f" {s} {w}" for s, w in terms[1:])
                    out.append(f"{body} = 0")
        return out

    def to_json(self) -> dict:
        return {
            "cartan": self.cartan.to_lists(),
            "symmetrizer": list(self.symmetrizer),
            "orientation": [[i + 1, j + 1] for i, j in sorted(self.orientation)],
            "field": self.field.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict, kind: str = "H", field: FieldDescriptor | None = None) -> "AlgebraSpec":
        c = validate_cartan(data["cartan"])
        sym = data.get("symmetrizer")
        d = minimal_symmetrizer(c) if sym is None else check_symmetrizer(c, sym)
        omega = validate_orientation(c, [(i - 1, j - 1) for i, j in data.get("orientation", [])])
        fd = FieldDescriptor.from_json(data.get("field")) if field is None else field
        return cls(kind, c, d, omega, fd)


def _pow(name: str, k: int) -> str:
    if k == 0:
        return ""
    return name if k == 1 else f"{name}^{k}"


def _word(*factors: str) -> str:
    return " ".join(x for x in factors if x)


def _arrow_name(i: int, j: int, g: int, gij: int) -> str:
    base = f"a{i + 1}{j + 1}"
    return base if gij == 1 else f"{base}({g + 1})"


def build_algebra(cartan, symmetrizer=None, orientation=(), kind: str = "H", field: FieldDescriptor = QQ) -> AlgebraSpec:
    """Validate raw data and package it; raw vertices here are 0-based."""
    c = cartan if isinstance(cartan, CartanMatrix) else validate_cartan(cartan)
    d = minimal_symmetrizer(c) if symmetrizer is None else check_symmetrizer(c, symmetrizer)
    omega = validate_orientation(c, orientation)
    return AlgebraSpec(kind, c, d, omega, field)


def arrow_key(a: Arrow) -> str:
    i, j, g = a
    return f"alpha:{i + 1}:{j + 1}:{g + 1}"


def parse_arrow_key(key: str) -> Arrow:
    tag, i, j, g = key.split(":")
    if tag != "alpha":
        raise ValueError(f"bad arrow key {key!r}")
    return (int(i) - 1, int(j) - 1, int(g) - 1)


# bimodule bases


def left_basis(spec: AlgebraSpec, i: int, j: int) -> list[tuple[int, int]]:
    """i_L_j = {alpha_ij^(g) eps_j^f : f < f_ij} as (g, f)."""
    return [(g, f) for g in range(spec.g(i, j)) for f in range(spec.f(i, j))]


def right_basis(spec: AlgebraSpec, i: int, j: int) -> list[tuple[int, int]]:
    """i_R_j = {eps_i^f alpha_ij^(g) : f < f_ji} as (g, f)."""
    return [(g, f) for g in range(spec.g(i, j)) for f in range(spec.f(j, i))]


def dual_basis_element(spec: AlgebraSpec, j: int, i: int, b: tuple[int, int]) -> tuple[int, int]:
    """For b = alpha_ji^(g) eps_i^(f_ji-1-f) in j_L_i return b* = eps_i^f alpha_ij^(g) in i_R_j."""
    g, e = b
    return (g, spec.f(j, i) - 1 - e)


@dataclass(frozen=True)
class TensorSpace:
    dim: int
    eps: ExactMatrix
    labels: tuple[tuple[int, int, int], ...]  # (g, f, k): eps_i^f alpha_ij^(g) (x) basis vector k


def tensor_eps(spec: AlgebraSpec, i: int, j: int, eps_j: ExactMatrix) -> ExactMatrix:
    """eps_i acting on i_H_j (x) N_j in the block basis."""
    gij, fji, fij = spec.g(i, j), spec.f(j, i), spec.f(i, j)
    d = eps_j.rows
    fd = eps_j.field
    nb = gij * fji
    data = [[0] * (nb * d) for _ in range(nb * d)]
    wrap = eps_j ** fij
    for g in range(gij):
        for f in range(fji):
            src = (g * fji + f) * d
            if f + 1 < fji:
                dst = src + d
                for k in range(d):
                    data[dst + k][src + k] = 1
            else:
                dst = g * fji * d
                for r in range(d):
                    for k in range(d):
                        data[dst + r][src + k] = wrap[r, k]
    return ExactMatrix(nb * d, nb * d, data, fd, _trusted=True)


def tensor_space(spec: AlgebraSpec, i: int, j: int, eps_j: ExactMatrix) -> TensorSpace:
    d = eps_j.rows
    labels = tuple((g, f, k) for g, f in right_basis(spec, i, j) for k in range(d))
    return TensorSpace(len(labels), tensor_eps(spec, i, j, eps_j), labels)


def tensor_blocks(spec: AlgebraSpec, i: int, j: int) -> int:
    return spec.g(i, j) * spec.f(j, i)


def one_tensor(spec: AlgebraSpec, i: int, j: int, phi: ExactMatrix) -> ExactMatrix:
    """i_H_j (x) phi for phi: N_j -> N'_j."""
    return block_diag([phi] * tensor_blocks(spec, i, j), field=phi.field)


def structure_map(spec: AlgebraSpec, i: int, j: int, eps_i: ExactMatrix, arrows: Sequence[ExactMatrix]) -> ExactMatrix:
    """i_H_j (x) M_j -> M_i assembled from the arrow matrices M(alpha_ij^(g))."""
    fji = spec.f(j, i)
    blocks = []
    for a in arrows:
        cur = a
        for f in range(fji):
            blocks.append(cur)
            cur = eps_i @ cur
    return hstack(blocks, rows=eps_i.rows, field=eps_i.field)


def adjunction(spec: AlgebraSpec, j: int, i: int, fmap: ExactMatrix, eps_mi: ExactMatrix,
               eps_nj: ExactMatrix | None = None) -> ExactMatrix:
    """ad_ji: Hom_Hj(j_H_i (x) M_i, N_j) -> Hom_Hi(M_i, i_H_j (x) N_j).

    The output block (g, f) is F_(g,0) eps^(f_ji-1-f), i.e. the sum over the
    left basis b of j_H_i of b* (x) F(b (x) -).
    """
    dm = eps_mi.rows
    if eps_nj is not None:
        t_eps = tensor_eps(spec, j, i, eps_mi)
        if fmap @ t_eps != eps_nj @ fmap:
            raise ValueError("input map is not H_j-linear")
    fji, fij = spec.f(j, i), spec.f(i, j)
    blocks = []
    pows = [eps_mi ** e for e in range(fji)]
    for g in range(spec.g(i, j)):
        head = fmap.submatrix(None, range(g * fij * dm, g * fij * dm + dm))
        for f in range(fji):
            blocks.append(head @ pows[fji - 1 - f])
    return vstack(blocks, cols=dm, field=fmap.field) if blocks else ExactMatrix.zeros(0, dm, fmap.field)


def adjunction_inverse(spec: AlgebraSpec, j: int, i: int, gmap: ExactMatrix, eps_nj: ExactMatrix) -> ExactMatrix:
    """Inverse of :func:`adjunction`: recover F from G: M_i -> i_H_j (x) N_j."""
    dn = eps_nj.rows
    fji, fij = spec.f(j, i), spec.f(i, j)
    pows = [eps_nj ** e for e in range(fij)]
    blocks = []
    for g in range(spec.g(i, j)):
        start = (g * fji + fji - 1) * dn
        head = gmap.submatrix(range(start, start + dn), None)
        for e in range(fij):
            blocks.append(pows[e] @ head)
    return hstack(blocks, rows=dn, field=gmap.field)


def arrows_from_structure(spec: AlgebraSpec, i: int, j: int, smap: ExactMatrix, dj: int) -> list[ExactMatrix]:
    """Read M(alpha_ij^(g)) off the (g, 0) blocks of a structure map."""
    fji = spec.f(j, i)
    return [smap.submatrix(None, range(g * fji * dj, g * fji * dj + dj)) for g in range(spec.g(i, j))]


def arrows_from_adjoint(spec: AlgebraSpec, i: int, j: int, gmap: ExactMatrix, dj: int) -> list[ExactMatrix]:
    """M(alpha_ji^(g)) from G = ad_ji(M_ji): M_i -> i_H_j (x) M_j, the (g, f_ji-1) row blocks."""
    fji = spec.f(j, i)
    out = []
    for g in range(spec.g(i, j)):
        start = (g * fji + fji - 1) * dj
        out.append(gmap.submatrix(range(start, start + dj), None))
    return out


# free H_i-modules and the trace pairing


def free_basis(eps: ExactMatrix, ci: int) -> ExactMatrix:
    """Change of basis P to the canonical free basis (rank-block major, eps-power minor).

    Raises ValueError when the module is not free over K[eps]/(eps^ci).
    """
    d = eps.rows
    if d % ci != 0 or eps.rank() != d - d // ci or not (eps ** ci).is_zero():
        raise ValueError("module is not free")
    r = d // ci
    b = column_basis(eps)
    e, _ = complement_basis(b)
    cols = []
    for s in range(r):
        v = e.submatrix(None, [s])
        for _ in range(ci):
            cols.append(v)
            v = eps @ v
    return hstack(cols, rows=d, field=eps.field)


def trace_pairing(spec: AlgebraSpec, i: int, fmap: ExactMatrix, gmap: ExactMatrix,
                  eps_u: ExactMatrix, eps_v: ExactMatrix) -> object:
    """t^max(Tr_Hi(f o g)) for H_i-linear f: U -> V and g: V -> U between free modules."""
    ci = spec.ci(i)
    if fmap @ eps_u != eps_v @ fmap or gmap @ eps_v != eps_u @ gmap:
        raise ValueError("maps are not H_i-linear")
    free_basis(eps_u, ci)
    p = free_basis(eps_v, ci)
    h = inverse(p) @ (fmap @ gmap) @ p
    total = 0
    for s in range(eps_v.rows // ci):
        total += h[s * ci + ci - 1, s * ci]
    return spec.field.coerce(total)
