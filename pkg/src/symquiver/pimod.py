"""Homological algebra over the preprojective algebra Pi(C, D) via the complex Q(M, N).

Q(M, N):  T0 = sum_k Hom_Hk(M_k, N_k)  --g-->  T1 = sum_{(i,j)} Hom_Hi(i_H_j (x) M_j, N_i)  --f-->  T2 = T0

with g(phi)_(i,j) = N_ij (1 (x) phi_j) - phi_i M_ij and
f(psi)_k = sum_j sgn(j,k) (N_kj ad_jk(psi_jk) + psi_kj ad_jk(M_jk)).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import AlgebraSpec, adjunction, one_tensor, tensor_eps
from .cartan import bilinear_form, component_types
from .construct import random_locally_free
from .linalg import ExactMatrix, block_diag, kernel_with_coordinates, rank, unvec, vec
from .rep import NotLocallyFreeError, Representation, commutant_basis, is_locally_free, mesh, rank_vector


def embed_as_pi(m: Representation) -> Representation:
    """View an H-module as a Pi-module with all reversed arrows acting by zero."""
    if m.spec.kind != "H":
        raise ValueError("expected an H-module")
    return m.with_spec(m.spec.as_kind("Pi"))


def random_pi_module(spec: AlgebraSpec, rng: random.Random, max_rank: int = 1, two_sided: bool = False) -> Representation:
    """A random locally free Pi-module.

    A random H-module for a random orientation is embedded; with ``two_sided``
    the reversed arrows are then drawn from the solutions of the commutativity
    and mesh relations, which are linear in them once the other arrows are fixed.
    """
    n = spec.n
    order = list(range(n))
    rng.shuffle(order)
    pos = {v: k for k, v in enumerate(order)}
    omega = frozenset((i, j) if pos[i] < pos[j] else (j, i) for i, j in spec.cartan.edges())
    ranks = [rng.randint(0, max_rank) for _ in range(n)]
    if not any(ranks):
        ranks[rng.randrange(n)] = 1
    h = spec.as_kind("H").with_orientation(omega)
    m = random_locally_free(h, ranks, rng)
    pi = Representation(spec.as_kind("Pi"), m.dims, m.eps, m.arrows)
    return _fill_reversed(pi, omega, rng) if two_sided else pi


def _relations_vector(m: Representation, free: list) -> list:
    out = []
    for k in range(m.n):
        out.extend(vec(mesh(m, k)))
    for a in free:
        i, j, _ = a
        lhs = (m.eps[i] ** m.spec.f(j, i)) @ m.arrows[a]
        out.extend(vec(lhs - m.arrows[a] @ (m.eps[j] ** m.spec.f(i, j))))
    return out


def _fill_reversed(m: Representation, omega: frozenset, rng: random.Random) -> Representation:
    spec, fd = m.spec, m.field
    free = [a for a in spec.arrows if (a[0], a[1]) not in omega and m.dims[a[0]] and m.dims[a[1]]]
    shapes = [(m.dims[i], m.dims[j]) for i, j, _ in free]
    nvars = sum(p * q for p, q in shapes)
    if not nvars:
        return m

    def assemble(values: list) -> Representation:
        arrows, off = dict(m.arrows), 0
        for a, (p, q) in zip(free, shapes):
            arrows[a] = unvec(values[off:off + p * q], p, q, fd)
            off += p * q
        return Representation(spec, m.dims, m.eps, arrows)

    # every relation term holds exactly one reversed arrow, so the map is linear
    cols = []
    for v in range(nvars):
        unit = [0] * nvars
        unit[v] = 1
        cols.append(_relations_vector(assemble(unit), free))
    system = ExactMatrix(len(cols[0]), nvars, [list(r) for r in zip(*cols)], fd, _trusted=True)
    kb, _ = kernel_with_coordinates(system)
    values = [0] * nvars
    for c in range(kb.cols):
        coef = fd.random_element(rng, 2)
        if coef:
            for r in range(nvars):
                values[r] = fd.coerce(values[r] + coef * kb[r, c])
    return assemble(values)


@dataclass
class QComplex:
    t0: ExactMatrix  # basis of T0 (columns, in the ambient sum of Mat(N_k x M_k))
    t1: ExactMatrix  # basis of T1
    g: ExactMatrix  # T0 -> T1 in these bases
    f: ExactMatrix  # T1 -> T2 = T0 in these bases

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.t0.cols, self.t1.cols, self.t0.cols)

    def is_complex(self) -> bool:
        return (self.f @ self.g).is_zero()


def _require(m: Representation, n: Representation) -> None:
    if m.spec != n.spec or m.spec.kind != "Pi":
        raise ValueError("expected two Pi-modules over the same algebra")
    if not (is_locally_free(m)[0] and is_locally_free(n)[0]):
        raise NotLocallyFreeError("the complex is only offered for locally free modules")


def _block_basis(parts: list[tuple[ExactMatrix, list[int]]]) -> tuple[ExactMatrix, list[int]]:
    """Block-diagonal assembly of kernel bases with their coordinate rows."""
    mats = [k for k, _ in parts]
    coords, row_off = [], 0
    for k, free in parts:
        coords.extend(row_off + r for r in free)
        row_off += k.rows
    return block_diag(mats), coords


def q_complex(m: Representation, n: Representation) -> QComplex:
    _require(m, n)
    spec = m.spec
    fd = m.field
    nv = spec.n
    pairs = spec.pairs

    # T0 = T2 and T1 as kernels of commutation conditions
    t0_parts = [commutant_basis(m.eps[k], n.eps[k]) for k in range(nv)]
    t_eps = {(i, j): tensor_eps(spec, i, j, m.eps[j]) for i, j in pairs}
    t1_parts = [commutant_basis(t_eps[p], n.eps[p[0]]) for p in pairs]
    t0, t0_coords = _block_basis(t0_parts) if nv else (ExactMatrix.zeros(0, 0, fd), [])
    t1, t1_coords = _block_basis(t1_parts) if pairs else (ExactMatrix.zeros(0, 0, fd), [])

    shape0 = [(n.dims[k], m.dims[k]) for k in range(nv)]
    shape1 = [(n.dims[i], t_eps[i, j].rows) for i, j in pairs]

    def split(col: list, shapes) -> list[ExactMatrix]:
        out, off = [], 0
        for p, q in shapes:
            out.append(unvec(col[off:off + p * q], p, q, fd))
            off += p * q
        return out

    def gmap(phi: list[ExactMatrix]) -> list[ExactMatrix]:
        return [n.structure(i, j) @ one_tensor(spec, i, j, phi[j]) - phi[i] @ m.structure(i, j) for i, j in pairs]

    def fmap(psi: dict) -> list[ExactMatrix]:
        out = []
        for k in range(nv):
            acc = ExactMatrix.zeros(n.dims[k], m.dims[k], fd)
            for j in spec.neighbors(k):
                term = (n.structure(k, j) @ adjunction(spec, j, k, psi[j, k], m.eps[k])
                        + psi[k, j] @ adjunction(spec, j, k, m.structure(j, k), m.eps[k]))
                acc = acc + (term if spec.sgn(j, k) > 0 else -term)
            out.append(acc)
        return out

    def column(mat: ExactMatrix, c: int) -> list:
        return [mat[r, c] for r in range(mat.rows)]

    g_cols = []
    for c in range(t0.cols):
        img = gmap(split(column(t0, c), shape0))
        flat = [x for part in img for x in vec(part)]
        g_cols.append([flat[r] for r in t1_coords])
    f_cols = []
    for c in range(t1.cols):
        psi = dict(zip(pairs, split(column(t1, c), shape1)))
        img = fmap(psi)
        flat = [x for part in img for x in vec(part)]
        f_cols.append([flat[r] for r in t0_coords])
    g = ExactMatrix(t1.cols, t0.cols, [list(r) for r in zip(*g_cols)] if g_cols else [[] for _ in range(t1.cols)], fd, _trusted=True)
    f = ExactMatrix(t0.cols, t1.cols, [list(r) for r in zip(*f_cols)] if f_cols else [[] for _ in range(t0.cols)], fd, _trusted=True)
    return QComplex(t0, t1, g, f)


def hom_pi(m: Representation, n: Representation, qc: QComplex | None = None) -> int:
    qc = q_complex(m, n) if qc is None else qc
    return qc.t0.cols - rank(qc.g)


def ext1_pi(m: Representation, n: Representation, qc: QComplex | None = None) -> int:
    qc = q_complex(m, n) if qc is None else qc
    return qc.t1.cols - rank(qc.f) - rank(qc.g)


def ext2_pi(m: Representation, n: Representation, qc: QComplex | None = None) -> int:
    """Cokernel of f; only meaningful when no component of C is Dynkin."""
    if any(t is not None for t in component_types(m.spec.cartan)):
        raise ValueError("Ext^2 via the complex needs every component non-Dynkin")
    qc = q_complex(m, n) if qc is None else qc
    return qc.t0.cols - rank(qc.f)


def pi_bilinear(spec: AlgebraSpec, a, b) -> int:
    """(a, b)_H = <a, b>_H + <b, a>_H, which equals the Cartan bilinear form."""
    return bilinear_form(spec.cartan, spec.symmetrizer, a, b)


def ext_symmetry_check(m: Representation, n: Representation) -> dict:
    qmn, qnm = q_complex(m, n), q_complex(n, m)
    e_mn, e_nm = ext1_pi(m, n, qmn), ext1_pi(n, m, qnm)
    h_mn, h_nm = hom_pi(m, n, qmn), hom_pi(n, m, qnm)
    form = pi_bilinear(m.spec, rank_vector(m), rank_vector(n))
    return {
        "ext1_mn": e_mn,
        "ext1_nm": e_nm,
        "hom_mn": h_mn,
        "hom_nm": h_nm,
        "bilinear": form,
        "symmetric": e_mn == e_nm,
        "formula": e_mn == h_mn + h_nm - form,
        "complex": qmn.is_complex() and qnm.is_complex(),
    }
