"""Finitely generated subsemigroups of Z^d and their Hilbert bases."""

from __future__ import annotations

import itertools
from typing import Optional, Sequence

from .cone import Cone, NotPointedError, _triangulate_rays
from .exactmath import (
    Mat,
    Vec,
    DimensionMismatch,
    adjugate,
    det,
    dot,
    hermite_form,
    is_zero,
    lattice_is_full,
    mat,
    mat_apply,
    orthogonal_complement,
    primitive,
    rank_of_vectors,
    scale,
    sub,
    vec,
    zero_vec,
)


class NotFullLatticeError(ValueError):
    """The generators do not generate Z^d as a group."""


class NotSaturatedError(ValueError):
    """Operation requires a saturated semigroup."""


def coordinates_in_basis(basis: Sequence[Vec], v: Vec) -> Vec:
    """Integer coordinates of v in a saturated lattice basis (exact)."""
    k = len(basis)
    rows = [tuple(b[i] for b in basis) for i in range(len(v))]
    sel: list[int] = []
    for i, row in enumerate(rows):
        if rank_of_vectors([rows[j] for j in sel] + [row]) > len(sel):
            sel.append(i)
            if len(sel) == k:
                break
    if len(sel) < k:
        raise ValueError("basis vectors are dependent")
    square = mat(tuple(tuple(b[i] for i in sel) for b in basis))
    target = vec(v[i] for i in sel)
    d = det(square)
    coords = []
    for j in range(k):
        cols = list(square)
        cols[j] = target
        num = det(tuple(cols))
        if num % d:
            raise ValueError("vector lies outside the lattice of the basis")
        coords.append(num // d)
    out = vec(coords)
    if mat_apply(mat(basis), out) != tuple(v):
        raise ValueError("vector lies outside the span of the basis")
    return out


def _parallelepiped_points_fullrank(rays: Sequence[Vec]) -> set[Vec]:
    """Lattice points of {sum t_i r_i : 0 <= t_i < 1}, rays a basis of Q^d.

    One point per coset of the ray lattice in Z^d: enumerate a triangular
    transversal from the Hermite form, then shift each representative into
    the half-open box by rounding its rational coordinates down.
    """
    d = len(rays)
    r_mat = mat(rays)
    dval = det(r_mat)
    adj = adjugate(r_mat)
    if dval < 0:
        dval = -dval
        adj = tuple(tuple(-e for e in col) for col in adj)
    # rows of adj, for computing numerators of R^{-1} e
    adj_rows = tuple(tuple(adj[j][i] for j in range(d)) for i in range(d))
    h, _ = hermite_form(r_mat)
    diag = [h[j][j] for j in range(d)]
    points: set[Vec] = set()
    for rep in itertools.product(*(range(e) for e in diag)):
        floors = vec(dot(row, rep) // dval for row in adj_rows)
        points.add(sub(vec(rep), mat_apply(r_mat, floors)))
    return points


def _parallelepiped_points(rays: Sequence[Vec], dim: int) -> set[Vec]:
    k = len(rays)
    if k == 0:
        return {zero_vec(dim)}
    if k == dim:
        return _parallelepiped_points_fullrank(rays)
    comp = orthogonal_complement(rays, dim)
    span_basis = orthogonal_complement(comp, dim)
    coords = tuple(coordinates_in_basis(span_basis, r) for r in rays)
    back = mat(span_basis)
    return {mat_apply(back, p) for p in _parallelepiped_points_fullrank(coords)}


def saturation_hilbert_basis(c: Cone) -> tuple[Vec, ...]:
    """Hilbert basis of the saturated semigroup cone(c) intersect Z^d.

    Candidates: the primitive extreme rays together with the lattice points
    of the fundamental parallelepiped of every simplicial piece of a
    triangulation.  An irreducible element lies in some piece with all ray
    coefficients below one, so the candidates generate; a candidate x is
    then dropped exactly when x - h lands back in the cone for some other
    candidate h.
    """
    if not c.is_pointed:
        raise NotPointedError("Hilbert basis of a non-pointed cone")
    rays = c.generators
    if not rays:
        return ()
    cands: set[Vec] = set(rays)
    for piece in _triangulate_rays(rays, c.dim):
        cands |= _parallelepiped_points(piece, c.dim)
    cands.discard(zero_vec(c.dim))
    ordered = sorted(cands)
    out = []
    for x in ordered:
        for h in ordered:
            if h != x and c.contains(sub(x, h)):
                break
        else:
            out.append(x)
    return tuple(out)


def _decompose_over(
    gens: Sequence[Vec], x: Vec, prune: Cone, grading: Vec
) -> Optional[dict[Vec, int]]:
    """Nonnegative integer combination of gens equal to x, or None.

    Depth-first over multiplicities, generators in decreasing grading order;
    a partial residue is abandoned when it leaves the pruning cone.
    """
    if not prune.contains(x):
        return None
    lvals = [dot(grading, g) for g in gens]
    order = sorted(range(len(gens)), key=lambda i: (-lvals[i], gens[i]))
    gs = [gens[i] for i in order]
    ls = [lvals[i] for i in order]
    failed: set[tuple[int, Vec]] = set()

    def rec(i: int, r: Vec) -> Optional[dict[Vec, int]]:
        if is_zero(r):
            return {}
        if i >= len(gs):
            return None
        key = (i, r)
        if key in failed:
            return None
        g, lg = gs[i], ls[i]
        budget = dot(grading, r) // lg
        for mult in range(budget, -1, -1):
            r2 = sub(r, scale(mult, g)) if mult else r
            if not prune.contains(r2):
                continue
            res = rec(i + 1, r2)
            if res is not None:
                if mult:
                    res = dict(res)
                    res[g] = mult
                return res
        failed.add(key)
        return None

    return rec(0, x)


class AffineSemigroup(object):
    """Semigroup generated by finitely many lattice points (zero dropped)."""

    __slots__ = ("dim", "generators", "_cone", "_hilbert", "_saturated", "_full", "_grading")

    def __init__(self, generators: Sequence[Sequence[int]], ambient_dim: Optional[int] = None):
        gens = [vec(g) for g in generators]
        if ambient_dim is None:
            if not gens:
                raise ValueError("ambient_dim required for an empty generator list")
            ambient_dim = len(gens[0])
        for g in gens:
            if len(g) != ambient_dim:
                raise DimensionMismatch("generator of wrong length")
        self.dim = ambient_dim
        self.generators = tuple(sorted({g for g in gens if not is_zero(g)}))
        self._cone: Optional[Cone] = None
        self._hilbert: Optional[tuple[Vec, ...]] = None
        self._saturated: Optional[bool] = None
        self._full: Optional[bool] = None
        self._grading: Optional[Vec] = None

    @property
    def cone(self) -> Cone:
        if self._cone is None:
            self._cone = Cone(self.generators, self.dim)
        return self._cone

    @property
    def is_pointed(self) -> bool:
        return self.cone.is_pointed

    def generates_full_lattice(self) -> bool:
        if self._full is None:
            self._full = lattice_is_full(self.generators, self.dim)
        return self._full

    def grading(self) -> Vec:
        if self._grading is None:
            self._grading = self.cone.positive_grading()
        return self._grading

    def decompose(self, x: Sequence[int]) -> Optional[dict[Vec, int]]:
        """A witness {generator: multiplicity} with sum == x, or None."""
        v = vec(x)
        if len(v) != self.dim:
            raise DimensionMismatch("point of wrong length")
        if is_zero(v):
            return {}
        if not self.is_pointed:
            raise NotPointedError("membership search requires a pointed semigroup")
        return _decompose_over(self.generators, v, self.cone, self.grading())

    def membership(self, x: Sequence[int]) -> bool:
        return self.decompose(x) is not None

    def __contains__(self, x: Sequence[int]) -> bool:
        return self.membership(x)

    def hilbert_basis(self) -> tuple[Vec, ...]:
        """The unique minimal generating set (pointed semigroups only)."""
        if self._hilbert is None:
            if not self.is_pointed:
                raise NotPointedError("Hilbert basis of a non-pointed semigroup")
            grading = self.grading()
            keep = []
            for g in self.generators:
                others = [o for o in self.generators if o != g]
                if _decompose_over(others, g, self.cone, grading) is None:
                    keep.append(g)
            self._hilbert = tuple(keep)
        return self._hilbert

    def saturate(self) -> "AffineSemigroup":
        sat = saturation_hilbert_basis(self.cone)
        out = AffineSemigroup(sat, self.dim)
        out._cone = self.cone  # saturation spans the same cone
        out._hilbert = out.generators
        out._saturated = True
        out._grading = self._grading
        return out

    def is_saturated(self) -> bool:
        if self._saturated is None:
            self._saturated = set(self.hilbert_basis()) == set(
                saturation_hilbert_basis(self.cone)
            )
        return self._saturated

    def is_smooth(self) -> bool:
        """Freeness test: exactly d Hilbert elements forming a unimodular basis."""
        if not self.is_pointed:
            raise NotPointedError("smoothness test requires a pointed semigroup")
        if not self.generates_full_lattice():
            raise NotFullLatticeError("smoothness test requires the full lattice")
        if not self.is_saturated():
            raise NotSaturatedError("smoothness test requires a saturated semigroup")
        h = self.hilbert_basis()
        return len(h) == self.dim and abs(det(mat(h))) == 1

    def same_semigroup(self, other: "AffineSemigroup") -> bool:
        """Mathematical equality: mutual membership of all generators."""
        if self.dim != other.dim:
            return False
        return all(other.membership(g) for g in self.generators) and all(
            self.membership(g) for g in other.generators
        )

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, AffineSemigroup)
            and self.dim == other.dim
            and self.generators == other.generators
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.generators))

    def __repr__(self) -> str:
        return f"AffineSemigroup(dim={self.dim}, {len(self.generators)} generators)"


def semigroups_equal(a: AffineSemigroup, b: AffineSemigroup) -> bool:
    return a.same_semigroup(b)
