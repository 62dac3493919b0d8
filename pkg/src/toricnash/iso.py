"""Unimodular equivalence of pointed affine semigroups.

Two semigroups are equivalent when some GL_d(Z) matrix maps one Hilbert
basis onto the other.  A cheap GL(Z)-invariant fingerprint buckets
candidates; a backtracking search over invariant-compatible assignments of
an independent d-subset produces an explicit certificate matrix, which can
be re-verified independently.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .cone import NotPointedError
from .exactmath import (
    Mat,
    Vec,
    adjugate,
    det,
    dot,
    identity,
    is_unimodular,
    mat,
    mat_apply,
    mat_mul,
    primitive,
    rank_of_vectors,
)
from .semigroup import AffineSemigroup

# d-subset determinant multisets are skipped above this subset count so
# fingerprints of large Hilbert bases stay affordable.
_DET_SUBSET_CAP = 4000


def _encode_int(n: int) -> bytes:
    sign = b"-" if n < 0 else b"+"
    mag = abs(n)
    body = mag.to_bytes((mag.bit_length() + 7) // 8 or 1, "big")
    return sign + len(body).to_bytes(4, "big") + body


def _encode_ints(ns: Sequence[int]) -> bytes:
    return _encode_int(len(ns)) + b"".join(_encode_int(n) for n in ns)


@dataclass(frozen=True)
class Fingerprint:
    """GL_d(Z)-invariant summary of a pointed semigroup.

    Fields, in serialization order: ambient dimension, Hilbert basis size,
    extreme ray count, facet count, sorted per-element profiles
    (ray flag, facet incidence count), sorted per-facet profiles
    (rays on facet, Hilbert elements on facet), determinant source
    (0 = d-subsets of the Hilbert basis, 1 = d-subsets of the rays,
    2 = skipped), and the sorted |det| multiset.
    """

    dim: int
    hilbert_count: int
    ray_count: int
    facet_count: int
    element_profiles: tuple[tuple[int, int], ...]
    facet_profiles: tuple[tuple[int, int], ...]
    det_source: int
    det_multiset: tuple[int, ...]

    def to_bytes(self) -> bytes:
        out = [
            _encode_int(self.dim),
            _encode_int(self.hilbert_count),
            _encode_int(self.ray_count),
            _encode_int(self.facet_count),
            _encode_ints([e for pair in self.element_profiles for e in pair]),
            _encode_ints([e for pair in self.facet_profiles for e in pair]),
            _encode_int(self.det_source),
            _encode_ints(self.det_multiset),
        ]
        return b"".join(out)

    def digest(self) -> str:
        return hashlib.sha256(self.to_bytes()).hexdigest()[:16]


def _subset_count(n: int, k: int) -> int:
    if k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def _element_profile(v: Vec, cone) -> tuple[int, int]:
    ray = 1 if primitive(v) in cone.generators else 0
    incidence = sum(1 for n in cone.facet_normals if dot(n, v) == 0)
    return (ray, incidence)


def fingerprint(s: AffineSemigroup) -> Fingerprint:
    if not s.is_pointed:
        raise NotPointedError("fingerprint requires a pointed semigroup")
    h = s.hilbert_basis()
    c = s.cone
    rays = c.generators
    facets = c.facet_normals
    elem = tuple(sorted(_element_profile(v, c) for v in h))
    fac = tuple(
        sorted(
            (
                sum(1 for r in rays if dot(n, r) == 0),
                sum(1 for v in h if dot(n, v) == 0),
            )
            for n in facets
        )
    )
    d = s.dim
    if _subset_count(len(h), d) <= _DET_SUBSET_CAP:
        source = 0
        dets = sorted(abs(det(mat(c))) for c in itertools.combinations(h, d))
    elif _subset_count(len(rays), d) <= _DET_SUBSET_CAP:
        source = 1
        dets = sorted(abs(det(mat(c))) for c in itertools.combinations(rays, d))
    else:
        source = 2
        dets = []
    return Fingerprint(
        dim=d,
        hilbert_count=len(h),
        ray_count=len(rays),
        facet_count=len(facets),
        element_profiles=elem,
        facet_profiles=fac,
        det_source=source,
        det_multiset=tuple(dets),
    )


@dataclass(frozen=True)
class IsoCertificate:
    """A unimodular matrix with the induced Hilbert basis bijection."""

    matrix: Mat  # columns; acts on column vectors
    mapping: tuple[tuple[Vec, Vec], ...]

    def apply(self, v: Vec) -> Vec:
        return mat_apply(self.matrix, v)


def certificate_for_matrix(a: AffineSemigroup, m: Mat) -> IsoCertificate:
    mapping = tuple((h, mat_apply(m, h)) for h in a.hilbert_basis())
    return IsoCertificate(matrix=m, mapping=mapping)


def verify_certificate(a: AffineSemigroup, b: AffineSemigroup, cert: IsoCertificate) -> bool:
    """True iff the matrix is unimodular and maps H(a) onto H(b) bijectively."""
    if a.dim != b.dim or len(cert.matrix) != a.dim:
        return False
    if not is_unimodular(cert.matrix):
        return False
    ha = a.hilbert_basis()
    hb = set(b.hilbert_basis())
    images = [mat_apply(cert.matrix, h) for h in ha]
    if len(ha) != len(hb) or set(images) != hb:
        return False
    declared = dict(cert.mapping)
    if declared and any(declared.get(h, img) != img for h, img in zip(ha, images)):
        return False
    return True


def _invert_unimodular(m: Mat) -> Mat:
    d = det(m)
    adj = adjugate(m)
    if d == 1:
        return adj
    if d == -1:
        return tuple(tuple(-e for e in col) for col in adj)
    raise ValueError("matrix is not unimodular")


def invert_certificate(b: AffineSemigroup, cert: IsoCertificate) -> IsoCertificate:
    """The inverse of a certificate onto b, mapping b back to its source."""
    inv = _invert_unimodular(cert.matrix)
    return certificate_for_matrix(b, inv)


def find_isomorphism(a: AffineSemigroup, b: AffineSemigroup) -> Optional[IsoCertificate]:
    """Search for a unimodular map with f(H(a)) == H(b).

    Completeness: any such map is determined by its values on an
    independent d-subset D of H(a); every invariant-compatible injective
    assignment of D into H(b) is tried, so a valid certificate is found
    whenever one exists.  Fingerprint inequality short-circuits to None.
    """
    if a.dim != b.dim:
        return None
    if not (a.is_pointed and b.is_pointed):
        raise NotPointedError("isomorphism search requires pointed semigroups")
    ha = a.hilbert_basis()
    hb = b.hilbert_basis()
    if len(ha) != len(hb):
        return None
    if set(ha) == set(hb):
        return certificate_for_matrix(a, identity(a.dim))
    if fingerprint(a) != fingerprint(b):
        return None
    d = a.dim

    base: list[Vec] = []
    for v in ha:
        if rank_of_vectors(base + [v]) > len(base):
            base.append(v)
            if len(base) == d:
                break
    if len(base) < d:
        return None  # degenerate: Hilbert basis does not span

    profile_a = {v: _element_profile(v, a.cone) for v in ha}
    profile_b = {v: _element_profile(v, b.cone) for v in hb}
    candidates = [
        [w for w in hb if profile_b[w] == profile_a[v]] for v in base
    ]
    base_mat = mat(base)
    base_det = det(base_mat)
    base_adj = adjugate(base_mat)
    ha_set = set(ha)
    hb_set = set(hb)

    def assemble(images: Sequence[Vec]) -> Optional[IsoCertificate]:
        # solve m . base == images:  m = images . adj(base) / det(base)
        img_mat = mat(images)
        numer = mat_mul(img_mat, base_adj)
        cols = []
        for col in numer:
            new = []
            for e in col:
                if e % base_det:
                    return None
                new.append(e // base_det)
            cols.append(tuple(new))
        m = tuple(cols)
        if not is_unimodular(m):
            return None
        mapped = {mat_apply(m, h) for h in ha_set}
        if mapped != hb_set:
            return None
        return certificate_for_matrix(a, m)

    def backtrack(i: int, picked: list[Vec], used: set[Vec]) -> Optional[IsoCertificate]:
        if i == d:
            return assemble(picked)
        for w in candidates[i]:
            if w in used:
                continue
            picked.append(w)
            used.add(w)
            found = backtrack(i + 1, picked, used)
            if found is not None:
                return found
            picked.pop()
            used.remove(w)
        return None

    return backtrack(0, [], set())
