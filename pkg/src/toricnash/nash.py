"""Nash blowup charts of a pointed affine semigroup, any characteristic.

A chart is indexed by a d-subset A of the Hilbert basis whose determinant
is nonzero in the ground characteristic.  For h in A the replacement set
collects g - h over the leftover Hilbert elements g whose substitution into
h's column keeps that determinant nonzero; the chart semigroup is generated
by the Hilbert basis together with all replacement sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .exactmath import Mat, Vec, det_p, mat, sub, vec
from .semigroup import AffineSemigroup, NotFullLatticeError
from .cone import NotPointedError


@dataclass
class BlowupChart:
    source: AffineSemigroup
    characteristic: int
    subset: tuple[Vec, ...]  # the chosen d Hilbert elements, sorted
    det_value: int  # det_p of the subset matrix
    g_sets: dict[Vec, tuple[Vec, ...]]  # h -> sorted replacement differences
    generators: tuple[Vec, ...]  # Hilbert basis union all replacement sets
    chart_semigroup: AffineSemigroup
    pointed: bool
    normalized_chart: Optional[AffineSemigroup] = None

    def subset_indices(self) -> tuple[int, ...]:
        """0-based positions of the subset inside the sorted Hilbert basis."""
        h = self.source.hilbert_basis()
        return tuple(h.index(a) for a in self.subset)


def _validated_subset(s: AffineSemigroup, subset: Sequence[Sequence[int]]) -> tuple[Vec, ...]:
    a = tuple(sorted(vec(x) for x in subset))
    if len(set(a)) != s.dim:
        raise ValueError(f"chart subset must contain {s.dim} distinct elements")
    basis = set(s.hilbert_basis())
    for x in a:
        if x not in basis:
            raise ValueError(f"{x} is not a Hilbert basis element")
    return a


def g_set(
    s: AffineSemigroup, subset: Sequence[Sequence[int]], h: Sequence[int], p: int
) -> tuple[Vec, ...]:
    """Replacement differences g - h for one member h of the chart subset."""
    a = _validated_subset(s, subset)
    hv = vec(h)
    if hv not in a:
        raise ValueError(f"{hv} is not in the chart subset")
    if det_p(mat(a), p) == 0:
        raise ValueError("chart subset has vanishing determinant in this characteristic")
    idx = a.index(hv)
    out = []
    for g in s.hilbert_basis():
        if g in a:
            continue
        cols = list(a)
        cols[idx] = g
        if det_p(tuple(cols), p) != 0:
            out.append(sub(g, hv))
    return tuple(sorted(out))


def chart(
    s: AffineSemigroup,
    subset: Sequence[Sequence[int]],
    p: int,
    normalize: bool = True,
) -> BlowupChart:
    """The blowup chart of s at the given Hilbert subset."""
    a = _validated_subset(s, subset)
    dp = det_p(mat(a), p)
    if dp == 0:
        raise ValueError("chart subset has vanishing determinant in this characteristic")
    gsets = {h: g_set(s, a, h, p) for h in a}
    gens = set(s.hilbert_basis())
    for diffs in gsets.values():
        gens.update(diffs)
    gens_sorted = tuple(sorted(gens))
    sa = AffineSemigroup(gens_sorted, s.dim)
    pointed = sa.is_pointed
    normalized = sa.saturate() if (pointed and normalize) else None
    return BlowupChart(
        source=s,
        characteristic=p,
        subset=a,
        det_value=dp,
        g_sets=gsets,
        generators=gens_sorted,
        chart_semigroup=sa,
        pointed=pointed,
        normalized_chart=normalized,
    )


def blowup_step(s: AffineSemigroup, p: int, normalized: bool = True) -> tuple[BlowupChart, ...]:
    """All charts of one blowup step, in lexicographic subset order.

    Charts with a non-pointed semigroup are kept and flagged; their
    normalization is not computed.  The subset family itself does not
    depend on the normalized flag.
    """
    if not s.is_pointed:
        raise NotPointedError("blowup requires a pointed semigroup")
    if not s.generates_full_lattice():
        raise NotFullLatticeError("blowup requires generators spanning Z^d as a group")
    h = s.hilbert_basis()
    out = []
    for combo in itertools.combinations(h, s.dim):
        if det_p(mat(combo), p) == 0:
            continue
        out.append(chart(s, combo, p, normalize=normalized))
    return tuple(out)
