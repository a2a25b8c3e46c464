"""E2/E3 terms of the tangent-sheaf filtration spectral sequence of a
non-split supermanifold over a Hermitian symmetric space, the degree-2
differential ad_{l*[theta]}, and the resulting H^0/H^1 of the tangent sheaf.

Coordinates: entries are indexed (p, q) with q the TOTAL cohomology degree
(the row of the published tables) and p the filtration degree, so d2 maps
(p, q) -> (p+2, q+1).  Module summands stay symbolic (trivial / adjoint /
other) so G-equivariance can be exploited: d2 only connects summands of the
same type.  Entries whose d2 data is unknown are emitted `undetermined`,
never guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .bott import (
    HermitianSymmetricSpace,
    ModuleDescriptor,
    grassmannian_rs,
    invariant_dimension,
    space_from_preset,
    tangent_sheaf_E2,
)
from .invforms import (
    MatrixPairSpace,
    RootPairSpace,
    barwedge_inv,
    eta,
    rank_of,
    theta_p,
)
from .liecoh import (
    build_g_basis,
    d2_rank_on_vector_fields,
    d2_vanishes_on_adjoint_at_01,
    theta_form,
)
from .scalars import QS_ONE, QS_ZERO, QSqrt2


@dataclass(frozen=True)
class ThetaParameter:
    """The invariant (2,1)-form a theta2 + b eta parametrizing the
    supermanifold; cases I/III carry the single point (1, 0)."""

    case: str
    a: QSqrt2
    b: QSqrt2

    def __post_init__(self):
        if not (self.a or self.b):
            raise ValueError("theta parameter must be nonzero")
        if self.case in ("I", "III") and self.b:
            raise ValueError("cases I/III have the single parameter theta2")


def theta_for(H: HermitianSymmetricSpace, a=1, b=0) -> ThetaParameter:
    a = a if isinstance(a, QSqrt2) else QSqrt2(a)
    b = b if isinstance(b, QSqrt2) else QSqrt2(b)
    if H.case in ("I", "III") and b:
        # eta is proportional to theta2 (III) or undefined (I); collapse
        rs = grassmannian_rs(H)
        if rs is not None:
            sign = 1 if rs[0] == 1 else -1
            a, b = a + b * QSqrt2(sign), QS_ZERO
        else:
            raise ValueError("eta is Grassmann-specific; case I takes b = 0")
    return ThetaParameter(H.case, a, b)


@dataclass
class Summand:
    provenance: str              # "i" | "l"
    descriptor: ModuleDescriptor
    status: str = "ok"           # "ok" | "undetermined"


Table = Dict[Tuple[int, int], List[Summand]]


def assemble_E2(H: HermitianSymmetricSpace, q_max: int = 2) -> Table:
    """E2 = H^q(M, (T_gr)_p) with i*/l* provenance, from the Bott tables."""
    raw = tangent_sheaf_E2(H, q_max)
    table: Table = {}
    for (p, q), parts in raw.items():
        entry: List[Summand] = []
        for prov in ("i", "l"):
            for d in parts[prov]:
                entry.append(Summand(prov, d))
        if entry:
            table[(p, q)] = entry
    return table


def _remove(entry: List[Summand], provenance: str, tag: str, count: int) -> int:
    """Remove up to count multiplicity from matching summands; returns the
    amount actually removed."""
    removed = 0
    for s in entry:
        if removed >= count:
            break
        if s.provenance == provenance and s.descriptor.tag == tag:
            take = min(s.descriptor.mult, count - removed)
            s.descriptor = ModuleDescriptor(
                s.descriptor.tag, s.descriptor.weight, s.descriptor.dim,
                s.descriptor.mult - take,
            )
            removed += take
    entry[:] = [s for s in entry if s.descriptor.mult > 0]
    return removed


def _count(entry: List[Summand], provenance: str, tag: str) -> int:
    return sum(
        s.descriptor.mult
        for s in entry
        if s.provenance == provenance and s.descriptor.tag == tag
    )


@dataclass
class E3Result:
    H: HermitianSymmetricSpace
    theta: ThetaParameter
    E2: Table
    E3: Table
    rank_vector_fields: int
    kernel_dim_11: int
    adjoint_01_survives: bool
    notes: List[str] = field(default_factory=list)


def _invariant_21_basis(H: HermitianSymmetricSpace):
    """Basis of the invariant (2,1)-forms and the tensor space they live on."""
    rs = grassmannian_rs(H)
    if rs is not None and min(rs) >= 2:
        space = MatrixPairSpace(*rs)
        return space, [theta_p(space, 2), eta(space)]
    space = MatrixPairSpace(*rs) if rs is not None else RootPairSpace(H.dim)
    return space, [theta_p(space, 2)]


def apply_d2(H: HermitianSymmetricSpace, theta: ThetaParameter) -> E3Result:
    if H.rd.type.family == "E":
        raise ValueError("E-type spectral tables are outside the desk scale")
    E2 = assemble_E2(H, 2)
    E3: Table = {
        k: [Summand(s.provenance, s.descriptor, s.status) for s in v]
        for k, v in E2.items()
    }
    notes: List[str] = []
    a, b = theta.a, theta.b

    # (i) E2^{-1,0}: w -> l*[theta /\ w], rank 0 or dim g (liecoh)
    rank_v = d2_rank_on_vector_fields(H, a, b)
    if rank_v:
        assert _remove(E3[(-1, 0)], "i", "adjoint", 1) == 1
        assert _remove(E3[(1, 1)], "l", "adjoint", 1) == 1

    # (ii) the grading field at (0,0) never survives: d2(eps) = -2 l*[theta]
    assert _remove(E3[(0, 0)], "i", "trivial", 1) == 1
    assert _remove(E3[(2, 1)], "l", "trivial", 1) == 1

    # (iii) i*-part of (1,1): phi -> l*[theta /\ phi] into the invariant part
    # of (3,2); kernel computed exactly on the invariant (2,1)-forms
    space, basis21 = _invariant_21_basis(H)
    if isinstance(space, MatrixPairSpace) and min(space.r, space.s) >= 2:
        th_form = theta_p(space, 2).scale(a) + eta(space).scale(b)
    else:
        th_form = theta_p(space, 2).scale(a)  # b collapsed by theta_for
    images = [barwedge_inv(th_form, phi) for phi in basis21]
    nonzero_images = [f for f in images if not f.is_zero()]
    rank11 = rank_of(nonzero_images) if nonzero_images else 0
    kernel11 = len(basis21) - rank11
    avail = _count(E3.get((1, 1), []), "i", "trivial")
    assert avail == len(basis21), (avail, len(basis21))
    _remove(E3[(1, 1)], "i", "trivial", rank11)
    removed32 = _remove(E3.get((3, 2), []), "l", "trivial", rank11)
    assert removed32 == rank11, "image must land in the invariant part"

    # (iv) adjoint summand at (0,1): structurally closed unless the target
    # (2,2)-l has an adjoint component; then decided by the exact solve
    adj01 = True
    if _count(E3.get((0, 1), []), "i", "adjoint"):
        if _count(E3.get((2, 2), []), "l", "adjoint"):
            adj01 = d2_vanishes_on_adjoint_at_01(H, a, b)
            if not adj01:
                assert _remove(E3[(0, 1)], "i", "adjoint", 1) == 1
                assert _remove(E3[(2, 2)], "l", "adjoint", 1) == 1
                notes.append(
                    "d2 is nonzero on the adjoint summand of E2^{0,1} "
                    "(absent from the published tables)"
                )

    # row q=2 bookkeeping: entries with possibly-unknown differentials are
    # flagged undetermined rather than guessed.  The only fully determined
    # row-2 summands are the trivial (invariant-class) l*-parts of (3,2):
    # l* of an invariant class is d2-closed and all incoming maps were
    # accounted above; everything else may have unknown d2 data.
    for (p, q), entry in E3.items():
        if q != 2:
            continue
        for s in entry:
            determined = (
                (p, q) == (3, 2)
                and s.provenance == "l"
                and s.descriptor.tag == "trivial"
            )
            if not determined:
                s.status = "undetermined"

    E3 = {k: v for k, v in E3.items() if v}
    return E3Result(H, theta, E2, E3, rank_v, kernel11, adj01, notes)


# ---------------------------------------------------------------------------
# H^0 / H^1 readout (rows q = 0, 1 stabilize at E3)
# ---------------------------------------------------------------------------

@dataclass
class CohomologyReport:
    H0_even: List[ModuleDescriptor]
    H0_odd: List[ModuleDescriptor]
    H1_even: List[ModuleDescriptor]
    H1_odd: List[ModuleDescriptor]

    @staticmethod
    def _dim(items: List[ModuleDescriptor]) -> int:
        return sum(d.total_dim() for d in items)

    def dims(self) -> Dict[str, int]:
        return {
            "H0_even": self._dim(self.H0_even),
            "H0_odd": self._dim(self.H0_odd),
            "H1_even": self._dim(self.H1_even),
            "H1_odd": self._dim(self.H1_odd),
        }


def cohomology_of_T(H: HermitianSymmetricSpace,
                    theta: ThetaParameter) -> Tuple[CohomologyReport, E3Result]:
    res = apply_d2(H, theta)
    buckets = {("0", 0): [], ("0", 1): [], ("1", 0): [], ("1", 1): []}
    for (p, q), entry in res.E3.items():
        if q > 1:
            continue
        for s in entry:
            assert s.status == "ok", "rows 0,1 must be fully determined"
            buckets[(str(q), p % 2)].append(s.descriptor)
    def merge(items):
        from .bott import _merge_descriptors
        return _merge_descriptors(items)
    report = CohomologyReport(
        H0_even=merge(buckets[("0", 0)]),
        H0_odd=merge(buckets[("0", 1)]),
        H1_even=merge(buckets[("1", 0)]),
        H1_odd=merge(buckets[("1", 1)]),
    )
    return report, res


def pq_consistency(H: HermitianSymmetricSpace) -> Dict[str, object]:
    """For Gr(n,s) with theta = eta, the super vector-field dimensions must
    be (n^2 - 1 | n^2), matching q_n / <I>."""
    rs = grassmannian_rs(H)
    if rs is None or min(rs) < 1:
        raise ValueError("pq consistency is a Grassmannian check")
    n = rs[0] + rs[1]
    theta = theta_for(H, 0, 1) if min(rs) >= 2 else theta_for(H, 1, 0)
    report, _ = cohomology_of_T(H, theta)
    dims = report.dims()
    expected = {"even": n * n - 1, "odd": n * n}
    ok = dims["H0_even"] == expected["even"] and dims["H0_odd"] == expected["odd"]
    return {
        "space": str(H),
        "n": n,
        "H0_even": dims["H0_even"],
        "H0_odd": dims["H0_odd"],
        "expected": expected,
        "ok": ok,
    }


# ---------------------------------------------------------------------------
# Published-table comparison (the acceptance layer asserts these)
# ---------------------------------------------------------------------------

def published_e3_rows(case: str, regime: str, n: Optional[int] = None
                      ) -> Dict[Tuple[int, int], Tuple[int, int]]:
    """Rows q = 0,1 of the published E3 tables as (adjoint, trivial) counts
    per (p, q).  regime: 'I', 'II-generic', 'II-special', 'II-eta',
    'III'. The II-special row follows the item-(3) statement."""
    t: Dict[Tuple[int, int], Tuple[int, int]] = {}
    if regime == "I":
        t[(0, 0)] = (1, 0)
        t[(1, 0)] = (0, 1)
        t[(0, 1)] = (1, 0)
    elif regime == "II-generic":
        t[(0, 0)] = (1, 0)
        t[(1, 0)] = (0, 1)
        t[(0, 1)] = (1, 0)
        t[(2, 1)] = (0, 1)
    elif regime == "II-special":
        t[(0, 0)] = (1, 0)
        t[(1, 0)] = (0, 1)
        t[(0, 1)] = (1, 0)
        t[(1, 1)] = (0, 1)
        t[(2, 1)] = (0, 1)
    elif regime == "II-eta":
        t[(-1, 0)] = (1, 0)
        t[(0, 0)] = (1, 0)
        t[(1, 0)] = (0, 1)
        t[(0, 1)] = (1, 0)
        t[(1, 1)] = (1, 0)
        t[(2, 1)] = (0, 1)
    elif regime == "III":
        t[(-1, 0)] = (1, 0)
        t[(0, 0)] = (1, 0)
        t[(1, 0)] = (0, 1)
        if n == 3:
            t[(1, 1)] = (0, 1)
    else:
        raise ValueError(regime)
    return t


def e3_rows_summary(res: E3Result) -> Dict[Tuple[int, int], Tuple[int, int, int]]:
    """Computed (adjoint, trivial, other) totals per entry, rows 0,1."""
    out = {}
    for (p, q), entry in res.E3.items():
        if q > 1:
            continue
        a = sum(s.descriptor.mult for s in entry if s.descriptor.tag == "adjoint")
        t = sum(s.descriptor.mult for s in entry if s.descriptor.tag == "trivial")
        o = sum(s.descriptor.mult for s in entry if s.descriptor.tag == "other")
        if a or t or o:
            out[(p, q)] = (a, t, o)
    return out


def flagged_32_comparison(res: E3Result) -> Dict[str, object]:
    """The (3,2) entry: computed trivial part vs the published superscript
    read as k-1 (case I, theta = theta2) resp. k-2 (case II)."""
    H = res.H
    k = invariant_dimension(H, 3, 2) if H.dim >= 3 else 0
    entry = res.E3.get((3, 2), [])
    computed = sum(
        s.descriptor.mult for s in entry
        if s.descriptor.tag == "trivial" and s.status == "ok"
    )
    if H.case == "II":
        published = max(k - 2, 0)
    else:
        published = max(k - 1, 0)
    return {
        "computed_trivial": computed,
        "published_reading": published,
        "agree": computed == published,
        "k": k,
    }
