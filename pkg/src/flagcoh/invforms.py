"""K-invariant vector-valued (p,q)-forms on Hermitian symmetric spaces,
realized exactly by their values at the base point.

A form of bidegree (p, q) is stored as a sparse tensor over strictly
increasing index tuples (holomorphic group of size p over the n+ basis,
antiholomorphic group of size q over the dual n- basis), with values sparse
vectors in n+ over Q(sqrt 2).

Two kinds of spaces: Grassmann matrix spaces (n+ = r x s matrices, trace
pairing, where the eta family lives) and generic root-vector spaces (only
the theta family, pairing normalized to the Kronecker form in the paired
bases).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .scalars import QS_ONE, QS_ZERO, QSqrt2, rank

Vec = Dict[int, QSqrt2]  # sparse vector in n+ coordinates
Key = Tuple[Tuple[int, ...], Tuple[int, ...]]


@dataclass(frozen=True)
class MatrixPairSpace:
    """n+ = Mat_{r x s} with basis E_{i,a} (row-major flat index i*s + a);
    n- = Mat_{s x r} indexed by the SAME flat index, k meaning E_{a,i} for
    (i, a) = coords(k), so the trace pairing is Kronecker on equal indices."""

    r: int
    s: int

    @property
    def dim(self) -> int:
        return self.r * self.s

    @property
    def grassmann(self) -> bool:
        return True

    def index(self, i: int, a: int) -> int:
        return i * self.s + a

    def coords(self, k: int) -> Tuple[int, int]:
        return divmod(k, self.s)


@dataclass(frozen=True)
class RootPairSpace:
    """Root-vector basis of n+ with the normalized Killing pairing
    (e_alpha, f_beta) = delta; theta forms only."""

    dim: int

    @property
    def grassmann(self) -> bool:
        return False


def _sort_sign(tup: Sequence[int]) -> Tuple[Optional[Tuple[int, ...]], int]:
    """Sorted tuple and permutation sign; None on repeats."""
    if len(set(tup)) != len(tup):
        return None, 0
    s = tuple(sorted(tup))
    sign = 1
    lst = list(tup)
    for i in range(len(lst)):
        for j in range(i + 1, len(lst)):
            if lst[i] > lst[j]:
                sign = -sign
    return s, sign


@dataclass
class InvariantVectorForm:
    space: object
    p: int
    q: int
    tensor: Dict[Key, Vec]

    def value(self, us: Sequence[int], vs: Sequence[int]) -> Vec:
        """Evaluate on arbitrary basis-index tuples via antisymmetry."""
        su, sgu = _sort_sign(us)
        if su is None:
            return {}
        sv, sgv = _sort_sign(vs)
        if sv is None:
            return {}
        base = self.tensor.get((su, sv))
        if not base:
            return {}
        sign = sgu * sgv
        if sign == 1:
            return base
        return {k: -c for k, c in base.items()}

    def is_zero(self) -> bool:
        return not self.tensor

    def scale(self, c) -> "InvariantVectorForm":
        c = c if isinstance(c, QSqrt2) else QSqrt2(c)
        if not c:
            return InvariantVectorForm(self.space, self.p, self.q, {})
        return InvariantVectorForm(
            self.space, self.p, self.q,
            {k: {i: c * v for i, v in vec.items()} for k, vec in self.tensor.items()},
        )

    def __add__(self, other: "InvariantVectorForm") -> "InvariantVectorForm":
        assert (self.p, self.q) == (other.p, other.q)
        out: Dict[Key, Vec] = {k: dict(v) for k, v in self.tensor.items()}
        for k, vec in other.tensor.items():
            tgt = out.setdefault(k, {})
            for i, c in vec.items():
                nc = tgt.get(i, QS_ZERO) + c
                if nc:
                    tgt[i] = nc
                else:
                    tgt.pop(i, None)
            if not tgt:
                out.pop(k)
        return InvariantVectorForm(self.space, self.p, self.q, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __eq__(self, other):
        return (
            (self.p, self.q) == (other.p, other.q)
            and _clean(self.tensor) == _clean(other.tensor)
        )

    def flat_coefficients(self, keys: List[Key], dim: int) -> List[QSqrt2]:
        out = []
        for k in keys:
            vec = self.tensor.get(k, {})
            for i in range(dim):
                out.append(vec.get(i, QS_ZERO))
        return out


def _clean(t: Dict[Key, Vec]) -> Dict[Key, Tuple]:
    out = {}
    for k, vec in t.items():
        v = tuple(sorted((i, (c.a, c.b)) for i, c in vec.items() if c))
        if v:
            out[k] = v
    return out


def _keys(space, p, q) -> List[Key]:
    n = space.dim
    return [
        (u, v)
        for u in itertools.combinations(range(n), p)
        for v in itertools.combinations(range(n), q)
    ]


# ---------------------------------------------------------------------------
# The theta family (any space): determinant formula over the pairing.
# ---------------------------------------------------------------------------

def theta_p(space, p: int) -> InvariantVectorForm:
    """The (p, p-1)-form with prefactor (p-1)!; theta_1 is the identity."""
    n = space.dim
    if not 1 <= p <= n:
        raise ValueError(f"theta_{p} needs 1 <= p <= dim = {n}")
    pref = Fraction(factorial(p - 1))
    tensor: Dict[Key, Vec] = {}
    for us in itertools.combinations(range(n), p):
        for vs in itertools.combinations(range(n), p - 1):
            vec: Vec = {}
            for k_pos, uk in enumerate(us):
                rows = [u for u in us if u != uk]
                # det of the Kronecker pairing block (rows x vs)
                d = _kron_det(rows, vs)
                if d:
                    sign = 1 if (p + k_pos + 1) % 2 == 0 else -1
                    c = QSqrt2(pref * sign * d)
                    if c:
                        prev = vec.get(uk, QS_ZERO) + c
                        if prev:
                            vec[uk] = prev
                        else:
                            vec.pop(uk, None)
            if vec:
                tensor[(us, vs)] = vec
    return InvariantVectorForm(space, p, p - 1, tensor)


def _kron_det(rows: Sequence[int], cols: Sequence[int]) -> int:
    """Determinant of the 0/1 matrix [delta_{rows_a, cols_b}]: a permutation
    matrix determinant, 0 unless the index sets agree."""
    if set(rows) != set(cols):
        return 0
    perm = [list(cols).index(r) for r in rows]
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


# ---------------------------------------------------------------------------
# The eta family (Grassmann spaces only): matrix-product alternations.
# ---------------------------------------------------------------------------

def eta(space: MatrixPairSpace) -> InvariantVectorForm:
    """(2,1)-form u1 v u2 - u2 v u1 (matrix products)."""
    return _alternation_form(
        space, 2, 1,
        lambda us, vs: _terms_eta(space, us, vs),
    )


def _terms_eta(space, us, vs):
    (u1, u2), (v,) = us, vs
    out: Vec = {}
    t1 = _uvu(space, u1, v, u2)
    t2 = _uvu(space, u2, v, u1)
    _vec_add(out, t1, 1)
    _vec_add(out, t2, -1)
    return out


def _uvu(space, ua, v, ub) -> Optional[int]:
    """Index of E_{ua} E_v E_{ub} with E_v the n- matrix E_{av, iv}."""
    ia, aa = space.coords(ua)
    iv, av = space.coords(v)
    ib, ab = space.coords(ub)
    if aa == av and iv == ib:
        return space.index(ia, ab)
    return None


def _vec_add(vec: Vec, idx: Optional[int], coeff) -> None:
    if idx is None:
        return
    c = vec.get(idx, QS_ZERO) + QSqrt2(coeff)
    if c:
        vec[idx] = c
    else:
        vec.pop(idx, None)


def _alternation_form(space, p, q, term_fn) -> InvariantVectorForm:
    tensor: Dict[Key, Vec] = {}
    n = space.dim
    for us in itertools.combinations(range(n), p):
        for vs in itertools.combinations(range(n), q):
            vec = term_fn(us, vs)
            if vec:
                tensor[(us, vs)] = vec
    return InvariantVectorForm(space, p, q, tensor)


def _pair(space, u, v) -> int:
    return 1 if u == v else 0


def eta1(space: MatrixPairSpace) -> InvariantVectorForm:
    """2 Alt (u1 v1, u2 v2) u3: twelve-term display with the overall 2."""

    def terms(us, vs):
        (u1, u2, u3), (v1, v2) = us, vs
        out: Vec = {}
        for (a, b, c, sign) in _alt6(u1, u2, u3):
            val = _pair4(space, a, v1, b, v2)
            if val:
                _vec_add(out, c, 2 * sign * val)
        return out

    return _alternation_form(space, 3, 2, terms)


def _pair4(space, ua, v1, ub, v2) -> int:
    """(u_a v_1, u_b v_2) = tr(u_a v_1 u_b v_2)."""
    ia, aa = space.coords(ua)
    i1, a1 = space.coords(v1)
    ib, ab = space.coords(ub)
    i2, a2 = space.coords(v2)
    # tr(E_{ia aa} E_{a1 i1} E_{ib ab} E_{a2 i2})
    return 1 if (aa == a1 and i1 == ib and ab == a2 and i2 == ia) else 0


def _alt6(u1, u2, u3):
    """Signed permutations matching the displayed six-term alternation:
    (1,2,3)+, (2,3,1)+, (3,1,2)+, (2,1,3)-, (3,2,1)-, (1,3,2)-."""
    return [
        (u1, u2, u3, 1), (u2, u3, u1, 1), (u3, u1, u2, 1),
        (u2, u1, u3, -1), (u3, u2, u1, -1), (u1, u3, u2, -1),
    ]


def eta2(space: MatrixPairSpace) -> InvariantVectorForm:
    """Alt (u1, v1) u2 v2 u3: the twelve-term display (v-swap included)."""

    def terms(us, vs):
        (u1, u2, u3), (v1, v2) = us, vs
        out: Vec = {}
        for (a, b, c, sign) in _alt6(u1, u2, u3):
            if _pair(space, a, v1):
                _vec_add(out, _uvu(space, b, v2, c), sign)
            if _pair(space, a, v2):
                _vec_add(out, _uvu(space, b, v1, c), -sign)
        return out

    return _alternation_form(space, 3, 2, terms)


def eta3(space: MatrixPairSpace) -> InvariantVectorForm:
    """Alt u1 v1 u2 v2 u3: twelve five-factor matrix products."""

    def terms(us, vs):
        (u1, u2, u3), (v1, v2) = us, vs
        out: Vec = {}
        for (a, b, c, sign) in _alt6(u1, u2, u3):
            _vec_add(out, _uvuvu(space, a, v1, b, v2, c), sign)
            _vec_add(out, _uvuvu(space, a, v2, b, v1, c), -sign)
        return out

    return _alternation_form(space, 3, 2, terms)


def _uvuvu(space, ua, v1, ub, v2, uc) -> Optional[int]:
    ia, aa = space.coords(ua)
    i1, a1 = space.coords(v1)
    ib, ab = space.coords(ub)
    i2, a2 = space.coords(v2)
    ic, ac = space.coords(uc)
    if aa == a1 and i1 == ib and ab == a2 and i2 == ic:
        return space.index(ia, ac)
    return None


# ---------------------------------------------------------------------------
# barwedge on invariant forms: shuffle alternation with one global constant.
# ---------------------------------------------------------------------------

_KAPPA: Optional[QSqrt2] = None


def _shuffles(universe: Tuple[int, ...], k: int):
    """(subset, complement, sign) triples over increasing universe."""
    n = len(universe)
    for picks in itertools.combinations(range(n), k):
        subset = tuple(universe[i] for i in picks)
        rest = tuple(universe[i] for i in range(n) if i not in picks)
        sign = 1
        # inversions of the shuffle permutation (subset before rest)
        for out_pos, i in enumerate(picks):
            sign *= (-1) ** (i - out_pos)
        yield subset, rest, sign


def _barwedge_raw(phi: InvariantVectorForm, psi: InvariantVectorForm
                  ) -> InvariantVectorForm:
    """Shuffle-sum insertion of psi into the first holomorphic slot of phi;
    equals the full alternation divided by (p1-1)! p2! q1! q2!."""
    space = phi.space
    P = phi.p + psi.p - 1
    Q = phi.q + psi.q
    n = space.dim
    tensor: Dict[Key, Vec] = {}
    if P > n or Q > n or P < 0:
        return InvariantVectorForm(space, max(P, 0), Q, tensor)
    for us in itertools.combinations(range(n), P):
        u_shuffles = list(_shuffles(us, psi.p))
        for vs in itertools.combinations(range(n), Q):
            out: Vec = {}
            for vsub, vrest, vsign in _shuffles(vs, psi.q):
                for usub, urest, usign in u_shuffles:
                    w = psi.value(usub, vsub)
                    if not w:
                        continue
                    sgn = usign * vsign
                    for widx, wc in w.items():
                        inner = phi.value((widx,) + urest, vrest)
                        if not inner:
                            continue
                        coeff = wc if sgn == 1 else -wc
                        for i, c in inner.items():
                            nc = out.get(i, QS_ZERO) + coeff * c
                            if nc:
                                out[i] = nc
                            else:
                                out.pop(i, None)
            if out:
                tensor[(us, vs)] = out
    return InvariantVectorForm(space, P, Q, tensor)


def barwedge_kappa() -> QSqrt2:
    """The module constant, solved once from theta2 /\\ theta2 = 2 theta3 on
    the smallest space carrying a nonzero theta3 and reused unchanged."""
    global _KAPPA
    if _KAPPA is None:
        space = MatrixPairSpace(3, 1)
        raw = _barwedge_raw(theta_p(space, 2), theta_p(space, 2))
        target = theta_p(space, 3).scale(2)
        ratios = set()
        for k, vec in target.tensor.items():
            rv = raw.tensor.get(k, {})
            for i, c in vec.items():
                ratios.add(c / rv[i])
        assert len(ratios) == 1, "anchor identity must pin a single constant"
        _KAPPA = ratios.pop()
    return _KAPPA


def barwedge_inv(phi: InvariantVectorForm, psi: InvariantVectorForm
                 ) -> InvariantVectorForm:
    if phi.space != psi.space:
        raise ValueError("forms live on different spaces")
    return _barwedge_raw(phi, psi).scale(barwedge_kappa())


def theta_barwedge_theta(space, p: int, q: int) -> InvariantVectorForm:
    """theta_p /\\ theta_q, which must equal p theta_{p+q-1}."""
    if p + q - 1 > space.dim:
        raise ValueError("degree overflow")
    return barwedge_inv(theta_p(space, p), theta_p(space, q))


# ---------------------------------------------------------------------------
# Linear algebra over the form spaces.
# ---------------------------------------------------------------------------

def rank_of(forms: List[InvariantVectorForm]) -> int:
    if not forms:
        return 0
    p, q = forms[0].p, forms[0].q
    space = forms[0].space
    for f in forms[1:]:
        if (f.p, f.q) != (p, q) or f.space != space:
            raise ValueError("mixed bidegrees or spaces")
    keys = sorted({k for f in forms for k in f.tensor})
    rows = [f.flat_coefficients(keys, space.dim) for f in forms]
    return rank(rows)


def independent_coefficients(
    target: InvariantVectorForm, basis: List[InvariantVectorForm]
) -> Optional[List[QSqrt2]]:
    """Exact coordinates of target in the span of basis, or None."""
    keys = sorted(
        {k for f in basis for k in f.tensor} | set(target.tensor)
    )
    dim = target.space.dim
    cols = [f.flat_coefficients(keys, dim) for f in basis]
    rhs = target.flat_coefficients(keys, dim)
    from .scalars import solve

    mat = [[cols[j][i] for j in range(len(cols))] for i in range(len(rhs))]
    return solve(mat, rhs)


# ---------------------------------------------------------------------------
# Nilpotent pairs: (a theta2 + b eta) /\ (c theta2 + d eta) = 0.
# ---------------------------------------------------------------------------

@dataclass
class NilpotentPairReport:
    space: MatrixPairSpace
    trivial_only: bool
    solutions: List[Tuple[Tuple[QSqrt2, QSqrt2], Tuple[QSqrt2, QSqrt2]]]


def nilpotent_pairs(space: MatrixPairSpace) -> NilpotentPairReport:
    """All ((a,b),(c,d)) with (a th2 + b eta) /\\ (c th2 + d eta) = 0, up to
    scalar, via the exact bilinear system on the four product tensors."""
    if space.r < 2 or space.s < 2:
        raise ValueError("eta degenerates to theta2 for s = 1 or r = 1")
    th2 = theta_p(space, 2)
    et = eta(space)
    P = {
        (0, 0): barwedge_inv(th2, th2),
        (0, 1): barwedge_inv(th2, et),
        (1, 0): barwedge_inv(et, th2),
        (1, 1): barwedge_inv(et, et),
    }
    keys = sorted({k for f in P.values() for k in f.tensor})
    dim = space.dim
    flat = {ab: P[ab].flat_coefficients(keys, dim) for ab in P}
    N = len(flat[(0, 0)])

    # theta /\ phi = a c P00 + a d P01 + b c P10 + b d P11; for fixed (a,b)
    # the map (c,d) -> result is linear with columns V1 = a P00 + b P10,
    # V2 = a P01 + b P11.  A nontrivial kernel needs all 2x2 minors of
    # [V1 V2] to vanish: A a^2 + B ab + C b^2 = 0 per coordinate pair.
    quads = []
    for i in range(N):
        for j in range(i + 1, N):
            A = flat[(0, 0)][i] * flat[(0, 1)][j] - flat[(0, 0)][j] * flat[(0, 1)][i]
            B = (
                flat[(0, 0)][i] * flat[(1, 1)][j]
                - flat[(0, 0)][j] * flat[(1, 1)][i]
                + flat[(1, 0)][i] * flat[(0, 1)][j]
                - flat[(1, 0)][j] * flat[(0, 1)][i]
            )
            C = flat[(1, 0)][i] * flat[(1, 1)][j] - flat[(1, 0)][j] * flat[(1, 1)][i]
            if A or B or C:
                quads.append((A, B, C))
            if len(quads) > 400:
                break
        if len(quads) > 400:
            break
    # reduce to an independent set
    rows = [[q[0], q[1], q[2]] for q in quads]
    from .scalars import rref

    red, pivots = rref(rows) if rows else ([], [])
    quads = [tuple(red[r]) for r in range(len(pivots))]

    solutions = []
    for (a, b) in _projective_roots(quads):
        V1 = [a * flat[(0, 0)][i] + b * flat[(1, 0)][i] for i in range(N)]
        V2 = [a * flat[(0, 1)][i] + b * flat[(1, 1)][i] for i in range(N)]
        from .scalars import nullspace

        kern = nullspace([[V1[i], V2[i]] for i in range(N)], 2)
        for cd in kern:
            c, d = cd
            if c or d:
                solutions.append(((a, b), (c, d)))
    return NilpotentPairReport(space, not solutions, solutions)


def _projective_roots(quads) -> List[Tuple[QSqrt2, QSqrt2]]:
    """Common projective solutions (a : b) of quadratic forms over Q(rt2)."""
    if not quads:
        # every (a,b) works; report the two coordinate axes as generators
        return [(QS_ONE, QS_ZERO), (QS_ZERO, QS_ONE)]
    out = []
    # b = 0 case: need A = 0 for all
    if all(not q[0] for q in quads):
        out.append((QS_ONE, QS_ZERO))
    # b = 1: common roots of A t^2 + B t + C
    roots: Optional[set] = None
    for (A, B, C) in quads:
        cur = set()
        if A:
            disc = B * B - 4 * A * C
            sq = disc.sqrt()
            if sq is not None:
                for sgn in (1, -1):
                    t = (QSqrt2(0) - B + sq * QSqrt2(sgn)) / (A * QSqrt2(2))
                    cur.add((t.a, t.b))
        elif B:
            t = (QSqrt2(0) - C) / B
            cur.add((t.a, t.b))
        else:
            if not C:
                cur = None  # identically satisfied; no constraint
        if cur is None:
            continue
        roots = cur if roots is None else (roots & cur)
        if not roots:
            break
    if roots:
        for (ta, tb) in sorted(roots):
            out.append((QSqrt2(ta, tb), QS_ONE))
    return out
