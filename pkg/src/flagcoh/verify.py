"""The acceptance gate: one named check per published-result criterion,
shared by the test suite and the command-line verify-all gate.

Each check returns (ok, detail).  Checks asserting published table entries
that the exact computation disproves stay red by design; the companion
`*_computed` variants pin the verified values so regressions get caught.
The repository's errata notes explain every red cell.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from . import bott, exterior, invforms, liecoh, repdecomp, spectral, superfields
from .bott import DESK_PRESETS, PUBLISHED_TABLE_DEVIATIONS, space_from_preset
from .scalars import QSqrt2, RT2


@dataclass
class CheckResult:
    criterion: str
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0


Check = Tuple[str, str, Callable[[], Tuple[bool, str]]]


def _tag_counts(descs):
    a = sum(d.mult for d in descs if d.tag == "adjoint")
    t = sum(d.mult for d in descs if d.tag == "trivial")
    o = sum(d.mult for d in descs if d.tag == "other")
    return a, t, o


# --- criterion 1: published cohomology tables --------------------------------

def check_c1_tables(name: str) -> Tuple[bool, str]:
    H = space_from_preset(name)
    k = bott.invariant_dimension(H, 3, 2) if H.dim >= 3 else 0
    bad = []
    for p in range(0, min(4, H.dim) + 1):
        col = bott.cohomology_omega_p_theta(H, p, q_max=2)
        for q in range(3):
            got = _tag_counts(col[q])
            want = bott.published_table_entry(H.case, k, p, q) + (0,)
            if got != want:
                bad.append(f"(p={p},q={q}): computed {got} != published {want}")
    if bad:
        return False, "; ".join(bad)
    return True, f"matches the published case-{H.case} table, k={k}"


def check_c1_tables_computed(name: str) -> Tuple[bool, str]:
    """The same cells against the verified values (published + recorded
    deviations); guards the computation itself."""
    H = space_from_preset(name)
    k = bott.invariant_dimension(H, 3, 2) if H.dim >= 3 else 0
    deviations = PUBLISHED_TABLE_DEVIATIONS.get(name, {})
    for p in range(0, min(4, H.dim) + 1):
        col = bott.cohomology_omega_p_theta(H, p, q_max=2)
        for q in range(3):
            a, t, o = _tag_counts(col[q])
            ea, et = bott.published_table_entry(H.case, k, p, q)
            extra = deviations.get((p, q), [])
            ea += sum(d.mult for d in extra if d.tag == "adjoint")
            eo = sum(d.mult for d in extra if d.tag == "other")
            if (a, t, o) != (ea, et, eo):
                return False, f"(p={p},q={q}): {(a, t, o)} != {(ea, et, eo)}"
    return True, "verified table reproduced"


# --- criterion 2: dual-route invariants ---------------------------------------

def check_c2_dual_route(name: str) -> Tuple[bool, str]:
    H = space_from_preset(name)
    for p in range(0, min(3, H.dim) + 1):
        col = bott.cohomology_omega_p_theta(H, p, q_max=2)
        for q in range(0, 3):
            triv = sum(d.mult for d in col[q] if d.tag == "trivial")
            inv = bott.invariant_dimension(H, p, q)
            if inv != triv:
                return False, f"(p={p},q={q}): {inv} != {triv}"
            if q != p - 1 and inv != 0:
                return False, f"(p={p},q={q}): nonzero off the diagonal"
            if q == p - 1 and p >= 1 and inv == 0:
                return False, f"(p={p},q={q}): zero on the diagonal"
    return True, "both routes agree; nonzero exactly at q = p-1"


# --- criterion 3: the k-values -------------------------------------------------

_K_EXPECTED = {
    "CP2": 0, "CP3": 1, "Q3": 1, "Q5": 1, "Gr(4,2)": 2, "LG3": 2,
    "S-D4": 2, "Gr(5,2)": 3, "Gr(6,3)": 4,
}


def check_c3_k_values() -> Tuple[bool, str]:
    bad = []
    for name, want in _K_EXPECTED.items():
        H = space_from_preset(name)
        got = bott.invariant_dimension(H, 3, 2) if H.dim >= 3 else 0
        stated = bott.published_k_value(H)
        if got != want:
            bad.append(f"{name}: computed {got} != {want}")
        if stated is not None and stated != got:
            bad.append(f"{name}: flagged - computed {got}, stated {stated}")
    if bad:
        return False, "; ".join(bad)
    return True, "all k-values match the stated list"


# --- criterion 4: exterior calculus -------------------------------------------

def check_c4_exterior() -> Tuple[bool, str]:
    import math

    from .exterior import (
        GrassmannElement,
        VectorValuedForm,
        apply_derivation,
        basis_monomials,
        bracket,
        contraction_c,
        decompose_im_j_ker_c,
        grading_derivation,
        j_map,
        wedge_basis,
    )

    t0 = time.time()
    # cj = p!(m-p) id for p < m <= 5
    for m in range(1, 6):
        for p in range(m):
            for mono in basis_monomials(m, p):
                psi = GrassmannElement.make(m, {mono: Fraction(1)})
                got = contraction_c(j_map(m, psi))
                if got != psi.scale(math.factorial(p) * (m - p)):
                    return False, f"cj failed at m={m}, p={p}"
    # i(bracket) = supercommutator, exhaustive basis pairs m <= 4,
    # compared as derivations (on every generator)
    for m in (2, 3, 4):
        gens = [GrassmannElement.generator(m, j) for j in range(1, m + 1)]
        basis = [VectorValuedForm.basis_element(m, mo, j) for mo, j in wedge_basis(m)]
        for phi in basis:
            for psi in basis:
                br = bracket(phi, psi)
                sgn = -1 if (phi.degree % 2) and (psi.degree % 2) else 1
                for g in gens:
                    lhs = apply_derivation(br, g)
                    rhs = apply_derivation(phi, apply_derivation(psi, g)) - (
                        apply_derivation(psi, apply_derivation(phi, g)).scale(sgn)
                    )
                    if lhs != rhs:
                        return False, f"bracket identity failed at m={m}"
    # the grading-bracket, insertion-of-j and splitting identities
    for m in (2, 3, 4):
        eps = grading_derivation(m)
        for mo, j in wedge_basis(m):
            v = VectorValuedForm.basis_element(m, mo, j)
            if bracket(eps, v).components != v.scale(v.degree).components:
                return False, "grading bracket identity failed"
        for p in range(m + 1):
            for mono in basis_monomials(m, p):
                psi = GrassmannElement.make(m, {mono: Fraction(1)})
                jpsi = j_map(m, psi)
                for q in range(m + 1):
                    for mo2 in basis_monomials(m, q):
                        a = GrassmannElement.make(m, {mo2: Fraction(1)})
                        if apply_derivation(jpsi, a) != (psi * a).scale(q):
                            return False, "i(j(psi)) = psi eps failed"
        import random as _r

        rng = _r.Random(4)
        for p in range(m):
            comps = []
            for _ in range(m):
                data = {
                    mono: Fraction(rng.randint(-2, 2))
                    for mono in basis_monomials(m, p + 1)
                }
                comps.append(GrassmannElement.make(m, data))
            phi = VectorValuedForm.make(m, p, comps)
            psi, chi = decompose_im_j_ker_c(phi)
            if not contraction_c(chi).is_zero():
                return False, "splitting failed"
            if (j_map(m, psi, degree=p) + chi).components != phi.components:
                return False, "splitting reconstruction failed"
    # super-Jacobi on basis triples, m <= 3
    for m in (2, 3):
        basis = [VectorValuedForm.basis_element(m, mo, j) for mo, j in wedge_basis(m)]
        table = {}
        for i1, b1 in enumerate(basis):
            for i2, b2 in enumerate(basis):
                table[(i1, i2)] = bracket(b1, b2)
        for i1, b1 in enumerate(basis):
            for i2, b2 in enumerate(basis):
                s12 = -1 if (b1.degree % 2) and (b2.degree % 2) else 1
                for i3 in range(len(basis)):
                    lhs = bracket(b1, table[(i2, i3)])
                    rhs = bracket(table[(i1, i2)], basis[i3]) + bracket(
                        b2, table[(i1, i3)]
                    ).scale(s12)
                    if (lhs - rhs).components != VectorValuedForm.zero(
                        m, lhs.degree
                    ).components:
                        return False, f"super-Jacobi failed at m={m}"
    dt = time.time() - t0
    return dt < 30, f"all identities exact in {dt:.1f}s (budget 30s)"


# --- criterion 5: invariant-form algebra ---------------------------------------

def check_c5_theta_product_law() -> Tuple[bool, str]:
    for rs in ((3, 2), (3, 3)):
        space = invforms.MatrixPairSpace(*rs)
        for p in range(1, 5):
            for q in range(1, 5):
                if p + q > 5 or p + q - 1 > space.dim:
                    continue
                got = invforms.theta_barwedge_theta(space, p, q)
                want = invforms.theta_p(space, p + q - 1).scale(p)
                if got != want:
                    return False, f"theta_{p} ^ theta_{q} failed on {rs}"
    return True, "theta_p ^ theta_q = p theta_{p+q-1} for p+q <= 5"


def check_c5_product_identities_published() -> Tuple[bool, str]:
    sp = invforms.MatrixPairSpace(2, 2)
    th2, et = invforms.theta_p(sp, 2), invforms.eta(sp)
    e1, e2, e3 = invforms.eta1(sp), invforms.eta2(sp), invforms.eta3(sp)
    th3 = invforms.theta_p(sp, 3)
    checks = [
        ("theta2^theta2 = 2 theta3", invforms.barwedge_inv(th2, th2) == th3.scale(2)),
        ("theta2^eta = 2(eta1+eta2)", invforms.barwedge_inv(th2, et) == (e1 + e2).scale(2)),
        ("eta^theta2 = 4 eta2", invforms.barwedge_inv(et, th2) == e2.scale(4)),
        ("eta^eta = 4 eta3", invforms.barwedge_inv(et, et) == e3.scale(4)),
    ]
    bad = [nm for nm, ok in checks if not ok]
    if bad:
        return False, "published equalities failing (computed values are half): " + ", ".join(bad)
    return True, "all four published product identities hold"


def check_c5_product_identities_computed() -> Tuple[bool, str]:
    for rs in ((2, 2), (3, 2), (3, 3)):
        sp = invforms.MatrixPairSpace(*rs)
        th2, et = invforms.theta_p(sp, 2), invforms.eta(sp)
        e1, e2, e3 = invforms.eta1(sp), invforms.eta2(sp), invforms.eta3(sp)
        th3 = invforms.theta_p(sp, 3)
        ok = (
            invforms.barwedge_inv(th2, th2) == th3.scale(2)
            and invforms.barwedge_inv(th2, et) == e1 + e2
            and invforms.barwedge_inv(et, th2) == e2.scale(2)
            and invforms.barwedge_inv(et, et) == e3.scale(2)
        )
        if not ok:
            return False, f"verified product values failed on {rs}"
    return True, "verified products: th2^eta = eta1+eta2, eta^th2 = 2 eta2, eta^eta = 2 eta3"


def check_c5_relations_and_ranks() -> Tuple[bool, str]:
    half = QSqrt2(Fraction(1, 2))
    g53 = invforms.MatrixPairSpace(2, 3)
    if invforms.eta3(g53) != (
        invforms.eta2(g53) + invforms.eta1(g53).scale(half)
        - invforms.theta_p(g53, 3).scale(half)
    ):
        return False, "r=2 eta relation failed on Gr(5,3)"
    g52 = invforms.MatrixPairSpace(3, 2)
    if invforms.eta3(g52) != (
        invforms.eta2(g52).scale(-1) - invforms.eta1(g52).scale(half)
        - invforms.theta_p(g52, 3).scale(half)
    ):
        return False, "s=2 eta relation failed on Gr(5,2)"
    g42 = invforms.MatrixPairSpace(2, 2)
    if invforms.eta2(g42) != invforms.eta1(g42).scale(-half):
        return False, "Gr(4,2) eta2 relation failed"
    if invforms.eta3(g42) != invforms.theta_p(g42, 3).scale(-half):
        return False, "Gr(4,2) eta3 relation failed"
    g63 = invforms.MatrixPairSpace(3, 3)
    ranks = (
        invforms.rank_of([invforms.theta_p(g63, 3), invforms.eta1(g63),
                          invforms.eta2(g63), invforms.eta3(g63)]) == 4
        and invforms.rank_of([invforms.theta_p(g52, 3), invforms.eta1(g52),
                              invforms.eta2(g52)]) == 3
        and invforms.rank_of([invforms.theta_p(g42, 3), invforms.eta1(g42)]) == 2
        and invforms.rank_of([invforms.theta_p(g42, 3), invforms.eta1(g42),
                              invforms.eta2(g42), invforms.eta3(g42)]) == 2
    )
    if not ranks:
        return False, "independence ranks failed"
    return True, "eta/theta linear relations exact; ranks per the independence lemma"


def check_c5_nilpotent_sqrt2() -> Tuple[bool, str]:
    """The published statement: on Gr(4,2) the nontrivial solutions are
    theta = sqrt2 theta2 +- eta with phi = theta2 +- sqrt2 eta, and none
    exist for n >= 5."""
    sp = invforms.MatrixPairSpace(2, 2)
    th2, et = invforms.theta_p(sp, 2), invforms.eta(sp)
    theta = th2.scale(RT2) + et
    phi = th2 + et.scale(RT2)
    if not invforms.barwedge_inv(theta, phi).is_zero():
        return False, (
            "sqrt2 theta2 + eta does not annihilate theta2 + sqrt2 eta; "
            "computed solutions are theta2 +- eta with theta2 +- 2 eta"
        )
    rep52 = invforms.nilpotent_pairs(invforms.MatrixPairSpace(3, 2))
    if not rep52.trivial_only:
        return False, "nontrivial pairs exist on Gr(5,2) (published: none for n >= 5)"
    return True, "published sqrt2 solutions verified"


def check_c5_nilpotent_computed() -> Tuple[bool, str]:
    rep42 = invforms.nilpotent_pairs(invforms.MatrixPairSpace(2, 2))
    names = {
        (str(ab[0]), str(ab[1]), str(cd[0]), str(cd[1]))
        for ab, cd in rep42.solutions
    }
    if names != {("1", "1", "1/2", "1"), ("-1", "1", "-1/2", "1")}:
        return False, f"Gr(4,2) solutions {names}"
    rep52 = invforms.nilpotent_pairs(invforms.MatrixPairSpace(3, 2))
    if {tuple(map(str, ab + cd)) for ab, cd in rep52.solutions} != {
        ("1", "1", "1/2", "1")
    }:
        return False, "Gr(5,2) computed solutions changed"
    if not invforms.nilpotent_pairs(invforms.MatrixPairSpace(3, 3)).trivial_only:
        return False, "Gr(6,3) should be trivial-only"
    return True, "computed: theta2 +- eta pairs with theta2 +- 2 eta (rational)"


# --- criterion 6: d2 at E2^{-1,1} -----------------------------------------------

def check_c6_d2_ranks() -> Tuple[bool, str]:
    for name, dim_g in (("Gr(4,2)", 15), ("Gr(5,2)", 24)):
        H = space_from_preset(name)
        if liecoh.d2_rank_on_vector_fields(H, 1, 0) != dim_g:
            return False, f"{name}: rank(theta2) != {dim_g}"
        if liecoh.d2_rank_on_vector_fields(H, 0, 1) != 0:
            return False, f"{name}: rank(eta) != 0"
        gb = liecoh.build_g_basis(H)
        c_eta = liecoh.cochain_from_form(gb, liecoh.theta_form(gb, 0, 1))
        res = liecoh.is_invariant_coboundary(c_eta)
        if not res.is_coboundary or res.witness is None:
            return False, f"{name}: no coboundary witness for c_eta"
        if not (liecoh.ce_differential(res.witness) - c_eta).is_zero():
            return False, f"{name}: witness does not work"
    return True, "ranks dim g / 0 with explicit witnesses recovered"


# --- criterion 7: E3 tables and H^0/H^1 -----------------------------------------

def _regime_check(name, a, b, regime, n=None,
                  expected_dims=None) -> Tuple[bool, str]:
    H = space_from_preset(name)
    theta = spectral.theta_for(H, a, b)
    report, res = spectral.cohomology_of_T(H, theta)
    got_rows = {
        k: (x, t) for k, (x, t, o) in spectral.e3_rows_summary(res).items()
    }
    extra_other = {
        k: o for k, (x, t, o) in spectral.e3_rows_summary(res).items() if o
    }
    want_rows = spectral.published_e3_rows(H.case, regime, n)
    problems = []
    if got_rows != want_rows or extra_other:
        problems.append(
            f"rows {got_rows} (+other {extra_other}) != published {want_rows}"
        )
    if expected_dims is not None:
        d = report.dims()
        got = (d["H0_even"], d["H0_odd"], d["H1_even"], d["H1_odd"])
        if got != expected_dims:
            problems.append(f"H dims {got} != {expected_dims}")
    if problems:
        return False, "; ".join(problems)
    return True, "matches the published tables and module structure"


# the five published parameter regimes (plus the super-dimension check);
# expected_dims = published (H0_even, H0_odd, H1_even, H1_odd)
C7_REGIMES = [
    ("7.I[Q3]", "Q3", 1, 0, "I", None, (10, 1, 10, 0)),
    ("7.II-generic[Gr(4,2)]", "Gr(4,2)", 1, 0, "II-generic", None, (15, 1, 16, 0)),
    ("7.II-generic[Gr(5,2)]", "Gr(5,2)", 1, 0, "II-generic", None, (24, 1, 25, 0)),
    ("7.II-special-sqrt2[Gr(4,2)]", "Gr(4,2)", RT2, 1, "II-special", None,
     (15, 1, 16, 1)),
    ("7.II-eta[Gr(4,2)]", "Gr(4,2)", 0, 1, "II-eta", None, (15, 16, 16, 15)),
    ("7.II-eta[Gr(5,2)]", "Gr(5,2)", 0, 1, "II-eta", None, (24, 25, 25, 24)),
    ("7.III[CP2]", "CP2", 1, 0, "III", 3, (8, 9, 0, 1)),
    ("7.III[CP3]", "CP3", 1, 0, "III", 4, (15, 16, 0, 0)),
]


def check_c7_pq_consistency() -> Tuple[bool, str]:
    for nm, n in (("Gr(4,2)", 4), ("Gr(5,2)", 5), ("CP2", 3)):
        res = spectral.pq_consistency(space_from_preset(nm))
        if not res["ok"]:
            return False, f"{nm}: {res}"
    return True, "(n^2-1 | n^2) dimension checks hold"


def check_c7_computed_deviations() -> Tuple[bool, str]:
    """Pins the verified deviating values so regressions are caught."""
    H = space_from_preset("Q3")
    report, res = spectral.cohomology_of_T(H, spectral.theta_for(H, 1, 0))
    d = report.dims()
    if (d["H1_even"], d["H1_odd"]) != (15, 5):
        return False, f"Q3 computed H1 changed: {d}"
    H = space_from_preset("Gr(5,2)")
    report, res = spectral.cohomology_of_T(H, spectral.theta_for(H, 1, 0))
    d = report.dims()
    if (d["H1_even"], d["H1_odd"]) != (1, 0):
        return False, f"Gr(5,2) computed H1 changed: {d}"
    rep, res = spectral.cohomology_of_T(
        space_from_preset("Gr(4,2)"),
        spectral.theta_for(space_from_preset("Gr(4,2)"), 1, 1),
    )
    if rep.dims()["H1_odd"] != 1:
        return False, "the rational special value theta2+eta lost its kernel"
    return True, "verified deviations stable"


# --- criterion 8: superfields ----------------------------------------------------

def check_c8_superfields() -> Tuple[bool, str]:
    t0 = time.time()
    # explicit formulas for all n <= 5 handled in the test suite; here the
    # structural facts at the stated sizes
    for (n, s) in ((2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3)):
        res = superfields.homomorphism_check(n, s)
        if res["sigma"] != 1:
            return False, f"sigma != 1 at (n,s)=({n},{s})"
    for (n, s) in ((2, 1), (3, 1), (4, 2)):
        ker = superfields.kernel_of_action(n, s)
        if len(ker) != 1:
            return False, f"kernel dim != 1 at ({n},{s})"
        k = ker[0]
        c = k.A[0][0]
        if not c or any(
            k.A[i][j] != (c if i == j else 0) for i in range(n) for j in range(n)
        ) or any(any(row) for row in k.B):
            return False, f"kernel not <I> at ({n},{s})"
    for (n, s) in ((2, 1), (3, 1), (4, 2), (5, 2)):
        out = superfields.transitivity_at_origin(n, s)
        if not (out["even"] == out["odd"] == out["expected"]):
            return False, f"transitivity failed at ({n},{s})"
    # jet formulas spot check for n = 5 at every s
    import random as _r

    rng = _r.Random(1)
    for s in (1, 2, 3, 4):
        n = 5
        r = n - s
        Y = [[Fraction(rng.randint(-2, 2)) for _ in range(s)] for _ in range(r)]
        B = [[Fraction(0)] * n for _ in range(n)]
        for i in range(r):
            for a in range(s):
                B[i][r + a] = Y[i][a]
        f = superfields.fundamental_field(superfields.QnElement.make(n, B=B), s)
        for i in range(r):
            for a in range(s):
                expect = {} if not Y[i][a] else {((), ()): -Y[i][a]}
                if dict(f.c_xi[i * s + a].terms) != expect:
                    return False, f"y* formula failed at n=5, s={s}"
                if not f.c_x[i * s + a].is_zero():
                    return False, "y* has x components"
    dt = time.time() - t0
    return dt < 120, f"sign, kernel, transitivity, n=5 formulas in {dt:.0f}s (budget 120s)"


# --- runner ---------------------------------------------------------------------

def all_checks() -> List[Tuple[str, str, Callable]]:
    checks: List[Tuple[str, str, Callable]] = []
    for name in DESK_PRESETS:
        checks.append(("1", f"1.tables[{name}]", lambda n=name: check_c1_tables(n)))
        checks.append(
            ("1c", f"1c.tables-computed[{name}]",
             lambda n=name: check_c1_tables_computed(n))
        )
    for name in DESK_PRESETS:
        checks.append(("2", f"2.dual-route[{name}]", lambda n=name: check_c2_dual_route(n)))
    checks.append(("3", "3.k-values", check_c3_k_values))
    checks.append(("4", "4.exterior", check_c4_exterior))
    checks.append(("5", "5.theta-products", check_c5_theta_product_law))
    checks.append(("5", "5.products-published", check_c5_product_identities_published))
    checks.append(("5c", "5c.products-computed", check_c5_product_identities_computed))
    checks.append(("5", "5.relations-ranks", check_c5_relations_and_ranks))
    checks.append(("5", "5.nilpotent-published-sqrt2", check_c5_nilpotent_sqrt2))
    checks.append(("5c", "5c.nilpotent-computed", check_c5_nilpotent_computed))
    checks.append(("6", "6.d2-ranks", check_c6_d2_ranks))
    for label, nm, a, b, regime, n, dims in C7_REGIMES:
        checks.append(
            ("7", label,
             lambda nm=nm, a=a, b=b, regime=regime, n=n, dims=dims:
             _regime_check(nm, a, b, regime, n, dims))
        )
    checks.append(("7", "7.pq-consistency", check_c7_pq_consistency))
    checks.append(("7c", "7c.computed-deviations", check_c7_computed_deviations))
    checks.append(("8", "8.superfields", check_c8_superfields))
    return checks


def _run_one(job) -> CheckResult:
    crit, name, fn = job
    t0 = time.time()
    try:
        ok, detail = fn()
    except Exception as exc:  # noqa: BLE001 - the gate reports, not raises
        ok, detail = False, f"exception: {exc}"
    return CheckResult(crit, name, ok, detail, time.time() - t0)


def run_all(criteria: Optional[List[str]] = None,
            spaces: Optional[List[str]] = None,
            parallel: int = 1) -> List[CheckResult]:
    jobs: List[Tuple[str, str, Callable]] = []
    for crit, name, fn in all_checks():
        if criteria and crit.rstrip("c") not in criteria and crit not in criteria:
            continue
        if spaces and "[" in name:
            inside = name[name.index("[") + 1: name.index("]")]
            if inside not in spaces:
                continue
        jobs.append((crit, name, fn))

    if parallel > 1:
        # fan out over independent checks; results merged in input order
        from concurrent.futures import ProcessPoolExecutor

        names = [(c, n) for c, n, _ in jobs]
        with ProcessPoolExecutor(max_workers=parallel) as ex:
            outs = list(ex.map(_run_named, names))
        return outs
    return [_run_one(job) for job in jobs]


def _run_named(cn) -> CheckResult:
    crit, name = cn
    for c, n, fn in all_checks():
        if (c, n) == (crit, name):
            return _run_one((c, n, fn))
    return CheckResult(crit, name, False, "check not found", 0.0)
