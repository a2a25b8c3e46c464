from fractions import Fraction

import pytest

from flagcoh.bott import (
    DESK_PRESETS,
    ModuleDescriptor,
    bott_irreducible,
    build_space,
    cohomology_omega_p_theta,
    grassmannian_rs,
    invariant_dimension,
    published_k_value,
    space_from_preset,
    tangent_sheaf_E2,
)
from flagcoh.rootsys import SimpleLieType


def descr_summary(descs):
    """Collapse a descriptor list to (adjoint count, trivial count, others)."""
    a = sum(d.mult for d in descs if d.tag == "adjoint")
    t = sum(d.mult for d in descs if d.tag == "trivial")
    o = sum(d.mult for d in descs if d.tag == "other")
    return a, t, o


def test_build_space_presets_and_cases():
    expectations = {
        "CP2": ("III", 2),
        "CP3": ("III", 3),
        "Q3": ("I", 3),
        "Q5": ("I", 5),
        "Gr(4,2)": ("II", 4),
        "Gr(5,2)": ("II", 6),
        "Gr(6,3)": ("II", 9),
        "LG3": ("I", 6),
        "S-D4": ("I", 6),
    }
    for name, (case, dim) in expectations.items():
        H = space_from_preset(name)
        assert H.case == case, name
        assert H.dim == dim, name
        assert H.rd.n_coeffs[H.alpha0] == 1
        for r in H.rd.positive_roots:
            assert int(r[H.alpha0]) in (0, 1)


def test_non_special_root_rejected():
    with pytest.raises(ValueError):
        build_space(SimpleLieType("B", 3), 1)  # n_alpha2 = 2 in B3
    with pytest.raises(ValueError):
        build_space(SimpleLieType("C", 3), 0)


def test_m_coefficient_of_delta():
    for name in DESK_PRESETS:
        H = space_from_preset(name)
        m = H.m_coefficient(H.rd.delta)
        assert m == (1 if H.case == "III" else 2)


def test_e_type_constructible():
    H6 = build_space(SimpleLieType("E", 6), 0)
    assert H6.case == "I" and H6.dim == 16
    H7 = build_space(SimpleLieType("E", 7), 6)
    assert H7.case == "I" and H7.dim == 27


def test_bott_irreducible_basics():
    H = space_from_preset("Gr(4,2)")
    zero = (0, 0, 0)
    assert bott_irreducible(H, zero) == (0, zero)

    # Lam = delta - alpha0: index 1 and Lam* = delta in cases I/II
    for name in ("Q3", "Gr(4,2)", "LG3"):
        Hc = space_from_preset(name)
        lam = tuple(
            int(d) - (1 if i == Hc.alpha0 else 0)
            for i, d in enumerate(Hc.rd.delta)
        )
        q, lam_star = bott_irreducible(Hc, lam)
        assert q == 1
        assert lam_star == Hc.rd.delta

    # ... and vanishes in case III
    Hc = space_from_preset("CP2")
    lam = tuple(
        int(d) - (1 if i == Hc.alpha0 else 0) for i, d in enumerate(Hc.rd.delta)
    )
    assert bott_irreducible(Hc, lam) is None


# --- cohomology tables, q = 0..2, p = 0..4 ----------------------------------
#
# The published case tables are wrong at a handful of cells (the H^1/H^2
# vanishing proofs have inequality gaps at short-root neighbors); the module
# tests assert the computed-and-hand-verified values, published table plus
# the recorded deviations.  The acceptance suite separately asserts the
# published tables as stated and stays red at exactly the deviating cells.

from flagcoh.bott import PUBLISHED_TABLE_DEVIATIONS, published_table_entry


@pytest.mark.parametrize("name", DESK_PRESETS)
def test_cohomology_tables_verified_values(name):
    H = space_from_preset(name)
    k = invariant_dimension(H, 3, 2) if H.dim >= 3 else 0
    deviations = PUBLISHED_TABLE_DEVIATIONS.get(name, {})
    for p in range(0, min(4, H.dim) + 1):
        col = cohomology_omega_p_theta(H, p, q_max=2)
        for q in range(3):
            a, t, o = descr_summary(col[q])
            ea, et = published_table_entry(H.case, k, p, q)
            extra = deviations.get((p, q), [])
            ea += sum(d.mult for d in extra if d.tag == "adjoint")
            eo = sum(d.mult for d in extra if d.tag == "other")
            assert (a, t, o) == (ea, et, eo), f"{name} p={p} q={q}"
            # the deviating modules match the frozen hand-verified data
            for d in extra:
                got = [x for x in col[q] if (x.tag, x.weight) == (d.tag, d.weight)]
                assert got and got[0].mult == d.mult and got[0].dim == d.dim


@pytest.mark.parametrize("name", DESK_PRESETS)
def test_bott_no_multiple_degrees(name):
    """Each component contributes to exactly one q (one surviving degree per component)."""
    H = space_from_preset(name)
    from flagcoh.repdecomp import decompose, dual, exterior_power, tensor

    chi_n = H.n_plus_character()
    for p in (0, 1, 2):
        chi = tensor(chi_n, exterior_power(dual(chi_n), p))
        for lam, _ in decompose(H.levi, chi):
            res = bott_irreducible(H, lam)
            if res is not None:
                q, lam_star = res
                assert H.rd.is_dominant(lam_star)


# --- invariant dimensions ---------------------------------------------------

@pytest.mark.parametrize("name", DESK_PRESETS)
def test_invariant_dimension_diagonal_law(name):
    """Nonzero invariants exactly on the diagonal q = p-1."""
    H = space_from_preset(name)
    for p in range(0, min(H.dim, 4) + 1):
        for q in range(0, min(H.dim, 3) + 1):
            d = invariant_dimension(H, p, q)
            if q != p - 1:
                assert d == 0, f"{name} ({p},{q})"
            elif p >= 1:
                assert d >= 1, f"{name} ({p},{q})"


def test_invariant_dimension_examples():
    H = space_from_preset("Gr(4,2)")
    assert invariant_dimension(H, 1, 0) == 1
    assert invariant_dimension(H, 2, 2) == 0
    assert invariant_dimension(H, 3, 2) == 2


@pytest.mark.parametrize("name", DESK_PRESETS)
def test_cross_oracle_invariants_vs_bott(name):
    """isotropy-invariants route equals the trivial count of the Bott route exactly."""
    H = space_from_preset(name)
    for p in range(0, min(3, H.dim) + 1):
        col = cohomology_omega_p_theta(H, p, q_max=2)
        for q in range(0, 3):
            triv = sum(d.mult for d in col[q] if d.tag == "trivial")
            assert invariant_dimension(H, p, q) == triv, f"{name} ({p},{q})"


@pytest.mark.parametrize("name,k", [
    ("CP2", 0), ("CP3", 1), ("Q3", 1), ("Q5", 1),
    ("Gr(4,2)", 2), ("LG3", 2), ("S-D4", 2), ("Gr(5,2)", 3), ("Gr(6,3)", 4),
])
def test_k_values_match_published_list(name, k):
    H = space_from_preset(name)
    computed = invariant_dimension(H, 3, 2) if H.dim >= 3 else 0
    assert computed == k
    expected = published_k_value(H)
    if expected is not None:
        assert computed == expected, (
            f"{name}: computed k={computed} disagrees with the stated {expected}"
        )


# --- published vanishing statements as properties ---------------------------

@pytest.mark.parametrize("name", DESK_PRESETS)
def test_h1_invariance_statement_for_p_ge_2(name):
    """H^1(Omega^p (x) Theta) is all-trivial for p >= 2 everywhere except the
    verified Q3 exception (one extra 5-dim module at p = 2)."""
    H = space_from_preset(name)
    for p in range(2, min(H.dim, 4) + 1):
        col = cohomology_omega_p_theta(H, p, q_max=1)
        extra = PUBLISHED_TABLE_DEVIATIONS.get(name, {}).get((p, 1), [])
        nontrivial = [d for d in col[1] if d.tag != "trivial"]
        assert len(nontrivial) == len(extra), f"{name} p={p}"


@pytest.mark.parametrize("name", DESK_PRESETS)
def test_h2_vanishing_statement(name):
    """H^2 vanishing for p = 2 and p >= 4, all-trivial for p = 3 — up to the
    verified deviations on Q5/LG3/Gr(5,2)/Gr(6,3)."""
    H = space_from_preset(name)
    deviations = PUBLISHED_TABLE_DEVIATIONS.get(name, {})
    for p in (2, 4):
        if p <= H.dim:
            col = cohomology_omega_p_theta(H, p, q_max=2)
            extra = deviations.get((p, 2), [])
            assert sum(d.mult for d in col[2]) == sum(d.mult for d in extra), (
                f"{name} p={p}"
            )
    if H.dim >= 3:
        col = cohomology_omega_p_theta(H, 3, q_max=2)
        extra = deviations.get((3, 2), [])
        nontrivial = [d for d in col[2] if d.tag != "trivial"]
        assert len(nontrivial) == len(extra)


# --- tangent sheaf E2 --------------------------------------------------------

def test_tangent_sheaf_e2_examples():
    HI = space_from_preset("Q3")
    t = tangent_sheaf_E2(HI, 2)
    a, tr, o = descr_summary(t[(-1, 0)]["i"])
    assert (a, tr, o) == (1, 0, 0) and t[(-1, 0)]["l"] == []

    HIII = space_from_preset("CP3")
    t3 = tangent_sheaf_E2(HIII, 2)
    assert descr_summary(t3[(1, 1)]["i"]) == (0, 1, 0)
    assert t3[(1, 1)]["l"] == []

    HII = space_from_preset("Gr(4,2)")
    t2 = tangent_sheaf_E2(HII, 2)
    assert descr_summary(t2[(2, 1)]["l"]) == (0, 2, 0)
    assert descr_summary(t2[(1, 1)]["l"]) == (1, 0, 0)
    assert descr_summary(t2[(1, 1)]["i"]) == (0, 2, 0)


@pytest.mark.parametrize("name", DESK_PRESETS)
def test_tangent_sheaf_e2_matches_published(name):
    """published split-tangent tables for p in -1..4, q in 0..2, adjusted by the verified
    deviations of the underlying bundle cohomology."""
    H = space_from_preset(name)
    k = invariant_dimension(H, 3, 2) if H.dim >= 3 else 0
    table = tangent_sheaf_E2(H, 2)
    deviations = PUBLISHED_TABLE_DEVIATIONS.get(name, {})

    def get(p, q, part):
        entry = table.get((p, q))
        if entry is None:
            return (0, 0, 0)
        a, t, o = descr_summary(entry[part])
        # strip the recorded extra modules: i* at (p,q) carries column p+1,
        # l* carries column p
        col = p + 1 if part == "i" else p
        for d in deviations.get((col, q), []):
            if d.tag == "adjoint":
                a -= d.mult
            elif d.tag == "other":
                o -= d.mult
            else:
                t -= d.mult
        return (a, t, o)

    rows = {
        "I": {
            (-1, 0, "i"): (1, 0, 0), (0, 0, "l"): (1, 0, 0), (0, 0, "i"): (0, 1, 0),
            (1, 0, "l"): (0, 1, 0),
            (0, 1, "i"): (1, 0, 0), (1, 1, "l"): (1, 0, 0), (1, 1, "i"): (0, 1, 0),
            (2, 1, "l"): (0, 1, 0),
            (2, 2, "i"): (0, k, 0), (3, 2, "l"): (0, k, 0),
        },
        "II": {
            (-1, 0, "i"): (1, 0, 0), (0, 0, "l"): (1, 0, 0), (0, 0, "i"): (0, 1, 0),
            (1, 0, "l"): (0, 1, 0),
            (0, 1, "i"): (1, 0, 0), (1, 1, "l"): (1, 0, 0), (1, 1, "i"): (0, 2, 0),
            (2, 1, "l"): (0, 2, 0),
            (2, 2, "i"): (0, k, 0), (3, 2, "l"): (0, k, 0),
        },
        "III": {
            (-1, 0, "i"): (1, 0, 0), (0, 0, "l"): (1, 0, 0), (0, 0, "i"): (0, 1, 0),
            (1, 0, "l"): (0, 1, 0),
            (1, 1, "i"): (0, 1, 0), (2, 1, "l"): (0, 1, 0),
            (2, 2, "i"): (0, k, 0), (3, 2, "l"): (0, k, 0),
        },
    }[H.case]

    for p in range(-1, min(4, H.dim) + 1):
        for q in range(3):
            for part in ("i", "l"):
                want = rows.get((p, q, part), (0, 0, 0))
                assert get(p, q, part) == want, f"{name} ({p},{q},{part})"


def test_grassmannian_rs():
    assert grassmannian_rs(space_from_preset("Gr(4,2)")) == (2, 2)
    assert grassmannian_rs(space_from_preset("Gr(5,2)")) == (3, 2)
    assert grassmannian_rs(space_from_preset("CP2")) == (2, 1)
    assert grassmannian_rs(space_from_preset("Q3")) is None
