import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flagcoh.rootsys import SimpleLieType, build_root_system, root_system


ALL_TYPES = ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "C3", "D4", "E6", "E7"]


def _epsilon_realization(spec):
    """Oracle data: all roots and the simple roots in epsilon coordinates."""
    fam, l = spec[0], int(spec[1:])
    e = lambda i, n: tuple(1 if j == i else 0 for j in range(n))

    def minus(a, b):
        return tuple(x - y for x, y in zip(a, b))

    def plus(a, b):
        return tuple(x + y for x, y in zip(a, b))

    if fam == "A":
        n = l + 1
        roots = [minus(e(i, n), e(j, n)) for i in range(n) for j in range(n) if i != j]
        simple = [minus(e(i, n), e(i + 1, n)) for i in range(l)]
    elif fam == "B":
        n = l
        roots = [tuple(s * c for c in e(i, n)) for i in range(n) for s in (1, -1)]
        for i in range(n):
            for j in range(i + 1, n):
                for si in (1, -1):
                    for sj in (1, -1):
                        roots.append(plus(tuple(si * c for c in e(i, n)),
                                          tuple(sj * c for c in e(j, n))))
        simple = [minus(e(i, n), e(i + 1, n)) for i in range(l - 1)] + [e(l - 1, n)]
    elif fam == "C":
        n = l
        roots = [tuple(2 * s * c for c in e(i, n)) for i in range(n) for s in (1, -1)]
        for i in range(n):
            for j in range(i + 1, n):
                for si in (1, -1):
                    for sj in (1, -1):
                        roots.append(plus(tuple(si * c for c in e(i, n)),
                                          tuple(sj * c for c in e(j, n))))
        simple = [minus(e(i, n), e(i + 1, n)) for i in range(l - 1)] + [
            tuple(2 * c for c in e(l - 1, n))
        ]
    elif fam == "D":
        n = l
        roots = []
        for i in range(n):
            for j in range(i + 1, n):
                for si in (1, -1):
                    for sj in (1, -1):
                        roots.append(plus(tuple(si * c for c in e(i, n)),
                                          tuple(sj * c for c in e(j, n))))
        simple = [minus(e(i, n), e(i + 1, n)) for i in range(l - 1)] + [
            plus(e(l - 2, n), e(l - 1, n))
        ]
    else:
        raise ValueError(spec)
    return roots, simple


def brute_force_positive_roots(spec):
    """Oracle: realize the system in epsilon coordinates, rewrite every root
    in the simple-root basis by exact solving, keep the nonnegative ones."""
    from flagcoh.scalars import solve

    roots, simple = _epsilon_realization(spec)
    dim = len(simple[0])
    cols = list(simple)
    out = []
    for r in roots:
        mat = [[Fraction(cols[j][i]) for j in range(len(cols))] for i in range(dim)]
        x = solve(mat, [Fraction(c) for c in r])
        assert x is not None and all(v.denominator == 1 for v in x)
        coords = tuple(int(v) for v in x)
        if all(c >= 0 for c in coords):
            out.append(coords)
    return sorted(out)


@pytest.mark.parametrize("spec", ["A1", "A2", "A3", "B2", "B3", "C3", "D4"])
def test_positive_roots_against_epsilon_oracle(spec):
    rd = root_system(spec)
    oracle = brute_force_positive_roots(spec)
    got = sorted(tuple(int(c) for c in r) for r in rd.positive_roots)
    assert got == oracle


@pytest.mark.parametrize("spec,count", [
    ("A1", 1), ("A3", 6), ("B3", 9), ("C3", 9), ("D4", 12), ("E6", 36), ("E7", 63),
])
def test_positive_root_counts(spec, count):
    assert len(root_system(spec).positive_roots) == count


def test_a1_data():
    rd = root_system("A1")
    assert rd.positive_roots == ((Fraction(1),),)
    assert rd.delta == (Fraction(1),)
    assert rd.gamma == (Fraction(1, 2),)


def test_a3_highest_root():
    rd = root_system("A3")
    assert tuple(int(c) for c in rd.delta) == (1, 1, 1)
    assert rd.n_coeffs == (1, 1, 1)


@pytest.mark.parametrize("spec", ALL_TYPES)
def test_delta_maximality_and_gamma(spec):
    rd = root_system(spec)
    for al in rd.positive_roots:
        assert all(d - a >= 0 for d, a in zip(rd.delta, al))
    total = [sum(r[i] for r in rd.positive_roots) for i in range(rd.rank)]
    assert tuple(Fraction(t, 2) for t in total) == rd.gamma
    # gamma pairs to 1 against every simple root
    for i in range(rd.rank):
        assert rd.pairing_simple(rd.gamma, i) == 1


@pytest.mark.parametrize("spec", ALL_TYPES)
def test_normalization(spec):
    rd = root_system(spec)
    assert rd.inner(rd.delta, rd.delta) == 2
    lengths = {rd.inner(a, a) for a in rd.positive_roots}
    assert lengths <= {Fraction(1), Fraction(2)}


def test_inner_examples():
    a2 = root_system("A2")
    assert a2.inner(a2.simple_roots[0], a2.simple_roots[1]) == -1
    b2 = root_system("B2")
    assert b2.inner(b2.simple_roots[1], b2.simple_roots[1]) == 1
    assert b2.inner(b2.simple_roots[0], b2.simple_roots[0]) == 2


@pytest.mark.parametrize("spec,special", [
    ("A3", [0, 1, 2]),
    ("C3", [2]),
    ("E7", [6]),
    ("B3", [0]),
    ("D4", [0, 2, 3]),
])
def test_special_simple_roots(spec, special):
    assert root_system(spec).special_simple_roots() == special


def test_reflection_basics():
    a2 = root_system("A2")
    a1, a2_root = a2.simple_roots
    assert a2.reflect(a1, a1) == tuple(-c for c in a1)
    assert a2.reflect(a2_root, a1) == (Fraction(1), Fraction(1))
    with pytest.raises(ValueError):
        a2.reflect(a1, (Fraction(1), Fraction(1, 2)))


@pytest.mark.parametrize("spec", ALL_TYPES)
def test_simple_reflection_permutes_other_positives(spec):
    rd = root_system(spec)
    for i in range(rd.rank):
        others = {r for r in rd.positive_roots if r != rd.simple_roots[i]}
        image = {rd.reflect_simple(r, i) for r in others}
        assert image == others


def test_dominant_representative_examples():
    a2 = root_system("A2")
    xi = (Fraction(3), Fraction(2))
    dom, idx, sing = a2.dominant_representative(xi)
    assert (dom, idx, sing) == (xi, 0, False)

    neg_gamma = tuple(-c for c in a2.gamma)
    dom, idx, sing = a2.dominant_representative(neg_gamma)
    assert not sing
    assert idx == 3
    assert dom == a2.gamma

    # (xi, alpha_1) = 0 makes it singular
    xi = (Fraction(1), Fraction(2))
    assert a2.inner(xi, a2.simple_roots[0]) == 0
    dom, idx, sing = a2.dominant_representative(xi)
    assert sing


def _det_of_accumulated_reflections(rd, xi):
    """Sign of the Weyl element carrying xi to the dominant chamber."""
    cur = tuple(Fraction(c) for c in xi)
    sign = 1
    while True:
        for i in range(rd.rank):
            if rd.pairing_simple(cur, i) < 0:
                cur = rd.reflect_simple(cur, i)
                sign = -sign
                break
        else:
            return sign


@pytest.mark.parametrize("spec", ["A2", "A3", "B2", "B3", "C3", "D4", "E6"])
def test_index_parity_and_greedy_count(spec):
    rd = root_system(spec)
    rng = random.Random(20240811)
    trials = 0
    while trials < 200:
        xi = tuple(Fraction(rng.randint(-4, 4)) for _ in range(rd.rank))
        if any(rd.inner(xi, al) == 0 for al in rd.positive_roots):
            continue
        trials += 1
        dom, idx, sing = rd.dominant_representative(xi)
        assert not sing
        assert rd.is_dominant(dom)
        assert _det_of_accumulated_reflections(rd, xi) == (-1) ** idx


def test_exhaustive_small_rank_index():
    """Small box exhaustively for rank <= 3: greedy count == root count."""
    for spec in ("A1", "A2", "B2", "A3", "B3", "C3"):
        rd = root_system(spec)
        rng = range(-2, 3)
        for coords in itertools.product(rng, repeat=rd.rank):
            xi = tuple(Fraction(c) for c in coords)
            dom, idx, sing = rd.dominant_representative(xi)
            assert rd.is_dominant(dom)
            if not sing:
                assert idx == sum(
                    1 for al in rd.positive_roots if rd.inner(xi, al) < 0
                )


@given(st.sampled_from(["A2", "B2", "A3", "C3"]),
       st.lists(st.integers(-6, 6), min_size=4, max_size=4))
@settings(max_examples=120, deadline=None)
def test_reflection_involutive_and_isometric(spec, coords):
    rd = root_system(spec)
    xi = tuple(Fraction(c) for c in coords[: rd.rank])
    for al in rd.positive_roots:
        ref = rd.reflect(xi, al)
        assert rd.reflect(ref, al) == xi
        assert rd.inner(ref, ref) == rd.inner(xi, xi)


def test_unsupported_types_rejected():
    for fam, rank in (("B", 1), ("D", 2), ("E", 8), ("F", 4)):
        with pytest.raises(ValueError):
            build_root_system(SimpleLieType(fam, rank))
