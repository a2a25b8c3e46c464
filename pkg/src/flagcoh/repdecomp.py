"""Formal characters and decomposition of completely reducible modules over
the Levi subgroup R of a parabolic.

Characters are weight -> multiplicity dicts with integer weight coordinates
in the simple-root basis of the ambient group; the central directions ride
along untouched.  Irreducible Levi characters come from the Freudenthal
recursion run with the ambient invariant form (the central component of every
weight of an irreducible is constant and orthogonal to span(S), so no
projection is needed).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from .rootsys import RootDatum, Weight

IntWeight = Tuple[int, ...]
FormalCharacter = Dict[IntWeight, int]


def _intw(w: Sequence) -> IntWeight:
    out = []
    for c in w:
        f = Fraction(c)
        if f.denominator != 1:
            raise ValueError(f"non-integral weight coordinate {c}")
        out.append(int(f))
    return tuple(out)


def char_dim(chi: FormalCharacter) -> int:
    return sum(chi.values())


def char_of_roots(weights: Iterable[Sequence]) -> FormalCharacter:
    chi: FormalCharacter = {}
    for w in weights:
        k = _intw(w)
        chi[k] = chi.get(k, 0) + 1
    return chi


def tensor(chi1: FormalCharacter, chi2: FormalCharacter) -> FormalCharacter:
    out: FormalCharacter = {}
    for w1, m1 in chi1.items():
        for w2, m2 in chi2.items():
            k = tuple(a + b for a, b in zip(w1, w2))
            out[k] = out.get(k, 0) + m1 * m2
    return out


def dual(chi: FormalCharacter) -> FormalCharacter:
    return {tuple(-c for c in w): m for w, m in chi.items()}


def trivial_character(rank: int) -> FormalCharacter:
    return {(0,) * rank: 1}


def exterior_power(chi: FormalCharacter, p: int) -> FormalCharacter:
    """Character of the p-th exterior power.

    Multiplicity-free characters go through subset sums; the general case
    uses the Newton recursion on power-sum characters (exact, the division
    by k at each step stays integral on actual characters).
    """
    if p < 0:
        raise ValueError("exterior power degree must be >= 0")
    rank = len(next(iter(chi))) if chi else 0
    if p == 0:
        return trivial_character(rank)
    if not chi or p > char_dim(chi):
        return {}
    if all(m == 1 for m in chi.values()):
        out: FormalCharacter = {}
        weights = sorted(chi)
        for subset in itertools.combinations(weights, p):
            k = tuple(sum(c) for c in zip(*subset))
            out[k] = out.get(k, 0) + 1
        return out
    return _exterior_newton(chi, p)


def _exterior_newton(chi: FormalCharacter, p: int) -> FormalCharacter:
    def psum(j: int) -> Dict[IntWeight, Fraction]:
        return {tuple(j * c for c in w): Fraction(m) for w, m in chi.items()}

    es: List[Dict[IntWeight, Fraction]] = [
        {tuple(0 for _ in next(iter(chi))): Fraction(1)}
    ]
    for k in range(1, p + 1):
        acc: Dict[IntWeight, Fraction] = {}
        for j in range(1, k + 1):
            sign = 1 if (j - 1) % 2 == 0 else -1
            pj = psum(j)
            prev = es[k - j]
            for w1, m1 in prev.items():
                for w2, m2 in pj.items():
                    key = tuple(a + b for a, b in zip(w1, w2))
                    acc[key] = acc.get(key, Fraction(0)) + sign * m1 * m2
        es.append({w: m / k for w, m in acc.items() if m})
    out: FormalCharacter = {}
    for w, m in es[p].items():
        if m:
            assert m.denominator == 1
            out[w] = int(m)
    return out


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LeviDatum:
    """Levi data for P = R x| N-: S = Pi \\ {alpha_0} (or any proper subset)."""

    rd: RootDatum
    S: Tuple[int, ...]

    def __post_init__(self):
        if set(self.S) >= set(range(self.rd.rank)):
            raise ValueError("S must be a proper subset of the simple roots")
        object.__setattr__(self, "S", tuple(sorted(self.S)))

    @property
    def center_direction(self) -> Weight:
        """Fundamental-weight direction complementary to span(S)."""
        missing = [i for i in range((self.rd.rank)) if i not in self.S]
        i0 = missing[0]
        from .scalars import solve

        rows = [[Fraction(self.rd.cartan[j][i]) for j in range(self.rd.rank)]
                for i in range(self.rd.rank)]
        rhs = [Fraction(1) if i == i0 else Fraction(0) for i in range(self.rd.rank)]
        sol = solve(rows, rhs)
        assert sol is not None
        return tuple(sol)

    def levi_positive_roots(self) -> List[IntWeight]:
        s = set(self.S)
        out = []
        for r in self.rd.positive_roots:
            ri = _intw(r)
            if all(c == 0 for i, c in enumerate(ri) if i not in s):
                out.append(ri)
        return out

    def rho(self) -> Tuple[Fraction, ...]:
        pos = self.levi_positive_roots()
        return tuple(
            Fraction(sum(r[i] for r in pos), 2) for i in range(self.rd.rank)
        )

    def is_S_dominant(self, lam: Sequence) -> bool:
        return all(self.rd.pairing_simple(lam, i) >= 0 for i in self.S)


def irreducible_character(L: LeviDatum, lam: Sequence) -> FormalCharacter:
    """Character of the irreducible R-module with highest weight lam.

    Freudenthal recursion over the Levi's positive roots, run level by level
    from the highest weight.  Exact integer arithmetic throughout: the
    recursion is evaluated with 2x the invariant form, which is integral on
    the root lattice shifted by lam.
    """
    lam = _intw(lam)
    if not L.is_S_dominant(lam):
        raise ValueError(f"{lam} is not S-dominant for S={L.S}")
    rd = L.rd
    rank = rd.rank
    pos = L.levi_positive_roots()
    two_rho = tuple(sum(r[i] for r in pos) for i in range(rank))

    # inner2(x, y) = 2(x, y), integral for integer vectors
    g2 = [[rd.gram[i][j] * 2 for j in range(rank)] for i in range(rank)]
    for row in g2:
        for v in row:
            assert Fraction(v).denominator == 1
    g2 = [[int(v) for v in row] for row in g2]

    def inner2(x, y):
        tot = 0
        for i, a in enumerate(x):
            if a:
                row = g2[i]
                tot += a * sum(row[j] * b for j, b in enumerate(y) if b)
        return tot

    mult: Dict[IntWeight, int] = {lam: 1}
    level = [lam]
    simples = [tuple(1 if j == i else 0 for j in range(rank)) for i in L.S]
    while level:
        nxt = set()
        for w in level:
            for a in simples:
                nxt.add(tuple(x - y for x, y in zip(w, a)))
        new_level = []
        for mu in sorted(nxt):
            # denominator: (lam+rho,lam+rho) - (mu+rho,mu+rho) = (lam+mu+2rho, lam-mu)
            upl = tuple(a + b + c for a, b, c in zip(lam, mu, two_rho))
            dif = tuple(a - b for a, b in zip(lam, mu))
            den = inner2(upl, dif)
            if den <= 0:
                continue
            num = 0
            for al in pos:
                k = 1
                while True:
                    w = tuple(a + k * b for a, b in zip(mu, al))
                    if not _le(w, lam):
                        break
                    m = mult.get(w, 0)
                    if m:
                        num += 2 * m * inner2(w, al)
                    k += 1
            if num:
                q, r = divmod(num, den)
                assert r == 0, "Freudenthal multiplicity must be integral"
                if q > 0:
                    mult[mu] = q
                    new_level.append(mu)
        level = new_level
    return dict(mult)


def _le(w, lam) -> bool:
    return all(a <= b for a, b in zip(w, lam))


def _char_sub(chi: FormalCharacter, other: FormalCharacter, k: int) -> None:
    for w, m in other.items():
        cur = chi.get(w, 0) - k * m
        if cur < 0:
            raise ValueError("not an R-module character (negative multiplicity)")
        if cur:
            chi[w] = cur
        else:
            chi.pop(w, None)


def decompose(L: LeviDatum, chi: FormalCharacter) -> List[Tuple[IntWeight, int]]:
    """Highest weights (with multiplicities) of a completely reducible module.

    Repeatedly extracts a maximal S-dominant weight and subtracts its
    irreducible character.  Maximality is realized as (height, lex)-max among
    S-dominant weights of positive multiplicity: a maximal-height S-dominant
    weight is maximal in the root order, and the lex refinement makes the
    ordering deterministic.  Raises if a subtraction goes negative, i.e. the
    input was not an R-module character.
    """
    work = dict(chi)
    out: List[Tuple[IntWeight, int]] = []
    while work:
        cands = [w for w in work if L.is_S_dominant(w)]
        if not cands:
            raise ValueError("no S-dominant weight left; not an R-module character")
        best_h = max(sum(w) for w in cands)
        top = max(w for w in cands if sum(w) == best_h)
        k = work[top]
        _char_sub(work, irreducible_character(L, top), k)
        out.append((top, k))
    out.sort(key=lambda t: (-sum(t[0]), tuple(-c for c in t[0])))
    return out


def trivial_multiplicity(L: LeviDatum, chi: FormalCharacter) -> int:
    zero = (0,) * L.rd.rank
    return sum(k for w, k in decompose(L, chi) if w == zero)
