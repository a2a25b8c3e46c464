"""Exact root systems and Weyl machinery for the simple types A-D, E6, E7.

Weights live in the simple-root basis (tuples of Fractions or ints, length =
rank).  The invariant form is normalized so that long roots have squared
length 2; short roots (types B, C) get 1, which keeps every Cartan pairing
<a,b> = 2(a,b)/(b,b) integral.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

Weight = Tuple[Fraction, ...]

_FAMILIES = ("A", "B", "C", "D", "E")


@dataclass(frozen=True)
class SimpleLieType:
    family: str
    rank: int

    def __post_init__(self):
        fam, l = self.family, self.rank
        ok = (
            (fam == "A" and l >= 1)
            or (fam in ("B", "C") and l >= 2)
            or (fam == "D" and l >= 3)
            or (fam == "E" and l in (6, 7))
        )
        if not ok:
            raise ValueError(f"unsupported simple type {fam}{l}")

    def __str__(self):
        return f"{self.family}{self.rank}"


def _cartan_and_lengths(t: SimpleLieType):
    """Bourbaki Cartan matrix C[i][j] = <alpha_i, alpha_j> and (a_i,a_i)."""
    l = t.rank
    C = [[2 if i == j else 0 for j in range(l)] for i in range(l)]

    def link(i, j, cij=-1, cji=-1):
        C[i][j] = cij
        C[j][i] = cji

    if t.family == "A":
        for i in range(l - 1):
            link(i, i + 1)
        norms = [2] * l
    elif t.family == "B":
        for i in range(l - 2):
            link(i, i + 1)
        # alpha_{l-1} long, alpha_l short: <a_{l-1},a_l> = -2, <a_l,a_{l-1}> = -1
        link(l - 2, l - 1, -2, -1)
        norms = [2] * (l - 1) + [1]
    elif t.family == "C":
        for i in range(l - 2):
            link(i, i + 1)
        link(l - 2, l - 1, -1, -2)
        norms = [1] * (l - 1) + [2]
    elif t.family == "D":
        for i in range(l - 3):
            link(i, i + 1)
        link(l - 3, l - 2)
        link(l - 3, l - 1)
        norms = [2] * l
    else:  # E6, E7 in Bourbaki numbering: a2 hangs off a4
        chain = [0, 2, 3, 4, 5] + ([6] if l == 7 else [])
        for a, b in zip(chain, chain[1:]):
            link(a, b)
        link(1, 3)
        norms = [2] * l
    return C, norms


def _weyl_orbit_roots(cartan: List[List[int]], l: int) -> List[Tuple[int, ...]]:
    """All roots as the Weyl orbit of the simple roots (exact, integer coords)."""

    def reflect(v, i):
        # <v, a_i> = sum_j v_j <a_j, a_i>
        pr = sum(v[j] * cartan[j][i] for j in range(l))
        w = list(v)
        w[i] -= pr
        return tuple(w)

    simple = [tuple(1 if j == i else 0 for j in range(l)) for i in range(l)]
    seen = set(simple)
    queue = list(simple)
    while queue:
        v = queue.pop()
        for i in range(l):
            w = reflect(v, i)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return sorted(seen)


@dataclass(frozen=True)
class RootDatum:
    type: SimpleLieType
    simple_roots: Tuple[Weight, ...]
    cartan: Tuple[Tuple[int, ...], ...]          # <a_i, a_j>
    gram: Tuple[Tuple[Fraction, ...], ...]       # (a_i, a_j), long roots norm 2
    positive_roots: Tuple[Weight, ...]
    gamma: Weight                                # half sum of positive roots
    delta: Weight                                # highest root
    n_coeffs: Tuple[int, ...]                    # coefficients of delta

    @property
    def rank(self) -> int:
        return self.type.rank

    # -- bilinear forms ----------------------------------------------------
    def inner(self, lam: Sequence, mu: Sequence) -> Fraction:
        """(lam, mu) in the normalization with long roots of squared length 2."""
        g = self.gram
        return sum(
            Fraction(a) * g[i][j] * Fraction(b)
            for i, a in enumerate(lam)
            for j, b in enumerate(mu)
            if a and b
        ) or Fraction(0)

    def pairing(self, lam: Sequence, beta: Sequence) -> Fraction:
        """<lam, beta> = 2(lam, beta)/(beta, beta)."""
        bb = self.inner(beta, beta)
        return 2 * self.inner(lam, beta) / bb

    def pairing_simple(self, lam: Sequence, i: int) -> Fraction:
        """<lam, alpha_i> via the Cartan matrix; integral on the root lattice."""
        return sum(Fraction(lam[j]) * self.cartan[j][i] for j in range(self.rank))

    # -- Weyl group --------------------------------------------------------
    def is_root(self, v: Sequence) -> bool:
        return tuple(Fraction(c) for c in v) in self._root_set()

    def _root_set(self):
        rs = getattr(self, "_roots_cache", None)
        if rs is None:
            rs = set(self.positive_roots) | {
                tuple(-c for c in r) for r in self.positive_roots
            }
            object.__setattr__(self, "_roots_cache", rs)
        return rs

    def reflect(self, lam: Sequence, alpha: Sequence) -> Weight:
        """sigma_alpha(lam) = lam - <lam,alpha> alpha; alpha must be a root."""
        al = tuple(Fraction(c) for c in alpha)
        if al not in self._root_set():
            raise ValueError(f"{alpha} is not a root of {self.type}")
        pr = self.pairing(lam, al)
        return tuple(Fraction(x) - pr * a for x, a in zip(lam, al))

    def reflect_simple(self, lam: Sequence, i: int) -> Weight:
        pr = self.pairing_simple(lam, i)
        return tuple(
            Fraction(x) - pr if j == i else Fraction(x) for j, x in enumerate(lam)
        )

    def dominant_representative(self, xi: Sequence) -> Tuple[Weight, int, bool]:
        """Weyl-orbit representative in the dominant chamber.

        Returns (dominant, index, singular): index = #{a in D+ : (xi, a) < 0},
        equal to the number of greedy simple reflections applied; singular is
        set when (xi, a) = 0 for some positive root (callers must check it
        before trusting Bott degrees).
        """
        xi = tuple(Fraction(c) for c in xi)
        index = 0
        singular = False
        for al in self.positive_roots:
            v = self.inner(xi, al)
            if v < 0:
                index += 1
            elif v == 0:
                singular = True
        cur = xi
        steps = 0
        while True:
            for i in range(self.rank):
                if self.pairing_simple(cur, i) < 0:
                    cur = self.reflect_simple(cur, i)
                    steps += 1
                    break
            else:
                break
        if not singular and steps != index:
            raise AssertionError(
                f"greedy reflection count {steps} != root-counting index {index}"
            )
        return cur, index, singular

    def is_dominant(self, lam: Sequence) -> bool:
        return all(self.pairing_simple(lam, i) >= 0 for i in range(self.rank))

    def special_simple_roots(self) -> List[int]:
        """Indices i with n_{alpha_i} = 1 in the highest root."""
        return [i for i, n in enumerate(self.n_coeffs) if n == 1]

    def weyl_dimension(self, lam: Sequence) -> int:
        """Weyl dimension formula for a dominant weight of the full group."""
        num = Fraction(1)
        for al in self.positive_roots:
            num *= self.inner(tuple(Fraction(a) + g for a, g in zip(lam, self.gamma)), al) / self.inner(
                self.gamma, al
            )
        assert num.denominator == 1
        return int(num)


_CLASSICAL_COUNT = {
    "A": lambda l: l * (l + 1) // 2,
    "B": lambda l: l * l,
    "C": lambda l: l * l,
    "D": lambda l: l * (l - 1),
    "E": lambda l: {6: 36, 7: 63}[l],
}


def build_root_system(t: SimpleLieType) -> RootDatum:
    l = t.rank
    cartan, norms = _cartan_and_lengths(t)
    gram = tuple(
        tuple(Fraction(cartan[j][i] * norms[i], 2) for j in range(l)) for i in range(l)
    )
    # gram[i][j] = (a_i, a_j) = <a_j, a_i>(a_i,a_i)/2; symmetry is asserted below
    for i in range(l):
        for j in range(l):
            assert gram[i][j] == gram[j][i], "Gram symmetry"

    roots = _weyl_orbit_roots(cartan, l)
    pos = [r for r in roots if all(c >= 0 for c in r)]
    assert len(pos) == _CLASSICAL_COUNT[t.family](l), "positive-root count"
    pos_w: List[Weight] = [tuple(Fraction(c) for c in r) for r in sorted(pos)]

    gamma = tuple(
        Fraction(sum(r[i] for r in pos_w), 2) for i in range(l)
    )
    highest = [r for r in pos_w if all(
        all(Fraction(a) - Fraction(b) >= 0 for a, b in zip(r, s)) for s in pos_w
    )]
    assert len(highest) == 1, "highest root uniqueness"
    delta = highest[0]
    n_coeffs = tuple(int(c) for c in delta)
    assert all(n > 0 for n in n_coeffs)

    rd = RootDatum(
        type=t,
        simple_roots=tuple(
            tuple(Fraction(1) if j == i else Fraction(0) for j in range(l))
            for i in range(l)
        ),
        cartan=tuple(tuple(row) for row in cartan),
        gram=gram,
        positive_roots=tuple(pos_w),
        gamma=gamma,
        delta=delta,
        n_coeffs=n_coeffs,
    )
    assert rd.inner(delta, delta) == 2, "highest root is long"
    return rd


def root_system(spec: str) -> RootDatum:
    """Convenience: root_system('B3') etc."""
    fam = spec[0].upper()
    return build_root_system(SimpleLieType(fam, int(spec[1:])))
