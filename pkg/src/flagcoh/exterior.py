"""Grassmann algebra over an m-dimensional space, its derivation superalgebra,
and the insertion / j / contraction / barwedge / algebraic-bracket calculus.

Derivations are Leibniz extensions of their values on generators; the
multilinear alternation formulas of the source material are kept in the test
suite as oracles (their prefactor conventions are mutually inconsistent, so
they pin per-degree constants there instead of driving this implementation).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Monomial = Tuple[int, ...]  # strictly increasing indices in 1..m


def _merge_sign(a: Monomial, b: Monomial) -> Tuple[Optional[Monomial], int]:
    """Concatenate-and-sort with the anticommutation sign; None if repeated."""
    if not a:
        return b, 1
    if not b:
        return a, 1
    out: List[int] = []
    sign = 1
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return None, 0
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            # b[j] jumps over the remaining len(a)-i letters of a
            if (len(a) - i) % 2 == 1:
                sign = -sign
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out), sign


@dataclass(frozen=True)
class GrassmannElement:
    """Element of Lambda(xi_1..xi_m) with exact rational coefficients."""

    m: int
    terms: Tuple[Tuple[Monomial, Fraction], ...]

    @staticmethod
    def make(m: int, data: Dict[Monomial, Fraction]) -> "GrassmannElement":
        clean = {k: Fraction(v) for k, v in data.items() if v}
        for k in clean:
            assert all(1 <= i <= m for i in k) and list(k) == sorted(set(k))
        return GrassmannElement(m, tuple(sorted(clean.items())))

    @staticmethod
    def zero(m: int) -> "GrassmannElement":
        return GrassmannElement(m, ())

    @staticmethod
    def one(m: int) -> "GrassmannElement":
        return GrassmannElement(m, (((), Fraction(1)),))

    @staticmethod
    def generator(m: int, j: int) -> "GrassmannElement":
        return GrassmannElement.make(m, {(j,): Fraction(1)})

    def tdict(self) -> Dict[Monomial, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> Optional[int]:
        degs = {len(k) for k, _ in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None if degs else 0

    def homogeneous_part(self, p: int) -> "GrassmannElement":
        return GrassmannElement(
            self.m, tuple((k, c) for k, c in self.terms if len(k) == p)
        )

    def __add__(self, other: "GrassmannElement") -> "GrassmannElement":
        assert self.m == other.m
        acc = self.tdict()
        for k, c in other.terms:
            acc[k] = acc.get(k, Fraction(0)) + c
        return GrassmannElement.make(self.m, acc)

    def __sub__(self, other: "GrassmannElement") -> "GrassmannElement":
        return self + (-other)

    def __neg__(self) -> "GrassmannElement":
        return GrassmannElement(self.m, tuple((k, -c) for k, c in self.terms))

    def scale(self, c) -> "GrassmannElement":
        c = Fraction(c)
        if not c:
            return GrassmannElement.zero(self.m)
        return GrassmannElement(self.m, tuple((k, c * v) for k, v in self.terms))

    def __mul__(self, other: "GrassmannElement") -> "GrassmannElement":
        assert self.m == other.m
        acc: Dict[Monomial, Fraction] = {}
        for ka, ca in self.terms:
            for kb, cb in other.terms:
                k, s = _merge_sign(ka, kb)
                if k is not None:
                    acc[k] = acc.get(k, Fraction(0)) + s * ca * cb
        return GrassmannElement.make(self.m, acc)

    def coeff(self, mono: Monomial) -> Fraction:
        return self.tdict().get(tuple(mono), Fraction(0))


def basis_monomials(m: int, p: int) -> List[Monomial]:
    return [tuple(c) for c in itertools.combinations(range(1, m + 1), p)]


@dataclass(frozen=True)
class VectorValuedForm:
    """Element of Lambda^{p+1} E (x) E*, i.e. the degree-p part of der Lambda E.

    degree is the derivation degree p in [-1, m]; components[k] is the image
    of xi_{k+1}, a Grassmann element of degree p+1.
    """

    m: int
    degree: int
    components: Tuple[GrassmannElement, ...]

    @staticmethod
    def make(m: int, degree: int, comps: Sequence[GrassmannElement]) -> "VectorValuedForm":
        assert len(comps) == m
        assert -1 <= degree <= m
        for c in comps:
            assert c.m == m
            h = c.is_homogeneous()
            assert h in (0, degree + 1) or c.is_zero()
        return VectorValuedForm(m, degree, tuple(comps))

    @staticmethod
    def zero(m: int, degree: int) -> "VectorValuedForm":
        return VectorValuedForm(m, degree, tuple(GrassmannElement.zero(m) for _ in range(m)))

    @staticmethod
    def basis_element(m: int, mono: Monomial, j: int) -> "VectorValuedForm":
        """xi_{mono} d/dxi_j."""
        comps = [GrassmannElement.zero(m) for _ in range(m)]
        comps[j - 1] = GrassmannElement.make(m, {tuple(mono): Fraction(1)})
        return VectorValuedForm.make(m, len(mono) - 1, comps)

    def parity(self) -> int:
        return self.degree % 2

    def __add__(self, other: "VectorValuedForm") -> "VectorValuedForm":
        assert self.m == other.m
        if self.degree != other.degree:
            # only zero forms may cross degrees (they carry a clamped label)
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise AssertionError("degree mismatch in form addition")
        return VectorValuedForm(
            self.m, self.degree,
            tuple(a + b for a, b in zip(self.components, other.components)),
        )

    def __sub__(self, other: "VectorValuedForm") -> "VectorValuedForm":
        return self + other.scale(-1)

    def scale(self, c) -> "VectorValuedForm":
        return VectorValuedForm(
            self.m, self.degree, tuple(x.scale(c) for x in self.components)
        )

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)


def apply_derivation(phi: VectorValuedForm, a: GrassmannElement) -> GrassmannElement:
    """i(phi) acting on a by the super-Leibniz rule from xi_k -> phi(xi_k)."""
    if phi.m != a.m:
        raise ValueError("dimension mismatch")
    m = phi.m
    par = phi.parity()
    out = GrassmannElement.zero(m)
    for mono, c in a.terms:
        for pos, letter in enumerate(mono):
            # sign from moving the parity-par derivation past pos odd letters
            sign = -1 if (par and pos % 2 == 1) else 1
            left = GrassmannElement.make(m, {tuple(mono[:pos]): Fraction(1)})
            right = GrassmannElement.make(m, {tuple(mono[pos + 1:]): Fraction(1)})
            term = left * phi.components[letter - 1] * right
            out = out + term.scale(sign * c)
    return out


def grading_derivation(m: int) -> VectorValuedForm:
    """epsilon = sum xi_k d/dxi_k, the identity form in W(E)_0."""
    comps = [GrassmannElement.generator(m, k) for k in range(1, m + 1)]
    return VectorValuedForm.make(m, 0, comps)


def j_map(m: int, psi: GrassmannElement, degree: int = None) -> VectorValuedForm:
    """j(psi) = sum_k (psi xi_k) (x) xi_k*; degree disambiguates psi = 0."""
    assert psi.m == m
    p = psi.is_homogeneous()
    assert p is not None
    if degree is not None and psi.is_zero():
        p = degree
    comps = [psi * GrassmannElement.generator(m, k) for k in range(1, m + 1)]
    return VectorValuedForm.make(m, min(p, m), comps)


def barwedge(phi: VectorValuedForm, psi: VectorValuedForm) -> VectorValuedForm:
    """Insertion product: apply i(psi) to the components of phi.

    In derivation degrees this maps W_p x W_q -> W_{p+q}; the bracket below
    is built from it.
    """
    if phi.m != psi.m:
        raise ValueError("dimension mismatch")
    comps = [apply_derivation(psi, c) for c in phi.components]
    deg = phi.degree + psi.degree
    if deg < -1 or deg > phi.m:
        return VectorValuedForm.zero(phi.m, min(max(deg, -1), phi.m))
    return VectorValuedForm.make(phi.m, deg, comps)


def bracket(phi: VectorValuedForm, psi: VectorValuedForm) -> VectorValuedForm:
    """Algebraic bracket {phi, psi} with i({phi,psi}) = [i(phi), i(psi)]."""
    if phi.m != psi.m:
        raise ValueError("dimension mismatch")
    sign = -1 if (phi.degree % 2) and (psi.degree % 2) else 1
    return barwedge(psi, phi) - barwedge(phi, psi).scale(sign)


def compose_as_derivations(
    phi: VectorValuedForm, psi: VectorValuedForm
) -> Dict[Monomial, GrassmannElement]:
    """i(phi) o i(psi) on all basis monomials; used by the bracket oracle."""
    m = phi.m
    out = {}
    for p in range(m + 1):
        for mono in basis_monomials(m, p):
            a = GrassmannElement.make(m, {mono: Fraction(1)})
            out[mono] = apply_derivation(phi, apply_derivation(psi, a))
    return out


def contraction_c(phi: VectorValuedForm) -> GrassmannElement:
    """c(phi) normalized so that c(j(psi)) = p! (m-p) psi for deg-p psi.

    The bare interior-product contraction sum_k d_k(phi_k) satisfies
    cj = (-1)^p (m-p) id; the (-1)^p p! factor restores the stated law.
    """
    m = phi.m
    p = phi.degree
    total = GrassmannElement.zero(m)
    for k in range(1, m + 1):
        dk = VectorValuedForm.basis_element(m, (), k)
        total = total + apply_derivation(dk, phi.components[k - 1])
    factor = Fraction(_factorial(p)) if p >= 0 else Fraction(1)
    if p >= 0 and p % 2 == 1:
        factor = -factor
    return total.scale(factor)


def decompose_im_j_ker_c(
    phi: VectorValuedForm,
) -> Tuple[GrassmannElement, VectorValuedForm]:
    """Split phi = j(psi) + chi with c(chi) = 0, valid for degree p < m."""
    m, p = phi.m, phi.degree
    if p >= m:
        raise ValueError("the Im j (+) Ker c splitting needs degree < m")
    psi = contraction_c(phi).scale(Fraction(1, _factorial(p) * (m - p)))
    chi = phi - j_map(m, psi, degree=p)
    return psi, chi


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def wedge_basis(m: int) -> List[Tuple[Monomial, int]]:
    """Basis (monomial, j) of W(E): xi_mono d/dxi_j."""
    out = []
    for p in range(-1, m + 1):
        for mono in basis_monomials(m, p + 1):
            for j in range(1, m + 1):
                out.append((mono, j))
    return out
