"""Exact scalars: rationals, the quadratic field Q(sqrt 2), and dense exact
linear algebra (rref/rank/nullspace/solve) generic over both."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple


class QSqrt2:
    """Element a + b*sqrt(2) of Q(sqrt 2), with exact rational a, b.

    The only irrationality the library ever needs: nilpotent-pair solutions
    involve sqrt(2) and nothing else.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        if isinstance(a, QSqrt2):
            assert b == 0
            self.a, self.b = a.a, a.b
            return
        self.a = Fraction(a)
        self.b = Fraction(b)

    # -- ring structure ----------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        return QSqrt2(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt2(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        return QSqrt2(
            self.a * other.a + 2 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QSqrt2":
        n = self.a * self.a - 2 * self.b * self.b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt2)")
        return QSqrt2(self.a / n, -self.b / n)

    def __truediv__(self, other):
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    # -- comparisons -------------------------------------------------------
    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __repr__(self):
        if self.b == 0:
            return f"{self.a}"
        if self.a == 0:
            return f"{self.b}*rt2"
        return f"{self.a}+{self.b}*rt2"

    def conj(self) -> "QSqrt2":
        return QSqrt2(self.a, -self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    def sqrt(self) -> Optional["QSqrt2"]:
        """Exact square root inside Q(sqrt2), or None if there is none.

        Solves (u + v*rt2)^2 = a + b*rt2, i.e. u^2 + 2v^2 = a, 2uv = b.
        """
        if self.b == 0:
            u = _frac_sqrt(self.a)
            if u is not None:
                return QSqrt2(u, 0)
            h = _frac_sqrt(self.a / 2)
            if h is not None:
                return QSqrt2(0, h)
            return None
        # u^2 and 2v^2 are the roots of z^2 - a z + b^2/2 = 0
        disc = self.a * self.a - 2 * self.b * self.b
        d = _frac_sqrt(disc)
        if d is None:
            return None
        for z in ((self.a + d) / 2, (self.a - d) / 2):
            u = _frac_sqrt(z)
            if u is None or u == 0:
                continue
            v = self.b / (2 * u)
            if u * u + 2 * v * v == self.a:
                return QSqrt2(u, v)
        return None


RT2 = QSqrt2(0, 1)
QS_ZERO = QSqrt2(0, 0)
QS_ONE = QSqrt2(1, 0)


def _coerce(x) -> QSqrt2:
    if isinstance(x, QSqrt2):
        return x
    if isinstance(x, (int, Fraction)):
        return QSqrt2(x, 0)
    raise TypeError(f"cannot coerce {type(x)} into Q(sqrt2)")


def _frac_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    q = Fraction(q)
    pn = _int_sqrt(q.numerator)
    pd = _int_sqrt(q.denominator)
    if pn is None or pd is None:
        return None
    return Fraction(pn, pd)


def _int_sqrt(n: int) -> Optional[int]:
    if n < 0:
        return None
    r = int(n**0.5)
    for c in (r - 1, r, r + 1, r + 2):
        if c >= 0 and c * c == n:
            return c
    return None


def parse_scalar(text: str) -> QSqrt2:
    """Parse 'p/q', 'p/q+r/s*rt2', '-rt2', '2*rt2' style literals."""
    s = text.replace(" ", "").replace("sqrt2", "rt2").replace("√2", "rt2")
    if not s:
        raise ValueError("empty scalar literal")
    # split into signed terms
    terms: List[str] = []
    cur = ""
    for i, ch in enumerate(s):
        if ch in "+-" and i > 0 and s[i - 1] not in "+-*/":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    a = Fraction(0)
    b = Fraction(0)
    for t in terms:
        if "rt2" in t:
            coeff = t.replace("*rt2", "").replace("rt2", "")
            if coeff in ("", "+"):
                coeff = "1"
            elif coeff == "-":
                coeff = "-1"
            b += Fraction(coeff)
        else:
            a += Fraction(t)
    return QSqrt2(a, b)


def format_scalar(x) -> dict:
    """Loss-free JSON form: {"rat": "p/q", "rt2": "p/q"}."""
    x = _coerce(x) if not isinstance(x, QSqrt2) else x
    return {"rat": str(x.a), "rt2": str(x.b)}


# ---------------------------------------------------------------------------
# Exact dense linear algebra, generic over Fraction / QSqrt2 entries.
# ---------------------------------------------------------------------------

Row = List
Matrix = List[Row]


def rref(mat: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form (in place on a copy) and pivot columns."""
    m = [list(r) for r in mat]
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        pr = None
        for i in range(r, n_rows):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def rank(mat: Matrix) -> int:
    if not mat:
        return 0
    return len(rref(mat)[1])


def nullspace(mat: Matrix, n_cols: Optional[int] = None) -> Matrix:
    """Basis of the right kernel; rows are the basis vectors."""
    if not mat:
        return []
    if n_cols is None:
        n_cols = len(mat[0])
    red, pivots = rref(mat)
    one = _unit_like(mat[0][0])
    zero = one - one
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * n_cols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(mat: Matrix, rhs: Row) -> Optional[Row]:
    """One exact solution of mat · x = rhs, or None if inconsistent."""
    if not mat:
        return [] if not any(rhs) else None
    n_cols = len(mat[0])
    aug = [list(r) + [b] for r, b in zip(mat, rhs)]
    red, pivots = rref(aug)
    if n_cols in pivots:
        return None
    one = _unit_like(mat[0][0])
    zero = one - one
    x = [zero] * n_cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][n_cols]
    return x


def _unit_like(sample):
    if isinstance(sample, QSqrt2):
        return QS_ONE
    return Fraction(1)
