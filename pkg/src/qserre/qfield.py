"""Exact arithmetic in the field Q(q) plus q-combinatorial primitives.

Everything downstream computes over this field: rational functions in a
single deformation parameter q with arbitrary-precision rational
coefficients.  Values are canonical (numerator and denominator coprime,
denominator monic), so ``==`` is mathematical equality.  No floating
point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - gmpy2 is an optional speedup
    from fractions import Fraction as _Q

_ZERO = _Q(0)
_ONE = _Q(1)


class DivisionByZero(ZeroDivisionError):
    """Division by the zero rational function."""


class NegativeIndex(ValueError):
    """Nonsymmetric quantum integer requested for a negative index."""


# ---------------------------------------------------------------------------
# dense polynomial helpers (tuples of rationals, index = exponent of q)
# ---------------------------------------------------------------------------

def _ptrim(c):
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _ptrim(out)


def _pneg(a):
    return tuple(-x for x in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return _ptrim(out)


def _pscale(a, s):
    if not s:
        return ()
    return tuple(x * s for x in a)


def _pdivmod(a, b):
    """Euclidean division in Q[q]; b must be nonzero."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    if len(a) - 1 < db:
        return (), _ptrim(a)
    quot = [_ZERO] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if not c:
            continue
        f = c / lb
        quot[i - db] = f
        for j in range(db + 1):
            a[i - db + j] -= f * b[j]
    return _ptrim(quot), _ptrim(a)


def _pprim(a):
    """Divide by rational content; keeps Euclid remainders small."""
    if not a:
        return a
    num_gcd = 0
    den_lcm = 1
    for x in a:
        if x:
            num_gcd = _igcd(num_gcd, abs(x.numerator))
            den_lcm = den_lcm * x.denominator // _igcd(den_lcm, x.denominator)
    s = _Q(den_lcm, num_gcd)
    return tuple(x * s for x in a)


def _igcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _pval(a):
    for i, x in enumerate(a):
        if x:
            return i
    return 0


def _pmonexp(a):
    """Exponent k if a = c*q^k for a single nonzero c, else -1."""
    k = -1
    for i, x in enumerate(a):
        if x:
            if k >= 0:
                return -1
            k = i
    return k


def _pgcd(a, b):
    """Monic gcd in Q[q]."""
    if a and b:
        ka = _pmonexp(a)
        if ka >= 0:
            return (_ZERO,) * min(ka, _pval(b)) + (_ONE,)
        kb = _pmonexp(b)
        if kb >= 0:
            return (_ZERO,) * min(kb, _pval(a)) + (_ONE,)
        v = min(_pval(a), _pval(b))
        if v:
            return (_ZERO,) * v + _pgcd(a[v:], b[v:])
    a, b = _pprim(a), _pprim(b)
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, _pprim(r)
    if not a:
        return ()
    return tuple(x / a[-1] for x in a)


def _pquo(a, b):
    q, r = _pdivmod(a, b)
    assert not r, "non-exact polynomial division"
    return q


# ---------------------------------------------------------------------------
# the field
# ---------------------------------------------------------------------------

class QRat:
    """A rational function in q over the rationals, canonically reduced."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _canonical=False):
        if den is None:
            den = (_ONE,)
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_int(n):
        return _from_rat(_Q(n))

    @staticmethod
    def from_rational(p, r=1):
        return _from_rat(_Q(p, r))

    @staticmethod
    def q_power(k):
        """q**k for any integer k."""
        if k >= 0:
            return QRat((_ZERO,) * k + (_ONE,), (_ONE,), _canonical=True)
        return QRat((_ONE,), (_ZERO,) * (-k) + (_ONE,), _canonical=True)

    # -- predicates --------------------------------------------------------

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return QRat(_padd(self.num, other.num), self.den)
        g = _pgcd(self.den, other.den)
        da = _pquo(self.den, g)
        db = _pquo(other.den, g)
        num = _padd(_pmul(self.num, db), _pmul(other.num, da))
        return QRat(num, _pmul(_pmul(da, g), db))

    __radd__ = __add__

    def __neg__(self):
        return QRat(_pneg(self.num), self.den, _canonical=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        # cross-cancel so the product of canonical inputs stays canonical
        g1 = _pgcd(self.num, other.den)
        g2 = _pgcd(other.num, self.den)
        num = _pmul(_pquo(self.num, g1), _pquo(other.num, g2))
        den = _pmul(_pquo(self.den, g2), _pquo(other.den, g1))
        lead = den[-1]
        if lead != _ONE:
            num = tuple(x / lead for x in num)
            den = tuple(x / lead for x in den)
        return QRat(num, den, _canonical=True)

    __rmul__ = __mul__

    def inv(self):
        if not self.num:
            raise DivisionByZero("inverse of the zero rational function")
        num, den = self.den, self.num
        lead = den[-1]
        if lead != _ONE:
            num = tuple(x / lead for x in num)
            den = tuple(x / lead for x in den)
        return QRat(num, den, _canonical=True)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inv()

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- substitutions -----------------------------------------------------

    def bar(self):
        """Substitute q -> 1/q and re-canonicalize (an involution)."""
        dn, dd = len(self.num) - 1, len(self.den) - 1
        num = tuple(reversed(self.num))
        den = tuple(reversed(self.den))
        if dn > dd:
            den = (_ZERO,) * (dn - dd) + den
        elif dd > dn:
            num = (_ZERO,) * (dd - dn) + num
        return QRat(num, den)

    def subst_power(self, d):
        """Substitute q -> q**d for a positive integer d."""
        if d <= 0:
            raise ValueError("substitution power must be positive")
        return QRat(_pinflate(self.num, d), _pinflate(self.den, d))

    # -- comparisons / hashing --------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- display -----------------------------------------------------------

    def __repr__(self):
        return f"QRat({_pstr(self.num)!r}, {_pstr(self.den)!r})"

    def __str__(self):
        if self.den == (_ONE,):
            return _pstr(self.num)
        return f"({_pstr(self.num)})/({_pstr(self.den)})"

    def latex(self):
        if self.den == (_ONE,):
            return _platex(self.num)
        return r"\frac{%s}{%s}" % (_platex(self.num), _platex(self.den))


def _pinflate(a, d):
    if not a:
        return ()
    out = [_ZERO] * ((len(a) - 1) * d + 1)
    for i, x in enumerate(a):
        out[i * d] = x
    return tuple(out)


def _canonicalize(num, den):
    num = _ptrim(num)
    den = _ptrim(den)
    if not den:
        raise DivisionByZero("zero denominator")
    if not num:
        return (), (_ONE,)
    g = _pgcd(num, den)
    if len(g) > 1:
        num = _pquo(num, g)
        den = _pquo(den, g)
    lead = den[-1]
    if lead != _ONE:
        num = tuple(x / lead for x in num)
        den = tuple(x / lead for x in den)
    return num, den


def _from_rat(r):
    if not r:
        return ZERO
    return QRat((r,), (_ONE,), _canonical=True)


def _coerce(x):
    if isinstance(x, QRat):
        return x
    if isinstance(x, int):
        return _from_rat(_Q(x))
    return NotImplemented


def _term_str(c, i, pow_fmt):
    if i == 0:
        return str(c)
    v = pow_fmt(i)
    if c == 1:
        return v
    if c == -1:
        return "-" + v
    return f"{c}{'*' if pow_fmt is _pow_plain else ''}{v}"


def _pow_plain(i):
    return "q" if i == 1 else f"q^{i}"


def _pow_latex(i):
    return "q" if i == 1 else "q^{%d}" % i


def _poly_str(a, pow_fmt):
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        if a[i]:
            parts.append(_term_str(a[i], i, pow_fmt))
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def _pstr(a):
    return _poly_str(a, _pow_plain)


def _platex(a):
    return _poly_str(a, _pow_latex)


ZERO = QRat((), (_ONE,), _canonical=True)
ONE = QRat((_ONE,), (_ONE,), _canonical=True)
Q = QRat.q_power(1)


# ---------------------------------------------------------------------------
# rank-two Cartan data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RankTwoData:
    """Symmetrizable rank-two Cartan datum (a_ij, a_ji, d_i, d_j)."""

    a_ij: int
    a_ji: int
    d_i: int
    d_j: int

    def __post_init__(self):
        if self.a_ij > 0 or self.a_ji > 0:
            raise ValueError("off-diagonal Cartan entries must be nonpositive")
        if self.d_i <= 0 or self.d_j <= 0:
            raise ValueError("symmetrizer entries must be positive")
        if self.d_i * self.a_ij != self.d_j * self.a_ji:
            raise ValueError("datum is not symmetrizable: d_i*a_ij != d_j*a_ji")
        if (self.a_ij == 0) != (self.a_ji == 0):
            raise ValueError("a_ij = 0 iff a_ji = 0")

    def qi(self):
        return QRat.q_power(self.d_i)

    def qj(self):
        return QRat.q_power(self.d_j)

    def qi_power(self, k):
        """q_i**k as an element of Q(q)."""
        return QRat.q_power(self.d_i * k)

    def qj_power(self, k):
        return QRat.q_power(self.d_j * k)

    def pairing(self):
        """(alpha_i, alpha_j) = d_i * a_ij."""
        return self.d_i * self.a_ij


# ---------------------------------------------------------------------------
# q-combinatorics
# ---------------------------------------------------------------------------

def q_integer(n, p=None):
    """Quantum integer.

    Balanced mode (``p`` omitted): (q^n - q^-n)/(q - q^-1), valid for any
    integer n.  Nonsymmetric mode: (n)_p = sum_{j<n} p^j, needs n >= 0.
    """
    if p is None:
        out = ZERO
        sign = 1 if n >= 0 else -1
        for j in range(abs(n)):
            out = out + QRat.q_power(sign * (abs(n) - 1 - 2 * j))
        return out
    if n < 0:
        raise NegativeIndex(f"nonsymmetric quantum integer needs n >= 0, got {n}")
    out = ZERO
    acc = ONE
    for _ in range(n):
        out = out + acc
        acc = acc * p
    return out


@lru_cache(maxsize=None)
def q_factorial(n):
    """[n]_q! in the balanced convention."""
    out = ONE
    for k in range(2, n + 1):
        out = out * q_integer(k)
    return out


@lru_cache(maxsize=None)
def q_binomial(n, k):
    """Balanced Gaussian binomial [n choose k]_q; 0 outside 0 <= k <= n."""
    if k < 0 or k > n:
        return ZERO
    return q_factorial(n) / (q_factorial(k) * q_factorial(n - k))


def q_pochhammer(t, base, k):
    """(t; base)_k = prod_{j<k} (1 - t*base^j)."""
    if k < 0:
        raise NegativeIndex(f"q-Pochhammer needs k >= 0, got {k}")
    out = ONE
    acc = t
    for _ in range(k):
        out = out * (ONE - acc)
        acc = acc * base
    return out


def qpow_pochhammer(t_exp, base_exp, k):
    """(q^t_exp; q^base_exp)_k for integer exponents."""
    return q_pochhammer(QRat.q_power(t_exp), QRat.q_power(base_exp), k)
