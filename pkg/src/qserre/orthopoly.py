"""Polynomial families in one or two commuting variables over the symbol ring.

Covers the continuous q-Hermite polynomials (univariate, bivariate and
their rescaled Z-coefficient versions), the deformed Chebyshev
polynomials of the second kind, the U_{m,n} and P_N families and the
rho/sigma correction polynomials.  Negative indices always give the zero
polynomial.
"""

from __future__ import annotations

from functools import lru_cache

from .qfield import QRat, RankTwoData, ZERO, ONE, q_binomial, q_factorial, \
    q_integer, qpow_pochhammer
from .coeffring import CPoly, EMPTY_TABLE, SymbolTable, declare_standard_table


class OPoly:
    """Polynomial in x (and optionally y) with CPoly coefficients."""

    __slots__ = ("table", "terms")

    def __init__(self, table, terms=None):
        self.table = table
        self.terms = dict(terms) if terms else {}

    @staticmethod
    def zero(table=EMPTY_TABLE):
        return OPoly(table)

    @staticmethod
    def constant(c, table=EMPTY_TABLE):
        if isinstance(c, (QRat, int)):
            c = CPoly.constant(table, c)
        p = OPoly(c.table)
        if c:
            p.terms[(0, 0)] = c
        return p

    @staticmethod
    def monomial(ex, ey=0, coeff=None, table=EMPTY_TABLE):
        if coeff is None:
            coeff = CPoly.constant(table, 1)
        elif isinstance(coeff, (QRat, int)):
            coeff = CPoly.constant(table, coeff)
        p = OPoly(coeff.table)
        if coeff:
            p.terms[(ex, ey)] = coeff
        return p

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _accum(self, out, key, val):
        s = out.get(key)
        s = val if s is None else s + val
        if s:
            out[key] = s
        else:
            out.pop(key, None)

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            self._accum(out, k, v)
        return OPoly(self.table, out)

    def __neg__(self):
        return OPoly(self.table, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (QRat, int, CPoly)):
            return self.scale(other)
        out = {}
        for (ax, ay), u in self.terms.items():
            for (bx, by), v in other.terms.items():
                self._accum(out, (ax + bx, ay + by), u * v)
        return OPoly(self.table, out)

    __rmul__ = __mul__

    def scale(self, c):
        if isinstance(c, (QRat, int)):
            c = CPoly.constant(self.table, c)
        if not c:
            return OPoly(self.table)
        return OPoly(self.table, {k: v * c for k, v in self.terms.items()})

    def mul_x(self):
        return OPoly(self.table, {(ex + 1, ey): v for (ex, ey), v in self.terms.items()})

    def swap_xy(self):
        return OPoly(self.table, {(ey, ex): v for (ex, ey), v in self.terms.items()})

    def bar(self):
        out = OPoly(self.table)
        for k, v in self.terms.items():
            bv = v.bar()
            if bv:
                out.terms[k] = bv
        return out

    def coefficient(self, ex, ey=0):
        return self.terms.get((ex, ey), CPoly(self.table))

    def degree(self):
        return max((ex + ey for ex, ey in self.terms), default=-1)

    def total_degrees(self):
        return sorted(ex + ey for ex, ey in self.terms)

    def is_univariate(self):
        return all(ey == 0 for _, ey in self.terms)

    def __eq__(self, other):
        if not isinstance(other, OPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((k, hash(v)) for k, v in self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (ex, ey) in sorted(self.terms, reverse=True):
            mono = ""
            if ex:
                mono += "x" + (f"^{ex}" if ex > 1 else "")
            if ey:
                mono += "y" + (f"^{ey}" if ey > 1 else "")
            parts.append(f"({self.terms[(ex, ey)]})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    __repr__ = __str__

    def latex(self):
        if not self.terms:
            return "0"
        parts = []
        for (ex, ey) in sorted(self.terms, reverse=True):
            mono = ""
            if ex:
                mono += "x" + (f"^{{{ex}}}" if ex > 1 else "")
            if ey:
                mono += " y" + (f"^{{{ey}}}" if ey > 1 else "")
            parts.append(self.terms[(ex, ey)].latex()
                         + (f" {mono}" if mono else ""))
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# plain families over Q(q)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def hermite_plain(m: int, base: QRat) -> OPoly:
    """Continuous q-Hermite H_m(x; base): 2x H_m = H_{m+1} + (1-base^m) H_{m-1}."""
    if m < 0:
        return OPoly.zero()
    if m == 0:
        return OPoly.constant(1)
    if m == 1:
        return OPoly.monomial(1, coeff=2)
    prev = hermite_plain(m - 2, base)
    cur = hermite_plain(m - 1, base)
    return cur.mul_x().scale(2) - prev.scale(ONE - base ** (m - 1))


@lru_cache(maxsize=None)
def hermite_biv_plain(m: int, n: int, base: QRat, r: QRat) -> OPoly:
    """Bivariate continuous q-Hermite H_{m,n}(x,y; base, r)."""
    if m < 0 or n < 0:
        return OPoly.zero()
    if m == 0:
        h = hermite_plain(n, base)
        return OPoly(h.table, {(0, ex): v for (ex, _), v in h.terms.items()})
    a = hermite_biv_plain(m - 1, n, base, r)
    b = hermite_biv_plain(m - 2, n, base, r)
    c = hermite_biv_plain(m - 1, n - 1, base, r)
    return (a.mul_x().scale(2)
            - b.scale(ONE - base ** (m - 1))
            - c.scale(base ** (m - 1) * (ONE - base ** n) * r))


def expand_biv_in_uni_plain(m: int, n: int, base: QRat, r: QRat) -> OPoly:
    """H_{m,n} written as a sum of products of univariate H's."""
    out = OPoly.zero()
    for k in range(min(m, n) + 1):
        coeff = (QRat.from_int((-1) ** k) * base ** (k * (k - 1) // 2) * r ** k
                 * q_pochhammer_ratio(base, m, m - k)
                 * q_pochhammer_ratio(base, n, n - k)
                 / qpow_poch(base, k))
        hx = hermite_plain(m - k, base)
        hy = hermite_plain(n - k, base)
        out = out + (hx * _as_y(hy)).scale(coeff)
    return out


def qpow_poch(base, k):
    """(base; base)_k."""
    out = ONE
    acc = base
    for _ in range(k):
        out = out * (ONE - acc)
        acc = acc * base
    return out


def q_pochhammer_ratio(base, n, k):
    """(base; base)_n / (base; base)_k for n >= k."""
    out = ONE
    acc = base ** (k + 1)
    for _ in range(n - k):
        out = out * (ONE - acc)
        acc = acc * base
    return out


def _as_y(p: OPoly) -> OPoly:
    return OPoly(p.table, {(0, ex): v for (ex, _), v in p.terms.items()})


@lru_cache(maxsize=None)
def cheby_deformed_plain(n: int, base: QRat, r: QRat) -> OPoly:
    """Deformed Chebyshev C_n(x; base, r); C_{-1} = 0 by convention."""
    if n < 0:
        return OPoly.zero()
    if n == 0:
        return OPoly.constant(1)
    if n == 1:
        return OPoly.monomial(1, coeff=2)
    cur = cheby_deformed_plain(n - 1, base, r)
    prev = cheby_deformed_plain(n - 2, base, r)
    coeff = (r.inv() - base ** n) / (ONE - base ** n)
    return cur.mul_x().scale(2) - prev.scale(coeff)


@lru_cache(maxsize=None)
def cheby_tilde_plain(n: int, base: QRat, r: QRat) -> OPoly:
    """Rescaled deformed Chebyshev with recursion coefficient (1-r*base^n)/(1-base^n)."""
    if n < 0:
        return OPoly.zero()
    if n == 0:
        return OPoly.constant(1)
    if n == 1:
        return OPoly.monomial(1, coeff=2)
    cur = cheby_tilde_plain(n - 1, base, r)
    prev = cheby_tilde_plain(n - 2, base, r)
    coeff = (ONE - r * base ** n) / (ONE - base ** n)
    return cur.mul_x().scale(2) - prev.scale(coeff)


@lru_cache(maxsize=None)
def cheby_biv_U_plain(m: int, n: int, base: QRat, r: QRat) -> OPoly:
    """The two-index family U_{m,n}(x; base, r) with Hermite source term.

    2x U_{m,n} = U_{m+1,n} + (1-base^m) r^-1 U_{m-1,n}
                 + base^m (1-base^n) U_{m,n-1} + (1-base^m) H_{m+n-1}.
    """
    if m <= 0 or n < 0:
        return OPoly.zero()
    a = cheby_biv_U_plain(m - 1, n, base, r)
    b = cheby_biv_U_plain(m - 2, n, base, r)
    c = cheby_biv_U_plain(m - 1, n - 1, base, r)
    h = hermite_plain(m + n - 2, base)
    cm = ONE - base ** (m - 1)
    return (a.mul_x().scale(2)
            - b.scale(cm * r.inv())
            - c.scale(base ** (m - 1) * (ONE - base ** n))
            - h.scale(cm))


def serre_P(N: int, form: str, data: RankTwoData | None = None) -> OPoly:
    """Serre combination P_N of the U-family, in q_i (global q by default).

    ``recursion`` assembles the alternating q-binomial sum over
    U_{m,N-m}; ``closed`` uses the Chebyshev closed form.  Both are
    stated at base q_i^2 and r = q_i^{2(1-N)}.
    """
    d = data.d_i if data is not None else 1
    base = QRat.q_power(2 * d)
    r = QRat.q_power(2 * d * (1 - N))
    qi = QRat.q_power(d)
    if form == "recursion":
        out = OPoly.zero()
        for m in range(N + 1):
            coeff = (QRat.from_int((-1) ** m)
                     * q_binomial(N, m).subst_power(d) * qi ** ((1 - N) * m))
            out = out + cheby_biv_U_plain(m, N - m, base, r).scale(coeff)
        return out
    if form == "closed":
        coeff = (QRat.from_int((-1) ** (N - 1)) * qi ** ((1 - N) * N)
                 * qpow_pochhammer(2 * d, 2 * d, N - 1))
        return cheby_deformed_plain(N - 2, base, r).scale(coeff)
    raise ValueError(f"unknown form {form!r}")


def omega_Nk(N: int, k: int, d: int = 1) -> QRat:
    """The alternating Pochhammer sum entering the P_N closed form."""
    qi = QRat.q_power(d)
    out = ZERO
    for m in range(k, N + 1):
        out = out + (QRat.from_int((-1) ** (m - 1))
                     * q_binomial(N, m).subst_power(d)
                     * qpow_pochhammer(2 * d, 2 * d, m)
                     / qpow_pochhammer(2 * d, 2 * d, m - k)
                     * qi ** ((1 - N) * m))
    return out


# ---------------------------------------------------------------------------
# rescaled families with Z coefficients
# ---------------------------------------------------------------------------

def z_quarter_b2(table: SymbolTable, data: RankTwoData, primed: bool = False) -> CPoly:
    """b^2/4 = Z / (q_i - q_i^-1)^2 as a coefficient-ring element."""
    qi = data.qi()
    name = "Z'" if primed else "Z"
    return CPoly.symbol(table, name, ((qi - qi.inv()) ** 2).inv())


@lru_cache(maxsize=None)
def _w_uni(m: int, table, data, sign: int, primed: bool) -> OPoly:
    """w_m (sign=+1) or v_m (sign=-1) by the three-term recursion."""
    if m < 0:
        return OPoly.zero(table)
    if m == 0:
        return OPoly.constant(1, table)
    if m == 1:
        return OPoly.monomial(1, table=table)
    zb = z_quarter_b2(table, data, primed)
    coeff = zb.scale(ONE - data.qi_power(sign * 2 * (m - 1)))
    return (_w_uni(m - 1, table, data, sign, primed).mul_x()
            - _w_uni(m - 2, table, data, sign, primed).scale(coeff))


def hermite_uni(m: int, data: RankTwoData, variant: str = "w",
                table: SymbolTable | None = None, primed: bool = False) -> OPoly:
    """Rescaled univariate family: ``w`` (base q_i^2) or ``v`` (base q_i^-2)."""
    if table is None:
        table = declare_standard_table(data, "I")
    sign = {"w": 1, "v": -1}[variant]
    return _w_uni(m, table, data, sign, primed)


@lru_cache(maxsize=None)
def _w_biv(m: int, n: int, table, data, primed: bool) -> OPoly:
    if m < 0 or n < 0:
        return OPoly.zero(table)
    if m == 0:
        return _as_y(_w_uni(n, table, data, 1, primed))
    zb = z_quarter_b2(table, data, primed)
    a = _w_biv(m - 1, n, table, data, primed)
    b = _w_biv(m - 2, n, table, data, primed)
    c = _w_biv(m - 1, n - 1, table, data, primed)
    return (a.mul_x()
            - b.scale(zb.scale(ONE - data.qi_power(2 * (m - 1))))
            - c.scale(zb.scale(data.qi_power(2 * (m - 1) + data.a_ij)
                               * (ONE - data.qi_power(2 * n)))))


def hermite_biv(m: int, n: int, data: RankTwoData,
                table: SymbolTable | None = None, primed: bool = False) -> OPoly:
    """Rescaled bivariate family w_{m,n}(x,y) with r = q_i^{a_ij}."""
    if table is None:
        table = declare_standard_table(data, "I")
    return _w_biv(m, n, table, data, primed)


def eta_factor(k: int, table: SymbolTable, data: RankTwoData,
               primed: bool = False) -> CPoly:
    """(q_i - q_i^-1)^k q_i^{-k(k+1)/2} (b^2/4)^k."""
    qi = data.qi()
    out = CPoly.constant(table, (qi - qi.inv()) ** k * qi ** (-k * (k + 1) // 2))
    zb = z_quarter_b2(table, data, primed)
    for _ in range(k):
        out = out * zb
    return out


def vm_sum(m: int, data: RankTwoData, table: SymbolTable | None = None,
           primed: bool = False) -> OPoly:
    """v_m as the alternating sum over w_{m-2k} (the defining expansion)."""
    if table is None:
        table = declare_standard_table(data, "I")
    d = data.d_i
    out = OPoly.zero(table)
    for k in range(m // 2 + 1):
        coeff = eta_factor(k, table, data, primed).scale(
            QRat.from_int((-1) ** k) * data.qi_power(k)
            * (q_factorial(m) / (q_factorial(m - 2 * k) * q_factorial(k))).subst_power(d))
        out = out + _w_uni(m - 2 * k, table, data, 1, primed).scale(coeff)
    return out


def expand_biv_in_uni(m: int, n: int, data: RankTwoData,
                      table: SymbolTable | None = None,
                      primed: bool = False) -> OPoly:
    """The univariate-product expansion of w_{m,n} (contract: equals hermite_biv)."""
    if table is None:
        table = declare_standard_table(data, "I")
    d = data.d_i
    out = OPoly.zero(table)
    for k in range(min(m, n) + 1):
        coeff = eta_factor(k, table, data, primed).scale(
            data.qi_power(k * (m + n) + k * data.a_ij)
            * (q_binomial(m, k) * q_binomial(n, k) * q_factorial(k)).subst_power(d))
        wx = _w_uni(m - k, table, data, 1, primed)
        wy = _as_y(_w_uni(n - k, table, data, 1, primed))
        out = out + (wx * wy).scale(coeff)
    return out


def serre_combination_biv(a: int, side: str, data: RankTwoData,
                          table: SymbolTable | None = None,
                          primed: bool = False) -> OPoly:
    """Alternating q_i-binomial Serre combination, in three equivalent shapes."""
    if a > 0:
        raise ValueError("a must be nonpositive")
    if table is None:
        table = declare_standard_table(data, "I")
    d = data.d_i
    N = 1 - a
    out = OPoly.zero(table)
    for n in range(N + 1):
        c = QRat.from_int((-1) ** n) * q_binomial(N, n).subst_power(d)
        if side == "bivariate":
            p = _w_biv(N - n, n, table, data, primed)
        elif side == "uni_wv":
            p = (_w_uni(N - n, table, data, 1, primed)
                 * _as_y(_w_uni(n, table, data, -1, primed)))
        elif side == "uni_vw":
            p = (_w_uni(N - n, table, data, -1, primed)
                 * _as_y(_w_uni(n, table, data, 1, primed)))
        else:
            raise ValueError(f"unknown side {side!r}")
        out = out + p.scale(c)
    return out


@lru_cache(maxsize=None)
def u_rescaled(n: int, data: RankTwoData, table: SymbolTable,
               inverse: bool = False, primed: bool = False) -> OPoly:
    """Rescaled deformed Chebyshev u_n over the Z-ring; u_{-1} = 0.

    The ``inverse`` variant replaces q_i by q_i^-1 throughout (the
    recursion coefficient then reads (q_i^{2a}-q_i^{-2(n+1)})/(1-q_i^{-2(n+1)})).
    """
    if n < 0:
        return OPoly.zero(table)
    if n == 0:
        return OPoly.constant(1, table)
    if n == 1:
        return OPoly.monomial(1, table=table)
    s = -1 if inverse else 1
    a = data.a_ij
    zb = z_quarter_b2(table, data, primed)
    coeff = zb.scale((data.qi_power(-s * 2 * a) - data.qi_power(s * 2 * n))
                     / (ONE - data.qi_power(s * 2 * n)))
    return (u_rescaled(n - 1, data, table, inverse, primed).mul_x()
            - u_rescaled(n - 2, data, table, inverse, primed).scale(coeff))


def lambda_ij(data: RankTwoData) -> QRat:
    """(q_i - q_i^-1)^2 (q_j - q_j^-1)."""
    qi, qj = data.qi(), data.qj()
    return (qi - qi.inv()) ** 2 * (qj - qj.inv())


@lru_cache(maxsize=None)
def rho_sigma(m: int, n: int, which: str, data: RankTwoData,
              table: SymbolTable | None = None) -> OPoly:
    """The correction polynomials of the case-II ansatz, by their recursions.

    rho_{m+1,n} = q_i^a x rho_{m,n} - (1-q_i^{2m}) (b^2/4) rho_{m-1,n}
                  - (1-q_i^{2n}) q_i^{2m+a} (b^2/4) rho_{m,n-1}
                  - q_i^{(m-1)a} (1-q_i^{2m}) / lambda_ij * w_{m+n-1},
    and the sigma twin with q_i^{-a} x, +-swapped powers and source
    coefficient -q_i^{-(m-1)a} (1-q_i^{2(m+n)}) / lambda_ij.
    """
    if table is None:
        table = declare_standard_table(data, "II")
    if m <= 0 or n < 0:
        return OPoly.zero(table)
    a = data.a_ij
    lam = lambda_ij(data)
    zb = z_quarter_b2(table, data)
    mm = m - 1  # recursion step producing index m from index m-1
    cur = rho_sigma(mm, n, which, data, table)
    down = rho_sigma(mm - 1, n, which, data, table)
    left = rho_sigma(mm, n - 1, which, data, table)
    w = _w_uni(mm + n - 1, table, data, 1, False)
    sa = a if which == "rho" else -a
    out = (cur.mul_x().scale(data.qi_power(sa))
           - down.scale(zb.scale(ONE - data.qi_power(2 * mm)))
           - left.scale(zb.scale((ONE - data.qi_power(2 * n))
                                 * data.qi_power(2 * mm + a))))
    if which == "rho":
        src = data.qi_power((mm - 1) * a) * (ONE - data.qi_power(2 * mm)) / lam
    elif which == "sigma":
        src = -(data.qi_power(-(mm - 1) * a)
                * (ONE - data.qi_power(2 * (mm + n)))) / lam
    else:
        raise ValueError(f"unknown family {which!r}")
    return out - w.scale(src)


def rho_from_U(m: int, n: int, data: RankTwoData,
               table: SymbolTable | None = None) -> OPoly:
    """rho_{m,n} via the rescaled U-family (independent of the recursion)."""
    if table is None:
        table = declare_standard_table(data, "II")
    d = data.d_i
    u = cheby_biv_U_plain(m, n, QRat.q_power(2 * d),
                          QRat.q_power(2 * d * data.a_ij))
    pref = data.qi_power((m - 2) * data.a_ij) / lambda_ij(data)
    return rescale_parity(u, m + n - 2, table, data).scale(pref)


def rescale_parity(p: OPoly, total: int, table: SymbolTable,
                   data: RankTwoData, primed: bool = False) -> OPoly:
    """(b/2)^total p(x/b, y/b) for p of fixed parity, staying inside Z-powers."""
    zb = z_quarter_b2(table, data, primed)
    out = OPoly.zero(table)
    for (ex, ey), v in p.terms.items():
        gap = total - ex - ey
        if gap < 0 or gap % 2:
            raise ValueError("polynomial does not have the required parity")
        coeff = CPoly.constant(table,
                               v.constant_value() / QRat.from_int(2 ** (ex + ey)))
        for _ in range(gap // 2):
            coeff = coeff * zb
        if coeff:
            out.terms[(ex, ey)] = coeff
    return out
