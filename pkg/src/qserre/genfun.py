"""Truncated generating functions for the orthogonal polynomial families.

Four series are realized through their Taylor coefficients:

  eta        sum_n C_n(x;q,r) s^n / (1-q^{n+2})
  eta_tilde  sum_n (q^2;q)_n / (qr;q)_{n+1} * Ct_n(x;q,r) s^n
  psi        sum_{m,n} H_{m+n}(x;q) / ((q;q)_m (q;q)_n) s^m t^n
  phi        sum_{m,n} U_{m,n}(x;q,r) / ((q;q)_m (q;q)_n) s^m t^n

with r = q^a.  Everything is verified in denominator-cleared polynomial
form: the defining functional equations

  q^2 (1-2xs+s^2) eta(qs)            = (1-2xs+r^{-1}s^2) eta(s) - 1
  qr (1-2r^{-1}qxs+r^{-1}q^2s^2) etat(qs) = (1-2xs+s^2) etat(s) - 1
  (1-ts) psi(qs,t)                   = (1-2xs+s^2) psi(s,t)

and the product identity phi = -s^2 * eta * psi hold coefficient-wise
up to the truncation orders, exactly over Q(q)[x].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .qfield import QRat, RankTwoData, ZERO, ONE, Q
from .orthopoly import (OPoly, hermite_plain, cheby_deformed_plain,
                        cheby_tilde_plain, cheby_biv_U_plain)


class OrderMismatch(ValueError):
    """Series with incompatible truncation orders."""


class PoleInCoefficient(ArithmeticError):
    """A coefficient denominator vanishes: the parameter is out of domain."""


class TruncSeries:
    """Polynomial-coefficient series in s (and t), truncated exactly.

    Coefficients beyond the orders (S, T) are discarded; all retained
    coefficients of sums and products are exact.
    """

    __slots__ = ("S", "T", "coeffs")

    def __init__(self, S, T=0, coeffs=None):
        self.S = S
        self.T = T
        self.coeffs = {}
        if coeffs:
            for k, p in coeffs.items():
                if p and k[0] <= S and k[1] <= T:
                    self.coeffs[k] = p

    @staticmethod
    def zero(S, T=0):
        return TruncSeries(S, T)

    @staticmethod
    def one(S, T=0):
        return TruncSeries(S, T, {(0, 0): OPoly.constant(1)})

    def coefficient(self, m, n=0) -> OPoly:
        return self.coeffs.get((m, n), OPoly.zero())

    def _check(self, other):
        if self.S != other.S or self.T != other.T:
            raise OrderMismatch(
                f"orders ({self.S},{self.T}) vs ({other.S},{other.T})")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for k, p in other.coeffs.items():
            s = out.get(k)
            s = p if s is None else s + p
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TruncSeries(self.S, self.T, out)

    def __neg__(self):
        return TruncSeries(self.S, self.T,
                           {k: -p for k, p in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        out = {}
        for (m1, n1), p1 in self.coeffs.items():
            for (m2, n2), p2 in other.coeffs.items():
                m, n = m1 + m2, n1 + n2
                if m > self.S or n > self.T:
                    continue
                prod = p1 * p2
                s = out.get((m, n))
                out[(m, n)] = prod if s is None else s + prod
        return TruncSeries(self.S, self.T,
                           {k: p for k, p in out.items() if p})

    def scale_poly(self, p: OPoly):
        return TruncSeries(self.S, self.T,
                           {k: c * p for k, c in self.coeffs.items()})

    def scale(self, s: QRat):
        if isinstance(s, int):
            s = QRat.from_int(s)
        return TruncSeries(self.S, self.T,
                           {k: c.scale(s) for k, c in self.coeffs.items()})

    def shift(self, ds: int, dt: int = 0):
        """Multiply by s^ds t^dt (dropping overflowing orders)."""
        return TruncSeries(self.S, self.T,
                           {(m + ds, n + dt): p
                            for (m, n), p in self.coeffs.items()})

    def subst_s_scale(self, c: QRat):
        """s -> c*s : the s^m coefficient picks up c^m."""
        return TruncSeries(self.S, self.T,
                           {(m, n): p.scale(c ** m)
                            for (m, n), p in self.coeffs.items()})

    def subst_t_scale(self, c: QRat):
        return TruncSeries(self.S, self.T,
                           {(m, n): p.scale(c ** n)
                            for (m, n), p in self.coeffs.items()})

    def perturb(self, m, n=0):
        """Add 1 to the (m, n) coefficient (mutation hook for tests)."""
        out = dict(self.coeffs)
        out[(m, n)] = self.coefficient(m, n) + OPoly.constant(1)
        return TruncSeries(self.S, self.T, out)

    def is_zero(self):
        return not self.coeffs

    def first_nonzero(self):
        """Smallest (s, t) exponent carrying a nonzero coefficient."""
        return min(self.coeffs, default=None)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.S, self.T, self.coeffs) == \
            (other.S, other.T, other.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (m, n) in sorted(self.coeffs):
            mono = "".join((f"*s^{m}" if m else "", f"*t^{n}" if n else ""))
            parts.append(f"({self.coeffs[(m, n)]}){mono}")
        return " + ".join(parts)

    __repr__ = __str__


def _series_base(data: Optional[RankTwoData]) -> QRat:
    """The series base: q_i^2 for a rank-two datum, plain q otherwise."""
    return data.qi_power(2) if data is not None else Q


def _poch(base: QRat, start: QRat, k: int) -> QRat:
    """(start; base)_k, raising PoleInCoefficient on a vanishing factor."""
    out = ONE
    t = start
    for _ in range(k):
        f = ONE - t
        if f.is_zero():
            raise PoleInCoefficient(
                "vanishing Pochhammer factor in a series coefficient")
        out = out * f
        t = t * base
    return out


def series_build(which: str, orders, a: int = 0,
                 data: Optional[RankTwoData] = None) -> TruncSeries:
    """One of the four generating functions, truncated at ``orders``.

    ``orders`` is (S, T); T is ignored for the univariate eta family.
    The deformation parameter is r = base^a.
    """
    S, T = orders
    b = _series_base(data)
    r = b ** a
    if which == "eta":
        coeffs = {}
        for n in range(S + 1):
            den = ONE - b ** (n + 2)
            if den.is_zero():
                raise PoleInCoefficient("eta coefficient denominator vanishes")
            coeffs[(n, 0)] = cheby_deformed_plain(n, b, r).scale(den.inv())
        return TruncSeries(S, 0, coeffs)
    if which == "eta_tilde":
        coeffs = {}
        for n in range(S + 1):
            num = _poch(b, b ** 2, n)
            den = _poch(b, b ** (1 + a), n + 1)
            coeffs[(n, 0)] = cheby_tilde_plain(n, b, r).scale(num / den)
        return TruncSeries(S, 0, coeffs)
    if which == "psi":
        coeffs = {}
        for m in range(S + 1):
            for n in range(T + 1):
                c = (_poch(b, b, m) * _poch(b, b, n)).inv()
                coeffs[(m, n)] = hermite_plain(m + n, b).scale(c)
        return TruncSeries(S, T, coeffs)
    if which == "phi":
        coeffs = {}
        for m in range(S + 1):
            for n in range(T + 1):
                c = (_poch(b, b, m) * _poch(b, b, n)).inv()
                coeffs[(m, n)] = cheby_biv_U_plain(m, n, b, r).scale(c)
        return TruncSeries(S, T, coeffs)
    raise ValueError(f"unknown series {which!r}")


def _s_poly(S, T, *terms) -> TruncSeries:
    """Series from (s-exponent, t-exponent, OPoly) triples."""
    coeffs = {}
    for m, n, p in terms:
        coeffs[(m, n)] = coeffs.get((m, n), OPoly.zero()) + p
    return TruncSeries(S, T, coeffs)


@dataclass
class CheckReport:
    """Outcome of a coefficient-wise series identity check."""
    name: str
    params: dict
    passed: bool
    failing: Optional[tuple] = None
    lhs_coeff: Optional[str] = None
    rhs_coeff: Optional[str] = None

    def to_json(self):
        out = {"check": self.name, "params": self.params, "pass": self.passed}
        if not self.passed and self.failing is not None:
            out["failing_monomial"] = {"s": self.failing[0],
                                       "t": self.failing[1]}
            out["lhs_coefficient"] = self.lhs_coeff
            out["rhs_coefficient"] = self.rhs_coeff
        return out


def _report(name, params, lhs: TruncSeries, rhs: TruncSeries) -> CheckReport:
    diff = lhs - rhs
    if diff.is_zero():
        return CheckReport(name, params, True)
    k = diff.first_nonzero()
    return CheckReport(name, params, False, failing=k,
                       lhs_coeff=str(lhs.coefficient(*k)),
                       rhs_coeff=str(rhs.coefficient(*k)))


def check_functional_equation(which: str, a: int, orders,
                              data: Optional[RankTwoData] = None,
                              mutate: Optional[tuple] = None) -> CheckReport:
    """Denominator-cleared functional equation of eta, eta_tilde or psi.

    ``mutate`` perturbs one retained coefficient of the series before
    checking (the check must then fail: guards against vacuous passes).
    """
    S, T = orders if len(orders) == 2 else (orders[0], 0)
    b = _series_base(data)
    r = b ** a
    params = {"series": which, "a": a, "S": S, "T": T}
    x = OPoly.monomial(1)
    one = OPoly.constant(1)
    if which == "eta":
        f = series_build("eta", (S, 0), a, data)
        if mutate:
            f = f.perturb(*mutate)
        lhs = (_s_poly(S, 0, (0, 0, one), (1, 0, x.scale(-2)), (2, 0, one))
               * f.subst_s_scale(b)).scale(b ** 2)
        rhs = _s_poly(S, 0, (0, 0, one), (1, 0, x.scale(-2)),
                      (2, 0, OPoly.constant(r.inv()))) * f \
            - TruncSeries.one(S, 0)
        return _report("eta_functional_equation", params, lhs, rhs)
    if which == "eta_tilde":
        f = series_build("eta_tilde", (S, 0), a, data)
        if mutate:
            f = f.perturb(*mutate)
        lhs = (_s_poly(S, 0, (0, 0, one),
                       (1, 0, x.scale(-2 * (b * r.inv()))),
                       (2, 0, OPoly.constant(b ** 2 * r.inv())))
               * f.subst_s_scale(b)).scale(b * r)
        rhs = _s_poly(S, 0, (0, 0, one), (1, 0, x.scale(-2)), (2, 0, one)) \
            * f - TruncSeries.one(S, 0)
        return _report("eta_tilde_functional_equation", params, lhs, rhs)
    if which == "psi":
        f = series_build("psi", (S, T), a, data)
        if mutate:
            f = f.perturb(*mutate)
        lhs = _s_poly(S, T, (0, 0, one), (1, 1, one.scale(-1))) \
            * f.subst_s_scale(b)
        rhs = _s_poly(S, T, (0, 0, one), (1, 0, x.scale(-2)),
                      (2, 0, one)) * f
        return _report("psi_functional_equation", params, lhs, rhs)
    raise ValueError(f"unknown check {which!r}")


def check_phi_identity(a: int, orders,
                       data: Optional[RankTwoData] = None,
                       mutate: Optional[tuple] = None) -> CheckReport:
    """phi = -s^2 * eta * psi, coefficient-wise up to truncation."""
    S, T = orders
    params = {"series": "phi", "a": a, "S": S, "T": T}
    b = _series_base(data)
    r = b ** a
    # Work with denominator-cleared coefficients throughout: all the
    # (1-q^k) denominators are multiplied away by explicit polynomial
    # cofactors, so the convolution below never needs a rational
    # function gcd (the identity is unchanged by the common factor).
    c_eta = ONE
    for k in range(2, S + 3):
        c_eta = c_eta * (ONE - b ** k)
    eta2 = TruncSeries(S, T, {
        (n, 0): cheby_deformed_plain(n, b, r)
        .scale(c_eta / (ONE - b ** (n + 2)))
        for n in range(S + 1)})
    psi = TruncSeries(S, T, {
        (m, n): hermite_plain(m + n, b)
        .scale(_poch(b, b, S) / _poch(b, b, m)
               * (_poch(b, b, T) / _poch(b, b, n)))
        for m in range(S + 1) for n in range(T + 1)})
    phi = TruncSeries(S, T, {
        (m, n): cheby_biv_U_plain(m, n, b, r)
        .scale(c_eta * (_poch(b, b, S) / _poch(b, b, m))
               * (_poch(b, b, T) / _poch(b, b, n)))
        for m in range(S + 1) for n in range(T + 1)})
    if mutate:
        phi = phi.perturb(*mutate)
    rhs = (eta2 * psi).shift(2).scale(QRat.from_int(-1))
    return _report("phi_factorization", params, phi, rhs)


def eta_coeffs_from_equation(a: int, S: int,
                             data: Optional[RankTwoData] = None):
    """Taylor coefficients of eta solved from its functional equation.

    The cleared equation determines f_n uniquely given f_{n<0} = 0:
      f_n (q^{n+2}-1) = 2x f_{n-1} (q^{n+1}-1) + (r^{-1}-q^n) f_{n-2}
                        - delta_{n,0}.
    Used as an independent oracle for the series_build coefficients.
    """
    b = _series_base(data)
    r = b ** a
    out = []
    for n in range(S + 1):
        acc = OPoly.zero()
        if n >= 1:
            acc = acc + out[n - 1].mul_x().scale(QRat.from_int(2)
                                                * (b ** (n + 1) - ONE))
        if n >= 2:
            acc = acc + out[n - 2].scale(r.inv() - b ** n)
        if n == 0:
            acc = acc - OPoly.constant(1)
        out.append(acc.scale((b ** (n + 2) - ONE).inv()))
    return out
