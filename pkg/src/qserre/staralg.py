"""Star-product rewriting engine on the rank-two word algebra.

Elements are finite sums  scalar * L * word * R  where the word is
either a power F_i^m or a sandwich F_i^m F_j F_i^n, L is a monomial in
the declared left-side symbols and R a monomial in the right-side
symbols.  The words form a free module basis: no Serre relation is ever
applied during rewriting, so the deformed Serre combination can be
checked as an honest zero remainder at the very end.

The left star-multiplication rules encode, case by case, how F_i (or
F_j) star-multiplies a normal-form term:

  case I    F_i * F_i^m          = F_i^{m+1} + (b^2/4)(1-q_i^{2m}) F_i^{m-1}
            F_i * F_i^m F_j F_i^n picks up the two (b^2/4)-corrections
            lowering m or n;
  case II   the same, plus two corrections d * F_i^{m+n-1} and
            dt * F_i^{m+n-1} with coefficients q_i^{+-(m-1)a}(...)/lambda;
  case III  F_i^{*m} = F_i^m, while crossing F_j creates single
            K-marker corrections c Z F_i^{m+n} K... .

Every rule application is checked against the filtration property: the
top term must be the plain concatenation, all other terms must have
strictly smaller F-degree.
"""

from __future__ import annotations

from .qfield import QRat, RankTwoData, ZERO, ONE, q_binomial
from .coeffring import (CPoly, SymbolTable, NonCommutingCross, TableMismatch,
                        declare_standard_table, LEFT, RIGHT)
from .orthopoly import (OPoly, lambda_ij, z_quarter_b2, hermite_uni,
                        hermite_biv, u_rescaled)


class WordShapeError(RuntimeError):
    """A rewrite produced (or received) a word outside the two shapes."""


_FILTRATION_VIOLATIONS = 0


def filtration_violations() -> int:
    """Number of rule applications that broke the filtration contract."""
    return _FILTRATION_VIOLATIONS


class FWord:
    """A basis word: pure(m) = F_i^m or sandwich(m, n) = F_i^m F_j F_i^n."""

    __slots__ = ("kind", "m", "n")

    def __init__(self, kind, m, n=0):
        if kind not in ("pure", "sandwich") or m < 0 or n < 0:
            raise WordShapeError(f"bad word {kind}({m},{n})")
        if kind == "pure" and n:
            raise WordShapeError("pure words carry a single index")
        self.kind = kind
        self.m = m
        self.n = n

    @staticmethod
    def pure(m):
        return FWord("pure", m)

    @staticmethod
    def sandwich(m, n):
        return FWord("sandwich", m, n)

    def fdegree(self):
        """Total number of F letters."""
        return self.m + self.n + (1 if self.kind == "sandwich" else 0)

    def letter_counts(self):
        """(number of F_i letters, number of F_j letters)."""
        if self.kind == "pure":
            return self.m, 0
        return self.m + self.n, 1

    def __eq__(self, other):
        return (isinstance(other, FWord) and self.kind == other.kind
                and self.m == other.m and self.n == other.n)

    def __hash__(self):
        return hash((self.kind, self.m, self.n))

    def __lt__(self, other):
        return (self.fdegree(), self.kind, self.m) < \
               (other.fdegree(), other.kind, other.m)

    def __str__(self):
        if self.kind == "pure":
            return "1" if self.m == 0 else f"Fi^{self.m}"
        left = f"Fi^{self.m}*" if self.m else ""
        right = f"*Fi^{self.n}" if self.n else ""
        return f"{left}Fj{right}"

    __repr__ = __str__

    def latex(self):
        if self.kind == "pure":
            return "1" if self.m == 0 else f"F_i^{{{self.m}}}"
        left = f"F_i^{{{self.m}}} " if self.m else ""
        right = f" F_i^{{{self.n}}}" if self.n else ""
        return f"{left}F_j{right}"


def _unit_key(table):
    return (0,) * len(table)


def _bump(key, table, bumps):
    if not bumps:
        return key
    out = list(key)
    for name, e in bumps.items():
        out[table.index[name]] += e
    return tuple(out)


class StarElement:
    """Sum of terms scalar * left-monomial * word * right-monomial."""

    __slots__ = ("table", "terms")

    def __init__(self, table: SymbolTable, terms=None):
        self.table = table
        self.terms = dict(terms) if terms else {}

    @staticmethod
    def zero(table):
        return StarElement(table)

    @staticmethod
    def from_word(table, word: FWord, scalar=None):
        s = scalar if scalar is not None else ONE
        if isinstance(s, int):
            s = QRat.from_int(s)
        if s.is_zero():
            return StarElement(table)
        u = _unit_key(table)
        return StarElement(table, {(u, word, u): s})

    @staticmethod
    def one(table):
        return StarElement.from_word(table, FWord.pure(0))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if self.table is not other.table and self.table != other.table:
            raise TableMismatch("operands over different symbol tables")

    def _accum(self, out, key, val):
        s = out.get(key)
        s = val if s is None else s + val
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            self._accum(out, k, v)
        return StarElement(self.table, out)

    def __neg__(self):
        return StarElement(self.table, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        if isinstance(s, int):
            s = QRat.from_int(s)
        if s.is_zero():
            return StarElement(self.table)
        return StarElement(self.table,
                           {k: v * s for k, v in self.terms.items()})

    def attach_right(self, coeff: CPoly):
        """Multiply by a right-side symbol polynomial on the right."""
        out = {}
        for key, e in coeff.terms.items():
            for k, p in enumerate(key):
                if p and self.table.entries[k].side != RIGHT:
                    raise WordShapeError(
                        f"symbol {self.table.entries[k].name!r} cannot sit "
                        "on the right of a word")
            for (lk, w, rk), v in self.terms.items():
                nk = tuple(a + b for a, b in zip(rk, key))
                self._accum(out, (lk, w, nk), v * e)
        return StarElement(self.table, out)

    def attach_left(self, coeff: CPoly):
        """Multiply by a left-side symbol polynomial on the left."""
        out = {}
        for key, e in coeff.terms.items():
            for k, p in enumerate(key):
                if p and self.table.entries[k].side != LEFT:
                    raise WordShapeError(
                        f"symbol {self.table.entries[k].name!r} cannot sit "
                        "on the left of a word")
            for (lk, w, rk), v in self.terms.items():
                nk = tuple(a + b for a, b in zip(lk, key))
                self._accum(out, (nk, w, rk), v * e)
        return StarElement(self.table, out)

    def attach_commuting_left(self, coeff: CPoly):
        """Multiply on the left by right-side symbols, crossing the words.

        The symbols are moved to the right monomial; each F letter of a
        word contributes its q-commutation exponent (with the sign of
        moving the symbol rightwards).  Raises NonCommutingCross if a
        symbol has no scalar rule against a letter that occurs.
        """
        out = {}
        for key, e in coeff.terms.items():
            for (lk, w, rk), v in self.terms.items():
                ci, cj = w.letter_counts()
                exp = 0
                for k, p in enumerate(key):
                    if not p:
                        continue
                    entry = self.table.entries[k]
                    if ci:
                        if entry.comm_fi is None:
                            raise NonCommutingCross(
                                f"F_i cannot cross symbol {entry.name!r}")
                        exp -= entry.comm_fi * p * ci
                    if cj:
                        if entry.comm_fj is None:
                            raise NonCommutingCross(
                                f"F_j cannot cross symbol {entry.name!r}")
                        exp -= entry.comm_fj * p * cj
                nk = tuple(a + b for a, b in zip(rk, key))
                self._accum(out, (lk, w, nk), v * e * QRat.q_power(exp))
        return StarElement(self.table, out)

    def bar(self):
        """Formal bar/Phi image: scalars barred, symbols primed, words fixed."""
        out = {}
        for (lk, w, rk), v in self.terms.items():
            key = (self.table.bar_key(lk), w, self.table.bar_key(rk))
            self._accum(out, key, v.bar())
        return StarElement(self.table, out)

    def fdegree(self):
        return max((w.fdegree() for _, w, _ in self.terms), default=-1)

    def __eq__(self, other):
        if not isinstance(other, StarElement):
            return NotImplemented
        return self.table == other.table and self.terms == other.terms

    def __hash__(self):
        return hash((self.table, frozenset(self.terms.items())))

    def _sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda kv: (kv[0][1].fdegree(), kv[0][1].kind,
                                      kv[0][1].m, kv[0][0], kv[0][2]))

    def _mono_str(self, key, tex=False):
        parts = []
        for k, p in enumerate(key):
            if p:
                name = self.table.entries[k].name
                if tex:
                    name = name.replace("'", r"^{\prime}")
                parts.append(name + (f"^{p}" if p > 1 else ""))
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (lk, w, rk), v in self._sorted_terms():
            bits = [f"({v})"]
            for b in (self._mono_str(lk), str(w), self._mono_str(rk)):
                if b and b != "1":
                    bits.append(b)
            parts.append("*".join(bits) if len(bits) > 1 else f"{bits[0]}*1")
        return " + ".join(parts)

    __repr__ = __str__

    def latex(self):
        if not self.terms:
            return "0"
        parts = []
        for (lk, w, rk), v in self._sorted_terms():
            bits = [r"\left(%s\right)" % v.latex()]
            lm = self._mono_str(lk, tex=True)
            rm = self._mono_str(rk, tex=True)
            if lm:
                bits.append(lm.replace("*", " "))
            if w.fdegree() or not (lm or rm):
                bits.append(w.latex())
            if rm:
                bits.append(rm.replace("*", " "))
            parts.append(" ".join(bits))
        return " + ".join(parts)

    def to_json(self):
        out = []
        for (lk, w, rk), v in self._sorted_terms():
            word = {"m": w.m}
            if w.kind == "sandwich":
                word["n"] = w.n
            out.append({
                "scalar": str(v),
                "left": {self.table.entries[k].name: p
                         for k, p in enumerate(lk) if p},
                "word": word,
                "right": {self.table.entries[k].name: p
                          for k, p in enumerate(rk) if p},
            })
        return out


def _nonsym_int(n: int, data: RankTwoData) -> QRat:
    """(n)_{q_i^2} = sum of q_i^{2k} for k < n."""
    s = ZERO
    for k in range(n):
        s = s + data.qi_power(2 * k)
    return s


def _case_rules(word: FWord, generator: str, case: str, data: RankTwoData,
                primed: bool):
    """Production list for F_generator * word.

    Each production is (scalar, left-symbol bumps, word, right-symbol
    bumps); the first production is always the plain concatenation.
    """
    a = data.a_ij
    qi = data.qi_power
    sq = (qi(1) - qi(-1))
    suf = "'" if primed else ""
    if generator == "j":
        if word.kind == "sandwich":
            raise WordShapeError("a second F_j letter is never produced")
        m = word.m
        prods = [(ONE, {}, FWord.sandwich(0, m), {})]
        if case == "III" and m >= 1:
            c = -(qi(m * a - 2 * m + 2) * _nonsym_int(m, data)) / sq
            prods.append((c, {}, FWord.pure(m - 1),
                          {"c_j" + suf: 1, "Z_i" + suf: 1, "KiKj-": 1}))
        return prods
    # generator i
    if word.kind == "pure":
        m = word.m
        prods = [(ONE, {}, FWord.pure(m + 1), {})]
        if case in ("I", "II") and m >= 1:
            prods.append(((ONE - qi(2 * m)) / (sq * sq), {},
                          FWord.pure(m - 1), {"Z" + suf: 1}))
        return prods
    m, n = word.m, word.n
    prods = [(ONE, {}, FWord.sandwich(m + 1, n), {})]
    if case in ("I", "II"):
        if m >= 1:
            prods.append(((ONE - qi(2 * m)) / (sq * sq), {},
                          FWord.sandwich(m - 1, n), {"Z" + suf: 1}))
        if n >= 1:
            prods.append((qi(2 * m + a) * (ONE - qi(2 * n)) / (sq * sq), {},
                          FWord.sandwich(m, n - 1), {"Z" + suf: 1}))
        if case == "II":
            lam = lambda_ij(data)
            if m >= 1:
                prods.append((qi((m - 1) * a) * (ONE - qi(2 * m)) / lam,
                              {"d" + suf: 1}, FWord.pure(m + n - 1), {}))
            if m + n >= 1:
                prods.append((-(qi(-(m - 1) * a)
                                * (ONE - qi(2 * (m + n)))) / lam,
                              {"dt" + suf: 1}, FWord.pure(m + n - 1), {}))
    elif case == "III":
        c = -qi(2 * (m + n) - (n - 1) * a) / sq
        prods.append((c, {}, FWord.pure(m + n),
                      {"c_i" + suf: 1, "Z_j" + suf: 1, "KjKi-": 1}))
    else:
        raise ValueError(f"unknown case {case!r}")
    return [p for p in prods if not p[0].is_zero()]


def _check_filtration(word, generator, prods):
    global _FILTRATION_VIOLATIONS
    if generator == "i":
        top = (FWord.pure(word.m + 1) if word.kind == "pure"
               else FWord.sandwich(word.m + 1, word.n))
    else:
        top = FWord.sandwich(0, word.m)
    ok = prods and prods[0][2] == top and prods[0][0] == ONE \
        and not prods[0][1] and not prods[0][3]
    ok = ok and all(p[2].fdegree() < top.fdegree() for p in prods[1:])
    if not ok:
        _FILTRATION_VIOLATIONS += 1


def star_left(generator: str, e: StarElement, case: str, data: RankTwoData,
              primed: bool = False) -> StarElement:
    """Classical normal form of F_generator * e."""
    table = e.table
    out = {}
    acc = e._accum
    for (lk, word, rk), scalar in e.terms.items():
        cross = QRat.q_power(table.cross_exponent(generator, lk))
        prods = _case_rules(word, generator, case, data, primed)
        _check_filtration(word, generator, prods)
        for coeff, lb, w2, rb in prods:
            key = (_bump(lk, table, lb), w2, _bump(rk, table, rb))
            acc(out, key, scalar * cross * coeff)
    return StarElement(table, out)


def star_left_Fi(e, case, data, primed=False):
    return star_left("i", e, case, data, primed)


def star_left_Fj(e, case, data, primed=False):
    return star_left("j", e, case, data, primed)


def star_power_chain(k: int, case: str, data: RankTwoData, table: SymbolTable,
                     primed: bool = False):
    """[1, F_i^{*1}, ..., F_i^{*k}] in classical normal form."""
    out = [StarElement.one(table)]
    for _ in range(k):
        out.append(star_left_Fi(out[-1], case, data, primed))
    return out


def star_eval_poly(p: OPoly, case: str, data: RankTwoData,
                   primed: bool = False) -> StarElement:
    """p(F_i)^* = sum of lambda_n * F_i^{*n} in classical normal form."""
    if not p.is_univariate():
        raise ValueError("star evaluation needs a univariate polynomial")
    table = p.table
    top = max((ex for ex, _ in p.terms), default=0)
    chain = star_power_chain(top, case, data, table, primed)
    out = StarElement.zero(table)
    for (ex, ey), coeff in p.terms.items():
        out = out + chain[ex].attach_right(coeff)
    return out


def insertion(w: OPoly, case: str, data: RankTwoData,
              primed: bool = False) -> StarElement:
    """F_j inserted into w(F_i *, F_i): sum F_i^{*s} * F_j * F_i^{*t} * c_st."""
    table = w.table
    if not w.terms:
        return StarElement.zero(table)
    max_s = max(ex for ex, _ in w.terms)
    max_t = max(ey for _, ey in w.terms)
    chain_t = star_power_chain(max_t, case, data, table, primed)
    out = StarElement.zero(table)
    for t in range(max_t + 1):
        if not any(ey == t for _, ey in w.terms):
            continue
        e = star_left_Fj(chain_t[t], case, data, primed)
        for s in range(max_s + 1):
            coeff = w.coefficient(s, t)
            if coeff:
                out = out + e.attach_right(coeff)
            if s < max_s:
                e = star_left_Fi(e, case, data, primed)
    return out


def star_left_classical_power(m: int, e: StarElement, case: str,
                              data: RankTwoData,
                              primed: bool = False) -> StarElement:
    """F_i^m * e for the classical power F_i^m.

    Uses F_i^m = w_m(F_i)^* : the classical power star-multiplies e as
    the w_m-coefficient combination of iterated single-letter rules.
    The Z-power coefficients of w_m are crossed to the right of the
    words of e.
    """
    table = e.table
    if case == "III":
        out = e
        for _ in range(m):
            out = star_left_Fi(out, case, data, primed)
        return out
    wm = hermite_uni(m, data, "w", table, primed)
    out = StarElement.zero(table)
    acc = e
    top = max((ex for ex, _ in wm.terms), default=0)
    for k in range(top + 1):
        c = wm.coefficient(k)
        if c:
            out = out + acc.attach_commuting_left(c)
        if k < top:
            acc = star_left_Fi(acc, case, data, primed)
    return out


def _ansatz_correction(m: int, n: int, case: str, data: RankTwoData,
                       table: SymbolTable, primed: bool = False):
    """The star-side correction terms of F_i^m F_j F_i^n, case by case."""
    from .orthopoly import rho_sigma
    suf = "'" if primed else ""
    if case == "I":
        return StarElement.zero(table)
    if case == "II":
        rho = rho_sigma(m, n, "rho", data, table)
        sig = rho_sigma(m, n, "sigma", data, table)
        out = star_eval_poly(rho, case, data, primed).attach_left(
            CPoly.symbol(table, "d" + suf))
        out = out + star_eval_poly(sig, case, data, primed).attach_left(
            CPoly.symbol(table, "dt" + suf))
        return out
    if case == "III":
        a = data.a_ij
        qi = data.qi_power
        sq = qi(1) - qi(-1)
        out = StarElement.zero(table)
        if m + n >= 1:
            w = StarElement.from_word(table, FWord.pure(m + n - 1))
            ci = qi(2 * n - (n - 1) * a) * _nonsym_int(m, data) / sq
            cj = qi(n * a - 2 * n + 2) * _nonsym_int(n, data) / sq
            out = out + w.attach_right(
                CPoly.symbol(table, "c_i" + suf)
                * CPoly.symbol(table, "Z_j" + suf)
                * CPoly.symbol(table, "KjKi-")).scale(ci)
            out = out + w.attach_right(
                CPoly.symbol(table, "c_j" + suf)
                * CPoly.symbol(table, "Z_i" + suf)
                * CPoly.symbol(table, "KiKj-")).scale(cj)
        return out
    raise ValueError(f"unknown case {case!r}")


def verify_ansatz(m: int, n: int, case: str, data: RankTwoData,
                  table: SymbolTable | None = None,
                  primed: bool = False) -> StarElement:
    """Remainder of the normal-form identity for F_i^m F_j F_i^n.

    Expands the star side (Hermite insertion plus the case's correction
    terms) and subtracts the single classical word; the contract is a
    zero remainder.
    """
    if table is None:
        table = declare_standard_table(data, case)
    if case == "III":
        chain = star_power_chain(n, case, data, table, primed)
        e = star_left_Fj(chain[n], case, data, primed)
        for _ in range(m):
            e = star_left_Fi(e, case, data, primed)
        star_side = e + _ansatz_correction(m, n, case, data, table, primed)
    else:
        wmn = hermite_biv(m, n, data, table, primed)
        star_side = insertion(wmn, case, data, primed) \
            + _ansatz_correction(m, n, case, data, table, primed)
    return star_side - StarElement.from_word(table, FWord.sandwich(m, n))


def case2_CD(which: str, data: RankTwoData, table: SymbolTable,
             primed: bool = False) -> StarElement:
    """The C (d-side) or D (dt-side) closed-form term of the deformed
    Serre relation in the crossing case, as a normal-form element.

    C = -(d/lambda) q_i^{-a(a+1)} (q_i^2;q_i^2)_{-a} u_{-a-1}(F_i)^*
    D = +(dt/lambda) q_i^{a(a+1)} (q_i^{-2};q_i^{-2})_{-a} u'_{-a-1}(F_i)^*

    where u' is the q_i -> q_i^{-1} variant.  For a = 0 the index -a-1
    is negative and the whole term is zero by convention.
    """
    from .qfield import qpow_pochhammer
    a = data.a_ij
    d = data.d_i
    if -a - 1 < 0:
        return StarElement.zero(table)
    lam = lambda_ij(data)
    suf = "'" if primed else ""
    if which == "C":
        poly = u_rescaled(-a - 1, data, table, inverse=False, primed=primed)
        scal = -(data.qi_power(-a * (a + 1))
                 * qpow_pochhammer(2 * d, 2 * d, -a)) / lam
        sym = "d" + suf
    elif which == "D":
        poly = u_rescaled(-a - 1, data, table, inverse=True, primed=primed)
        scal = (data.qi_power(a * (a + 1))
                * qpow_pochhammer(-2 * d, -2 * d, -a)) / lam
        sym = "dt" + suf
    else:
        raise ValueError(f"unknown term {which!r}")
    e = star_eval_poly(poly, "II", data, primed)
    return e.attach_left(CPoly.symbol(table, sym)).scale(scal)


def serre_star_combination(case: str, data: RankTwoData, table: SymbolTable,
                           primed: bool = False) -> StarElement:
    """The alternating q-binomial star combination of the case.

    Cases I/II: sum (-1)^n [N,n]_{q_i} F_j -> w_{N-n,n}(F_i *, F_i);
    case III:   sum (-1)^n [N,n]_{q_i} F_i^{*(N-n)} * F_j * F_i^{*n}.
    """
    N = 1 - data.a_ij
    out = StarElement.zero(table)
    for n in range(N + 1):
        c = QRat.from_int((-1) ** n) * q_binomial(N, n).subst_power(data.d_i)
        if case == "III":
            e = star_left_Fj(star_power_chain(n, case, data, table,
                                              primed)[n], case, data, primed)
            for _ in range(N - n):
                e = star_left_Fi(e, case, data, primed)
        else:
            e = insertion(hermite_biv(N - n, n, data, table, primed),
                          case, data, primed)
        out = out + e.scale(c)
    return out


def serre_rhs(case: str, data: RankTwoData, table: SymbolTable,
              primed: bool = False) -> StarElement:
    """Closed-form right side of the deformed Serre relation (0 in case I)."""
    from .qfield import qpow_pochhammer
    if case == "I":
        return StarElement.zero(table)
    if case == "II":
        return -(case2_CD("C", data, table, primed)
                 + case2_CD("D", data, table, primed))
    if case == "III":
        N = 1 - data.a_ij
        d = data.d_i
        qi = data.qi_power
        sq = (qi(1) - qi(-1))
        suf = "'" if primed else ""
        w = StarElement.from_word(table, FWord.pure(N - 1))
        ci = qi(-N) * qpow_pochhammer(2 * d, 2 * d, N) / (sq * sq)
        cj = qi(1) * qpow_pochhammer(-2 * d, -2 * d, N) / (sq * sq)
        out = w.attach_right(CPoly.symbol(table, "c_i" + suf)
                             * CPoly.symbol(table, "Z_j" + suf)
                             * CPoly.symbol(table, "KjKi-")).scale(ci)
        out = out + w.attach_right(CPoly.symbol(table, "c_j" + suf)
                                   * CPoly.symbol(table, "Z_i" + suf)
                                   * CPoly.symbol(table, "KiKj-")).scale(cj)
        return out
    raise ValueError(f"unknown case {case!r}")


def serre_classical_combination(case: str, data: RankTwoData,
                                table: SymbolTable) -> StarElement:
    """sum (-1)^n [N,n]_{q_i} F_i^{N-n} F_j F_i^n as plain words."""
    N = 1 - data.a_ij
    out = StarElement.zero(table)
    for n in range(N + 1):
        c = QRat.from_int((-1) ** n) * q_binomial(N, n).subst_power(data.d_i)
        out = out + StarElement.from_word(table, FWord.sandwich(N - n, n), c)
    return out


def serre_star_reduce(case: str, data: RankTwoData,
                      table: SymbolTable | None = None,
                      primed: bool = False) -> StarElement:
    """Remainder of the deformed quantum Serre relation; contract: zero.

    Expands the star combination minus the closed-form right side and
    subtracts the classical Serre combination (which is zero in the
    quotient, i.e. the final reduction step).
    """
    if table is None:
        table = declare_standard_table(data, case)
    lhs = serre_star_combination(case, data, table, primed)
    rhs = serre_rhs(case, data, table, primed)
    return lhs - rhs - serre_classical_combination(case, data, table)


def _swap_primes(p: OPoly) -> OPoly:
    """Send every symbol to its bar image without touching the scalars."""
    table = p.table
    out = OPoly.zero(table)
    for k, cp in p.terms.items():
        nc = CPoly(table)
        for key, v in cp.terms.items():
            nc = nc + CPoly(table, {table.bar_key(key): v})
        if nc:
            out.terms[k] = nc
    return out


def _phi_word(word: FWord, case: str, data: RankTwoData, table: SymbolTable,
              source_primed: bool) -> StarElement:
    """Image of a single classical word under the antilinear isomorphism.

    The map intertwines the two star products, so it fixes the star
    monomials rather than the classical words; the image of a classical
    word is obtained by barring its star-basis expansion (the normal
    form identity of verify_ansatz) and re-expanding with the rules of
    the target parameter family.
    """
    from .orthopoly import rho_sigma
    sp = source_primed
    tp = not sp
    tsuf = "'" if tp else ""
    if word.kind == "pure":
        if case == "III":
            return StarElement.from_word(table, word)
        p = hermite_uni(word.m, data, "w", table, primed=sp).bar()
        return star_eval_poly(p, case, data, primed=tp)
    m, n = word.m, word.n
    if case in ("I", "II"):
        w = hermite_biv(m, n, data, table, primed=sp).bar()
        out = insertion(w, case, data, primed=tp)
        if case == "II":
            rho = rho_sigma(m, n, "rho", data, table).bar()
            sig = rho_sigma(m, n, "sigma", data, table).bar()
            if sp:
                rho, sig = _swap_primes(rho), _swap_primes(sig)
            out = out + star_eval_poly(rho, case, data, tp).attach_left(
                CPoly.symbol(table, "dt" + tsuf))
            out = out + star_eval_poly(sig, case, data, tp).attach_left(
                CPoly.symbol(table, "d" + tsuf))
        return out
    if case == "III":
        chain = star_power_chain(n, case, data, table, tp)
        out = star_left_Fj(chain[n], case, data, tp)
        for _ in range(m):
            out = star_left_Fi(out, case, data, tp)
        if m + n >= 1:
            a = data.a_ij
            qi = data.qi_power
            sq = qi(1) - qi(-1)
            w = StarElement.from_word(table, FWord.pure(m + n - 1))
            ci = (qi(2 * n - (n - 1) * a) * _nonsym_int(m, data) / sq).bar()
            cj = (qi(n * a - 2 * n + 2) * _nonsym_int(n, data) / sq).bar()
            out = out + w.attach_right(
                CPoly.symbol(table, "c_i" + tsuf)
                * CPoly.symbol(table, "Z_j" + tsuf)
                * CPoly.symbol(table, "KiKj-")).scale(ci)
            out = out + w.attach_right(
                CPoly.symbol(table, "c_j" + tsuf)
                * CPoly.symbol(table, "Z_i" + tsuf)
                * CPoly.symbol(table, "KjKi-")).scale(cj)
        return out
    raise ValueError(f"unknown case {case!r}")


def phi_map(e: StarElement, case: str, data: RankTwoData,
            source_primed: bool = False) -> StarElement:
    """The antilinear isomorphism between the two parameter families.

    Scalars are barred, symbols go to their bar images, and each
    classical word is re-expanded through the target star product (the
    map fixes star monomials, not classical words).  Applying the map
    twice (with ``source_primed`` flipped) is the identity.
    """
    table = e.table
    out = StarElement.zero(table)
    for (lk, word, rk), s in e.terms.items():
        img = _phi_word(word, case, data, table, source_primed)
        lp = CPoly(table, {table.bar_key(lk): ONE})
        rp = CPoly(table, {table.bar_key(rk): ONE})
        out = out + img.attach_left(lp).attach_right(rp).scale(s.bar())
    return out
