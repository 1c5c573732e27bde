"""Commutative coefficient ring of formal symbols over Q(q).

The symbols (Z, d, dt, K-markers, primed copies, ...) are opaque
generators of a commutative polynomial ring.  Each symbol records which
side of an F-word it canonically lives on, how a single F_i or F_j
crosses it (a power of q, or ``NONCOMMUTING`` when no scalar rule
exists), and its image under the formal bar map.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .qfield import QRat, RankTwoData, ZERO, ONE

NONCOMMUTING = "noncommuting"

LEFT = "left"
RIGHT = "right"


class TableMismatch(ValueError):
    """Operands built over different symbol tables."""


class MissingBarImage(KeyError):
    """A symbol has no bar image."""


class UnsupportedCase(ValueError):
    """No standard symbol table for the requested case / datum."""


class NonCommutingCross(RuntimeError):
    """A rewrite tried to move F past a symbol with no scalar rule."""


@dataclass(frozen=True)
class SymbolEntry:
    name: str
    side: str
    comm_fi: Optional[int]   # global-q exponent e with F_i*S = q^e * S*F_i
    comm_fj: Optional[int]   # same for F_j; None means "noncommuting"
    bar_image: str


class SymbolTable:
    """Ordered, immutable list of symbol entries."""

    def __init__(self, entries):
        self.entries = tuple(entries)
        self.index = {e.name: k for k, e in enumerate(self.entries)}
        if len(self.index) != len(self.entries):
            raise ValueError("duplicate symbol names")
        for e in self.entries:
            img = self.index.get(e.bar_image)
            if img is None:
                raise ValueError(f"bar image {e.bar_image!r} of {e.name!r} not declared")
            if self.entries[img].bar_image != e.name:
                raise ValueError(f"bar map not involutive at {e.name!r}")

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, name):
        return self.entries[self.index[name]]

    def __contains__(self, name):
        return name in self.index

    def __eq__(self, other):
        return isinstance(other, SymbolTable) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def cross_exponent(self, generator, expvec):
        """Exponent e with F_gen * S^v = q^e * S^v * F_gen for a monomial."""
        e = 0
        for k, p in enumerate(expvec):
            if not p:
                continue
            entry = self.entries[k]
            c = entry.comm_fi if generator == "i" else entry.comm_fj
            if c is None:
                raise NonCommutingCross(
                    f"F_{generator} cannot cross symbol {entry.name!r}")
            e += c * p
        return e

    def bar_key(self, expvec):
        out = [0] * len(self.entries)
        for k, p in enumerate(expvec):
            if p:
                out[self.index[self.entries[k].bar_image]] += p
        return tuple(out)


EMPTY_TABLE = SymbolTable(())


def declare_standard_table(data: RankTwoData, case: str) -> SymbolTable:
    """Symbol table for one of the three rank-two cases.

    Case I:   Z commutes with both generators.
    Case II:  Z commutes with F_i only; d, dt sit on the left and are
              crossed by F_i with exponents +-(alpha_i, alpha_j).
    Case III: central c_i, c_j, the Z_i, Z_j factors and K-markers, all
              riding on the right of the words.
    """
    if not isinstance(data, RankTwoData):
        raise UnsupportedCase(f"not a rank-two datum: {data!r}")
    p = data.pairing()  # (alpha_i, alpha_j) = d_i * a_ij
    if case == "I":
        return SymbolTable([
            SymbolEntry("Z", RIGHT, 0, 0, "Z'"),
            SymbolEntry("Z'", RIGHT, 0, 0, "Z"),
        ])
    if case == "II":
        return SymbolTable([
            SymbolEntry("Z", RIGHT, 0, None, "Z'"),
            SymbolEntry("Z'", RIGHT, 0, None, "Z"),
            SymbolEntry("d", LEFT, p, None, "dt'"),
            SymbolEntry("dt", LEFT, -p, None, "d'"),
            SymbolEntry("d'", LEFT, p, None, "dt"),
            SymbolEntry("dt'", LEFT, -p, None, "d"),
        ])
    if case == "III":
        if data.a_ij != data.a_ji:
            raise UnsupportedCase("case III needs a symmetric pair a_ij = a_ji")
        di = data.d_i
        # K-marker weights: F crosses K_beta with exponent (beta, alpha).
        kji_i = p - 2 * di          # (alpha_j - alpha_i, alpha_i)
        kji_j = 2 * data.d_j - p    # (alpha_j - alpha_i, alpha_j)
        return SymbolTable([
            SymbolEntry("c_i", RIGHT, 0, 0, "c_i'"),
            SymbolEntry("c_i'", RIGHT, 0, 0, "c_i"),
            SymbolEntry("c_j", RIGHT, 0, 0, "c_j'"),
            SymbolEntry("c_j'", RIGHT, 0, 0, "c_j"),
            SymbolEntry("Z_i", RIGHT, 0, 0, "Z_i'"),
            SymbolEntry("Z_i'", RIGHT, 0, 0, "Z_i"),
            SymbolEntry("Z_j", RIGHT, 0, 0, "Z_j'"),
            SymbolEntry("Z_j'", RIGHT, 0, 0, "Z_j"),
            SymbolEntry("KjKi-", RIGHT, kji_i, kji_j, "KiKj-"),
            SymbolEntry("KiKj-", RIGHT, -kji_i, -kji_j, "KjKi-"),
        ])
    raise UnsupportedCase(f"unknown case {case!r}")


class CPoly:
    """Commutative polynomial in the declared symbols over Q(q).

    Terms map exponent vectors (one slot per table entry) to QRat
    scalars; zero terms are never stored.
    """

    __slots__ = ("table", "terms")

    def __init__(self, table, terms=None):
        self.table = table
        self.terms = dict(terms) if terms else {}

    @staticmethod
    def constant(table, scalar):
        if isinstance(scalar, int):
            scalar = QRat.from_int(scalar)
        if scalar.is_zero():
            return CPoly(table)
        return CPoly(table, {(0,) * len(table): scalar})

    @staticmethod
    def symbol(table, name, scalar=None):
        key = [0] * len(table)
        key[table.index[name]] = 1
        return CPoly(table, {tuple(key): scalar if scalar is not None else ONE})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if self.table is not other.table and self.table != other.table:
            raise TableMismatch("operands over different symbol tables")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return CPoly(self.table, out)

    def __neg__(self):
        return CPoly(self.table, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (QRat, int)):
            return self.scale(other)
        self._check(other)
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                v = v1 * v2
                s = out.get(k)
                s = v if s is None else s + v
                if s.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = s
        return CPoly(self.table, out)

    __rmul__ = __mul__

    def scale(self, s):
        if isinstance(s, int):
            s = QRat.from_int(s)
        if s.is_zero():
            return CPoly(self.table)
        return CPoly(self.table, {k: v * s for k, v in self.terms.items()})

    def bar(self):
        """Bar scalars (q -> 1/q), send symbols to their bar images."""
        out = {}
        for k, v in self.terms.items():
            bk = self.table.bar_key(k)
            bv = v.bar()
            s = out.get(bk)
            s = bv if s is None else s + bv
            if not s.is_zero():
                out[bk] = s
        return CPoly(self.table, out)

    def constant_value(self):
        """The QRat value of a symbol-free polynomial."""
        if not self.terms:
            return ZERO
        (key, val), = self.terms.items()
        if any(key):
            raise ValueError("polynomial is not constant")
        return val

    def __eq__(self, other):
        if not isinstance(other, CPoly):
            return NotImplemented
        return self.table == other.table and self.terms == other.terms

    def __hash__(self):
        return hash((self.table, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            v = self.terms[k]
            mono = "*".join(
                f"{self.table.entries[i].name}" + (f"^{p}" if p > 1 else "")
                for i, p in enumerate(k) if p)
            parts.append(f"({v})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    __repr__ = __str__

    def latex(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            v = self.terms[k]
            mono = " ".join(
                self.table.entries[i].name.replace("'", r"^{\prime}")
                + (f"^{{{p}}}" if p > 1 else "")
                for i, p in enumerate(k) if p)
            parts.append(r"\left(%s\right)" % v.latex()
                         + (f" {mono}" if mono else ""))
        return " + ".join(parts)
