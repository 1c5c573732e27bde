"""Exact symbolic toolkit for deformed quantum Serre relations of
coideal subalgebras: Q(q) arithmetic, orthogonal polynomial families,
truncated generating functions, a star-product rewriting engine, and a
verification CLI."""

from .qfield import (Q, ONE, ZERO, QRat, RankTwoData, q_binomial,
                     q_factorial, q_integer, q_pochhammer, qpow_pochhammer)
from .relations import (RelationStatement, build_relation, emit_relation,
                        example_table, make_data, verify_theorem)

__version__ = "0.1.0"

__all__ = [
    "Q", "ONE", "ZERO", "QRat", "RankTwoData", "q_binomial", "q_factorial",
    "q_integer", "q_pochhammer", "qpow_pochhammer", "RelationStatement",
    "build_relation", "emit_relation", "example_table", "make_data",
    "verify_theorem", "__version__",
]
