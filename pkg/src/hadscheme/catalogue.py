"""Small groups, the order-4 schemes, order-8 rows and the published counting tables."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from .scheme import AssociationScheme, relabel, thin_group, trivial, wreath_product


def _table_from(elements: list, mul: Callable) -> np.ndarray:
    index = {e: i for i, e in enumerate(elements)}
    return np.array([[index[mul(a, b)] for b in elements] for a in elements], dtype=np.int64)


def cyclic_table(n: int) -> np.ndarray:
    return _table_from(list(range(n)), lambda a, b: (a + b) % n)


def abelian_table(orders: tuple) -> np.ndarray:
    elements = list(itertools.product(*(range(m) for m in orders)))
    return _table_from(elements, lambda a, b: tuple((x + y) % m for x, y, m in zip(a, b, orders)))


def dihedral_table(m: int) -> np.ndarray:
    """Dihedral group of order ``2m``; element ``(k, f)`` is ``r^k s^f``."""
    elements = [(k, f) for f in (0, 1) for k in range(m)]

    def mul(a, b):
        k1, f1 = a
        k2, f2 = b
        return ((k1 + (-k2 if f1 else k2)) % m, f1 ^ f2)

    return _table_from(elements, mul)


def quaternion_table() -> np.ndarray:
    # unit quaternions (sign, axis) with axis in 1, i, j, k
    prod = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    elements = [(s, a) for s in (1, -1) for a in range(4)]

    def mul(p, q):
        sign, axis = prod[(p[1], q[1])]
        return (p[0] * q[0] * sign, axis)

    return _table_from(elements, mul)


GROUP_TABLES: dict = {
    "C2": lambda: cyclic_table(2),
    "C4": lambda: cyclic_table(4),
    "C2xC2": lambda: abelian_table((2, 2)),
    "C8": lambda: cyclic_table(8),
    "C4xC2": lambda: abelian_table((4, 2)),
    "C2xC2xC2": lambda: abelian_table((2, 2, 2)),
    "D4": lambda: dihedral_table(4),
    "Q8": quaternion_table,
}


def order4_schemes() -> dict:
    """The four schemes of order 4, in catalogue order.

    Identified by their (|Aut|, |Iso|) = (24, 24), (8, 8), (4, 24), (4, 8).
    In AS4_4 the points of C4 are listed as 0, 2, 1, 3 so that points 0 and 1
    form the subgroup of order 2; the orbit memberships of H0..H3 depend on
    this labelling.
    """
    return {
        "AS4_1": trivial(4),
        "AS4_2": wreath_product(trivial(2), trivial(2)),
        "AS4_3": thin_group(GROUP_TABLES["C2xC2"]()),
        "AS4_4": relabel(thin_group(GROUP_TABLES["C4"]()), (0, 2, 1, 3)),
    }


def builtin_order8() -> dict:
    """Order-8 rows that can be generated without the external catalogue.

    AS8_2 and AS8_3 are the two rank-3 schemes (both imprimitive), told apart
    by |Aut| = 384 and 1152.
    """
    out = {
        "AS8_1": lambda: trivial(8),
        "AS8_2": lambda: wreath_product(trivial(2), trivial(4)),
        "AS8_3": lambda: wreath_product(trivial(4), trivial(2)),
    }
    for name in ("C2xC2xC2", "D4", "C4xC2", "Q8", "C8"):
        out[name] = (lambda nm: lambda: thin_group(GROUP_TABLES[nm]()))(name)
    return out


@dataclass(frozen=True)
class TableRow:
    name: str
    aut: int
    iso: int
    similarity_classes: int
    bound: int


# published (|Aut|, |Iso|, similarity classes, bound) per base scheme
TABLE2 = [
    TableRow("AS4_1", 24, 24, 1, 1),
    TableRow("AS4_2", 8, 8, 2, 1),
    TableRow("AS4_3", 4, 24, 3, 1),
    TableRow("AS4_4", 4, 8, 2, 1),
]

TABLE3 = [
    TableRow("AS8_1", 40320, 40320, 1, 1),
    TableRow("AS8_2", 384, 384, 17, 1),
    TableRow("AS8_3", 1152, 1152, 6, 1),
    TableRow("AS8_4", 128, 128, 56, 5),
    TableRow("AS8_5", 48, 48, 218, 33),
    TableRow("AS8_6", 24, 48, 104, 66),
    TableRow("AS8_7", 32, 192, 130, 13),
    TableRow("AS8_8", 32, 64, 143, 37),
    TableRow("AS8_9", 64, 384, 37, 4),
    TableRow("AS8_10", 16, 32, 337, 148),
    TableRow("AS8_11", 64, 128, 60, 10),
    TableRow("AS8_12", 16, 32, 247, 148),
    TableRow("AS8_13", 16, 64, 377, 74),
    TableRow("AS8_14", 16, 64, 319, 74),
    TableRow("AS8_15", 16, 64, 286, 74),
    TableRow("AS8_16", 16, 64, 179, 74),
    TableRow("C2xC2xC2", 8, 1344, 65, 8),
    TableRow("D4", 8, 64, 441, 148),
    TableRow("C4xC2", 8, 64, 442, 148),
    TableRow("Q8", 8, 192, 138, 50),
    TableRow("C8", 8, 32, 462, 296),
]

AUT_X0_ORDER4 = 6
AUT_X0_SYLVESTER8 = 168

# equivalence classes of Hadamard matrices by order; reference only
EQUIVALENCE_CLASS_COUNTS = {4: 1, 8: 1, 12: 1, 16: 5, 20: 3, 24: 60, 28: 487, 32: 13710027}


def table3_row(name: str) -> TableRow:
    for row in TABLE3:
        if row.name == name:
            return row
    raise KeyError(name)


def load_order8(name: str, data_dir: Optional[Path] = None) -> AssociationScheme:
    """Built-in order-8 row, or ``<data_dir>/<name>.scheme`` when present."""
    from .io import read_scheme

    if data_dir is not None:
        path = Path(data_dir) / f"{name}.scheme"
        if path.exists():
            return read_scheme(path)
    builtins = builtin_order8()
    if name in builtins:
        return builtins[name]()
    raise KeyError(f"no built-in scheme {name!r} and no file for it in {data_dir}")
