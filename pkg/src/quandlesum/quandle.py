"""Finite quandles stored as operation tables.

Elements are the indices ``0..n-1``.  ``op[a][b]`` is ``a ▷ b`` and
``inv[a][b]`` is ``a ▷⁻¹ b``, the unique ``x`` with ``x ▷ b == a``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .errors import (
    ColumnNotBijective,
    MalformedTable,
    NotAGroup,
    NotIdempotent,
    NotSelfDistributive,
)


def _as_table(op_table):
    try:
        rows = [list(r) for r in op_table]
    except TypeError:
        raise MalformedTable("operation table must be a list of rows")
    n = len(rows)
    if n == 0:
        raise MalformedTable("operation table is empty")
    for i, r in enumerate(rows):
        if len(r) != n:
            raise MalformedTable(f"row {i} has length {len(r)}, expected {n}")
        for j, x in enumerate(r):
            if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < n:
                raise MalformedTable(f"entry ({i},{j}) = {x!r} is not in 0..{n - 1}")
    return rows


def _column_witness(rows):
    n = len(rows)
    for b in range(n):
        if len({rows[a][b] for a in range(n)}) != n:
            return ColumnNotBijective(b)
    return None


def _distributivity_witness(rows):
    n = len(rows)
    for a, b, c in itertools.product(range(n), repeat=3):
        if rows[rows[a][b]][c] != rows[rows[a][c]][rows[b][c]]:
            return NotSelfDistributive(a, b, c)
    return None


def is_rack(op_table):
    """Classify a table as a rack (right-invertible and self-distributive).

    Returns ``(True, None)`` or ``(False, error)`` where ``error`` is the
    first failing witness.  Idempotence is not required.
    """
    rows = _as_table(op_table)
    witness = _column_witness(rows) or _distributivity_witness(rows)
    return witness is None, witness


@dataclass(frozen=True)
class FiniteQuandle:
    table: tuple
    name: str = ""
    inv: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.table)
        inv = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                inv[self.table[a][b]][b] = a
        object.__setattr__(self, "inv", tuple(tuple(r) for r in inv))

    @property
    def order(self):
        return len(self.table)

    def op(self, a, b):
        return self.table[a][b]

    def op_inv(self, a, b):
        return self.inv[a][b]

    def act(self, a, b, sign):
        """``a ▷ b`` for ``sign = +1`` and ``a ▷⁻¹ b`` for ``sign = -1``."""
        return self.table[a][b] if sign > 0 else self.inv[a][b]

    def to_json(self):
        return {"name": self.name, "order": self.order, "table": [list(r) for r in self.table]}

    def dumps(self):
        return json.dumps(self.to_json())


def make_quandle(op_table, name=""):
    """Validate a table against the quandle axioms and build the quandle.

    Checks run in the order idempotence, column bijectivity,
    self-distributivity; the first violation found is raised.
    """
    rows = _as_table(op_table)
    for a in range(len(rows)):
        if rows[a][a] != a:
            raise NotIdempotent(a)
    witness = _column_witness(rows) or _distributivity_witness(rows)
    if witness is not None:
        raise witness
    return FiniteQuandle(tuple(tuple(r) for r in rows), name)


def quandle_from_json(data):
    if isinstance(data, str):
        data = json.loads(data)
    table = data.get("table")
    if table is None:
        raise MalformedTable("missing 'table'")
    if "order" in data and data["order"] != len(table):
        raise MalformedTable(f"order {data['order']} does not match table size {len(table)}")
    return make_quandle(table, data.get("name", ""))


def dihedral_quandle(m):
    if m < 1:
        raise ValueError("m must be positive")
    return make_quandle([[(2 * b - a) % m for b in range(m)] for a in range(m)], f"dihedral{m}")


def trivial_quandle(m):
    if m < 1:
        raise ValueError("m must be positive")
    return make_quandle([[a] * m for a in range(m)], f"trivial{m}")


def _check_group(rows):
    n = len(rows)
    identity = None
    for e in range(n):
        if all(rows[e][x] == x and rows[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise NotAGroup("identity", [])
    for x, y, z in itertools.product(range(n), repeat=3):
        if rows[rows[x][y]][z] != rows[x][rows[y][z]]:
            raise NotAGroup("associativity", [x, y, z])
    inverse = []
    for x in range(n):
        found = [y for y in range(n) if rows[x][y] == identity and rows[y][x] == identity]
        if not found:
            raise NotAGroup("inverse", [x])
        inverse.append(found[0])
    return identity, inverse


def conjugation_quandle(group_table, exponent=1, name=""):
    """Quandle on a finite group with ``a ▷ b = b^(-exponent) a b^(exponent)``."""
    if exponent < 1:
        raise ValueError("exponent must be a positive integer")
    try:
        rows = _as_table(group_table)
    except MalformedTable as exc:
        raise NotAGroup("closure", []) from exc
    identity, inverse = _check_group(rows)
    n = len(rows)

    def power(b, k):
        out = identity
        for _ in range(k):
            out = rows[out][b]
        return out

    table = []
    for a in range(n):
        row = []
        for b in range(n):
            bn = power(b, exponent)
            row.append(rows[rows[inverse[bn]][a]][bn])
        table.append(row)
    return make_quandle(table, name or f"conj{n}_{exponent}")


def cyclic_group_table(n):
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def symmetric_group_table(k):
    """Multiplication table of S_k on permutations in lexicographic order.

    The product ``p*q`` is the composition "apply q, then p".
    """
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    return [[index[tuple(p[q[i]] for i in range(k))] for q in perms] for p in perms]
