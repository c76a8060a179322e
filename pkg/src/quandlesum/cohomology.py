"""Rack and quandle (co)chain complexes of a finite quandle.

Chains are sparse integer combinations of n-tuples.  Cochains on the
quandle complex are stored on non-degenerate tuples only (a tuple is
degenerate when two neighbouring entries coincide), so the vanishing of
quandle cochains on degenerate tuples holds by construction.  Values are
additive throughout; the multiplicative reading lives in ``invariants``.

All tuple lists are in lexicographic order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg
from .errors import (
    ArityMismatch,
    CocycleConsistencyError,
    CoefficientMismatch,
    NotACocycle,
    SizeLimitExceeded,
    TupleOutOfRange,
    UnsupportedCoefficient,
)

RACK = "rack"
QUANDLE = "quandle"

SIZE_LIMIT = 200_000


@dataclass(frozen=True)
class CoefficientGroup:
    """Z/m (``mode="zmod"``), Z (``"int"``) or Q (``"rational"``)."""

    mode: str
    m: int | None = None

    def __post_init__(self):
        if self.mode not in ("zmod", "int", "rational"):
            raise ValueError(f"unknown coefficient mode {self.mode!r}")
        if self.mode == "zmod" and (self.m is None or self.m < 2):
            raise ValueError("zmod needs a modulus m >= 2")
        if self.mode != "zmod" and self.m is not None:
            raise ValueError("only zmod takes a modulus")

    def normalize(self, v):
        if self.mode == "zmod":
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise ValueError(f"{v} is not an integer")
                v = v.numerator
            return int(v) % self.m
        if self.mode == "int":
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise ValueError(f"{v} is not an integer")
                return v.numerator
            if isinstance(v, float) and not v.is_integer():
                raise ValueError(f"{v} is not an integer")
            return int(v)
        if isinstance(v, float):
            raise ValueError("rational coefficients must be given exactly, not as floats")
        return Fraction(v)

    @property
    def zero(self):
        return Fraction(0) if self.mode == "rational" else 0

    def parse(self, raw):
        if isinstance(raw, str):
            raw = Fraction(raw)
        return self.normalize(raw)

    def dump(self, v):
        if self.mode == "rational":
            return str(Fraction(v))
        return int(v)

    def to_json(self):
        out = {"mode": self.mode}
        if self.m is not None:
            out["m"] = self.m
        return out

    @classmethod
    def from_json(cls, data):
        return cls(data["mode"], data.get("m"))

    @classmethod
    def from_flag(cls, flag):
        """``q`` -> rationals, ``z`` -> integers, ``zM`` -> Z/M."""
        if flag in ("q", "Q"):
            return RATIONAL
        if flag in ("z", "Z", "int"):
            return INTEGER
        if flag[0] in "zZ" and flag[1:].isdigit():
            return cls("zmod", int(flag[1:]))
        raise ValueError(f"bad coefficient flag {flag!r}")

    def __str__(self):
        return {"zmod": f"Z/{self.m}", "int": "Z", "rational": "Q"}[self.mode]


def zmod(m):
    return CoefficientGroup("zmod", m)


INTEGER = CoefficientGroup("int")
RATIONAL = CoefficientGroup("rational")


def is_degenerate(t):
    return any(t[i] == t[i + 1] for i in range(len(t) - 1))


@lru_cache(maxsize=None)
def nondegenerate_tuples(order, n):
    if n == 0:
        return ((),)
    out = []
    for t in itertools.product(range(order), repeat=n):
        if not is_degenerate(t):
            out.append(t)
    return tuple(out)


def basis_size(order, n):
    if n == 0:
        return 1
    return order * (order - 1) ** (n - 1)


def _check_range(t, order):
    for x in t:
        if not 0 <= x < order:
            raise TupleOutOfRange(t, order)


# ---------------------------------------------------------------- chains

@dataclass(frozen=True)
class ChainVector:
    arity: int
    terms: dict
    kind: str = QUANDLE

    def __eq__(self, other):
        return (isinstance(other, ChainVector) and self.arity == other.arity
                and self.kind == other.kind and self.terms == other.terms)

    def is_zero(self):
        return not self.terms


def chain(terms, arity=None, kind=QUANDLE):
    """Build a ChainVector, dropping zero terms (and degenerate ones for ``kind="quandle"``)."""
    if isinstance(terms, tuple):
        terms = {terms: 1}
    clean = {}
    for t, c in terms.items():
        t = tuple(t)
        if arity is None:
            arity = len(t)
        if len(t) != arity:
            raise ArityMismatch(f"tuple {t} in a chain of arity {arity}")
        if kind == QUANDLE and is_degenerate(t):
            continue
        clean[t] = clean.get(t, 0) + int(c)
    clean = {t: c for t, c in sorted(clean.items()) if c}
    return ChainVector(arity if arity is not None else 0, clean, kind)


def _boundary_terms(quandle, t):
    """Alternating-sum boundary of a single tuple as (tuple, sign) pairs."""
    op = quandle.table
    n = len(t)
    out = []
    for i in range(1, n):  # 0-based position of x_i for i = 2..n
        sign = 1 if (i + 1) % 2 == 0 else -1
        xi = t[i]
        out.append((t[:i] + t[i + 1:], sign))
        out.append((tuple(op[x][xi] for x in t[:i]) + t[i + 1:], -sign))
    return out


def boundary(quandle, v):
    """Apply the boundary map to a chain, extended linearly.

    Arity drops by one; chains of arity <= 1 map to zero.  For the
    quandle kind the degenerate output tuples are discarded.
    """
    order = quandle.order
    out = {}
    for t, c in v.terms.items():
        _check_range(t, order)
        if len(t) <= 1:
            continue
        for s, sign in _boundary_terms(quandle, t):
            if v.kind == QUANDLE and is_degenerate(s):
                continue
            out[s] = out.get(s, 0) + sign * c
    return chain(out, max(v.arity - 1, 0), v.kind)


# --------------------------------------------------------------- cochains

@dataclass(frozen=True)
class Cochain:
    arity: int
    coeff: CoefficientGroup
    values: dict = field(default_factory=dict)
    order: int = 0

    def __call__(self, t):
        return self.values.get(tuple(t), self.coeff.zero)

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.arity == other.arity
                and self.coeff == other.coeff and self.order == other.order
                and self.values == other.values)

    def __hash__(self):
        return hash((self.arity, self.coeff, self.order, tuple(sorted(self.values.items()))))

    def is_zero(self):
        return not self.values

    def _combine(self, other, k):
        if self.arity != other.arity:
            raise ArityMismatch(f"arities {self.arity} and {other.arity}")
        if self.coeff != other.coeff:
            raise CoefficientMismatch(f"{self.coeff} vs {other.coeff}")
        vals = dict(self.values)
        for t, v in other.values.items():
            vals[t] = vals.get(t, self.coeff.zero) + k * v
        return cochain(self.order, self.arity, self.coeff, vals)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, k):
        return cochain(self.order, self.arity, self.coeff, {t: k * v for t, v in self.values.items()})

    def vector(self):
        """Values on the non-degenerate basis, in lexicographic order."""
        z = self.coeff.zero
        return [self.values.get(t, z) for t in nondegenerate_tuples(self.order, self.arity)]

    def to_json(self):
        return {
            "arity": self.arity,
            "coeff": self.coeff.to_json(),
            "values": [[list(t), self.coeff.dump(v)] for t, v in sorted(self.values.items())],
        }


def cochain(order, arity, coeff, values=None):
    """Build a Cochain.  Zero values are dropped; a nonzero value on a
    degenerate tuple is rejected."""
    if hasattr(order, "order"):
        order = order.order
    clean = {}
    for t, v in (values or {}).items():
        t = tuple(int(x) for x in t)
        if len(t) != arity:
            raise ArityMismatch(f"tuple {t} in a cochain of arity {arity}")
        _check_range(t, order)
        v = coeff.normalize(v)
        if is_degenerate(t):
            if v != 0:
                raise ValueError(f"quandle cochains vanish on degenerate tuples; got {t} -> {v}")
            continue
        if v != 0:
            clean[t] = v
    return Cochain(arity, coeff, dict(sorted(clean.items())), order)


def zero_cochain(order, arity, coeff):
    return cochain(order, arity, coeff, {})


def cochain_from_vector(order, arity, coeff, vec):
    """Cochain with ``vec`` as its values on the non-degenerate basis."""
    basis = nondegenerate_tuples(order, arity)
    if len(vec) != len(basis):
        raise ArityMismatch(f"vector of length {len(vec)} for a basis of size {len(basis)}")
    norm = coeff.normalize
    values = {}
    for t, v in zip(basis, vec):
        v = norm(v)
        if v != 0:
            values[t] = v
    return Cochain(arity, coeff, values, order)


def cochain_from_json(data, order):
    coeff = CoefficientGroup.from_json(data["coeff"])
    values = {tuple(t): coeff.parse(v) for t, v in data.get("values", [])}
    return cochain(order, data["arity"], coeff, values)


# ------------------------------------------------------ coboundary matrix

@lru_cache(maxsize=64)
def coboundary_matrix(quandle, n):
    """Sparse matrix of the coboundary from arity ``n`` to ``n + 1``.

    Row ``r`` lists ``(col, coefficient)`` pairs such that
    ``(δc)(rows[r]) = Σ coefficient * c(cols[col])``.  Rows are the
    non-degenerate (n+1)-tuples, columns the non-degenerate n-tuples.
    """
    order = quandle.order
    size = basis_size(order, n + 1)
    if size > SIZE_LIMIT:
        raise SizeLimitExceeded(size, SIZE_LIMIT)
    rows = nondegenerate_tuples(order, n + 1)
    cols = nondegenerate_tuples(order, n)
    col_index = {t: i for i, t in enumerate(cols)}
    entries = []
    for t in rows:
        acc = {}
        if n >= 1:
            for s, sign in _boundary_terms(quandle, t):
                j = col_index.get(s)
                if j is not None:
                    acc[j] = acc.get(j, 0) + sign
        entries.append(tuple(sorted((j, c) for j, c in acc.items() if c)))
    return rows, cols, tuple(entries)


def dense_coboundary_matrix(quandle, n):
    rows, cols, entries = coboundary_matrix(quandle, n)
    M = [[0] * len(cols) for _ in rows]
    for r, row in enumerate(entries):
        for j, c in row:
            M[r][j] = c
    return M


@lru_cache(maxsize=64)
def _padded_coboundary(quandle, n):
    rows, cols, entries = coboundary_matrix(quandle, n)
    width = max((len(r) for r in entries), default=0)
    idx = np.full((len(rows), max(width, 1)), len(cols), dtype=np.int64)
    coef = np.zeros((len(rows), max(width, 1)), dtype=np.int64)
    for r, row in enumerate(entries):
        for k, (j, c) in enumerate(row):
            idx[r, k] = j
            coef[r, k] = c
    return idx, coef


def coboundary(quandle, c):
    """``(δc)(t) = c(∂t)`` on every non-degenerate (n+1)-tuple."""
    if c.order != quandle.order:
        raise ArityMismatch(f"cochain is over a quandle of order {c.order}, not {quandle.order}")
    rows, cols, entries = coboundary_matrix(quandle, c.arity)
    vec = c.vector()
    vals = {}
    for t, row in zip(rows, entries):
        s = c.coeff.zero
        for j, k in row:
            v = vec[j]
            if v:
                s += k * v
        vals[t] = s
    return cochain(quandle.order, c.arity + 1, c.coeff, vals)


# ------------------------------------------------------ cocycle checking

@lru_cache(maxsize=64)
def _identity_indices(quandle, n):
    """Flat index arrays for the explicit 2- and 3-cocycle identities.

    Arity 2: phi(p,r) + phi(p▷r,q▷r) == phi(p,q) + phi(p▷q,r)
    Arity 3: th(p,q,r) + th(p▷r,q▷r,s) + th(p,r,s)
             == th(p▷q,r,s) + th(p,q,s) + th(p▷s,q▷s,r▷s)
    Each side is a list of arrays indexing a dense table over all n-tuples.
    """
    N = quandle.order
    op = np.array(quandle.table, dtype=np.int64)
    if n == 2:
        p, q, r = np.meshgrid(np.arange(N), np.arange(N), np.arange(N), indexing="ij")
        p, q, r = p.ravel(), q.ravel(), r.ravel()

        def f(a, b):
            return a * N + b

        lhs = [f(p, r), f(op[p, r], op[q, r])]
        rhs = [f(p, q), f(op[p, q], r)]
        points = np.stack([p, q, r], axis=1)
    elif n == 3:
        p, q, r, s = np.meshgrid(*(np.arange(N),) * 4, indexing="ij")
        p, q, r, s = p.ravel(), q.ravel(), r.ravel(), s.ravel()

        def f(a, b, c):
            return (a * N + b) * N + c

        lhs = [f(p, q, r), f(op[p, r], op[q, r], s), f(p, r, s)]
        rhs = [f(op[p, q], r, s), f(p, q, s), f(op[p, s], op[q, s], op[r, s])]
        points = np.stack([p, q, r, s], axis=1)
    else:
        raise ValueError("explicit identities exist for arity 2 and 3 only")
    return lhs, rhs, points


def _dense_all_tuples(c):
    N = c.order
    flat = [c.coeff.zero] * (N ** c.arity)
    for t, v in c.values.items():
        k = 0
        for x in t:
            k = k * N + x
        flat[k] = v
    return flat


_INT64_SAFE = 2 ** 40


def _integer_values(c, values):
    """``values`` scaled to integers, with the modulus to reduce by (0 for none).

    Both cocycle conditions are linear and homogeneous, so clearing the
    denominators of a rational cochain does not change the answer.
    Returns None when the scaled integers could overflow int64 sums.
    """
    if c.coeff.mode == "zmod":
        return [int(v) for v in values], c.coeff.m
    scale = 1
    for v in c.values.values():
        if isinstance(v, Fraction):
            scale = scale * v.denominator // math.gcd(scale, v.denominator)
    ints = [int(v * scale) for v in values]
    if any(abs(v) >= _INT64_SAFE for v in ints):
        return None
    return ints, 0


def _first_nonzero(diff, m):
    if m:
        diff = diff % m
    bad = np.flatnonzero(diff)
    return int(bad[0]) if len(bad) else None


def identity_witness(quandle, c):
    """First point where the explicit identity fails, or None."""
    lhs, rhs, points = _identity_indices(quandle, c.arity)
    dense = _dense_all_tuples(c)
    scaled = _integer_values(c, dense)
    if scaled is not None:
        table = np.array(scaled[0], dtype=np.int64)
        k = _first_nonzero(sum(table[ix] for ix in lhs) - sum(table[ix] for ix in rhs), scaled[1])
        return None if k is None else tuple(int(x) for x in points[k])
    L = [ix.tolist() for ix in lhs]
    R = [ix.tolist() for ix in rhs]
    for k in range(len(L[0])):
        if sum(dense[ix[k]] for ix in L) != sum(dense[ix[k]] for ix in R):
            return tuple(int(x) for x in points[k])
    return None


def coboundary_witness(quandle, c):
    """First (n+1)-tuple where δc is nonzero, or None."""
    rows, cols, entries = coboundary_matrix(quandle, c.arity)
    vec = c.vector()
    scaled = _integer_values(c, vec)
    if scaled is not None:
        idx, coef = _padded_coboundary(quandle, c.arity)
        padded = np.zeros(len(cols) + 1, dtype=np.int64)
        padded[:-1] = scaled[0]
        k = _first_nonzero((coef * padded[idx]).sum(axis=1), scaled[1])
        return None if k is None else rows[k]
    for t, row in zip(rows, entries):
        if sum(k * vec[j] for j, k in row) != 0:
            return t
    return None


def is_quandle_cocycle(quandle, c):
    """Decide whether ``δc = 0``.  Returns ``(ok, witness)``.

    The witness is the first non-degenerate (n+1)-tuple with
    ``(δc)(t) != 0``.  For arity 2 and 3 the answer is cross-checked
    against the explicit cocycle identity over all tuples; a
    disagreement raises ``CocycleConsistencyError``.
    """
    if c.order != quandle.order:
        raise ArityMismatch(f"cochain is over a quandle of order {c.order}, not {quandle.order}")
    if c.arity < 1:
        raise ArityMismatch("cochains have arity >= 1")
    witness = coboundary_witness(quandle, c)
    if c.arity in (2, 3):
        direct = identity_witness(quandle, c)
        if (witness is None) != (direct is None):
            raise CocycleConsistencyError(
                f"coboundary route says {witness is None}, explicit identity says {direct is None}")
    return witness is None, witness


# ------------------------------------------------------- cocycle solving

def cocycle_space(quandle, arity, coeff):
    """Generating set of the arity-``arity`` quandle cocycles.

    Over Q this is a vector-space basis (exact elimination).  Over Z/m
    it is a generating set of the solution module, read off the integer
    Smith form of the coboundary matrix.
    """
    if coeff.mode == "int":
        raise UnsupportedCoefficient("cocycle_space works over Q or Z/m; use Q and clear denominators")
    M = dense_coboundary_matrix(quandle, arity)
    ncols = basis_size(quandle.order, arity)
    if coeff.mode == "rational":
        vecs = linalg.rational_nullspace(M, ncols)
    else:
        vecs = linalg.modular_kernel(M, coeff.m, ncols)
    return [cochain_from_vector(quandle.order, arity, coeff, v) for v in vecs]


def _check_pair(quandle, c1, c2):
    if c1.arity != c2.arity:
        raise ArityMismatch(f"arities {c1.arity} and {c2.arity}")
    if c1.coeff != c2.coeff:
        raise CoefficientMismatch(f"{c1.coeff} vs {c2.coeff}")
    for c in (c1, c2):
        ok, w = is_quandle_cocycle(quandle, c)
        if not ok:
            raise NotACocycle(w)


def solve_coboundary(quandle, target):
    """A cochain ``psi`` of one lower arity with ``δpsi = target``, or None."""
    n = target.arity
    coeff = target.coeff
    if n == 1:
        return None
    M = dense_coboundary_matrix(quandle, n - 1)
    b = target.vector()
    if coeff.mode == "rational":
        x = linalg.rational_solve(M, b)
    elif coeff.mode == "zmod":
        x = linalg.integer_solve(M, b, coeff.m)
    else:
        x = linalg.integer_solve(M, b, 0)
    if x is None:
        return None
    return cochain_from_vector(quandle.order, n - 1, coeff, x)


def cohomologous(quandle, c1, c2):
    """Decide whether ``c1 - c2`` is a coboundary.

    Returns ``(True, psi)`` with ``δpsi = c1 - c2`` or ``(False, None)``.
    Arity-1 cocycles are cohomologous only when equal (there is nothing
    below them), and then no witness is returned.
    """
    _check_pair(quandle, c1, c2)
    diff = c1 - c2
    if c1.arity == 1:
        return diff.is_zero(), None
    if diff.is_zero():
        return True, zero_cochain(quandle.order, c1.arity - 1, c1.coeff)
    psi = solve_coboundary(quandle, diff)
    return psi is not None, psi


# --------------------------------------------------------------- homology

@dataclass(frozen=True)
class HomologyResult:
    free_rank: int
    torsion: tuple = ()

    def to_json(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def boundary_matrix(quandle, n):
    """Integer matrix of the boundary from arity n to n-1 on the quandle basis."""
    M = dense_coboundary_matrix(quandle, n - 1)
    return [list(col) for col in zip(*M)] if M and M[0] else []


def quandle_homology(quandle, n, limit=SIZE_LIMIT):
    """``H_n`` of the quandle chain complex: free rank and torsion."""
    if n < 1:
        raise ValueError("homology degree must be >= 1")
    order = quandle.order
    size = basis_size(order, n + 1)
    if size > limit:
        raise SizeLimitExceeded(size, limit)
    dim_n = basis_size(order, n)
    if dim_n == 0:
        return HomologyResult(0, ())
    # rank of ∂_n (zero for n = 1), then invariant factors of ∂_{n+1}
    rank_n = linalg.integer_rank(dense_coboundary_matrix(quandle, n - 1)) if n >= 2 else 0
    upper = dense_coboundary_matrix(quandle, n)
    factors = linalg.invariant_factors(upper) if upper else []
    torsion = tuple(d for d in factors if d > 1)
    return HomologyResult(dim_n - rank_n - len(factors), torsion)
