"""Boltzmann weights, state-sums and the partition function.

Weights are kept additively: the weight of a coloring is the exponent
``E = Σ ε·φ(s, y)`` over crossings, in the cocycle's coefficient group.
The multiplicative weight is ``t^E`` for Z/m coefficients and ``exp(E)``
for rational ones.  A state-sum is the multiset of exponents over all
colorings, i.e. a group-ring element in additive coordinates.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .cohomology import CoefficientGroup, is_quandle_cocycle
from .coloring import enumerate_colorings, require_coloring
from .errors import (
    ArityMismatch,
    NonPositiveTemperature,
    NonRationalExponents,
    NotACocycle,
    UnsupportedCoefficient,
)


def require_cocycle(quandle, phi):
    if phi.arity != 2:
        raise ArityMismatch(f"Boltzmann weights need a 2-cochain, got arity {phi.arity}")
    if phi.order != quandle.order:
        raise ArityMismatch(f"cochain is on {phi.order} elements, quandle has {quandle.order}")
    ok, witness = is_quandle_cocycle(quandle, phi)
    if not ok:
        raise NotACocycle(witness)


def _exponent(diagram, coloring, phi):
    total = phi.coeff.zero
    for i in range(diagram.n_crossings):
        s_arc = diagram.in_arc[i] if diagram.signs[i] > 0 else diagram.out_arc[i]
        v = phi((coloring[s_arc], coloring[diagram.over_arc[i]]))
        if v:
            total += diagram.signs[i] * v
    return phi.coeff.normalize(total)


def boltzmann_weight(diagram, quandle, coloring, phi, check=True):
    """Exponent of the Boltzmann weight of one coloring.

    At each crossing the cocycle is evaluated on ``(s, y)``: ``y`` is the
    over color and ``s`` the under color with ``s ▷ y`` the other under
    color (the incoming one at positive crossings, the outgoing one at
    negative crossings), weighted by the crossing sign.
    """
    if check:
        require_cocycle(quandle, phi)
        require_coloring(diagram, quandle, coloring)
    return _exponent(diagram, coloring, phi)


@dataclass(frozen=True)
class StateSum:
    coeff: CoefficientGroup
    terms: tuple  # ((exponent, multiplicity), ...) sorted by exponent

    @classmethod
    def from_exponents(cls, coeff, exponents):
        return cls(coeff, tuple(sorted(Counter(exponents).items())))

    @property
    def total(self):
        return sum(m for _, m in self.terms)

    def as_dict(self):
        return dict(self.terms)

    def to_json(self):
        return {"coeff": self.coeff.to_json(),
                "terms": [[self.coeff.dump(e), m] for e, m in self.terms]}

    def multiplicative(self):
        """Readable group-ring form: ``3 + 6*t^2`` or ``9*exp(-1/2)``."""
        parts = []
        for e, m in self.terms:
            if e == 0:
                parts.append(str(m))
            elif self.coeff.mode == "rational":
                parts.append(f"{m}*exp({e})")
            else:
                parts.append(f"{m}*t^{e}")
        return " + ".join(parts) if parts else "0"


def state_sum(diagram, quandle, phi, workers=1, colorings=None):
    """Multiset of weight exponents over all colorings of ``diagram``."""
    require_cocycle(quandle, phi)
    if colorings is None:
        colorings = enumerate_colorings(diagram, quandle, workers=workers)
    return StateSum.from_exponents(phi.coeff, (_exponent(diagram, c, phi) for c in colorings))


def weight_multiset(diagram, quandle, phi, workers=1):
    """Same object as ``state_sum``; the multiplicities are the invariant."""
    return state_sum(diagram, quandle, phi, workers)


# --------------------------------------------------- symmetric functions

@dataclass(frozen=True)
class SymmetricValue:
    """A symmetric function of the weights ``exp(E)``.

    ``terms`` is exact: ``((exponent, coefficient), ...)`` meaning
    ``Σ coefficient·exp(exponent)``.  ``value`` is its float evaluation.
    """

    kind: str
    order: int
    terms: tuple
    value: float

    def to_json(self):
        return {"kind": self.kind, "order": self.order,
                "terms": [[str(e), c] for e, c in self.terms], "value": self.value}


def _evaluate(terms):
    return math.fsum(c * math.exp(e) for e, c in terms)


def symmetric_function(ss, kind, order):
    """Power sum ``p_k = Σ B^k`` or elementary ``e_k`` of the weights ``B = exp(E)``."""
    if ss.coeff.mode != "rational":
        raise UnsupportedCoefficient(f"symmetric functions need rational weights, got {ss.coeff}")
    if order < 0 or (kind == "power" and order < 1):
        raise ValueError("order out of range")
    if kind == "power":
        acc = Counter()
        for e, m in ss.terms:
            acc[order * e] += m
    elif kind == "elementary":
        # coefficient of x^order in Π (1 + x·exp(E)), one factor per coloring
        layers = [Counter({Fraction(0): 1})] + [Counter() for _ in range(order)]
        for e, m in ss.terms:
            for _ in range(m):
                for j in range(order, 0, -1):
                    for ex, c in layers[j - 1].items():
                        layers[j][ex + e] += c
        acc = layers[order]
    else:
        raise ValueError(f"unknown symmetric function kind {kind!r}")
    terms = tuple(sorted((Fraction(e), c) for e, c in acc.items() if c))
    return SymmetricValue(kind, order, terms, _evaluate(terms))


# ------------------------------------------------------ partition function

@dataclass(frozen=True)
class PartitionCurve:
    k: float
    points: tuple  # ((T, Z), ...)

    def to_csv(self):
        return "T,Z\n" + "".join(f"{t!r},{z!r}\n" for t, z in self.points)


def partition_function(ss, T_grid, k=1.0):
    """``Z(T) = Σ exp(-E/(kT))`` over colorings, summed in ascending exponent order."""
    if ss.coeff.mode != "rational":
        raise NonRationalExponents(f"Z(T) needs rational exponents, got {ss.coeff}")
    if not k > 0:
        raise NonPositiveTemperature(f"k must be positive, got {k}")
    points = []
    for T in T_grid:
        T = float(T)
        if not T > 0:
            raise NonPositiveTemperature(f"temperature {T} is not positive")
        z = math.fsum(m * math.exp(-float(e) / (k * T)) for e, m in ss.terms)
        points.append((T, z))
    return PartitionCurve(float(k), tuple(points))


def temperature_grid(tmin, tmax, steps, log=False):
    """``steps`` temperatures from ``tmin`` to ``tmax``, linear or geometric."""
    if steps < 1:
        raise ValueError("steps must be positive")
    if not (tmin > 0 and tmax > 0):
        raise NonPositiveTemperature(f"temperatures must be positive, got {tmin}..{tmax}")
    if steps == 1:
        return [float(tmin)]
    if not tmax > tmin:
        raise ValueError("tmax must exceed tmin")
    if log:
        a, b = math.log(tmin), math.log(tmax)
        grid = [math.exp(a + (b - a) * i / (steps - 1)) for i in range(steps)]
    else:
        grid = [tmin + (tmax - tmin) * i / (steps - 1) for i in range(steps)]
    grid[0], grid[-1] = float(tmin), float(tmax)
    return grid
