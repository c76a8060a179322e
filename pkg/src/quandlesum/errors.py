"""Exception types shared across the package.

Every error carries the witness that triggered it as attributes, and
``to_json`` gives the structured form the CLI writes to stderr.
"""


class QuandleSumError(Exception):
    """Base class for domain and validation errors."""

    def __init__(self, message="", **witness):
        self.witness = witness
        for key, value in witness.items():
            setattr(self, key, value)
        super().__init__(message or self._default_message())

    def _default_message(self):
        parts = ", ".join(f"{k}={v!r}" for k, v in self.witness.items())
        return f"{type(self).__name__}({parts})"

    def to_json(self):
        out = {"error": type(self).__name__, "message": str(self)}
        for key, value in self.witness.items():
            out[key] = value if isinstance(value, (int, str, bool, type(None))) else repr(value)
        return out


# quandle-core
class QuandleError(QuandleSumError):
    pass


class MalformedTable(QuandleError):
    pass


class NotIdempotent(QuandleError):
    def __init__(self, a):
        super().__init__(f"a▷a != a for a={a}", a=a)


class ColumnNotBijective(QuandleError):
    def __init__(self, b):
        super().__init__(f"right translation by {b} is not a permutation", b=b)


class NotSelfDistributive(QuandleError):
    def __init__(self, a, b, c):
        super().__init__(f"(a▷b)▷c != (a▷c)▷(b▷c) at a={a}, b={b}, c={c}", a=a, b=b, c=c)


class NotAGroup(QuandleError):
    def __init__(self, axiom, witness):
        super().__init__(f"group axiom '{axiom}' fails at {witness}", axiom=axiom, at=list(witness))


# cohomology
class CohomologyError(QuandleSumError):
    pass


class TupleOutOfRange(CohomologyError):
    def __init__(self, tup, order):
        super().__init__(f"tuple {tup} has an entry outside 0..{order - 1}", tuple=list(tup), order=order)


class ArityMismatch(CohomologyError):
    pass


class CoefficientMismatch(CohomologyError):
    pass


class UnsupportedCoefficient(CohomologyError):
    pass


class CocycleConsistencyError(CohomologyError):
    """The coboundary route and the explicit identity disagree (internal bug)."""


class SizeLimitExceeded(QuandleSumError):
    def __init__(self, size, limit):
        super().__init__(f"problem size {size} exceeds limit {limit}", size=size, limit=limit)


# diagrams
class DiagramError(QuandleSumError):
    pass


class PDSyntaxError(DiagramError):
    def __init__(self, position, detail=""):
        super().__init__(f"syntax error at position {position}: {detail}", position=position)


class EdgeCountMismatch(DiagramError):
    def __init__(self, edge, count=None):
        super().__init__(f"edge {edge} appears {count} times", edge=edge, count=count)


class UnderStrandMismatch(DiagramError):
    def __init__(self, crossing):
        super().__init__(f"under-strand of crossing {crossing} does not run a -> c", crossing=crossing)


class OverStrandMismatch(DiagramError):
    def __init__(self, crossing, detail="over-edges are not consecutive on a component"):
        super().__init__(f"crossing {crossing}: {detail}", crossing=crossing)


class AmbiguousOverDirection(DiagramError):
    def __init__(self, crossing):
        super().__init__(f"cannot tell which way the over-strand runs at crossing {crossing}",
                         crossing=crossing)


class UnpairedCrossing(DiagramError):
    def __init__(self, label):
        super().__init__(f"crossing {label} does not have exactly one O and one U passage", label=label)


class SignConflict(DiagramError):
    def __init__(self, label):
        super().__init__(f"crossing {label} carries conflicting signs", label=label)


class NonPlanarRotation(DiagramError):
    def __init__(self, vertices, edges, faces):
        super().__init__(f"Euler check failed: V-E+F = {vertices}-{edges}+{faces} != 2",
                         vertices=vertices, edges=edges, faces=faces)


class PatternMismatch(DiagramError):
    def __init__(self, site, reason):
        super().__init__(f"move site {site} rejected: {reason}", site=repr(site), reason=reason)


# colorings / invariants
class InvalidColoring(QuandleSumError):
    def __init__(self, crossing, detail=""):
        super().__init__(f"crossing relation fails at crossing {crossing} {detail}".strip(),
                         crossing=crossing)


class NotACocycle(QuandleSumError):
    def __init__(self, witness):
        super().__init__(f"cochain is not a quandle cocycle; δ is nonzero at {witness}",
                         witness=list(witness))


class NonPositiveTemperature(QuandleSumError):
    pass


class NonRationalExponents(QuandleSumError):
    pass
