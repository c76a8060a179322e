"""Random Reidemeister sequences checking that the invariants do not move."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .coloring import enumerate_colorings
from .invariants import _exponent, partition_function, require_cocycle, state_sum
from .moves import apply_move, random_move, transport_coloring

DEFAULT_TEMPERATURES = (0.25, 0.5, 1.0, 2.0, 10.0)


@dataclass
class FuzzReport:
    trials: int = 0
    moves: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def summary(self):
        head = "PASS" if self.passed else "FAIL"
        lines = [f"{head} trials={self.trials} moves={self.moves} failures={len(self.failures)}"]
        lines += [f"  {f}" for f in self.failures[:10]]
        return "\n".join(lines)


def _close(a, b, rel):
    return abs(a - b) <= rel * max(abs(a), abs(b))


def run_sequence(diagram, quandle, phi, depth, rng, temperatures=DEFAULT_TEMPERATURES,
                 rel=1e-12, max_crossings=12):
    """One random sequence of ``depth`` moves.  Returns a list of failure strings."""
    failures = []
    colorings = enumerate_colorings(diagram, quandle)
    weights = [_exponent(diagram, c, phi) for c in colorings]
    ss0 = state_sum(diagram, quandle, phi, colorings=colorings)
    rational = phi.coeff.mode == "rational"
    z0 = partition_function(ss0, temperatures).points if rational else None
    d = diagram
    for step in range(depth):
        spec = random_move(d, rng, max_crossings)
        d2, corr = apply_move(d, spec)
        images = [transport_coloring(c, corr, quandle) for c in colorings]
        where = f"step {step} {spec.dumps()}"
        if len(set(images)) != len(images):
            failures.append(f"{where}: transport is not injective")
        new_weights = [_exponent(d2, c, phi) for c in images]
        if new_weights != weights:
            failures.append(f"{where}: a Boltzmann weight changed")
        d, colorings, weights = d2, images, new_weights
    final = enumerate_colorings(d, quandle)
    if len(final) != len(colorings) or sorted(colorings) != final:
        failures.append(f"coloring count {len(colorings)} -> {len(final)}")
    ss1 = state_sum(d, quandle, phi, colorings=final)
    if ss1 != ss0:
        failures.append(f"state-sum changed: {ss0.terms} -> {ss1.terms}")
    if rational:
        z1 = partition_function(ss1, temperatures).points
        for (t, a), (_, b) in zip(z0, z1):
            if not _close(a, b, rel):
                failures.append(f"Z({t}) changed: {a!r} -> {b!r}")
    return failures


def fuzz(diagram, quandle, phi, trials, depth, seed=0, temperatures=DEFAULT_TEMPERATURES,
         max_crossings=12):
    """``trials`` sequences of 1..``depth`` random moves, seeded by ``seed``."""
    require_cocycle(quandle, phi)
    rng = random.Random(seed)
    report = FuzzReport()
    for trial in range(trials):
        length = rng.randint(1, depth)
        fails = run_sequence(diagram, quandle, phi, length, rng, temperatures,
                             max_crossings=max_crossings)
        report.trials += 1
        report.moves += length
        report.failures += [f"trial {trial}: {f}" for f in fails]
    return report
