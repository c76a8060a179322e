"""Acceptance criteria 1-10.

Each test records one PASS/FAIL line, printed in the "acceptance
criteria" section at the end of the pytest run.  Run this file alone
with ``pytest tests/test_acceptance.py`` or ``python3 tests/test_acceptance.py``.
"""

import itertools
import json
import math
import random
import sys
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from conftest import DIAGRAM_FILES, fixture_path, load_c, load_d, load_q
from oracles import first_quandle_violation, homology_oracle
from quandlesum.cli import run
from quandlesum.cohomology import (
    RACK,
    RATIONAL,
    boundary,
    chain,
    coboundary,
    coboundary_witness,
    cochain,
    cochain_from_vector,
    cocycle_space,
    dense_coboundary_matrix,
    identity_witness,
    is_degenerate,
    is_quandle_cocycle,
    nondegenerate_tuples,
    quandle_homology,
    zero_cochain,
    zmod,
)
from quandlesum.coloring import brute_force_colorings, count_colorings, enumerate_colorings
from quandlesum.errors import QuandleError
from quandlesum.fuzz import fuzz
from quandlesum.invariants import partition_function, state_sum, temperature_grid
from quandlesum.quandle import (
    conjugation_quandle,
    cyclic_group_table,
    dihedral_quandle,
    make_quandle,
    symmetric_group_table,
    trivial_quandle,
)

FIXTURE_QUANDLES = ["dihedral3", "dihedral4", "dihedral5", "trivial2", "trivial3", "s3conj", "tetrahedral"]

# (quandle, cocycle) pairs used with every fixture diagram
COCYCLE_PAIRS = [
    ("tetrahedral", "tetrahedral_z2.json"),
    ("dihedral4", "dihedral4_z2.json"),
    ("dihedral4", "dihedral4_q.json"),
    ("trivial2", "hopf_psi.json"),
    ("trivial3", "trivial3_q.json"),
    ("dihedral3", "zero_z3.json"),
]
RATIONAL_PAIRS = [("dihedral4", "dihedral4_q.json"), ("trivial2", "hopf_psi.json"),
                  ("trivial3", "trivial3_q.json"), ("dihedral3", "zero_q.json")]


@contextmanager
def criterion(request, n, title, limit=None):
    lines = request.config.__dict__.setdefault("acceptance_lines", {})
    note = {}
    start = time.perf_counter()
    ok = False
    try:
        yield note
        elapsed = time.perf_counter() - start
        if limit is not None:
            assert elapsed < limit, f"took {elapsed:.2f} s, limit {limit} s"
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        bound = f" < {limit} s" if limit is not None else ""
        extra = f"; {note['detail']}" if "detail" in note else ""
        lines[n] = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {title} ({elapsed:.2f} s{bound}{extra})"


# ------------------------------------------------------------------ 1

def mutated_tables(count, seed=2024):
    """Yield (table, kind) pairs from single-entry edits of valid quandles."""
    rng = random.Random(seed)
    bases = [dihedral_quandle(m).table for m in range(3, 9)]
    bases += [load_q(n).table for n in ("s3conj", "tetrahedral")]
    kinds = ["diagonal", "entry", "swap"]
    produced = 0
    attempt = 0
    while produced < count:
        kind = kinds[attempt % 3]
        attempt += 1
        t = [list(r) for r in rng.choice(bases)]
        n = len(t)
        if kind == "diagonal":
            a = rng.randrange(n)
            t[a][a] = rng.choice([x for x in range(n) if x != a])
        elif kind == "entry":
            a, b = rng.sample(range(n), 2)
            t[a][b] = rng.choice([x for x in range(n) if x != t[a][b]])
        else:
            b = rng.randrange(n)
            a1, a2 = rng.sample([a for a in range(n) if a != b], 2)
            t[a1][b], t[a2][b] = t[a2][b], t[a1][b]
        if first_quandle_violation(t) is None:
            continue
        produced += 1
        yield t, kind


def expected_error(violation):
    tag, w = violation
    if tag == "idempotent":
        return {"error": "NotIdempotent", "a": w}
    if tag == "column":
        return {"error": "ColumnNotBijective", "b": w}
    a, b, c = w
    return {"error": "NotSelfDistributive", "a": a, "b": b, "c": c}


def test_criterion_01_axiom_suite(request):
    with criterion(request, 1, "quandle axioms, 20 mutated tables, inverse identities", limit=1.0) as note:
        accepted = [dihedral_quandle(m) for m in range(1, 9)] + [trivial_quandle(m) for m in range(1, 9)]
        accepted += [conjugation_quandle(symmetric_group_table(3)), conjugation_quandle(cyclic_group_table(4))]
        for q in accepted:
            assert make_quandle(q.table).table == q.table
            assert first_quandle_violation([list(r) for r in q.table]) is None
        kinds = set()
        for table, kind in mutated_tables(20):
            with pytest.raises(QuandleError) as err:
                make_quandle(table)
            got = {k: v for k, v in err.value.to_json().items() if k != "message"}
            assert got == expected_error(first_quandle_violation(table))
            kinds.add(got["error"])
        assert kinds == {"NotIdempotent", "ColumnNotBijective", "NotSelfDistributive"}
        for q in accepted:
            N = q.order
            op, inv = q.op, q.op_inv
            for a in range(N):
                assert inv(a, a) == a
                for b in range(N):
                    assert op(inv(a, b), b) == a == inv(op(a, b), b)
                    for c in range(N):
                        assert inv(inv(a, b), c) == inv(inv(a, c), inv(b, c))
                        assert op(inv(a, b), c) == inv(op(a, c), op(b, c))
                        assert inv(op(a, b), c) == op(inv(a, c), inv(b, c))
        note["detail"] = f"{len(accepted)} quandles accepted, witness kinds {sorted(kinds)}"


# ------------------------------------------------------------------ 2

def test_criterion_02_chain_complex(request):
    with criterion(request, 2, "boundary squares to zero, degenerate subcomplex closed", limit=10.0) as note:
        quandles = [dihedral_quandle(m) for m in range(1, 6)] + [trivial_quandle(m) for m in range(1, 6)]
        quandles += [load_q("tetrahedral"), conjugation_quandle(cyclic_group_table(4))]
        checked = 0
        for q in quandles:
            for n in range(1, 5):
                for t in itertools.product(range(q.order), repeat=n):
                    once = boundary(q, chain(t, kind=RACK))
                    assert boundary(q, once).is_zero()
                    if is_degenerate(t):
                        assert all(is_degenerate(s) for s in once.terms)
                    else:
                        assert boundary(q, boundary(q, chain(t))).is_zero()
                    checked += 1
            for n in range(1, 4):
                low = np.array(dense_coboundary_matrix(q, n), dtype=np.int64)
                high = np.array(dense_coboundary_matrix(q, n + 1), dtype=np.int64)
                if low.size and high.size:
                    assert not (high @ low).any()
        note["detail"] = f"{checked} basis tuples over {len(quandles)} quandles"


# ------------------------------------------------------------------ 3

def test_criterion_03_cocycle_routes_agree(request):
    with criterion(request, 3, "coboundary and explicit-identity cocycle checks agree", limit=30.0) as note:
        rng = np.random.default_rng(3)
        coeffs = [zmod(2), zmod(3), zmod(4)]
        total = passing = 0
        for name in FIXTURE_QUANDLES:
            q = load_q(name)
            for arity in (2, 3):
                dim = len(nondegenerate_tuples(q.order, arity))
                bases = {c.m: np.array([z.vector() for z in cocycle_space(q, arity, c)] or [[0] * dim],
                                       dtype=np.int64) for c in coeffs}
                for k in range(10 ** 4):
                    coeff = coeffs[k % 3]
                    B = bases[coeff.m]
                    vec = rng.integers(0, coeff.m, len(B)) @ B
                    if k % 2:
                        vec[rng.integers(dim)] += rng.integers(1, coeff.m)
                    c = cochain_from_vector(q.order, arity, coeff, (vec % coeff.m).tolist())
                    a = coboundary_witness(q, c) is None
                    b = identity_witness(q, c) is None
                    assert a == b, (name, arity, c.to_json())
                    total += 1
                    passing += a
                for k in range(200):
                    psi = cochain_from_vector(q.order, arity - 1, RATIONAL,
                                              [Fraction(int(x), 3) for x in rng.integers(-6, 7, len(
                                                  nondegenerate_tuples(q.order, arity - 1)))])
                    d = coboundary(q, psi)
                    assert coboundary_witness(q, d) is None and identity_witness(q, d) is None
                    coeff = coeffs[k % 3]
                    psi = cochain_from_vector(q.order, arity - 1, coeff, rng.integers(0, coeff.m, len(
                        nondegenerate_tuples(q.order, arity - 1))).tolist())
                    assert is_quandle_cocycle(q, coboundary(q, psi)) == (True, None)
        assert 0.3 * total < passing < 0.7 * total
        note["detail"] = f"{total} cochains, {passing} cocycles among them"


# ------------------------------------------------------------------ 4

def test_criterion_04_homology(request):
    with criterion(request, 4, "trivial quandle homology, dihedral-3 second homology vs SNF oracle") as note:
        for m in range(1, 5):
            for n in range(1, 4):
                h = quandle_homology(trivial_quandle(m), n)
                assert (h.free_rank, h.torsion) == (m * (m - 1) ** (n - 1), ())
        R3 = dihedral_quandle(3)
        h = quandle_homology(R3, 2)
        oracle = homology_oracle([list(r) for r in R3.table], 2)
        assert (h.free_rank, h.torsion) == oracle
        note["detail"] = f"H2(dihedral-3) = rank {h.free_rank}, torsion {list(h.torsion)}"


# ------------------------------------------------------------------ 5

def test_criterion_05_coloring_oracle(request):
    with criterion(request, 5, "enumerate_colorings equals brute force", limit=60.0) as note:
        quandles = [trivial_quandle(1), load_q("trivial2"), load_q("trivial3"), load_q("dihedral3"),
                    load_q("dihedral4"), load_q("tetrahedral")]
        pairs = 0
        for dname in DIAGRAM_FILES:
            d = load_d(dname)
            for q in quandles:
                assert enumerate_colorings(d, q) == brute_force_colorings(d, q)
                pairs += 1
        assert count_colorings(load_d("trefoil.pd"), load_q("dihedral3")) == 9
        assert count_colorings(load_d("figure8.pd"), load_q("dihedral5")) == 25
        assert count_colorings(load_d("hopf.json"), load_q("trivial2")) == 4
        note["detail"] = f"{len(DIAGRAM_FILES)} diagrams x {len(quandles)} quandles"


# ------------------------------------------------------------------ 6

def test_criterion_06_invariance_fuzz(request):
    with criterion(request, 6, "500 move sequences per (diagram, quandle, cocycle) triple", limit=300.0) as note:
        triples = moves = 0
        failures = []
        for i, dname in enumerate(DIAGRAM_FILES):
            d = load_d(dname)
            for j, (qname, cname) in enumerate(COCYCLE_PAIRS):
                q = load_q(qname)
                report = fuzz(d, q, load_c(cname, q), trials=500, depth=6, seed=100 * i + j)
                triples += 1
                moves += report.moves
                failures += [f"{dname}/{qname}/{cname}: {f}" for f in report.failures]
        assert not failures, failures[:5]
        note["detail"] = f"{triples} triples, {500 * triples} sequences, {moves} moves"


# ------------------------------------------------------------------ 7

def test_criterion_07_coboundary_triviality(request):
    with criterion(request, 7, "all 27 coboundaries on the trefoil give {0: 9}"):
        q = load_q("dihedral3")
        d = load_d("trefoil.gauss")
        for vals in itertools.product(range(3), repeat=3):
            psi = cochain(3, 1, zmod(3), {(i,): v for i, v in enumerate(vals)})
            assert state_sum(d, q, coboundary(q, psi)).as_dict() == {0: 9}


# ------------------------------------------------------------------ 8

def test_criterion_08_cohomologous_invariance(request):
    with criterion(request, 8, "50 coboundary perturbations per fixture cocycle") as note:
        rng = random.Random(8)
        checks = 0
        for qname, cname in COCYCLE_PAIRS + [("dihedral3", "zero_q.json")]:
            q = load_q(qname)
            phi = load_c(cname, q)
            base = {}
            for dname in DIAGRAM_FILES:
                d = load_d(dname)
                cols = enumerate_colorings(d, q)
                base[dname] = (d, cols, state_sum(d, q, phi, colorings=cols))
            for _ in range(50):
                if phi.coeff.mode == "zmod":
                    vals = {(i,): rng.randrange(phi.coeff.m) for i in range(q.order)}
                else:
                    vals = {(i,): Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for i in range(q.order)}
                shifted = phi + coboundary(q, cochain(q.order, 1, phi.coeff, vals))
                for d, cols, ss in base.values():
                    assert state_sum(d, q, shifted, colorings=cols) == ss
                    checks += 1
        note["detail"] = f"{checks} state-sum comparisons"


# ------------------------------------------------------------------ 9

def test_criterion_09_partition_limits(request):
    with criterion(request, 9, "Z(T) limits and the Hopf closed form") as note:
        grid = temperature_grid(0.01, 100, 25, log=True)
        for dname in DIAGRAM_FILES:
            d = load_d(dname)
            for qname in ("dihedral3", "tetrahedral", "trivial2"):
                q = load_q(qname)
                n = count_colorings(d, q)
                zero = state_sum(d, q, zero_cochain(q.order, 2, RATIONAL))
                assert all(z == n for _, z in partition_function(zero, grid).points)
            for qname, cname in RATIONAL_PAIRS:
                q = load_q(qname)
                ss = state_sum(d, q, load_c(cname, q))
                (_, z), = partition_function(ss, [1e6]).points
                assert abs(z - ss.total) <= 1e-6 * ss.total
        hopf_grid = temperature_grid(0.05, 100, 100, log=True)
        q = load_q("trivial2")
        phi = load_c("hopf_psi.json", q)
        worst = 0.0
        for dname, eps in (("hopf.json", -1), ("hopf_positive.json", 1)):
            d = load_d(dname)
            assert set(d.signs) == {eps}
            for T, z in partition_function(state_sum(d, q, phi), hopf_grid).points:
                want = 2 + 2 * math.exp(-eps / T)
                worst = max(worst, abs(z - want) / want)
        assert worst <= 1e-12
        note["detail"] = f"worst Hopf relative error {worst:.1e}"


# ----------------------------------------------------------------- 10

def cli_commands(tmp_path):
    Q = lambda n: fixture_path("quandles", n)  # noqa: E731
    D = lambda n: fixture_path("diagrams", n)  # noqa: E731
    C = lambda n: fixture_path("cochains", n)  # noqa: E731
    q3 = load_q("dihedral3")
    delta = coboundary(q3, cochain(3, 1, zmod(3), {(0,): 1, (1,): 2}))
    delta_path = tmp_path / "delta.json"
    delta_path.write_text(json.dumps(delta.to_json()))
    cmds = []
    for dname in ("trefoil.pd", "figure8.pd", "knot_7_1.json", "torus_3_4.json", "chain3.json"):
        cmds.append(["color", "list", D(dname), Q("tetrahedral.json")])
        cmds.append(["color", "list", D(dname), Q("tetrahedral.json"), "--oracle"])
        cmds.append(["color", "count", D(dname), Q("dihedral3.json")])
    cmds.append(["moves", "fuzz", D("trefoil.gauss"), Q("tetrahedral.json"), C("tetrahedral_z2.json"),
                 "--trials", "30", "--depth", "6", "--seed", "4"])
    cmds.append(["invariant", "state-sum", D("trefoil.gauss"), Q("dihedral3.json"), str(delta_path)])
    cmds.append(["invariant", "multiset", D("figure8.pd"), Q("tetrahedral.json"), C("tetrahedral_z2.json")])
    cmds.append(["invariant", "state-sum", D("chain3.json"), Q("trivial3.json"), C("trivial3_q.json")])
    cmds.append(["invariant", "zt", D("hopf.json"), Q("trivial2.json"), C("hopf_psi.json"),
                 "--tmin", "0.05", "--tmax", "100", "--steps", "100", "--log"])
    cmds.append(["invariant", "zt", D("unknot0.pd"), Q("dihedral3.json"), C("zero_q.json"),
                 "--tmin", "1", "--tmax", "10", "--steps", "10"])
    return cmds


def test_criterion_10_cli_determinism(request, tmp_path):
    with criterion(request, 10, "byte-identical CLI output for 1, 4 and 8 workers") as note:
        cmds = cli_commands(tmp_path)
        for k, argv in enumerate(cmds):
            outputs = []
            for workers in ("1", "4", "8"):
                path = tmp_path / f"out{k}_{workers}"
                assert run(["--workers", workers, "-o", str(path)] + argv) == 0, argv
                outputs.append(path.read_bytes())
            assert outputs[0] == outputs[1] == outputs[2], argv
            assert outputs[0]
        note["detail"] = f"{len(cmds)} commands"


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
