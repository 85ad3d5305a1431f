"""Acceptance criteria 1-9. Each test prints one PASS/FAIL line with its
runtime against a pinned budget. All arithmetic is exact, so the tolerance
is equality; the only tolerances are the time budgets below."""

import random
import time
from itertools import product

import pytest

from specseq import operations
from specseq.cosimplicial import Conormalization, UniversalExample, conormalize, universal_example
from specseq.f2linalg import F2Matrix, kernel_basis, rank, solve, subquotient
from specseq.homotopy_orbit import HomotopyOrbit, orbit_chain_complex
from specseq.simplex_chains import betti
from specseq.specseq import SpectralSequence
from specseq.verify import _random_chain_complex, run_suite

BUDGET = {1: 1.0, 2: 5.0, 3: 30.0, 4: 10.0, 5: 60.0, 6: 120.0, 7: 120.0, 8: 120.0, 9: 120.0}


def _fresh():
    operations._UNIVERSAL.clear()


def report(capsys, n, ok, seconds, detail=""):
    ok = ok and seconds < BUDGET[n]
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({seconds:.2f}s, budget {BUDGET[n]:.0f}s){' ' + detail if detail else ''}"
    with capsys.disabled():
        print("\n" + line)
    return ok


def run_suites(names):
    _fresh()
    t0 = time.perf_counter()
    reps = [run_suite(n) for n in names]
    dt = time.perf_counter() - t0
    failures = [f for r in reps for f in r["failures"]]
    cases = sum(r["cases"] for r in reps)
    return reps, failures, cases, dt


def test_criterion_1_skeleton_homology(capsys):
    _, failures, cases, dt = run_suites(["skeleton"])
    assert report(capsys, 1, not failures, dt, f"{cases} cases"), failures


def test_criterion_2_universal_example_pages(capsys):
    _, failures, cases, dt = run_suites(["univexample"])
    assert report(capsys, 2, not failures, dt, f"{cases} cases"), failures[:5]


def test_criterion_3_e1_basis(capsys):
    _, failures, cases, dt = run_suites(["e1basis"])
    assert report(capsys, 3, not failures, dt, f"{cases} cases"), failures[:5]


def test_criterion_4_upsilon_omega(capsys):
    _, failures, cases, dt = run_suites(["upsilon", "omega"])
    assert report(capsys, 4, not failures, dt, f"{cases} cases"), failures[:5]


def test_criterion_5_e2_page(capsys):
    _, failures, cases, dt = run_suites(["e2page"])
    assert report(capsys, 5, not failures, dt, f"{cases} cases"), failures[:5]


def test_criterion_6_differentials(capsys):
    _, failures, cases, dt = run_suites(["differentials", "einf"])
    assert report(capsys, 6, not failures, dt, f"{cases} cases"), failures[:5]


def test_criterion_7_products_and_operations(capsys):
    reps, failures, cases, dt = run_suites(["product", "operations"])
    ops = reps[1]
    enough = ops["cycles"] >= 20 and ops["hosts"] >= 3
    nontrivial = all(v > 0 for v in ops["nontrivial"].values())
    detail = f"{cases} cases, {ops['cycles']} cycles on {ops['hosts']} hosts, nontrivial {ops['nontrivial']}"
    assert report(capsys, 7, not failures and enough and nontrivial, dt, detail), failures[:5]


def test_criterion_8_welldefined_and_sharpness(capsys):
    reps, failures, cases, dt = run_suites(["welldefined", "sharpness"])
    rows = reps[1]["rows"]
    sharp = all(r["before"] == 1 and r["at"] == 0 for r in rows)
    r_values = {p["r"] for p in reps[0]["parts"]}
    detail = f"{cases} cases, sharpness rows {[(r['m'], r['w']) for r in rows]}"
    assert report(capsys, 8, not failures and sharp and r_values == {2, 3}, dt, detail), failures[:5]


# -- criterion 9: property suites ------------------------------------------------

def _span(rows):
    out = {0}
    for r in rows:
        out |= {v ^ r for v in out}
    return out


def _linalg_fuzz(rng, trials=400):
    bad = 0
    for _ in range(trials):
        n, m = rng.randint(0, 4), rng.randint(0, 4)
        M = F2Matrix.from_rows([rng.getrandbits(m) if m else 0 for _ in range(n)], m)
        sp = _span(M.rows)
        bad += rank(M) != len(sp).bit_length() - 1
        ker = {v for v in range(1 << m) if M.apply(v) == 0}
        bad += _span(kernel_basis(M).rows) != ker
        b = rng.getrandbits(n) if n else 0
        x = solve(M, b)
        has = any(M.apply(v) == b for v in range(1 << m))
        bad += (x is not None and M.apply(x) == b) != has
        D = F2Matrix.from_rows([rng.getrandbits(m) if m else 0 for _ in range(rng.randint(0, 3))], m)
        num = F2Matrix.from_rows(M.rows + D.rows, m)
        d, _ = subquotient(num, D)
        bad += d != (len(_span(num.rows)).bit_length() - len(_span(D.rows)).bit_length())
    return bad


def _locality():
    bad = 0
    B = conormalize(universal_example(None, 1, 2))
    ref = SpectralSequence(B)
    for r in range(1, 4):
        for s in range(0, 4):
            for q in range(0, 6):
                a = SpectralSequence(B, window=(0, s + r), method="global").dim(r, s, q)
                b = SpectralSequence(B, window=(0, s + r + 3), method="global").dim(r, s, q)
                bad += not (a == b == ref.dim(r, s, q))
    return bad


def _wcap():
    bad = 0
    rng = random.Random(0)
    for _ in range(20):
        C, _ = _random_chain_complex(rng)
        a, b = betti(orbit_chain_complex(C, 4)), betti(orbit_chain_complex(C, 8))
        bad += any(a.get(n, 0) != b.get(n, 0) for n in range(4))
    Y = UniversalExample(2, 1, 1)
    for M in (2, 3):
        a = SpectralSequence(Conormalization(HomotopyOrbit(Y, M)))
        b = SpectralSequence(Conormalization(HomotopyOrbit(Y, 2 * M)))
        for r, c, q in product((1, 2, 3), range(7), range(2, 2 + M)):
            bad += a.dim(r, c, q) != b.dim(r, c, q)
    return bad


def _drdr():
    bad = 0
    for r0, s0, t0 in [(2, 1, 1), (2, 2, 2), (3, 1, 1)]:
        ss = operations.universal(r0, s0, t0).host.ess
        for page in range(1, 2 * r0 + 1):
            for c in range(0, 2 * s0 + 2 * r0 + 1):
                for q in range(2 * t0 - 1, 2 * t0 + 2 * r0 + 1):
                    first = ss.differential(page, c, q)
                    second = ss.differential(page, c + page, q + page - 1)
                    bad += not (first @ second).is_zero()
    return bad


def test_criterion_9_property_suites(capsys):
    _fresh()
    t0 = time.perf_counter()
    counts = {
        "linalg": _linalg_fuzz(random.Random(9)),
        "locality": _locality(),
        "wcap": _wcap(),
        "drdr": _drdr(),
    }
    dt = time.perf_counter() - t0
    ok = not any(counts.values())
    assert report(capsys, 9, ok, dt, f"failures {counts}"), counts
