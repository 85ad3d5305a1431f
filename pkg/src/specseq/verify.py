"""Checks of the computed spectral sequences against closed-form tables.

Every suite returns a dict {"suite", "cases", "failures", ...}; a failure is a
small dict naming the offending place. Expected values come from counting
(injection words, covering pairs) and never from the spectral sequence code.
"""

from __future__ import annotations

import random
import time
from math import comb
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .cosimplicial import (
    Conormalization,
    Tensor,
    UniversalExample,
    VSquare,
    alexander_whitney,
    conormalize,
    shuffle_map,
    universal_example,
)
from .f2linalg import rank
from .homotopy_orbit import (
    inclusion_on_top_cohomology,
    mayonethree_dims,
    omega_bar,
    omega_tilde_A,
    orbit_chain_complex,
    upsilon,
)
from .operations import (
    Host,
    external_horizontal,
    external_op,
    external_product,
    iota,
    orbit_pushforward,
    random_column_boundary,
    random_cycle,
    random_host,
    random_lower,
    sharpness_example,
    universal,
    welldefinedness_suite,
)
from .simplex_chains import (
    based_words,
    betti,
    chain_complex,
    delta_chains,
    expected_skeleton_homology,
    skeleton,
)
from .specseq import SpectralSequence, total_homology

E_TRIPLES = [(2, 1, 1), (2, 2, 2), (3, 1, 1), (3, 2, 2), (2, 1, 2)]
DIFF_TRIPLES = [(2, 1, 1), (2, 2, 2), (3, 2, 2)]


def _report(name: str, cases: int, failures: list, **extra) -> dict:
    out = {"suite": name, "cases": cases, "failures": failures}
    out.update(extra)
    return out


# -- expected tables -------------------------------------------------------------

def _covering(A: list, B: list, p: int, ordered: bool) -> int:
    full = (1 << (p + 1)) - 1
    if ordered:
        return sum(1 for i, a in enumerate(A) for b in A[i + 1:] if a | b == full)
    return sum(1 for a in A for b in B if a | b == full)


def e1_families(r: int, s: int, t: int, cmax: int) -> Dict[str, Dict[int, Tuple[int, int]]]:
    """Finite E^1 families of e(D_{rst}) by counting: name -> {col: (q, count)}.

    eps_eps: pairs eps < eps' of based [s] -> [p] covering [p], at q = 2t;
    eps_gam: eps based [s] -> [p], gam based [s+r] -> [p] covering, q = 2t+r-1;
    gam_gam: pairs gam < gam' of based [s+r] -> [p] covering, q = 2t+2r-2.
    """
    out = {"eps_eps": {}, "eps_gam": {}, "gam_gam": {}}
    for p in range(cmax + 1):
        hs, hsr = based_words(s, p), based_words(s + r, p)
        n = _covering(hs, hs, p, True)
        if n:
            out["eps_eps"][p] = (2 * t, n)
        n = _covering(hs, hsr, p, False)
        if n:
            out["eps_gam"][p] = (2 * t + r - 1, n)
        n = _covering(hsr, hsr, p, True)
        if n:
            out["gam_gam"][p] = (2 * t + 2 * r - 2, n)
    return out


FAMILY_RANGES = {
    "eps_eps": lambda r, s: (s + 1, 2 * s),
    "eps_gam": lambda r, s: (s + r, 2 * s + r),
    "gam_gam": lambda r, s: (s + r + 1, 2 * s + 2 * r),
}


def e1_expected(r: int, s: int, t: int, cols: Iterable[int], qs: Iterable[int]) -> Dict[Tuple[int, int], int]:
    cols, qs = list(cols), list(qs)
    fam = e1_families(r, s, t, max(cols))
    out = {}
    for c in cols:
        for q in qs:
            n = 0
            if c == s and q >= 2 * t:
                n += 1
            if c == s + r and q >= 2 * t + 2 * r - 2:
                n += 1
            for f in fam.values():
                if c in f and f[c][0] == q:
                    n += f[c][1]
            out[(c, q)] = n
    return out


def e2_expected(r: int, s: int, t: int, c: int, q: int) -> int:
    if c == s and q >= 2 * t:
        return 1
    if s + 1 <= c <= 2 * s and q == 2 * t:
        return 1
    if c == s + r and q >= 2 * t + 2 * r - 2:
        return 1
    if c == 2 * s + r and q == 2 * t + r - 1:
        return 1
    if s + r + 1 <= c <= 2 * s + 2 * r and q == 2 * t + 2 * r - 2:
        return 1
    return 0


def nontrivial_differentials(r: int, s: int, t: int, qmax: int) -> List[Tuple[int, int, int]]:
    """(page, col, q) of the rank-one differentials of e(D_{rst}), q <= qmax."""
    out = [(r, 2 * s + r, 2 * t + r - 1)]
    out += [(2 * r - 1, c, 2 * t) for c in range(s + 1, 2 * s + 1)]
    out += [(2 * r - 1 - b, s, 2 * t + b) for b in range(0, r - 1)]
    out += [(r, s, q) for q in range(2 * t + r - 1, qmax + 1)]
    return [d for d in out if d[2] <= qmax]


def vanishing_table(r: int, s: int, t: int, qmax: int) -> List[Tuple[int, int, int]]:
    """(col, q, page) where e(D_{rst}) has a K on page-1 and 0 on page."""
    top = 2 * t + 2 * r - 2
    out = [(c, 2 * t, 2 * r) for c in range(s, 2 * s + 1)]
    out += [(s, v, 2 * t + 2 * r - v) for v in range(2 * t + 1, 2 * t + r)]
    out += [(s, q, r + 1) for q in range(2 * t + r, qmax + 1)]
    out.append((2 * s + 2 * r, top, r + 1))
    out += [(c, top, 2 * r) for c in range(2 * r + s - 1, 2 * s + 2 * r)]
    out += [(c, top, c - s + 1) for c in range(s + r, s + 2 * r - 1)]
    out += [(s + r, q, r + 1) for q in range(top + 1, qmax + 1)]
    out.append((2 * s + r, 2 * t + r - 1, r + 1))
    return [x for x in out if x[1] <= qmax]


def eD_window(r: int, s: int, t: int, extra: int = 2) -> Tuple[range, range]:
    return range(0, 2 * s + 2 * r + 1), range(2 * t - 1, 2 * t + 2 * r + extra)


# -- suites ----------------------------------------------------------------------

def suite_skeleton(seed: int = 0) -> dict:
    cases, failures = 0, []
    for p in range(7):
        C = delta_chains(p)
        for t in range(p + 1):
            cases += 1
            got = {q: d for q, d in betti(skeleton(C, t)).items() if d}
            want = expected_skeleton_homology(p, t)
            if got != want:
                failures.append({"p": p, "t": t, "got": got, "want": want})
    return _report("skeleton", cases, failures)


def suite_univexample(seed: int = 0) -> dict:
    cases, failures = 0, []
    for r in (2, 3, 4):
        for s in (0, 1, 2):
            for t in range(s, 4):
                S = SpectralSequence(conormalize(UniversalExample(r, s, t)))
                bideg = [(c, q) for c in range(0, s + r + 3) for q in range(max(0, t - 2), t + r + 3)]
                want = {b: 0 for b in bideg}
                want[(s, t)] = want[(s + r, t + r - 1)] = 1
                for page in range(1, r + 2):
                    cases += 1
                    got = {b: S.dim(page, *b) for b in bideg}
                    exp = want if page <= r else {b: 0 for b in bideg}
                    bad = {f"{b}": got[b] for b in bideg if got[b] != exp[b]}
                    if bad:
                        failures.append({"r": r, "s": s, "t": t, "page": page, "bad": bad})
    for s, t in [(0, 0), (0, 2), (1, 1), (1, 3), (2, 2), (2, 3)]:
        cases += 1
        D = conormalize(universal_example(None, s, t))
        h = total_homology(D, (0, t + 4), (t - s - 3, t - s + 3))
        want = {n: int(n == t - s) for n in h}
        if h != want:
            failures.append({"r": "inf", "s": s, "t": t, "tot": h})
    return _report("univexample", cases, failures)


def suite_e1basis(seed: int = 0, triples=E_TRIPLES) -> dict:
    cases, failures = 0, []
    for r, s, t in triples:
        ss = universal(r, s, t).host.ess
        cols, qs = eD_window(r, s, t)
        want = e1_expected(r, s, t, cols, qs)
        for (c, q), n in want.items():
            cases += 1
            got = ss.dim(1, c, q)
            if got != n:
                failures.append({"r": r, "s": s, "t": t, "col": c, "q": q, "got": got, "want": n})
        for name, f in e1_families(r, s, t, 2 * s + 2 * r + 2).items():
            cases += 1
            lo, hi = FAMILY_RANGES[name](r, s)
            got = (min(f), max(f)) if f else None
            if got != (lo, hi) or sorted(f) != list(range(lo, hi + 1)):
                failures.append({"r": r, "s": s, "t": t, "family": name, "cols": sorted(f),
                                 "want": [lo, hi]})
    return _report("e1basis", cases, failures)


def _random_chain_complex(rng: random.Random, dmax: int = 3):
    """A small complex: a few cycles and a few acyclic pairs."""
    labels: Dict[int, list] = {}
    pairs = {}
    for j in range(rng.randint(1, 4)):
        q = rng.randint(0, 2)
        labels.setdefault(q, []).append(("z", j))
    for j in range(rng.randint(0, 2)):
        q = rng.randint(1, 2)
        labels.setdefault(q, []).append(("u", j))
        labels.setdefault(q - 1, []).append(("v", j))
        pairs[("u", j)] = ("v", j)
    C = chain_complex(labels, lambda lab: [pairs[lab]] if lab in pairs else [])
    K = {}
    for q, labs in labels.items():
        n = sum(1 for lab in labs if lab[0] == "z")
        if n:
            K[q] = n
    return C, K


def suite_mayonethree(seed: int = 0, samples: int = 12) -> dict:
    rng = random.Random(seed)
    cases, failures = 0, []
    M = 6
    for k in range(samples):
        C, K = _random_chain_complex(rng)
        got = betti(orbit_chain_complex(C, M))
        want = mayonethree_dims(K, M - 1)
        for n in range(M):
            cases += 1
            if got.get(n, 0) != want[n]:
                failures.append({"sample": k, "K": K, "n": n, "got": got.get(n, 0), "want": want[n]})
    return _report("mayonethree", cases, failures)


def suite_upsilon(seed: int = 0, smax: int = 4) -> dict:
    cases, failures = 0, []
    for s in range(smax + 1):
        for s2 in range(smax + 1):
            cases += 1
            U = upsilon(s, s2)
            U.check()
            got = {p: d for p, d in U.cohomology_dims().items() if d}
            if got != {s + s2: 1}:
                failures.append({"s": s, "s2": s2, "got": got})
    return _report("upsilon", cases, failures)


def suite_omega(seed: int = 0, smax: int = 4) -> dict:
    cases, failures = 0, []
    for s in range(smax + 1):
        cases += 3
        Ob = omega_bar(s)
        Ob.check()
        got = {p: d for p, d in Ob.cohomology_dims().items() if d}
        want = {p: 1 for p in range(s, 2 * s + 1)}
        if got != want:
            failures.append({"complex": "omega_bar", "s": s, "got": got, "want": want})
        Ot, A = omega_tilde_A(s)
        got = {p: d for p, d in A.cohomology_dims().items() if d}
        want = {p: 1 for p in range(s + 1, 2 * s + 1)}
        if got != want:
            failures.append({"complex": "A", "s": s, "got": got, "want": want})
        got = {p: d for p, d in Ot.cohomology_dims().items() if d}
        want = {0: 1} if s == 0 else {p: 1 for p in range(s + 2, 2 * s + 1)}
        if got != want:
            failures.append({"complex": "omega_tilde", "s": s, "got": got, "want": want})
        cases += 1
        tags = inclusion_on_top_cohomology(s)
        if any(tags):
            failures.append({"map": "upsilonA", "s": s, "images": tags})
    return _report("omega", cases, failures)


def suite_e2page(seed: int = 0, triples=E_TRIPLES) -> dict:
    cases, failures = 0, []
    for r, s, t in triples:
        ss = universal(r, s, t).host.ess
        cols, qs = eD_window(r, s, t)
        for c in cols:
            for q in qs:
                cases += 1
                got, want = ss.dim(2, c, q), e2_expected(r, s, t, c, q)
                if got != want:
                    failures.append({"r": r, "s": s, "t": t, "col": c, "q": q, "got": got, "want": want})
    for s, t in [(0, 0), (1, 1), (1, 2), (2, 2)]:
        ss = Host(UniversalExample(1, s, t)).ess
        for c in range(0, 2 * s + 3):
            for q in range(2 * t - 1, 2 * t + 4):
                cases += 1
                got = ss.dim(2, c, q)
                if got:
                    failures.append({"r": 1, "s": s, "t": t, "col": c, "q": q, "got": got, "want": 0})
    return _report("e2page", cases, failures)


def suite_differentials(seed: int = 0, triples=DIFF_TRIPLES) -> dict:
    cases, failures = 0, []
    for r, s, t in triples:
        ss = universal(r, s, t).host.ess
        cols, qs = eD_window(r, s, t)
        qmax = max(qs)
        listed = set(nontrivial_differentials(r, s, t, qmax))
        for page in range(2, 2 * r):
            for c in cols:
                for q in qs:
                    if q + page - 1 > qmax or c + page > max(cols):
                        continue
                    cases += 1
                    rk = rank(ss.differential(page, c, q))
                    want = int((page, c, q) in listed)
                    if rk != want:
                        failures.append({"r": r, "s": s, "t": t, "page": page, "col": c, "q": q,
                                         "rank": rk, "want": want})
        for c, q, w in vanishing_table(r, s, t, qmax):
            cases += 1
            before, at = ss.dim(w - 1, c, q), ss.dim(w, c, q)
            if (before, at) != (1, 0):
                failures.append({"r": r, "s": s, "t": t, "col": c, "q": q, "page": w,
                                 "before": before, "at": at})
    return _report("differentials", cases, failures)


def suite_einf(seed: int = 0, triples=DIFF_TRIPLES) -> dict:
    cases, failures = 0, []
    for r, s, t in triples:
        ss = universal(r, s, t).host.ess
        cols, qs = eD_window(r, s, t)
        for c in cols:
            for q in qs:
                cases += 1
                d = ss.dim(2 * r, c, q)
                if d:
                    failures.append({"r": r, "s": s, "t": t, "col": c, "q": q, "dim": d})
    for s, t in [(0, 0), (1, 1), (1, 2), (2, 3)]:
        cases += 1
        S = SpectralSequence(conormalize(universal_example(None, s, t)), window=(0, 12))
        _, dims = S.stable_page([(c, q) for c in range(0, s + 4) for q in range(0, t + 5)])
        got = {}
        for (c, q), d in dims.items():
            if d:
                got[q - c] = got.get(q - c, 0) + d
        if got != {t - s: 1}:
            failures.append({"r": "inf", "s": s, "t": t, "einf_by_degree": got})
    return _report("einf", cases, failures)


def _nabla_aw(X, Y, pmax: int, qspan: int) -> List[dict]:
    CX, CY = Conormalization(X), Conormalization(Y)
    CXY = Conormalization(Tensor(X, Y))
    aw = alexander_whitney(CX, CY, CXY)
    nab = shuffle_map(CXY, CX, CY)
    bad = []
    for p in range(pmax + 1):
        lo, _ = aw.source.degree_range(p)
        for q in range(lo, lo + qspan + 1):
            n = len(aw.source.basis(p, q))
            for j in range(n):
                v = nab.apply(p, q, aw.apply(p, q, 1 << j))
                if v != 1 << j:
                    bad.append({"X": repr(X), "Y": repr(Y), "p": p, "q": q, "j": j})
    return bad


def suite_product(seed: int = 0) -> dict:
    rng = random.Random(seed)
    cases, failures = 0, []
    pairs = [(UniversalExample(2, 1, 1), UniversalExample(2, 1, 1)),
             (UniversalExample(2, 1, 1), universal_example(None, 0, 0)),
             (VSquare(1, 1), UniversalExample(2, 0, 1)),
             (UniversalExample(3, 1, 2), UniversalExample(1, 1, 1))]
    for X, Y in pairs:
        cases += 1
        failures += _nabla_aw(X, Y, 4, 3)
    for r, s, t in [(2, 1, 1), (3, 1, 2), (2, 2, 2)]:
        cases += 1
        y = universal(r, s, t).iota()
        res = external_product(y, y)
        if res.zero:
            failures.append({"check": "mu(iota, iota) != 0", "r": r, "s": s, "t": t})
    for k in range(6):
        r, s, t = rng.choice([(2, 1, 1), (2, 1, 2), (3, 1, 1)])
        host = random_host(rng, r, s, t)
        x, y = random_cycle(host, r, s, t, rng), random_cycle(host, r, s, t, rng)
        cases += 1
        if external_product(x, y).coords != external_product(y, x).coords:
            failures.append({"check": "commutative", "host": repr(host.Y)})
    return _report("product", cases, failures)


def suite_operations(seed: int = 0, hosts: int = 4, samples: int = 6) -> dict:
    """preQ^{t-s} = mu(y, y), additivity, and vanishing on lower-filtration
    and dF samples, on random hosts."""
    rng = random.Random(seed)
    cases, failures = 0, []
    triples = [(2, 1, 1), (2, 1, 2), (3, 1, 1), (2, 2, 2)]
    tested = 0
    nontrivial = {"cycles": 0, "squares": 0, "lower": 0, "dF": 0}
    for h in range(hosts):
        r, s, t = triples[h % len(triples)]
        host = random_host(rng, r, s, t, boundaries=True)
        for k in range(samples):
            y = random_cycle(host, r, s, t, rng)
            z = random_cycle(host, r, s, t, rng)
            tested += 1
            cases += 1
            sq = external_horizontal(y, t - s)
            mu = external_product(y, y)
            nontrivial["cycles"] += not y.is_zero()
            nontrivial["squares"] += not mu.zero
            if sq.coords != mu.coords:
                failures.append({"check": "preQ^{t-s} = mu", "host": repr(host.Y), "sample": k})
            py, pz, pyz = orbit_pushforward(y), orbit_pushforward(z), orbit_pushforward(y + z)
            for m in (t - s, t, t + 1):
                cases += 1
                a = external_op(y, m, push=py).coords ^ external_op(z, m, push=pz).coords
                if a != external_op(y + z, m, push=pyz).coords:
                    failures.append({"check": "additive", "host": repr(host.Y), "sample": k, "m": m})
            low = random_lower(host, r, s, t, rng)
            col = random_column_boundary(host, r, s, t, rng)
            for name, b in (("lower", low), ("dF", col)):
                nontrivial[name] += not b.is_zero()
                pb = orbit_pushforward(b)
                for m in (t - s, t, t + 1):
                    cases += 1
                    if not external_op(b, m, push=pb).zero:
                        failures.append({"check": f"vanishes on {name}", "host": repr(host.Y),
                                         "sample": k, "m": m})
    return _report("operations", cases, failures, cycles=tested, hosts=hosts, nontrivial=nontrivial)


def suite_welldefined(seed: int = 0) -> dict:
    cases, failures, parts = 0, [], []
    for r, s, t in [(2, 1, 1), (2, 1, 2), (3, 2, 2)]:
        rep = welldefinedness_suite(r, s, t, seed=seed)
        cases += rep["cases"]
        failures += [dict(f, r=r, s=s, t=t) for f in rep["failures"]]
        parts.append({"r": r, "s": s, "t": t, "cases": rep["cases"]})
    return _report("welldefined", cases, failures, parts=parts)


def suite_sharpness(seed: int = 0) -> dict:
    rep = sharpness_example(3, 2)
    rows = rep["rows"]
    return _report("sharpness", 2 * len(rows), rep["failures"], r=3, s=2, t=2, rows=rows)


SUITES: Dict[str, Callable[..., dict]] = {
    "skeleton": suite_skeleton,
    "univexample": suite_univexample,
    "e1basis": suite_e1basis,
    "mayonethree": suite_mayonethree,
    "upsilon": suite_upsilon,
    "omega": suite_omega,
    "e2page": suite_e2page,
    "differentials": suite_differentials,
    "einf": suite_einf,
    "product": suite_product,
    "operations": suite_operations,
    "welldefined": suite_welldefined,
    "sharpness": suite_sharpness,
}


def run_suite(name: str, seed: int = 0) -> dict:
    if name == "all":
        parts = []
        for key in SUITES:
            parts.append(run_suite(key, seed))
        failures = [dict(f, suite=p["suite"]) for p in parts for f in p["failures"]]
        return _report("all", sum(p["cases"] for p in parts), failures,
                       suites={p["suite"]: {"cases": p["cases"], "failures": len(p["failures"]),
                                            "seconds": p["seconds"]} for p in parts})
    if name not in SUITES:
        raise KeyError(name)
    t0 = time.perf_counter()
    rep = SUITES[name](seed=seed)
    rep["seconds"] = round(time.perf_counter() - t0, 3)
    return rep
