"""Command line: specseq universal | pages | eop | verify.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 window
underflow. Complexes travel as ComplexFile JSON (see dump_complex).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Dict, List, Optional, Tuple

from .cosimplicial import (
    Conormalization,
    ContractError,
    Cosimplicial,
    CosimplicialMap,
    MatrixCosimplicial,
    UniversalExample,
    default_level_cap,
    materialize,
    validate,
    validate_map,
)
from .f2linalg import bits, rank
from .homotopy_orbit import HomotopyOrbit
from .operations import (
    Host,
    cycle_from_vector,
    external_op,
    external_product,
    internal_op,
    iota,
    structure_map,
    universal,
)
from .specseq import SpectralSequence, WindowUnderflow
from .verify import SUITES, run_suite


class UsageError(Exception):
    pass


# -- ComplexFile JSON ------------------------------------------------------------

def _triplets(images, *prefix) -> List[list]:
    """Sparse entries [*prefix, row, col] of a list of column images."""
    return [[*prefix, row, col] for col, v in enumerate(images) for row in bits(v)]


def complex_to_json(Y: MatrixCosimplicial, involution=None, structure=None) -> dict:
    cap = Y.level_cap
    levels, cofaces, codegens = [], [], []
    for p in range(cap + 1):
        dims = Y.dims.get(p, {})
        diff = []
        for q in sorted(dims):
            diff += _triplets(Y.boundary_images(p, q), q)
        levels.append({"degrees": {str(q): dims[q] for q in sorted(dims)}, "diff": sorted(diff)})
        for q in sorted(dims):
            if p < cap:
                for i in range(p + 2):
                    cofaces += _triplets(Y.coface_images(i, p, q), p, i, q)
            for j in range(p):
                codegens += _triplets(Y.codegeneracy_images(j, p, q), p, j, q)
    doc = {"kind": "cosimplicial", "level_cap": cap, "levels": levels,
           "cofaces": sorted(cofaces), "codegens": sorted(codegens)}
    if involution is not None:
        doc["involution"] = sorted(involution)
    if structure is not None:
        doc["structure_map"] = {"images": sorted(structure)}
    return doc


def dump_complex(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def _fill(table: dict, key, n: int, row: int, col: int, nrows: int, what: str) -> None:
    if not (0 <= col < n and 0 <= row < nrows):
        raise UsageError(f"{what} entry {list(key)} [{row}, {col}] is out of range")
    imgs = table.setdefault(key, [0] * n)
    imgs[col] ^= 1 << row


def complex_from_json(doc: dict) -> Tuple[MatrixCosimplicial, Optional[list], Optional[list]]:
    """Parse and validate a ComplexFile document."""
    if doc.get("kind") != "cosimplicial":
        raise UsageError("kind must be 'cosimplicial'")
    cap = doc.get("level_cap")
    if not isinstance(cap, int) or cap < 0:
        raise UsageError("level_cap must be a nonnegative integer")
    levels = doc.get("levels", [])
    if len(levels) != cap + 1:
        raise UsageError(f"expected {cap + 1} levels, got {len(levels)}")
    dims = {p: {int(q): int(n) for q, n in lv.get("degrees", {}).items()} for p, lv in enumerate(levels)}

    def dim(p, q):
        return dims.get(p, {}).get(q, 0)

    diff, cof, cod = {}, {}, {}
    for p, lv in enumerate(levels):
        for q, row, col in lv.get("diff", []):
            _fill(diff, (p, q), dim(p, q), row, col, dim(p, q - 1), "diff")
    for p, i, q, row, col in doc.get("cofaces", []):
        if not (0 <= p < cap and 0 <= i <= p + 1):
            raise UsageError(f"coface [{p}, {i}] is out of range")
        _fill(cof, (p, i, q), dim(p, q), row, col, dim(p + 1, q), "coface")
    for p, j, q, row, col in doc.get("codegens", []):
        if not (1 <= p <= cap and 0 <= j < p):
            raise UsageError(f"codegeneracy [{p}, {j}] is out of range")
        _fill(cod, (p, j, q), dim(p, q), row, col, dim(p - 1, q), "codegeneracy")
    freeze = lambda t: {k: tuple(v) for k, v in t.items()}
    Y = MatrixCosimplicial(dims, freeze(diff), freeze(cof), freeze(cod), cap)
    try:
        validate(Y)
    except ContractError as exc:
        raise UsageError(f"complex fails validation: {exc}")
    inv = doc.get("involution")
    if inv is not None:
        _validate_involution(Y, inv)
    sm = doc.get("structure_map")
    images = None
    if sm is not None:
        images = sm.get("images", [])
        for entry in images:
            if len(entry) != 8:
                raise UsageError("structure_map images are [p, i, qa, ja, qb, jb, q, j]")
            p, i, qa, ja, qb, jb, q, j = entry
            if not (0 <= p <= cap and i >= 0 and ja < dim(p, qa) and jb < dim(p, qb) and j < dim(p, q)):
                raise UsageError(f"structure_map entry {entry} is out of range")
            if i + qa + qb != q:
                raise UsageError(f"structure_map entry {entry} does not preserve degree")
    return Y, inv, images


def involution_map(Y: MatrixCosimplicial, entries: list) -> CosimplicialMap:
    table: Dict[tuple, list] = {}
    for p, q, row, col in entries:
        table.setdefault((p, (q, col)), []).append((q, row))
    return CosimplicialMap(Y, Y, lambda p, lab: table.get((p, lab), []))


def _validate_involution(Y: MatrixCosimplicial, entries: list) -> None:
    for e in entries:
        if len(e) != 4:
            raise UsageError("involution entries are [p, q, row, col]")
        p, q, row, col = e
        if not (0 <= p <= Y.level_cap and 0 <= row < Y.dim(p, q) and 0 <= col < Y.dim(p, q)):
            raise UsageError(f"involution entry {e} is out of range")
    tau = involution_map(Y, entries)
    try:
        validate_map(tau, Y.level_cap)
    except ContractError as exc:
        raise UsageError(f"involution is not a map: {exc}")
    for p in range(Y.level_cap + 1):
        for q in Y.dims.get(p, {}):
            for lab in Y.labels(p, q):
                twice = tau.image_set(p, tau.image(p, lab))
                if sorted(twice) != [lab]:
                    raise UsageError(f"involution does not square to the identity at level {p}")


def structure_from_images(host: Host, images: list) -> CosimplicialMap:
    table: Dict[tuple, list] = {}
    for p, i, qa, ja, qb, jb, q, j in images:
        table.setdefault((p, (i, (qa, ja), (qb, jb))), []).append((q, j))
    return structure_map(host, lambda p, lab: table.get((p, lab), []))


def load_complex(path: str):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read {path}: {exc}")
    return complex_from_json(doc)


# -- sources -------------------------------------------------------------------

def _parse_r(text: str) -> Optional[int]:
    if text == "inf":
        return None
    try:
        r = int(text)
    except ValueError:
        raise UsageError(f"r must be a positive integer or 'inf', got {text!r}")
    if r < 1:
        raise UsageError("r must be at least 1")
    return r


def _check_st(s: int, t: int) -> None:
    if s < 0:
        raise UsageError("s must be nonnegative")
    if t < s:
        raise UsageError(f"t must be at least s (got s={s}, t={t})")


# -- universal -------------------------------------------------------------------

def cmd_universal(args) -> int:
    r = _parse_r(args.r)
    _check_st(args.s, args.t)
    cap = args.cap
    if cap is None:
        if r is None:
            raise UsageError("D_inf needs --cap")
        cap = default_level_cap(r, args.s)
    if cap < 0:
        raise UsageError("--cap must be nonnegative")
    Y = materialize(UniversalExample(r, args.s, args.t), cap)
    text = dump_complex(complex_to_json(Y))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# -- pages -----------------------------------------------------------------------

def _default_window(args, Y: Cosimplicial, rmax: int) -> Tuple[int, int, int, int]:
    if args.universal:
        r, s, t = args.universal
        r = _parse_r(r)
        rr = r if r is not None else rmax
        if args.orbit:
            return 0, 2 * s + 2 * rr, 2 * t - 1, 2 * t + 2 * rr + 1
        return 0, s + rr + 1, max(0, t - 1), t + rr + 1
    cap = Y.level_cap
    phi = max(0, cap - 2 * rmax + 1)
    qs = [q for p in range(cap + 1) for q in Y.dims.get(p, {})]
    qlo, qhi = (min(qs), max(qs)) if qs else (0, -1)
    if args.orbit:
        return 0, phi, 2 * qlo, 2 * qhi + 2
    return 0, phi, qlo, qhi


def compute_pages(B, window, rmax: int) -> List[dict]:
    plo, phi, qlo, qhi = window
    ss = SpectralSequence(B)
    bideg = [(c, q) for c in range(plo, phi + 1) for q in range(qlo, qhi + 1)]
    pages = []
    for r in range(1, rmax + 1):
        page = ss.page(r, bideg)
        dims = {b: page.entries[b].dim for b in bideg}
        ranks = {b: rank(page.differentials[b]) if b in page.differentials else 0 for b in bideg}
        pages.append({"r": r, "dims": dims, "ranks": ranks})
    return pages


def underflow_window(B, window, rmax: int) -> Optional[int]:
    """Largest p_hi <= window's for which the pages can be computed (None if none)."""
    plo, phi, qlo, qhi = window
    for hi in range(phi - 1, plo - 1, -1):
        try:
            compute_pages(B, (plo, hi, qlo, qhi), rmax)
            return hi
        except WindowUnderflow:
            continue
    return None


def render_json(pages: List[dict], meta: dict) -> str:
    out = dict(meta)
    out["pages"] = [
        {"r": pg["r"],
         "dims": [[-c, q, d] for (c, q), d in sorted(pg["dims"].items())],
         "ranks": [[-c, q, k] for (c, q), k in sorted(pg["ranks"].items()) if k]}
        for pg in pages
    ]
    return json.dumps(out, sort_keys=True) + "\n"


def render_csv(pages: List[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r", "p", "q", "dim", "rank"])
    for pg in pages:
        for (c, q), d in sorted(pg["dims"].items()):
            w.writerow([pg["r"], -c, q, d, pg["ranks"][(c, q)]])
    return buf.getvalue()


def render_ascii(pages: List[dict], window) -> str:
    """One grid per page; p = -column grows to the left, q grows upward."""
    plo, phi, qlo, qhi = window
    cols = list(range(phi, plo - 1, -1))
    lines = []
    for pg in pages:
        head = [str(-c) for c in cols]
        width = max([len(h) for h in head] + [len(str(d)) for d in pg["dims"].values()] + [1])
        qw = max(len(str(qlo)), len(str(qhi)), 1)
        lines.append(f"E^{pg['r']}")
        for q in range(qhi, qlo - 1, -1):
            cells = []
            for c in cols:
                d = pg["dims"][(c, q)]
                cells.append((str(d) if d else ".").rjust(width))
            lines.append(f"{str(q).rjust(qw)} | " + " ".join(cells))
        lines.append(" " * qw + " +-" + "-" * ((width + 1) * len(cols)))
        lines.append(" " * qw + "   " + " ".join(h.rjust(width) for h in head))
        lines.append("")
    return "\n".join(lines)


def cmd_pages(args) -> int:
    if bool(args.infile) == bool(args.universal):
        raise UsageError("give exactly one of --in and --universal")
    if args.universal:
        r, s, t = args.universal
        s, t = int(s), int(t)
        args.universal = (r, s, t)
        _check_st(s, t)
        Y: Cosimplicial = UniversalExample(_parse_r(r), s, t)
        desc = f"D({r},{s},{t})"
    else:
        Y, _, _ = load_complex(args.infile)
        desc = args.infile
    if args.orbit:
        Y = HomotopyOrbit(Y)
        desc = f"e({desc})"
    rmax = args.rmax
    if rmax is None:
        if args.universal and _parse_r(args.universal[0]) is not None:
            r = _parse_r(args.universal[0])
            rmax = 2 * r if args.orbit else r + 1
        else:
            rmax = 3
    if rmax < 1:
        raise UsageError("--rmax must be at least 1")
    window = tuple(args.window) if args.window else _default_window(args, Y, rmax)
    plo, phi, qlo, qhi = window
    if plo < 0:
        raise UsageError("p_lo must be nonnegative (columns are s >= 0, bidegree -s)")
    B = Conormalization(Y)
    if plo > phi or qlo > qhi:
        pages = [{"r": r, "dims": {}, "ranks": {}} for r in range(1, rmax + 1)]
    else:
        try:
            pages = compute_pages(B, window, rmax)
        except WindowUnderflow as exc:
            hi = underflow_window(B, window, rmax)
            if hi is None:
                msg = f"window underflow ({exc}); no column window starting at {plo} fits E^{rmax}"
            else:
                msg = (f"window underflow ({exc}); minimal valid window for E^{rmax}: "
                       f"--window {plo} {hi} {qlo} {qhi}")
            print(msg, file=sys.stderr)
            return 3
    meta = {"complex": desc, "window": {"p_lo": plo, "p_hi": phi, "q_lo": qlo, "q_hi": qhi}, "rmax": rmax}
    if args.format == "json":
        sys.stdout.write(render_json(pages, meta))
    elif args.format == "csv":
        sys.stdout.write(render_csv(pages))
    else:
        sys.stdout.write(render_ascii(pages, window) if plo <= phi and qlo <= qhi else "")
    return 0


# -- eop -------------------------------------------------------------------------

def _result(kind: str, m, res) -> dict:
    out = {"kind": kind, "m": m, "page": res.page, "bidegree": list(res.bidegree), "dim": res.dim,
           "coords": [j for j in bits(res.coords)], "zero": res.zero}
    if res.diagnostic is not None:
        d = res.diagnostic
        out["page_r_value"] = {"page": d.page, "coords": [j for j in bits(d.coords)], "zero": d.zero}
    return out


def cmd_eop(args) -> int:
    images = None
    if args.universal:
        r, s, t = args.universal
        _check_st(s, t)
        if r < 2:
            raise UsageError("operations are defined for r >= 2")
        host = universal(r, s, t).host
    else:
        if not args.infile or args.r is None or args.s is None or args.t is None:
            raise UsageError("give --universal r s t, or --in FILE with --r, --s and --t")
        r, s, t = args.r, args.s, args.t
        _check_st(s, t)
        if r < 2:
            raise UsageError("operations are defined for r >= 2")
        Y, _, images = load_complex(args.infile)
        host = Host(Y)
    if args.iota:
        if not args.universal:
            raise UsageError("--iota needs --universal")
        y = iota(r, s, t, host=host)
    else:
        e = host.ss.entry(r, s, t)
        v = 0
        for j in args.coords or []:
            if not 0 <= j < e.dim:
                raise UsageError(f"coordinate {j} out of range: E^{r} at (-{s}, {t}) has dimension {e.dim}")
            v ^= e.reps[j]
        y = cycle_from_vector(host, r, s, t, v, e.layout)
    y.check()
    ms = args.m if args.m else list(range(t - s, t + 3))
    out = {"r": r, "s": s, "t": t, "cycle": {c: list(bits(u)) for c, u in sorted(y.comps.items())},
           "external": [], "internal": []}
    theta = structure_from_images(host, images) if (args.internal and images is not None) else None
    if args.internal and theta is None:
        raise UsageError("--internal needs a complex file with a structure_map")
    if theta is not None:
        qtop = max((q for d in host.Y.dims.values() for q in d), default=0)
        try:
            validate_map(theta, host.Y.level_cap, degree_bound=qtop + 1)
        except ContractError as exc:
            raise UsageError(f"structure_map is not a map e(Y) -> Y: {exc}")
    for m in ms:
        if m < t - s:
            raise UsageError(f"m must be at least t - s = {t - s}")
        out["external"].append(_result("vertical" if m > t else "horizontal", m, external_op(y, m)))
        if theta is not None:
            out["internal"].append(_result("internal", m, internal_op(theta, m, y)))
    if args.product:
        out["product"] = _result("product", None, external_product(y, y))
    sys.stdout.write(json.dumps(out, sort_keys=True) + "\n")
    return 0


# -- verify ----------------------------------------------------------------------

def cmd_verify(args) -> int:
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(list(SUITES) + ['all'])}")
    rep = run_suite(args.suite, seed=args.seed)
    sys.stdout.write(json.dumps(rep, sort_keys=True, default=str) + "\n")
    return 1 if rep["failures"] else 0


# -- entry point -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="specseq", description="Spectral sequences of cosimplicial chain complexes over GF(2).")
    sub = ap.add_subparsers(dest="command", required=True)

    u = sub.add_parser("universal", help="serialize the universal example D_{rst}")
    u.add_argument("r", help="page r >= 1, or 'inf'")
    u.add_argument("s", type=int)
    u.add_argument("t", type=int)
    u.add_argument("--cap", type=int, help="level cap (default 2(s+r)+1; required for inf)")
    u.add_argument("--out", help="output file (default stdout)")
    u.set_defaults(func=cmd_universal)

    p = sub.add_parser("pages", help="dimensions and differential ranks per page")
    p.add_argument("--in", dest="infile", help="ComplexFile JSON")
    p.add_argument("--universal", nargs=3, metavar=("R", "S", "T"))
    p.add_argument("--orbit", action="store_true", help="use e(Y) instead of Y")
    p.add_argument("--rmax", type=int)
    p.add_argument("--window", nargs=4, type=int, metavar=("P_LO", "P_HI", "Q_LO", "Q_HI"),
                   help="columns P_LO..P_HI (bidegree -p) and internal degrees Q_LO..Q_HI")
    p.add_argument("--format", choices=["json", "csv", "ascii"], default="ascii")
    p.set_defaults(func=cmd_pages)

    e = sub.add_parser("eop", help="evaluate external and internal operations on a cycle")
    e.add_argument("--universal", nargs=3, type=int, metavar=("R", "S", "T"))
    e.add_argument("--in", dest="infile", help="ComplexFile JSON (with structure_map for --internal)")
    e.add_argument("--r", type=int)
    e.add_argument("--s", type=int)
    e.add_argument("--t", type=int)
    e.add_argument("--iota", action="store_true", help="use the generating cycle of D_{rst}")
    e.add_argument("--coords", type=int, nargs="*", help="class coordinates in E^r_{-s,t}")
    e.add_argument("--m", type=int, nargs="*", help="operation indices (default t-s .. t+2)")
    e.add_argument("--internal", action="store_true", help="also apply the structure map")
    e.add_argument("--product", action="store_true", help="also report mu_r(y, y)")
    e.set_defaults(func=cmd_eop)

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("suite")
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"specseq: {exc}", file=sys.stderr)
        return 2
    except WindowUnderflow as exc:
        print(f"specseq: window underflow: {exc}", file=sys.stderr)
        return 3
    except ContractError as exc:
        print(f"specseq: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
