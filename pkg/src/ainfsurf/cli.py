"""Command line front end.

    python -m ainfsurf polygon --n 5 --k 3
    python -m ainfsurf surface --genus 3 --k 4
    python -m ainfsurf verify --n 7 --t 5
    python -m ainfsurf sweep --n-max 12
    python -m ainfsurf cup --genus 2 --orientable

Exit status: 0 when every requested check holds, 1 when a verification
fails, 2 for invalid parameters.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .chains import TensorElement
from .polygon import build_polygon, split_defect, split_polygons
from .relation import verify_all
from .report import Report, entry, relation_entries
from .surface import (
    SPECIAL_KINDS,
    SchemeError,
    SurfaceComplex,
    agreement,
    build_special,
    build_surface,
    closed_form_diagonal,
    cup_matrix,
    mod2_homology,
    project,
    scheme_from_word,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _reduce(x: TensorElement, mod2: bool) -> TensorElement:
    return x.mod2() if mod2 else x


def _polygon(args) -> Report:
    t = args.t if args.t is not None else args.n
    poly = build_polygon(args.n, t)
    report = Report("polygon", {"n": args.n, "t": t, "k": args.k, "coefficients": _coeffs(args)})
    cells = poly.cells if args.all_cells else (poly.face,)
    if args.boundary:
        for c in cells:
            report.results.append(entry(c.label, _reduce(poly.boundary(c), args.mod2), label="∂"))
    for c in cells:
        report.results.append(entry(c.label, _reduce(poly.diagonal(args.k, c), args.mod2), k=args.k))
    return report


def _surface_from_args(args) -> SurfaceComplex:
    if args.special:
        return build_special(args.special)
    if args.word:
        if args.t is None:
            raise UsageError("--word needs --t (index of the terminal vertex)")
        return project(scheme_from_word(args.word, args.t))
    if args.genus is None:
        raise UsageError("give --genus, --word or --special")
    return build_surface(args.genus, args.orientable)


def _surface_params(args, surf: SurfaceComplex) -> dict:
    params: dict = {}
    if surf.scheme is not None:
        params.update(genus=surf.scheme.genus, orientable=surf.scheme.orientable, word=str(surf.scheme), t=surf.scheme.t)
    else:
        params["special"] = args.special
    return params


def _surface(args) -> Report:
    surf = _surface_from_args(args)
    params = _surface_params(args, surf)
    params.update(k=args.k, coefficients=_coeffs(args))
    report = Report("surface", params)
    cells = surf.cells if args.all_cells else (surf.top,)
    canonical = surf.scheme is not None and surf.scheme.canonical
    for c in cells:
        report.results.append(entry(c.label, _reduce(surf.projected_diagonal(args.k, c), args.mod2), k=args.k, label="projected"))
    if canonical:
        closed = closed_form_diagonal(args.k, surf.scheme.genus, surf.scheme.orientable)
        for c in cells:
            report.results.append(entry(c.label, _reduce(closed(c), args.mod2), k=args.k, label="closed-form"))
        diff = agreement(surf, args.k, mod2=args.mod2)
        for c in cells:
            report.results.append(
                entry(c.label, diff.get(c, TensorElement()), k=args.k, label="agreement", holds=c not in diff)
            )
    return report


def _verify(args) -> Report:
    if args.n is not None:
        t = args.t if args.t is not None else args.n
        cx = build_polygon(args.n, t)
        params = {"n": args.n, "t": t}
        default_max = args.n + 1
    else:
        cx = _surface_from_args(args)
        params = _surface_params(args, cx)
        default_max = (cx.scheme.n if cx.scheme is not None else 2) + 1
    lo = args.relation_min
    hi = args.relation_max if args.relation_max is not None else default_max
    if lo < 2 or hi < lo:
        raise UsageError(f"relation range must satisfy 2 <= min <= max, got {lo}..{hi}")
    params.update(relations=[lo, hi], coefficients=_coeffs(args))
    report = Report("verify", params)
    for r in verify_all(cx, hi, mod2=args.mod2):
        if r.n < lo:
            continue
        report.results.extend(relation_entries(r))
        if r.reduced_ok is not None:
            top = cx.cells_of_dim(2)[0].label
            report.results.append(entry(top, relation=r.n, label="reduced", holds=r.reduced_ok))
    return report


def sweep_polygon(n: int, t: int) -> list[dict]:
    """All checks for one (n, t): relations, vanishing threshold, split."""
    poly = build_polygon(n, t)
    rows = []
    for r in verify_all(poly, n + 1):
        bad = r.failures()
        defect = r.defects[bad[0]] if bad else TensorElement()
        rows.append(entry("all", defect, relation=r.n, n=n, t=t, holds=r.holds and r.reduced_ok is not False))
    threshold = poly.vanishing_index
    ok = all(bool(poly.diagonal(k, poly.face)) == (k < threshold) for k in range(2, n + 3))
    rows.append(entry(poly.face.label, label="vanishing", n=n, t=t, threshold=threshold, holds=ok))
    if t < n:
        split = split_polygons(n, t)
        for k in range(2, threshold):
            chord, diff = split_defect(split, k)
            # e0 terms and the remainder live in disjoint supports
            rows.append(entry(poly.face.label, chord + diff, k=k, label="split", n=n, t=t, holds=not chord and not diff))
    return rows


def _sweep(args) -> Report:
    if args.n_max < 3:
        raise UsageError("--n-max must be at least 3")
    grid = [(n, t) for n in range(3, args.n_max + 1) for t in range(2, n + 1)]
    report = Report("sweep", {"n_max": args.n_max})
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            chunks = list(pool.map(_sweep_star, grid))
    else:
        chunks = [sweep_polygon(n, t) for n, t in grid]
    for rows in chunks:
        report.results.extend(rows)
    return report


def _sweep_star(nt: tuple[int, int]) -> list[dict]:
    return sweep_polygon(*nt)


def _cup(args) -> Report:
    surf = _surface_from_args(args)
    h = mod2_homology(surf)
    m = cup_matrix(surf)
    params = _surface_params(args, surf)
    report = Report("cup", params)
    report.results.append(
        entry(
            surf.top.label,
            label="cup",
            ranks=list(h.ranks),
            basis=[c.label for c in h.basis[1]],
            matrix=m.tolist(),
        )
    )
    return report


def _coeffs(args) -> str:
    return "Z2" if getattr(args, "mod2", False) else "Z"


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", help="write the report here instead of stdout")


def _add_surface_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--genus", type=int)
    p.add_argument("--orientable", action="store_true")
    p.add_argument("--word", help='boundary word, e.g. "a b A B" (uppercase = inverse)')
    p.add_argument("--special", choices=SPECIAL_KINDS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ainfsurf", description="A-infinity coalgebra structures on polygons and surfaces")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("polygon", help="print Δ_k (and ∂) on an n-gon")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--boundary", action="store_true", help="also print ∂")
    p.add_argument("--all-cells", action="store_true")
    p.add_argument("--mod2", action="store_true")
    _add_format(p)

    p = sub.add_parser("surface", help="projected and closed-form surface diagonals")
    _add_surface_opts(p)
    p.add_argument("--t", type=int, help="terminal vertex for --word")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--all-cells", action="store_true")
    p.add_argument("--mod2", action="store_true")
    _add_format(p)

    p = sub.add_parser("verify", help="check the structure relation")
    p.add_argument("--n", type=int, help="polygon sides (omit to verify a surface)")
    p.add_argument("--t", type=int)
    _add_surface_opts(p)
    p.add_argument("--relation-min", type=int, default=2)
    p.add_argument("--relation-max", type=int)
    p.add_argument("--mod2", action="store_true")
    _add_format(p)

    p = sub.add_parser("sweep", help="full polygon verification grid")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    _add_format(p)

    p = sub.add_parser("cup", help="mod-2 cup product matrix read from Δ2")
    _add_surface_opts(p)
    p.add_argument("--t", type=int, help="terminal vertex for --word")
    _add_format(p)
    return parser


COMMANDS = {"polygon": _polygon, "surface": _surface, "verify": _verify, "sweep": _sweep, "cup": _cup}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if getattr(args, "k", None) is not None and args.k < 2:
            raise UsageError("--k must be at least 2")
        report = COMMANDS[args.command](args)
    except (UsageError, SchemeError, ValueError, KeyError) as exc:
        print(f"ainfsurf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = report.to_json() if args.format == "json" else report.to_text()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK if report.ok else EXIT_FAILED


def main() -> None:
    sys.exit(run())
