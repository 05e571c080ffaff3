"""
Command-line interface.

Exit codes: 2 for malformed input, 1 for IndexMismatch / SingularMatrix /
PeriodMismatch / BandTooNarrow, 0 otherwise (verdicts are data; only
``member --strict`` turns an undetermined verdict into exit 1).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .affine_perm import AffinePermutation, dominates, rank_fn
from .diagram import EssentialBox, essential_fundamental_domain
from .errors import BandTooNarrow, BoxNotEssential, IndexMismatch, PeriodMismatch, ResidueCollision, SingularMatrix
from .harness import CrosscheckConfig, crosscheck_run, write_outputs
from .laurent import LaurentMatrix, perm_to_matrix
from .lattice_oracle import opposite_cell_of, oracle_dim, oracle_membership, oracle_table
from .rank_engine import MembershipReport, emit_generators, theorem_membership_test
from .render import ascii_diagram, default_window, diagram_figure, save_figure
from .sampler import Instance, SampleConfig, make_instance, random_affine_perm, rng_for
from .schemas import SCHEMAS, validate
from .unfold import dump_window, window

log = logging.getLogger("affschub")


class InputError(ValueError):
    pass


def parse_window(text: str) -> AffinePermutation:
    try:
        return AffinePermutation.parse(text)
    except ResidueCollision:
        raise
    except (ValueError, json.JSONDecodeError) as exc:
        raise InputError(f"bad window {text!r}: {exc}") from exc


def parse_matrix(text: str) -> LaurentMatrix:
    """A JSON file, inline JSON, ``identity:N`` or ``perm:[w1,...,wn]``."""
    text = text.strip()
    try:
        if text.startswith("identity:"):
            return LaurentMatrix.identity(int(text.split(":", 1)[1]))
        if text.startswith("perm:"):
            return perm_to_matrix(AffinePermutation.parse(text.split(":", 1)[1]))
        obj = json.loads(text) if text.startswith("{") else json.loads(Path(text).read_text())
        return LaurentMatrix.from_json(obj)
    except (OSError, KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad matrix {text!r}: {exc}") from exc


def parse_range(text: str) -> range:
    try:
        a, b = (int(x) for x in text.split(":"))
    except ValueError as exc:
        raise InputError(f"ranges are written lo:hi, got {text!r}") from exc
    if b < a:
        raise InputError(f"empty range {text!r}")
    return range(a, b + 1)


def _emit(args, obj, text: str | None = None) -> None:
    if args.format in (None, "json") or text is None:
        print(json.dumps(obj))
    else:
        print(text)


def cmd_ess(args):
    w = parse_window(args.window)
    boxes = [b.to_json() for b in essential_fundamental_domain(w)]
    text = "\n".join(f"({b['i']},{b['j']})  l_min={b['l_min']}  r_target={b['r_target']}" for b in boxes)
    _emit(args, boxes, text or "(empty)")


def cmd_rank(args):
    w = parse_window(args.window)
    rows = parse_range(args.rows) if args.rows else default_window(w)
    cols = parse_range(args.cols) if args.cols else default_window(w)
    table = [[rank_fn(w, i, j) for j in cols] for i in rows]
    width = max(len(str(x)) for x in [*rows, *cols, *(v for r in table for v in r)])
    lines = [" " * (width + 1) + " ".join(str(j).rjust(width) for j in cols)]
    lines += [str(i).rjust(width) + " " + " ".join(str(v).rjust(width) for v in r) for i, r in zip(rows, table)]
    _emit(args, {"rows": [rows[0], rows[-1]], "cols": [cols[0], cols[-1]], "table": table}, "\n".join(lines))


def cmd_bruhat(args):
    u, w = parse_window(args.u), parse_window(args.w)
    result = dominates(u, w, exhaustive=args.exhaustive)
    _emit(args, {"u": u.to_json(), "w": w.to_json(), "dominates": result}, str(result).lower())


def cmd_unfold(args):
    M = parse_matrix(args.matrix)
    rows = parse_range(args.rows) if args.rows else range(1 - M.n, 2 * M.n + 1)
    cols = parse_range(args.cols) if args.cols else range(1 - M.n, 2 * M.n + 1)
    data = [[str(x) for x in r] for r in window(M, rows, cols)]
    _emit(args, {"rows": [rows[0], rows[-1]], "cols": [cols[0], cols[-1]], "data": data},
          dump_window(M, rows, cols))


def cmd_member(args):
    w = parse_window(args.window)
    M = parse_matrix(args.matrix)
    report = theorem_membership_test(M, w, args.lmax, with_oracle=args.oracle)
    lines = [f"verdict: {report.verdict}"]
    for b in report.boxes:
        s = b.search
        lines.append(f"  box ({b.box.i},{b.box.j}) target {s.target}: {s.outcome}"
                     + (f" at l={s.l_witness}" if s.reached else f" (best {s.best_value}, l_max {s.l_max})"))
    if report.oracle_verdict is not None:
        lines.append(f"oracle: {'member' if report.oracle_verdict else 'non-member'}")
    _emit(args, report.to_json(), "\n".join(lines))
    if args.strict and not report.certified:
        return 1
    return 0


def cmd_oracle(args):
    M = parse_matrix(args.matrix)
    if args.i is not None or args.j is not None:
        if args.i is None or args.j is None:
            raise InputError("--i and --j go together")
        d = oracle_dim(M, args.i, args.j)
        _emit(args, {"i": args.i, "j": args.j, "d": d}, str(d))
        return
    if args.cell:
        u = opposite_cell_of(M, args.band)
        _emit(args, {"u": u.to_json()}, str(u))
        return
    if args.window:
        w = parse_window(args.window)
        member = oracle_membership(M, w, exhaustive=args.exhaustive)
        boxes = [{**b.to_json(), "d": oracle_dim(M, b.i, b.j)} for b in essential_fundamental_domain(w)]
        _emit(args, {"w": w.to_json(), "member": member, "boxes": boxes}, "member" if member else "non-member")
        return
    band = args.band if args.band is not None else 2 * M.n
    span = range(1 - band, M.n + band + 1)
    table = oracle_table(M, span, span)
    grid = [[table[i, j] for j in span] for i in span]
    width = max(len(str(x)) for x in [*span, *(v for r in grid for v in r)])
    lines = [" " * (width + 1) + " ".join(str(j).rjust(width) for j in span)]
    lines += [str(i).rjust(width) + " " + " ".join(str(v).rjust(width) for v in r) for i, r in zip(span, grid)]
    _emit(args, {"rows": [span[0], span[-1]], "cols": [span[0], span[-1]], "table": grid}, "\n".join(lines))


def cmd_generators(args):
    w = parse_window(args.window)
    key_range = parse_matrix(args.matrix).key_range if args.matrix else (0, 0)
    fam = emit_generators(w, args.i, args.j, args.l, args.cap, key_range)
    text = (f"{fam['count']} minors of size {fam['minor_size']} in rows {fam['rows']} x cols {fam['cols']}"
            + (" (truncated)" if fam["truncated"] else ""))
    _emit(args, fam, text)


def cmd_sample(args):
    seed = args.seed or 0
    if args.window:
        w = parse_window(args.window)
    else:
        base = SampleConfig(args.n, args.k, seed, args.degree_bound, args.coeff_bound, args.spread)
        w = random_affine_perm(base, rng_for(base, "w"))
    cfg = SampleConfig(w.n, w.index, seed, args.degree_bound, args.coeff_bound, args.spread)
    inst = make_instance(w, cfg, identity_factors=args.identity_factors)
    _emit(args, inst.to_json())


def cmd_crosscheck(args):
    cfg = CrosscheckConfig(
        trials=args.trials, n=args.n, k=args.k, seed=args.seed or 0, degree_bound=args.degree_bound,
        coeff_bound=args.coeff_bound, spread=args.spread, w_per_instance=args.w_per_instance,
        identity_factors=args.identity_factors, l_max=args.lmax, jobs=args.jobs,
    )
    records, summary, repros = crosscheck_run(cfg)
    if args.out:
        paths = write_outputs(args.out, records, summary, repros, figure=not args.no_figure)
        summary = {**summary, "outputs": paths}
    else:
        for rec in records:
            print(json.dumps(rec, sort_keys=True))
    text = (f"records {summary['records']}  agree {summary['agree']}  discrepancies {summary['discrepancies']}"
            f"  strict violations {summary['strict_violations']}  pinned ok {summary['pinned']['ok']}")
    _emit(args, summary, text)


def cmd_render(args):
    w = parse_window(args.window)
    rows = parse_range(args.rows) if args.rows else None
    cols = parse_range(args.cols) if args.cols else None
    fmt = args.format or "text"
    if fmt in ("svg", "png"):
        data = save_figure(diagram_figure(w, rows, cols), args.out, fmt)
        if data is not None:
            if fmt == "png":
                raise InputError("png output needs --out")
            sys.stdout.write(data.decode())
        return
    art = ascii_diagram(w, rows, cols)
    if fmt == "json":
        print(json.dumps({"w": w.to_json(), "diagram": art.splitlines()}))
    elif args.out:
        Path(args.out).write_text(art + "\n")
    else:
        print(art)


def _plain(doc):
    return doc


# kind -> (parse, emit); records and generator families stay plain dicts
CODECS = {
    "permutation": (AffinePermutation.from_json, lambda w: w.to_json()),
    "matrix": (LaurentMatrix.from_json, lambda M: M.to_json()),
    "essential_box": (EssentialBox.from_json, lambda b: b.to_json()),
    "membership_report": (MembershipReport.from_json, lambda r: r.to_json()),
    "crosscheck_record": (_plain, _plain),
    "generators": (_plain, _plain),
    "instance": (Instance.from_json, lambda x: x.to_json()),
}


def cmd_validate(args):
    """Schema-check, parse and re-emit a document, a JSON list of them, or JSON lines."""
    import jsonschema
    text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
    try:
        docs = [json.loads(line) for line in text.splitlines() if line.strip()] if args.lines else json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"bad JSON: {exc}") from exc
    single = not isinstance(docs, list)
    if single:
        docs = [docs]
    parse, emit = CODECS[args.kind]
    out = []
    for doc in docs:
        try:
            validate(doc, args.kind)
            out.append(emit(parse(doc)))
        except (jsonschema.ValidationError, KeyError, TypeError) as exc:
            raise InputError(f"invalid {args.kind}: {getattr(exc, 'message', exc)}") from exc
    if args.lines:
        for doc in out:
            print(json.dumps(doc, sort_keys=True))
    else:
        print(json.dumps(out[0] if single else out, sort_keys=True))


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand; defaults are
    # filled in by main() so a subparser never clobbers an earlier value
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--format", choices=["json", "text", "svg", "png"],
                        help="json unless stated (render defaults to text)")
    common.add_argument("--seed", type=int)
    common.add_argument("--lmax", type=int, help="cap on the box width search")
    common.add_argument("--band", type=int, help="half-width of oracle bands")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="affschub", parents=[common],
                                description="Essential sets and Schubert conditions for affine flags.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=func)
        return sp

    sp = add("ess", cmd_ess, "essential boxes with l_min and r_target")
    sp.add_argument("--window", required=True)

    sp = add("rank", cmd_rank, "rank function table")
    sp.add_argument("--window", required=True)
    sp.add_argument("--rows")
    sp.add_argument("--cols")

    sp = add("bruhat", cmd_bruhat, "rank-function dominance of u over w")
    sp.add_argument("--u", required=True)
    sp.add_argument("--w", required=True)
    sp.add_argument("--exhaustive", action="store_true")

    sp = add("unfold", cmd_unfold, "dump a window of the unfolded matrix")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--rows")
    sp.add_argument("--cols")

    sp = add("member", cmd_member, "essential-box minor test")
    sp.add_argument("--window", required=True)
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--strict", action="store_true")
    sp.add_argument("--oracle", action="store_true", help="also compute the lattice verdict")

    sp = add("oracle", cmd_oracle, "lattice dimensions, membership and opposite cell")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--window")
    sp.add_argument("--i", type=int)
    sp.add_argument("--j", type=int)
    sp.add_argument("--cell", action="store_true")
    sp.add_argument("--exhaustive", action="store_true")

    sp = add("generators", cmd_generators, "minor family for one essential box")
    sp.add_argument("--window", required=True)
    sp.add_argument("--i", type=int, required=True)
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--cap", type=int, default=50)
    sp.add_argument("--matrix")

    for name, func, help in (("sample", cmd_sample, "sample one instance"),
                             ("crosscheck", cmd_crosscheck, "minor test vs lattice oracle on samples")):
        sp = add(name, func, help)
        sp.add_argument("--n", type=int, default=3)
        sp.add_argument("--k", type=int, default=0)
        sp.add_argument("--degree-bound", type=int, default=1)
        sp.add_argument("--coeff-bound", type=int, default=2)
        sp.add_argument("--spread", type=int, default=1)
        sp.add_argument("--identity-factors", action="store_true")
        if name == "sample":
            sp.add_argument("--window")
        else:
            sp.add_argument("--trials", type=int, default=10)
            sp.add_argument("--w-per-instance", type=int, default=3)
            sp.add_argument("--jobs", type=int, default=1)
            sp.add_argument("--out")
            sp.add_argument("--no-figure", action="store_true")

    sp = add("validate", cmd_validate, "schema-check, parse and re-emit JSON documents")
    sp.add_argument("--kind", required=True, choices=sorted(SCHEMAS))
    sp.add_argument("--lines", action="store_true", help="input is JSON lines")
    sp.add_argument("input", help="file path or - for stdin")

    sp = add("render", cmd_render, "crossing-out diagram (text, json, svg, png)")
    sp.add_argument("--window", required=True)
    sp.add_argument("--rows")
    sp.add_argument("--cols")
    sp.add_argument("--out")
    return p


GLOBAL_DEFAULTS = {"format": None, "seed": None, "lmax": None, "band": None, "verbose": False}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for key, value in GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args) or 0
    except (InputError, ResidueCollision, BoxNotEssential, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (IndexMismatch, SingularMatrix, PeriodMismatch, BandTooNarrow) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
