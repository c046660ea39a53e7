"""Command-line interface.

All machine-readable output goes to stdout as JSON (or DOT for the dot
command); diagnostics go to stderr.  Exit status: 0 on success, 1 when a
requested check yields Fail/Mismatch verdicts, 2 on validation or budget
errors.
"""

import argparse
import json
import sys

from . import flow, ktheory, lgs as lgsmod, sync, words
from .catalog import (
    dyck,
    full_shift,
    golden_mean,
    markov_dyck,
    sofic_from_graph,
)
from .errors import LgskError, UndeterminedTower, ValidationError

CATALOG_NAMES = ("golden-mean", "full:N", "dyck:N", "markov-dyck:<file>", "sofic:<file>")

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_ERROR = 2


def _load_spec(ref):
    """A spec from a catalog name or a spec JSON file."""
    if ref == "golden-mean":
        return golden_mean()
    if ref.startswith("full:"):
        return full_shift(int(ref.split(":", 1)[1]))
    if ref.startswith("dyck:"):
        return dyck(int(ref.split(":", 1)[1]))
    if ref.startswith("markov-dyck:"):
        path = ref.split(":", 1)[1]
        with open(path) as fh:
            data = json.load(fh)
        matrix = data["matrix"] if isinstance(data, dict) else data
        return markov_dyck(matrix)
    if ref.startswith("sofic:"):
        path = ref.split(":", 1)[1]
        with open(path) as fh:
            data = json.load(fh)
        if isinstance(data, dict) and data.get("kind") == "sofic":
            return words.spec_from_dict(data)
        return sofic_from_graph(
            (data["states"], [tuple(e) for e in data["edges"]])
        )
    with open(ref) as fh:
        return words.spec_from_json(fh.read())


def _emit(data, out=None):
    text = json.dumps(data, indent=2, sort_keys=False)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
        print("wrote %s" % out, file=sys.stderr)
    else:
        print(text)


def _load_lgs(path):
    with open(path) as fh:
        return lgsmod.LambdaGraphSystem.from_json(fh.read())


def _cmd_build(args):
    spec = _load_spec(args.spec)
    W = args.word_cap if args.word_cap is not None else 2 * args.levels + 4
    built = lgsmod.build_lambda_sync_lgs(
        spec, args.levels, W, horizon=args.horizon
    )
    report = lgsmod.validate_lgs(built)
    _emit(built.to_dict(), args.out)
    if args.out:
        _emit({"vertex_counts": built.vertex_counts(), "validation": report})
    if not report["ok"]:
        print("validation failed", file=sys.stderr)
        return EXIT_VERDICT
    return EXIT_OK


def _cmd_validate(args):
    built = _load_lgs(args.lgs)
    report = lgsmod.validate_lgs(built)
    _emit(report)
    return EXIT_OK if report["ok"] else EXIT_VERDICT


def _cmd_groups(args):
    built = _load_lgs(args.lgs)
    ms = ktheory.extract_matrix_system(built)
    t0 = ktheory.k0_tower(ms, args.window)
    t1 = ktheory.k1_tower(ms, args.window)
    out = {"k0": t0.to_dict(), "k1": t1.to_dict()}
    try:
        bf0, bf1 = ktheory.bowen_franks(t0, t1)
        out["bf0"] = {"describe": bf0.describe(), **bf0.to_json()}
        out["bf1"] = {"describe": bf1.describe(), **bf1.to_json()}
    except UndeterminedTower as exc:
        out["bf0"] = out["bf1"] = None
        print("Bowen-Franks groups unavailable: %s" % exc, file=sys.stderr)
    _emit(out)
    return EXIT_OK


def _cmd_sync(args):
    spec = _load_spec(args.spec)
    W = args.word_cap if args.word_cap is not None else 2 * args.kmax + 4
    rows = sync.check_lambda_synchronizing(spec, args.lmax, args.kmax, W)
    _emit(rows)
    if any(r["verdict"] == "Fail" for r in rows):
        print("some rows failed", file=sys.stderr)
        return EXIT_VERDICT
    return EXIT_OK


def _cmd_expand(args):
    spec = _load_spec(args.spec)
    expanded = flow.expand(spec, args.symbol, args.fresh)
    _emit(words.spec_to_dict(expanded), args.out)
    return EXIT_OK


def _cmd_compare(args):
    left = _load_spec(args.left)
    right = _load_spec(args.right)
    if (
        args.right_levels is None
        and isinstance(right, words.Expanded)
        and right.inner == left
    ):
        report = flow.invariance_report(
            left,
            args.levels,
            symbol=right.symbol,
            fresh=right.fresh,
            W=args.word_cap,
            window=args.window,
        )
    else:
        report = flow.compare_invariants(
            left,
            right,
            args.levels,
            L_right=args.right_levels,
            W=args.word_cap,
            window=args.window,
        )
    _emit(report)
    return EXIT_OK if report["ok"] else EXIT_VERDICT


def _cmd_dot(args):
    built = _load_lgs(args.lgs)
    text = built.to_dot(args.level)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print("wrote %s" % args.out, file=sys.stderr)
    else:
        print(text)
    return EXIT_OK


def _cmd_catalog(args):
    if args.what == "list":
        _emit(list(CATALOG_NAMES))
        return EXIT_OK
    raise ValidationError("unknown catalog action %r" % (args.what,))


def build_parser():
    p = argparse.ArgumentParser(
        prog="lgsk",
        description="λ-graph systems of subshifts: construction, "
        "K-theoretic invariants, and flow-equivalence checks",
    )
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build and validate a λ-graph system")
    b.add_argument("--spec", required=True)
    b.add_argument("--levels", type=int, required=True)
    b.add_argument("--word-cap", type=int, default=None)
    b.add_argument("--horizon", type=int, default=None)
    b.add_argument("--out", default=None)
    b.set_defaults(func=_cmd_build)

    v = sub.add_parser("validate", help="re-run structural checks on a saved system")
    v.add_argument("lgs")
    v.set_defaults(func=_cmd_validate)

    g = sub.add_parser("groups", help="K-group towers and Bowen-Franks groups")
    g.add_argument("lgs")
    g.add_argument("--window", type=int, default=3)
    g.set_defaults(func=_cmd_groups)

    s = sub.add_parser("sync", help="λ-synchronization property table")
    s.add_argument("--spec", required=True)
    s.add_argument("--lmax", type=int, required=True)
    s.add_argument("--kmax", type=int, required=True)
    s.add_argument("--word-cap", type=int, default=None)
    s.set_defaults(func=_cmd_sync)

    e = sub.add_parser("expand", help="replace a symbol by fresh·symbol")
    e.add_argument("--spec", required=True)
    e.add_argument("--symbol", required=True)
    e.add_argument("--fresh", default="0")
    e.add_argument("--out", default=None)
    e.set_defaults(func=_cmd_expand)

    c = sub.add_parser("compare", help="compare K-theoretic invariants of two specs")
    c.add_argument("--left", required=True)
    c.add_argument("--right", required=True)
    c.add_argument("--levels", type=int, required=True)
    c.add_argument("--right-levels", type=int, default=None)
    c.add_argument("--word-cap", type=int, default=None)
    c.add_argument("--window", type=int, default=3)
    c.set_defaults(func=_cmd_compare)

    d = sub.add_parser("dot", help="DOT export of one level pair")
    d.add_argument("lgs")
    d.add_argument("--level", type=int, required=True)
    d.add_argument("--out", default=None)
    d.set_defaults(func=_cmd_dot)

    cat = sub.add_parser("catalog", help="built-in subshift names")
    cat.add_argument("what", choices=["list"])
    cat.set_defaults(func=_cmd_catalog)

    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (LgskError, OSError, json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
