"""Command-line front end.

Data goes to stdout, diagnostics to stderr.  Exit codes: 0 ok, 1 property
failure, 2 input error, 3 resource cap, 4 infinite parabolic.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import verify
from .cosets import NotFinite, SigmaError, descent_check, enumerate_double_cosets, sigma_from_json
from .datum import PRESETS, DatumError, GroupDatum, load_datum, validate_datum
from .group import CapExceeded, ExtAffineElement, IwahoriWeylGroup, group_of
from .rootsys import RootSystemError, WeylOrderTooLarge

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP, EXIT_INFINITE = 0, 1, 2, 3, 4
DEFAULT_CAP = 200_000


class InputError(ValueError):
    pass


# -- parsing helpers -----------------------------------------------------------


def parse_index_list(text: str | None) -> tuple[int, ...]:
    if text is None or text.strip() in ("", "-"):
        return ()
    try:
        return tuple(int(t) for t in text.replace(" ", ",").split(",") if t)
    except ValueError:
        raise InputError(f"bad index list {text!r}") from None


def parse_element(group: IwahoriWeylGroup, spec: str) -> ExtAffineElement:
    """``"t=1,0 w=1,2 tor=0"``; every field is optional.

    ``t`` is in lattice coordinates, ``w`` is a word in the finite simple
    reflections (1-based) and ``tor`` indexes the torsion elements.
    """
    fields: dict[str, str] = {}
    for tok in spec.split():
        key, eq, val = tok.partition("=")
        if not eq or key not in ("t", "w", "tor") or key in fields:
            raise InputError(f"bad element token {tok!r}")
        fields[key] = val
    try:
        lam = parse_index_list(fields.get("t")) or (0,) * group.datum.lattice_rank
        word = parse_index_list(fields.get("w"))
        tors = group.datum.torsion.elements()
        k = int(fields.get("tor", "0"))
        if not 0 <= k < len(tors):
            raise InputError(f"torsion index {k} out of range 0..{len(tors) - 1}")
        return group.element(lam, word, tors[k] if group.datum.torsion.invariants else None)
    except (DatumError, IndexError, ValueError) as e:
        if isinstance(e, InputError):
            raise
        raise InputError(f"bad element {spec!r}: {e}") from None


def datum_from_args(args) -> GroupDatum:
    if args.datum:
        if args.type:
            raise InputError("give either --datum or --type, not both")
        return load_datum(args.datum)
    if not args.type:
        raise InputError("a datum is required: --type T [--lattice L] or --datum FILE")
    return validate_datum({"cartan_type": args.type, "lattice": args.lattice})


# -- rows ----------------------------------------------------------------------


def _join(xs) -> str:
    return ",".join(str(x) for x in xs)


def element_row(group: IwahoriWeylGroup, x: ExtAffineElement) -> dict:
    word, om = group.reduced_word(x)
    images = [list(a) for a in group.weyl.root_images(x.w)]
    return {
        "length": len(word),
        "word": list(word),
        "omega": group.omega_index(om),
        "kottwitz": list(group.kottwitz_class(x).coords),
        "translation": list(x.translation),
        "torsion": list(x.tor),
        "finite_image": images,
    }


WORD_COLUMNS = ("word", "x0_word")


def _encode_tsv(value, column: str = "") -> str:
    if column in WORD_COLUMNS:
        return " ".join(str(i) for i in value)
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, list):
        if value and isinstance(value[0], list):
            return ";".join(_join(v) for v in value)
        return _join(value)
    return str(value)


def emit(rows: list[dict], fmt: str, columns: list[str], out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        for row in rows:
            out.write(json.dumps(row, separators=(",", ":")) + "\n")
        return
    out.write("\t".join(columns) + "\n")
    for row in rows:
        out.write("\t".join(_encode_tsv(row[c], c) for c in columns) + "\n")


ELEMENT_COLUMNS = ["length", "word", "omega", "kottwitz", "translation", "torsion", "finite_image"]
DCOSET_COLUMNS = ["x0_word", "omega", "length", "coset_size_in_ball", "truncated"]


def _row_key(row: dict):
    return (row["length"], row["word"], row["omega"])


# workers rebuild the group from JSON and receive elements as raw coordinates
_WORKER_GROUP: IwahoriWeylGroup | None = None


def _worker_init(raw: dict) -> None:
    global _WORKER_GROUP
    _WORKER_GROUP = group_of(validate_datum(raw))


def _worker_rows(chunk):
    g = _WORKER_GROUP
    return [element_row(g, g._make(tor, mu, g.weyl.intern(m))) for tor, mu, m in chunk]


def enumerate_rows(group: IwahoriWeylGroup, max_len: int, cap: int, parallel: int = 0) -> list[dict]:
    xs = [x for sh in group.ball(max_len, cap=cap) for x in sh]
    if parallel > 1 and len(xs) > 1:
        mats = group.weyl.matrices
        raw = [(x.tor, x.mu, mats[x.w]) for x in xs]
        size = max(1, len(raw) // (4 * parallel))
        chunks = [raw[i:i + size] for i in range(0, len(raw), size)]
        with ProcessPoolExecutor(parallel, initializer=_worker_init, initargs=(group.datum.to_json(),)) as ex:
            rows = [r for part in ex.map(_worker_rows, chunks) for r in part]
    else:
        rows = [element_row(group, x) for x in xs]
    rows.sort(key=_row_key)
    return rows


# -- subcommands -----------------------------------------------------------------


def cmd_info(args) -> int:
    d = datum_from_args(args)
    rs = d.root_system
    row = {
        "cartan_type": str(rs.cartan_type),
        "lattice": d.label,
        "rank": d.rank,
        "weyl_order": rs.weyl_order,
        "omega_order": d.kottwitz_group.order,
        "lambda_mod_coroots": list(d.kottwitz_group.invariants),
        "torsion": list(d.torsion.invariants),
        "affine_simple": d.rank + 1,
    }
    emit([row], args.format, list(row))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    g = group_of(datum_from_args(args))
    rows = enumerate_rows(g, args.max_len, args.cap, args.parallel)
    emit(rows, args.format, ELEMENT_COLUMNS)
    return EXIT_OK


def cmd_word(args) -> int:
    g = group_of(datum_from_args(args))
    x = parse_element(g, args.element)
    word, om = g.reduced_word(x)
    if g.from_word(word, om) != x:
        print("error: reduced word does not round-trip", file=sys.stderr)
        return EXIT_FAIL
    row = {"word": list(word), "omega": g.omega_index(om), "length": len(word)}
    emit([row], args.format, list(row))
    return EXIT_OK


def cmd_dcosets(args) -> int:
    g = group_of(datum_from_args(args))
    J, Jp = parse_index_list(args.left), parse_index_list(args.right)
    ball = [x for sh in g.ball(args.max_len, cap=args.cap) for x in sh]
    reps = enumerate_double_cosets(g, J, Jp, args.max_len, ball=ball)
    emit([r.to_json() for r in reps], args.format, DCOSET_COLUMNS)
    return EXIT_OK


def cmd_descent(args) -> int:
    g = group_of(datum_from_args(args))
    if not args.sigma:
        raise InputError("descent needs --sigma FILE")
    try:
        raw = json.loads(Path(args.sigma).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read sigma {args.sigma}: {e}") from None
    sigma = sigma_from_json(g, raw)
    J, Jp = parse_index_list(args.left), parse_index_list(args.right)
    ball = [x for sh in g.ball(args.max_len, cap=args.cap) for x in sh]
    report = descent_check(sigma, J, Jp, args.max_len, ball=ball)
    row = report.to_json()
    row["ok"] = report.ok
    emit([row], args.format, list(row))
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_verify(args) -> int:
    if args.datum or args.type:
        d = datum_from_args(args)
        results = [verify.run_check(verify.check_datum, datum=d, max_len=args.max_len, seed=args.seed)]
    else:
        results = verify.run_all(seed=args.seed)
    for r in results:
        print(r.line())
        print(f"{r.number}. {r.seconds:.2f}s", file=sys.stderr)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


COMMANDS = {
    "info": cmd_info,
    "enumerate": cmd_enumerate,
    "word": cmd_word,
    "dcosets": cmd_dcosets,
    "descent": cmd_descent,
    "verify": cmd_verify,
}


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", help="Cartan type such as A2 or G2")
    common.add_argument("--lattice", choices=PRESETS, default="coroot")
    common.add_argument("--datum", help="datum JSON file")
    common.add_argument("--format", choices=("tsv", "json"), default="tsv")
    common.add_argument("--max-len", type=_nonneg, default=6)
    common.add_argument("--cap", type=_positive, default=DEFAULT_CAP, help="maximum ball size")

    p = argparse.ArgumentParser(prog="iwahori", description="Iwahori-Weyl group computations")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[common])
    e = sub.add_parser("enumerate", parents=[common])
    e.add_argument("--parallel", type=_nonneg, default=0, metavar="N", help="worker processes")
    w = sub.add_parser("word", parents=[common])
    w.add_argument("element", help='element spec, e.g. "t=1,0 w=1,2 tor=0"')
    for name in ("dcosets", "descent"):
        q = sub.add_parser(name, parents=[common])
        q.add_argument("--left", default="", help="left index set, e.g. 1,2")
        q.add_argument("--right", default="", help="right index set")
        if name == "descent":
            q.add_argument("--sigma", help="diagram automorphism JSON file")
    v = sub.add_parser("verify", parents=[common])
    v.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except WeylOrderTooLarge as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, DatumError, RootSystemError, SigmaError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except NotFinite as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INFINITE
    except IndexError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
