"""Command-line front end.

Subcommands: abelianize, split-check, cohomology, transgress, endo.
Reports are deterministic; --json selects machine-readable output.
Exit codes: 0 success (any mathematical verdict), 2 missing file,
3 parse error, 4 malformed bundle data.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import hashlib
import json
import sys
from typing import Dict, List, Optional, Sequence

from .extensions import MalformedSpec, lemma2_check, h1_h2_base, obstruction_class, s_of_r
from .extensions import TorusBundleSpec, semidirect_presentation
from .mcg import (
    build_double_model,
    endo_monodromy,
    endo_relation_check,
    endo_verdict,
    kb_base_variant,
    lantern_check,
    torus_pullback_info,
)
from .specfile import parse_bundle_file
from .transgression import CentralExtensionSpec, transgress, xi_star
from .words import ParseError, abelianization, parse_presentation

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_NO_FILE = 2
EXIT_PARSE = 3
EXIT_MALFORMED = 4


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _report(command: str, inputs: Dict, result: Dict, verdict: str) -> Dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "result": result,
        "verdict": verdict,
    }


def _emit(report: Dict, as_json: bool, text_lines: Sequence[str]) -> None:
    if as_json:
        print(json.dumps(report, indent=2))
    else:
        for line in text_lines:
            print(line)


def cmd_abelianize(path: str, as_json: bool) -> int:
    text = _read(path)
    group = abelianization(parse_presentation(text))
    result = {
        "group": str(group),
        "invariant_factors": list(group.invariant_factors),
        "rank": group.rank,
    }
    report = _report("abelianize", {"path": path, "sha256": _digest(text.encode())},
                     result, str(group))
    _emit(report, as_json, [f"{path}: abelianization {group} (rank {group.rank})"])
    return EXIT_OK


def _split_check_one(path: str) -> Dict:
    text = _read(path)
    bundle = parse_bundle_file(text)
    spec = bundle.to_spec()
    obstruction = obstruction_class(spec)
    result: Dict = {"obstruction": obstruction.to_json_dict()}

    lemma2: Dict = {"applies": False}
    if isinstance(spec, TorusBundleSpec) and obstruction.lifted:
        # compare pi^ab against (fibre coinvariants) + (base abelianization)
        action = spec.action_cocycle.linear_part()
        offsets = [s_of_r(spec, i)[1] for i in range(len(spec.base.relators))]
        fibre_names = _fresh_names(spec.base.generators, spec.fibre_rank)
        pi = semidirect_presentation(spec.base, action, fibre_names, offsets)
        check = lemma2_check(pi, fibre_names, spec.base, action)
        lemma2 = {
            "applies": True,
            "group_ab": str(check.group_ab),
            "expected": str(check.expected),
            "is_isomorphic": check.is_isomorphic,
        }
    result["lemma2"] = lemma2
    return _report("split-check", {"path": path, "sha256": _digest(text.encode())},
                   result, obstruction.verdict)


def _fresh_names(taken: Sequence[str], count: int) -> List[str]:
    names = []
    i = 0
    while len(names) < count:
        name = f"t{i}"
        if name not in taken:
            names.append(name)
        i += 1
    return names


def cmd_split_check(paths: Sequence[str], as_json: bool, jobs: int) -> int:
    if jobs > 1 and len(paths) > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_split_check_one, paths))
    else:
        reports = [_split_check_one(p) for p in paths]
    for report in reports:
        ob = report["result"]["obstruction"]
        lines = [
            f"{report['inputs']['path']}: {report['verdict']}",
            f"  s(r) = {ob['s_of_r']}",
            f"  quotient = {ob['quotient']}, class = {ob['class']}",
        ]
        lem = report["result"]["lemma2"]
        if lem["applies"]:
            lines.append(
                f"  abelianization test: pi^ab = {lem['group_ab']}, "
                f"expected {lem['expected']}, "
                f"{'isomorphic' if lem['is_isomorphic'] else 'NOT isomorphic'}")
        _emit(report, as_json, lines)
    return EXIT_OK


def cmd_cohomology(path: str, as_json: bool) -> int:
    text = _read(path)
    bundle = parse_bundle_file(text)
    if bundle.fibre_kind != "torus":
        raise MalformedSpec("cohomology supports torus-module coefficients only")
    h1, h2 = h1_h2_base(bundle.base, bundle.torus_action())
    result = {"h1": str(h1), "h2": str(h2)}
    verdict = f"H1 = {h1}; H2 = {h2}"
    report = _report("cohomology", {"path": path, "sha256": _digest(text.encode())},
                     result, verdict)
    _emit(report, as_json, [f"{path}: H^1 = {h1}, H^2 = {h2}"])
    return EXIT_OK


def _parse_range(text: str) -> range:
    try:
        lo_text, hi_text = text.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
    except ValueError as exc:
        raise MalformedSpec(f"bad range {text!r}; expected a..b") from exc
    if lo > hi:
        raise MalformedSpec(f"empty range {text!r}")
    return range(lo, hi + 1)


def cmd_transgress(k: Optional[int], range_text: Optional[str], as_json: bool) -> int:
    if range_text is not None:
        ks = list(_parse_range(range_text))
    elif k is not None:
        ks = [k]
    else:
        raise MalformedSpec("transgress needs --k or --range")
    rows = []
    all_agree = True
    for kk in ks:
        spec = CentralExtensionSpec(kk)
        d2 = transgress(spec)
        xi = xi_star(spec)
        agree = d2 == xi
        all_agree = all_agree and agree
        rows.append({"k": kk, "transgression": d2, "xi_star": xi, "agree": agree})
    verdict = "AGREE" if all_agree else "DISAGREE"
    inputs = {"k_values": [r["k"] for r in rows]}
    inputs["sha256"] = _digest(json.dumps(inputs["k_values"]).encode())
    report = _report("transgress", inputs, {"cases": rows}, verdict)
    lines = [f"k = {r['k']}: d2 = {r['transgression']}, xi* = {r['xi_star']} "
             f"{'AGREE' if r['agree'] else 'DISAGREE'}" for r in rows]
    lines.append(f"overall: {verdict}")
    _emit(report, as_json, lines)
    return EXIT_OK


def cmd_endo(as_json: bool) -> int:
    data = endo_monodromy()
    lantern = lantern_check()
    relation = endo_relation_check(data)
    group, coords, verdict = endo_verdict()
    kb_group, kb_coords, kb_verdict = kb_base_variant()
    tp_group, tp_coords = torus_pullback_info()
    result = {
        "monodromy": [[list(row) for row in m.matrix.data] for m in data.matrices],
        "lantern": lantern,
        "relation": relation,
        "coinvariants": str(group),
        "class_of_g": list(coords),
        "kb_variant": {
            "coinvariants": str(kb_group),
            "class_of_g": list(kb_coords),
            "verdict": kb_verdict,
        },
        "torus_pullback_info": {
            "coinvariants": str(tp_group),
            "class_of_g": list(tp_coords),
        },
    }
    inputs = {"sha256": _digest(b"endo")}
    report = _report("endo", inputs, result, verdict)
    lines = ["monodromy matrices:"]
    for i, m in enumerate(data.matrices, 1):
        lines.append(f"  generator {i}:")
        for row in m.matrix.data:
            lines.append("    " + " ".join(f"{e:3d}" for e in row))
    lines += [
        f"lantern relation on H_1: {'holds' if lantern else 'FAILS'}",
        f"commutator product is identity: {'holds' if relation else 'FAILS'}",
        f"coinvariants: {group}",
        f"class of [b1]: {list(coords)}",
        f"verdict: {verdict}",
        f"Klein-bottle base variant: coinvariants {kb_group}, "
        f"class {list(kb_coords)}, verdict {kb_verdict}",
        f"torus pullback (informational): coinvariants {tp_group}, "
        f"class {list(tp_coords)}",
    ]
    _emit(report, as_json, lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bundlesec",
        description="Splitting obstructions for surface-bundle group extensions.")
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="machine-readable reports")
    fmt.add_argument("--text", action="store_true", help="human-readable output (default)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("abelianize", help="invariant factors of a presented group")
    p.add_argument("file")

    p = sub.add_parser("split-check", help="relator obstruction for a bundle file")
    p.add_argument("files", nargs="+")
    p.add_argument("--jobs", type=int, default=1, help="evaluate files concurrently")

    p = sub.add_parser("cohomology", help="H^1 and H^2 of the base with module coefficients")
    p.add_argument("file")

    p = sub.add_parser("transgress", help="transgression vs evaluation of the class")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--range", dest="range_text", metavar="A..B", default=None)

    sub.add_parser("endo", help="the genus-3 homology obstruction example")
    return parser


def _fold_range_flag(argv: List[str]) -> List[str]:
    # let "--range -5..5" through argparse, which would otherwise read the
    # value as an option string
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--range" and i + 1 < len(argv):
            out.append(f"--range={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    args = build_parser().parse_args(_fold_range_flag(list(argv)))
    as_json = bool(args.json)
    try:
        if args.command == "abelianize":
            return cmd_abelianize(args.file, as_json)
        if args.command == "split-check":
            return cmd_split_check(args.files, as_json, args.jobs)
        if args.command == "cohomology":
            return cmd_cohomology(args.file, as_json)
        if args.command == "transgress":
            return cmd_transgress(args.k, args.range_text, as_json)
        if args.command == "endo":
            return cmd_endo(as_json)
        raise AssertionError(f"unhandled command {args.command}")
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename}", file=sys.stderr)
        return EXIT_NO_FILE
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except MalformedSpec as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
