"""Command-line front end: construction, verification suites, graph export,
and the isometry/equivalence pipeline.

Exit codes: 0 = all checks passed / operation succeeded, 1 = a check failed
or no isomorphism/equivalence exists, 2 = usage, I/O, or format error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field

from . import __version__
from .construct import (
    ConstructionError,
    build_extended_preparata,
    build_nr_via_octacode,
    preparata_spec,
)
from .core import (
    CapabilityError,
    Code,
    InputError,
    ParseError,
    StructureError,
    puncture,
    read_code,
    weight_distribution,
    write_code,
)
from .gf2m import FieldError
from .graphs import build_mdg, to_dimacs
from .isometry import (
    CodewordBijection,
    SpaceAutomorphism,
    apply_automorphism,
    find_equivalence,
    verify_isometry,
    weak_isometry,
)
from .verify import (
    CheckReport,
    check_corollary1,
    check_counting_extended,
    check_counting_punctured,
    check_design,
    check_structure,
    critical_scan,
    max_constant_weight,
)


@dataclass
class SuiteReport:
    """Ordered check results for one input code, with digests and timings."""

    tool: str
    inputs: dict[str, str]
    checks: list[CheckReport] = field(default_factory=list)
    timing_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json_dict(self) -> dict:
        return {
            "tool": self.tool,
            "inputs": self.inputs,
            "pass": self.passed,
            "checks": [c.to_json_dict() for c in self.checks],
            "timing_ms": round(self.timing_ms, 3),
        }


def _tool_id() -> str:
    return f"prepcode {__version__}"


def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _weight_blocks(code: Code, k: int) -> list[tuple[int, ...]]:
    return [w.support() for w in code.words if w.weight == k]


# --- subcommand handlers ----------------------------------------------------

def _cmd_construct(args) -> int:
    if args.n == 16:
        code = build_extended_preparata(3, args.primpoly)
        if args.out:
            write_code(code, args.out)
        else:
            write_code(code, sys.stdout)
        return 0
    # n=64: no enumeration; emit a membership-mode stub.
    spec = preparata_spec(5, args.primpoly)
    stub = {
        "kind": "preparata_membership_spec",
        "n": spec.n,
        "m_field": spec.m_field,
        "primpoly": spec.field.modulus,
        "expected_size_log2": spec.n - 2 * spec.m_field - 2,
    }
    _emit(_json_text(stub), args.out)
    return 0


def _cmd_octacode(args) -> int:
    code = build_nr_via_octacode()
    if args.out:
        write_code(code, args.out)
    else:
        write_code(code, sys.stdout)
    return 0


def _cmd_puncture(args) -> int:
    code = read_code(args.infile)
    out = puncture(code, args.coord)
    if args.out:
        write_code(out, args.out)
    else:
        write_code(out, sys.stdout)
    return 0


def _cmd_stats(args) -> int:
    code = read_code(args.infile)
    stats = {
        "n": code.n,
        "M": code.M,
        "d": code.d if code.M >= 2 else None,
        "reduced": code.reduced,
        "weight_distribution": {str(k): v for k, v in weight_distribution(code).items()},
    }
    _emit(_json_text(stats), None)
    return 0


def _suite_checks(code: Code, suite: str) -> list[CheckReport]:
    checks = []
    if suite == "punctured":
        checks.append(check_structure(code, "punctured"))
        blocks = _weight_blocks(code, 5)
        design = check_design(blocks, code.n, 2, 5)
        if not blocks:
            design.add_witness({"reason": "no weight-5 codewords"})
        checks.append(design)
        checks.append(check_corollary1(code))
        checks.append(check_counting_punctured(code))
    else:
        checks.append(check_structure(code, "extended"))
        blocks = _weight_blocks(code, 6)
        design = check_design(blocks, code.n, 3, 6)
        if not blocks:
            design.add_witness({"reason": "no weight-6 codewords"})
        checks.append(design)
        checks.append(check_counting_extended(code))
    return checks


def _cmd_verify(args) -> int:
    t0 = time.perf_counter()
    code = read_code(args.infile)
    report = SuiteReport(
        tool=_tool_id(),
        inputs={args.infile: _sha256(args.infile)},
    )
    report.checks = _suite_checks(code, args.suite)
    report.timing_ms = (time.perf_counter() - t0) * 1000.0
    _emit(_json_text(report.to_json_dict()), args.report)
    if args.report:
        print("pass" if report.passed else "FAIL")
    return 0 if report.passed else 1


def _cmd_design(args) -> int:
    code = read_code(args.infile)
    blocks = _weight_blocks(code, args.k)
    report = check_design(blocks, code.n, args.t, args.k)
    if not blocks:
        report.add_witness({"reason": f"no weight-{args.k} codewords"})
    _emit(_json_text(report.to_json_dict()), args.report)
    return 0 if report.passed else 1


def _cmd_mdg(args) -> int:
    code = read_code(args.infile)
    text = to_dimacs(build_mdg(code))
    _emit(text, args.out)
    return 0


def _cmd_wiso(args) -> int:
    a = read_code(args.a)
    b = read_code(args.b)
    if a.M != b.M:
        print(f"no weak isometry: sizes differ ({a.M} vs {b.M})", file=sys.stderr)
        return 1
    if a.d != b.d:
        print(f"no weak isometry: distances differ ({a.d} vs {b.d})", file=sys.stderr)
        return 1
    j = weak_isometry(a, b)
    if j is None:
        print("no weak isometry: minimal distance graphs are not isomorphic",
              file=sys.stderr)
        return 1
    _emit(_json_text(j.to_json_list()), args.map_out)
    return 0


def _cmd_isocheck(args) -> int:
    a = read_code(args.a)
    b = read_code(args.b)
    with open(args.map, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    j = CodewordBijection.from_json_list(data, a, b)
    ok, violation = verify_isometry(j)
    if ok:
        print("isometry")
        return 0
    x, y = violation
    print(f"not an isometry: pair {x.to_hex()} {y.to_hex()} changes distance")
    return 1


def _cmd_equiv(args) -> int:
    a = read_code(args.a)
    b = read_code(args.b)
    if (a.n, a.M) != (b.n, b.M) or a.d != b.d:
        print("no equivalence: parameters differ", file=sys.stderr)
        return 1
    f = find_equivalence(a, b)
    if f is None:
        print("no equivalence found", file=sys.stderr)
        return 1
    _emit(_json_text(f.to_json_dict()), args.auto_out)
    return 0


def _cmd_cwmax(args) -> int:
    size, witness = max_constant_weight(args.n, args.w, args.d)
    print(size)
    print("witness:", " ".join(w.to_hex() for w in witness))
    return 0


def _cmd_scan(args) -> int:
    report = critical_scan(args.imin, args.imax)
    _emit(_json_text(report.to_json_dict()), args.report)
    return 0 if report.passed else 1


def _int_any_base(text: str) -> int:
    return int(text, 0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prepcode",
        description="Preparata-code construction and verification toolkit",
    )
    parser.add_argument("--version", action="version", version=_tool_id())
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a length-16 code, or a length-64 membership stub")
    p.add_argument("--n", type=int, choices=(16, 64), required=True)
    p.add_argument("--primpoly", type=_int_any_base, default=None,
                   help="primitive polynomial bitmask for the field")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("octacode", help="build the length-16 code via the Z4 route")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_octacode)

    p = sub.add_parser("puncture", help="delete one coordinate")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--coord", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_puncture)

    p = sub.add_parser("stats", help="print code parameters and weight distribution")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("verify", help="run a verification suite on a code file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--suite", choices=("punctured", "extended"), required=True)
    p.add_argument("--report", help="write the JSON report here instead of stdout")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("design", help="check the weight-k supports for a t-design")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--report")
    p.set_defaults(func=_cmd_design)

    p = sub.add_parser("mdg", help="export the minimal distance graph (DIMACS)")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_mdg)

    p = sub.add_parser("wiso", help="find a weak isometry between two codes")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--map-out", dest="map_out")
    p.set_defaults(func=_cmd_wiso)

    p = sub.add_parser("isocheck", help="verify that a codeword map is an isometry")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--map", required=True)
    p.set_defaults(func=_cmd_isocheck)

    p = sub.add_parser("equiv", help="find a space automorphism mapping one code onto another")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--auto-out", dest="auto_out")
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("cwmax", help="maximum constant-weight code size (exact)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=_cmd_cwmax)

    p = sub.add_parser("scan", help="integer scan of the weight-preservation argument")
    p.add_argument("--imin", type=int, required=True)
    p.add_argument("--imax", type=int, required=True)
    p.add_argument("--report")
    p.set_defaults(func=_cmd_scan)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ParseError, StructureError, CapabilityError,
            ConstructionError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: bad JSON input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
