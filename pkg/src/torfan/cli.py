"""Batch command line front end.

Commands: validate-fan, has-semigroup, reconstruct, dual, hilbert, faces,
has-zero, one-param, separatedness, face-cert.

Exit codes: 0 for an affirmative verdict, 1 for a negative mathematical
verdict, 2 for usage, parse or IO errors.

All integers inside files are decimal strings, so that readers in any
language can parse them without 64-bit overflow concerns; plain JSON
integers are also accepted on input.  Reports echo the command, carry
machine-checkable certificates, and are deterministic for a fixed input
(an optional --seed is echoed back so downstream tooling can key caches).
"""

import argparse
import json
import sys
import time
from fractions import Fraction

from . import cone as cone_mod
from . import fan as fan_mod
from . import monoid as monoid_mod
from . import reconstruct as rec_mod
from . import variety as variety_mod
from .errors import (
    CertificateSearchExhausted,
    Condition1Violation,
    Condition2Violation,
    FaceCertificateMissing,
    InvalidAtlas,
    NonSeparated,
    NotNormal,
    NotStronglyConvex,
    TorfanError,
    TorusNotDense,
)


class FileFormatError(Exception):
    pass


# ---------------------------------------------------------------------------
# JSON encoding (integers as decimal strings)


def _int_out(x):
    return str(int(x))


def _vec_out(v):
    return [_int_out(x) for x in v]


def _vecs_out(vs):
    return [_vec_out(v) for v in vs]


def _int_in(x, where):
    if isinstance(x, bool):
        raise FileFormatError(f"{where}: expected an integer, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        s = x.strip()
        body = s[1:] if s[:1] in "+-" else s
        if body.isdigit():
            return int(s)
        raise FileFormatError(f"{where}: {x!r} is not a decimal integer")
    raise FileFormatError(f"{where}: expected an integer, got {type(x).__name__}")


def _vec_in(v, where):
    if not isinstance(v, list):
        raise FileFormatError(f"{where}: expected a list of integers")
    return tuple(_int_in(x, where) for x in v)


def _cone_out(c):
    return {
        "rank": _int_out(c.rank),
        "rays": _vecs_out(c.rays),
        "lineality": _vecs_out(c.lineality),
        "ineqs": _vecs_out(c.ineqs),
        "span_eqs": _vecs_out(c.span_eqs),
    }


def _point_out(p):
    return {
        "support_face": _cone_out(p.support_face),
        "face_basis": _vecs_out(p.face_basis),
        "unit_values": [str(u) for u in p.unit_values],
    }


# ---------------------------------------------------------------------------
# file loading


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise FileFormatError(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise FileFormatError(f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}")


def _require(doc, key, path):
    if not isinstance(doc, dict) or key not in doc:
        raise FileFormatError(f"{path}: missing required key {key!r}")
    return doc[key]


def load_fan_file(path, auto_close_override=None):
    doc = _load_json(path)
    rank = _int_in(_require(doc, "rank", path), f"{path}: rank")
    cones_raw = _require(doc, "cones", path)
    if not isinstance(cones_raw, list):
        raise FileFormatError(f"{path}: 'cones' must be a list of generator lists")
    auto_close = doc.get("auto_close", True)
    if auto_close_override is not None:
        auto_close = auto_close_override
    cones = []
    for idx, gens in enumerate(cones_raw):
        if not isinstance(gens, list):
            raise FileFormatError(f"{path}: cone {idx} must be a list of generators")
        vecs = [_vec_in(g, f"{path}: cone {idx}") for g in gens]
        for v in vecs:
            if len(v) != rank:
                raise FileFormatError(f"{path}: cone {idx} has a generator of wrong length")
        cones.append(cone_mod.cone_from_generators(rank, vecs))
    return rank, cones, bool(auto_close)


def fan_file_out(f):
    return {
        "rank": _int_out(f.rank),
        "auto_close": True,
        "cones": [_vecs_out(c.rays) for c in f.cones],
    }


def load_cone_file(path):
    doc = _load_json(path)
    rank = _int_in(_require(doc, "rank", path), f"{path}: rank")
    gens_raw = _require(doc, "generators", path)
    if not isinstance(gens_raw, list):
        raise FileFormatError(f"{path}: 'generators' must be a list of vectors")
    gens = [_vec_in(g, f"{path}: generators") for g in gens_raw]
    for g in gens:
        if len(g) != rank:
            raise FileFormatError(f"{path}: generator of wrong length")
    return rank, gens


def load_atlas_file(path):
    doc = _load_json(path)
    rank = _int_in(_require(doc, "rank", path), f"{path}: rank")
    charts_raw = _require(doc, "charts", path)
    inters_raw = doc.get("intersections", [])
    if not isinstance(charts_raw, list) or not isinstance(inters_raw, list):
        raise FileFormatError(f"{path}: 'charts' and 'intersections' must be lists")
    charts = {}
    for entry in charts_raw:
        cid = str(_require(entry, "id", path))
        chars = [_vec_in(v, f"{path}: chart {cid}") for v in _require(entry, "characters", path)]
        if cid in charts:
            raise FileFormatError(f"{path}: duplicate chart id {cid!r}")
        charts[cid] = chars
    intersections = {}
    for entry in inters_raw:
        ids = _require(entry, "ids", path)
        if not isinstance(ids, list) or len(ids) != 2:
            raise FileFormatError(f"{path}: intersection 'ids' must list two chart ids")
        i, j = str(ids[0]), str(ids[1])
        chars = [_vec_in(v, f"{path}: intersection {i},{j}") for v in _require(entry, "characters", path)]
        intersections[(i, j)] = chars
    try:
        return rec_mod.InputAtlas(rank=rank, charts=charts, intersections=intersections)
    except InvalidAtlas as e:
        raise FileFormatError(f"{path}: {e}")


# ---------------------------------------------------------------------------
# reports


class Report:
    def __init__(self, args):
        self.command = " ".join(args.argv)
        self.seed = args.seed
        self.started = time.monotonic_ns()
        self.verdict = None
        self.certificates = None
        self.diagnostics = None
        self.data = {}

    def finish(self):
        out = {
            "command": self.command,
            "verdict": self.verdict,
            "certificates": self.certificates,
            "diagnostics": self.diagnostics,
            "timing_ms": _int_out((time.monotonic_ns() - self.started) // 1_000_000),
            "seed": None if self.seed is None else _int_out(self.seed),
        }
        out.update(self.data)
        return out


def _emit(args, report, human_lines, write_output=True):
    doc = report.finish()
    if args.output and write_output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
    if args.json:
        json.dump(doc, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    else:
        for line in human_lines:
            print(line)


def _fan_violation(e):
    if isinstance(e, NotStronglyConvex):
        return {"kind": "not_strongly_convex", "cone": _cone_out(e.cone)}
    if isinstance(e, Condition1Violation):
        return {
            "kind": "missing_face",
            "cone": _cone_out(e.cone),
            "missing_face": _cone_out(e.missing_face),
        }
    if isinstance(e, Condition2Violation):
        return {
            "kind": "intersection_not_common_face",
            "sigma": _cone_out(e.sigma),
            "tau": _cone_out(e.tau),
            "intersection": _cone_out(e.intersection),
        }
    return {"kind": type(e).__name__, "message": str(e)}


def _separatedness_cert_out(cert):
    pairs = []
    for pc in cert.pairs:
        pairs.append(
            {
                "sigma": _cone_out(pc.sigma),
                "tau": _cone_out(pc.tau),
                "decompositions": [
                    {
                        "generator": _vec_out(d.generator),
                        "in_sigma": _vec_out(d.in_sigma),
                        "in_tau": _vec_out(d.in_tau),
                    }
                    for d in pc.decompositions
                ],
            }
        )
    return {"pairs": pairs}


def _face_cert_out(cert):
    return {
        "sigma": _cone_out(cert.sigma),
        "tau": _cone_out(cert.tau),
        "f": _vec_out(cert.f),
        "covers": [
            {
                "generator": _vec_out(r.generator),
                "in_sigma": _vec_out(r.in_sigma),
                "power": _int_out(r.power),
            }
            for r in cert.covers
        ],
    }


# ---------------------------------------------------------------------------
# commands


def cmd_validate_fan(args):
    report = Report(args)
    rank, cones, auto_close = load_fan_file(args.path, args.auto_close_override)
    try:
        f = fan_mod.validate_fan(rank, cones, auto_close=auto_close)
    except (NotStronglyConvex, Condition1Violation, Condition2Violation) as e:
        report.verdict = "invalid"
        report.diagnostics = _fan_violation(e)
        _emit(args, report, [f"invalid fan: {e}"])
        return 1
    report.verdict = "valid"
    report.data["fan"] = fan_file_out(f)
    _emit(args, report, [f"valid fan with {len(f)} cones (rank {f.rank})"])
    return 0


def _load_valid_fan(args):
    rank, cones, auto_close = load_fan_file(args.path, args.auto_close_override)
    return fan_mod.validate_fan(rank, cones, auto_close=auto_close)


def cmd_has_semigroup(args):
    report = Report(args)
    try:
        f = _load_valid_fan(args)
    except (NotStronglyConvex, Condition1Violation, Condition2Violation) as e:
        report.verdict = "invalid"
        report.diagnostics = _fan_violation(e)
        _emit(args, report, [f"invalid fan: {e}"])
        return 1
    decision = fan_mod.has_semigroup_structure(f)
    if decision.verdict:
        report.verdict = "semigroup"
        report.data["generating_cone"] = _cone_out(decision.generating_cone)
        _emit(
            args,
            report,
            [
                "the fan is generated by a single cone; the variety is affine "
                "and carries a multiplication extending the torus",
                f"generating cone rays: {[list(r) for r in decision.generating_cone.rays]}",
            ],
        )
        return 0
    d = decision.diagnostics
    if isinstance(d, fan_mod.NondegenerateConePair):
        report.diagnostics = {
            "kind": "two_nondegenerate_cones",
            "first": _cone_out(d.first),
            "second": _cone_out(d.second),
        }
        lines = [
            "no semigroup structure: after span reduction the fan has two "
            "full-dimensional cones, and each would contribute its own "
            "absorbing point"
        ]
    else:
        report.diagnostics = {
            "kind": "addition_closure_failure",
            "v": _vec_out(d.v),
            "w": _vec_out(d.w),
            "total": _vec_out(d.total),
        }
        lines = [
            "no semigroup structure: the union of the cones is not closed "
            f"under addition, witness {list(d.v)} + {list(d.w)} = {list(d.total)}"
        ]
    report.verdict = "no_semigroup"
    _emit(args, report, lines)
    return 1


def cmd_reconstruct(args):
    report = Report(args)
    atlas = load_atlas_file(args.path)
    try:
        result = rec_mod.reconstruct_fan(atlas)
    except TorusNotDense as e:
        report.verdict = "torus_not_dense"
        report.diagnostics = {
            "kind": "torus_not_dense",
            "chart": repr(e.chart_id),
            "characters": _vecs_out(e.characters),
        }
        _emit(args, report, [str(e)])
        return 1
    except NotNormal as e:
        report.verdict = "not_normal"
        report.diagnostics = {
            "kind": "not_normal",
            "chart": repr(e.chart_id),
            "witness": _vec_out(e.witness),
        }
        _emit(args, report, [str(e)])
        return 1
    except NonSeparated as e:
        report.verdict = "non_separated"
        report.diagnostics = {
            "kind": "non_separated",
            "charts": [str(e.i), str(e.j)],
            "intersection_chart_cone": _cone_out(e.cone_ij),
            "intersection_of_cones": _cone_out(e.cone_i_cap_j),
        }
        _emit(args, report, [str(e)])
        return 1
    except FaceCertificateMissing as e:
        report.verdict = "not_open_embedding"
        report.diagnostics = {
            "kind": "face_certificate_missing",
            "charts": [str(e.i), str(e.j)],
            "sigma": _cone_out(e.sigma),
            "tau": _cone_out(e.tau),
        }
        _emit(args, report, [str(e)])
        return 1
    except InvalidAtlas as e:
        raise FileFormatError(str(e))
    fan_doc = fan_file_out(result.fan)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(fan_doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
    report.verdict = "reconstructed"
    report.data["fan"] = fan_doc
    report.data["cones"] = {str(cid): _cone_out(c) for cid, c in result.cone_per_chart.items()}
    report.data["status"] = result.status
    report.certificates = {
        "face_localizations": [
            {"chart": str(i), "other": str(j), **_face_cert_out(cert)}
            for (i, j), cert in sorted(result.certificates.items(), key=repr)
        ]
    }
    lines = [f"reconstructed fan with {len(result.fan)} cones (rank {result.fan.rank})"]
    if args.output:
        lines.append(f"fan written to {args.output}")
    # -o holds the reconstructed fan file; the report goes to stdout
    _emit(args, report, lines, write_output=False)
    return 0


def cmd_dual(args):
    report = Report(args)
    rank, gens = load_cone_file(args.path)
    c = cone_mod.cone_from_generators(rank, gens)
    d = cone_mod.dual(c)
    report.verdict = "ok"
    report.data["cone"] = _cone_out(c)
    report.data["dual"] = _cone_out(d)
    _emit(
        args,
        report,
        [
            f"dual cone rays: {[list(r) for r in d.rays]}",
            f"dual cone lineality: {[list(l) for l in d.lineality]}",
        ],
    )
    return 0


def cmd_hilbert(args):
    report = Report(args)
    rank, gens = load_cone_file(args.path)
    c = cone_mod.cone_from_generators(rank, gens)
    try:
        m = monoid_mod.monoid_of(c)
    except NotStronglyConvex as e:
        report.verdict = "not_strongly_convex"
        report.diagnostics = _fan_violation(e)
        _emit(args, report, [str(e)])
        return 1
    report.verdict = "ok"
    report.data["hilbert"] = _vecs_out(m.hilbert)
    report.data["lineality_gens"] = _vecs_out(m.lineality_gens)
    _emit(
        args,
        report,
        [
            f"hilbert basis ({len(m.hilbert)}): {[list(h) for h in m.hilbert]}",
            f"lineality generators: {[list(l) for l in m.lineality_gens]}",
        ],
    )
    return 0


def cmd_faces(args):
    report = Report(args)
    rank, gens = load_cone_file(args.path)
    c = cone_mod.cone_from_generators(rank, gens)
    fs = cone_mod.faces(c)
    report.verdict = "ok"
    report.data["faces"] = [
        {"cone": _cone_out(f.cone), "witness": _vec_out(f.witness)} for f in fs
    ]
    lines = [f"{len(fs)} faces"]
    for f in fs:
        lines.append(
            f"  dim {cone_mod.classify(f.cone).dim}: rays {[list(r) for r in f.cone.rays]}"
            f" (witness {list(f.witness)})"
        )
    _emit(args, report, lines)
    return 0


def cmd_has_zero(args):
    report = Report(args)
    rank, gens = load_cone_file(args.path)
    c = cone_mod.cone_from_generators(rank, gens)
    try:
        m = monoid_mod.monoid_of(c)
    except NotStronglyConvex as e:
        report.verdict = "not_strongly_convex"
        report.diagnostics = _fan_violation(e)
        _emit(args, report, [str(e)])
        return 1
    z = monoid_mod.has_zero(m)
    if z is None:
        dim = cone_mod.classify(c).dim
        report.verdict = "none"
        report.diagnostics = {
            "kind": "degenerate_cone",
            "dim": _int_out(dim),
            "rank": _int_out(rank),
        }
        _emit(
            args,
            report,
            [
                "none: the chart has an absorbing point exactly when its cone "
                f"spans the ambient space, but this cone has dimension {dim} "
                f"in rank {rank}; some nonzero character is invertible on the "
                "chart and an absorbing point would have to kill it",
            ],
        )
        return 1
    report.verdict = "zero_exists"
    report.data["zero_point"] = _point_out(z)
    _emit(
        args,
        report,
        ["absorbing point exists: value 1 on the trivial character, 0 on all others"],
    )
    return 0


def cmd_one_param(args):
    report = Report(args)
    rank, gens = load_cone_file(args.path)
    c = cone_mod.cone_from_generators(rank, gens)
    try:
        v = tuple(_int_in(x, "--vector") for x in args.vector.split(","))
    except FileFormatError:
        raise
    if len(v) != rank:
        raise FileFormatError(f"--vector must have {rank} entries")
    try:
        m = monoid_mod.monoid_of(c)
    except NotStronglyConvex as e:
        report.verdict = "not_strongly_convex"
        report.diagnostics = _fan_violation(e)
        _emit(args, report, [str(e)])
        return 1
    report.data["vector"] = _vec_out(v)
    if not monoid_mod.one_param_extends(m, v):
        report.verdict = "does_not_extend"
        _emit(
            args,
            report,
            [
                f"{list(v)} does not extend: it pairs negatively with some "
                "character of the chart",
            ],
        )
        return 1
    limit = monoid_mod.one_param_limit(m, v)
    report.verdict = "extends"
    report.data["limit_point"] = _point_out(limit)
    _emit(
        args,
        report,
        [
            f"{list(v)} extends over 0",
            f"limit point supported on face with rays "
            f"{[list(r) for r in limit.support_face.rays]}",
        ],
    )
    return 0


def cmd_separatedness(args):
    report = Report(args)
    try:
        f = _load_valid_fan(args)
    except (NotStronglyConvex, Condition1Violation, Condition2Violation) as e:
        report.verdict = "invalid"
        report.diagnostics = _fan_violation(e)
        _emit(args, report, [f"invalid fan: {e}"])
        return 1
    atlas = variety_mod.build_atlas(f)
    cert = variety_mod.separatedness_certificate(atlas)
    assert cert.verify(atlas)
    report.verdict = "separated"
    report.certificates = _separatedness_cert_out(cert)
    npairs = len(cert.pairs)
    ndecs = sum(len(p.decompositions) for p in cert.pairs)
    _emit(
        args,
        report,
        [f"separated: {ndecs} generator decompositions over {npairs} cone pairs"],
    )
    return 0


def cmd_face_cert(args):
    report = Report(args)
    doc = _load_json(args.path)
    rank = _int_in(_require(doc, "rank", args.path), f"{args.path}: rank")
    sig_gens = [_vec_in(v, f"{args.path}: sigma") for v in _require(doc, "sigma", args.path)]
    tau_gens = [_vec_in(v, f"{args.path}: tau") for v in _require(doc, "tau", args.path)]
    sigma = cone_mod.cone_from_generators(rank, sig_gens)
    tau = cone_mod.cone_from_generators(rank, tau_gens)
    try:
        m = monoid_mod.monoid_of(sigma)
        cert = variety_mod.face_localization_certificate(m, tau)
    except (NotStronglyConvex, ValueError) as e:
        report.verdict = "rejected"
        report.diagnostics = {"kind": "precondition", "message": str(e)}
        _emit(args, report, [str(e)])
        return 1
    if cert is None:
        report.verdict = "not_a_face"
        _emit(
            args,
            report,
            [
                "no certificate: tau is not a face of sigma, so the tau chart "
                "is not the nonvanishing locus of any single character of the "
                "sigma chart",
            ],
        )
        return 1
    assert cert.verify(m)
    report.verdict = "face"
    report.certificates = _face_cert_out(cert)
    _emit(
        args,
        report,
        [
            f"face certificate: f = {list(cert.f)}, "
            f"{len(cert.covers)} generator representations",
        ],
    )
    return 0


# ---------------------------------------------------------------------------
# entry point


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="torfan",
        description="Exact toric chart computations on JSON fan, cone and atlas files.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, path_help):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("path", help=path_help)
        p.add_argument("--json", action="store_true", help="print the JSON report")
        p.add_argument("-o", "--output", metavar="PATH", help="write the primary output file")
        p.add_argument("--seed", type=int, default=None, help="echoed in the report")
        p.add_argument(
            "--no-auto-close",
            dest="auto_close_override",
            action="store_const",
            const=False,
            default=None,
            help="do not add missing faces before validating fans",
        )
        p.set_defaults(func=func)
        return p

    add("validate-fan", cmd_validate_fan, "check the fan conditions", "fan file")
    add("has-semigroup", cmd_has_semigroup, "decide toric semigroup structure", "fan file")
    add("reconstruct", cmd_reconstruct, "recover a fan from an affine atlas", "atlas file")
    add("dual", cmd_dual, "dual cone of a generated cone", "cone file")
    add("hilbert", cmd_hilbert, "generators of the chart monoid", "cone file")
    add("faces", cmd_faces, "all faces with dual witnesses", "cone file")
    add("has-zero", cmd_has_zero, "absorbing point of the chart", "cone file")
    p = add("one-param", cmd_one_param, "extendability and limit of a one-parameter map", "cone file")
    p.add_argument("--vector", required=True, help="comma separated integers")
    add("separatedness", cmd_separatedness, "separatedness certificate for a fan", "fan file")
    add("face-cert", cmd_face_cert, "face localization certificate", "sigma/tau file")
    return parser


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    args = parser.parse_args(argv)
    args.argv = ["torfan"] + argv
    try:
        return args.func(args)
    except FileFormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CertificateSearchExhausted as e:
        # an operational limit, not a mathematical verdict
        print(f"error: {e}", file=sys.stderr)
        return 2
    except TorfanError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
