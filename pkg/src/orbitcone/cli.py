"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 verification failure.
Polytope coordinates are printed in the library's ``+Pol`` convention next to
the negated ``-Pol`` values that match the moment image as written natively.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import jsonschema
import numpy as np

from . import __version__
from .errors import InvalidDatum, MissingRootSystem, OrbitConeError
from .examples import EXAMPLES, ExampleInstance, get_example, random_sum_zero_triple, \
    sample_sl2cubed_orbit
from .momentnum import (
    MinimumFound, NumericConfig, TorusRepresentation, cartan_decompose, invert_toric_moment,
    kempf_ness_minimize, toric_moment,
)
from .polycore import Cone, Fan
from .polycore.rational import fmt_vec
from .schemas import DATUM, MATRIX
from .spherical import (
    SphericalDatum, is_horospherical, moment_polytope, orbit_space_model, stratify_all,
    valuation_cone, verify_toroidal_normal_fan,
)

COMMANDS = ("valcone", "polytope", "orbit-space", "stratify", "verify-fan", "invert-moment",
            "kempf-ness", "cartan", "sample-orbits")


class InputError(Exception):
    pass


class VerificationFailure(Exception):
    def __init__(self, report: dict, message: str):
        super().__init__(message)
        self.report = report


@dataclass
class RunRequest:
    command: str
    input_path: str | None = None
    example_name: str | None = None
    output_format: str = "json"
    seed: int = 0
    tol: float | None = None
    mu: str | None = None
    out: str | None = None
    count: int = 100
    size: int = 2
    allow_incomplete: bool = False
    config: NumericConfig = field(default_factory=NumericConfig)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        needs_source = self.command not in ("cartan", "sample-orbits")
        if needs_source and (self.input_path is None) == (self.example_name is None):
            raise InputError("give exactly one of --input or --example")
        if self.output_format not in ("json", "csv"):
            raise InputError("--format must be json or csv")


# -- formatting --------------------------------------------------------------

def _num(x):
    if isinstance(x, (float, np.floating)):
        return float(f"{float(x):.15g}")
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {k: _num(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_num(v) for v in x]
    if isinstance(x, complex):
        return [_num(x.real), _num(x.imag)]
    return x


def _neg_pol(vec: Sequence[str]) -> list[str]:
    return [str(-Fraction(v)) for v in vec]


def _schema_errors(data, schema) -> list[str]:
    validator = jsonschema.Draft202012Validator(schema)
    out = []
    for err in sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path)):
        pointer = "/" + "/".join(str(p) for p in err.absolute_path)
        out.append(f"{pointer}: {err.message}")
    return out


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def load_instance(req: RunRequest) -> ExampleInstance:
    if req.example_name is not None:
        try:
            return get_example(req.example_name)
        except KeyError as exc:
            raise InputError(str(exc.args[0])) from None
    data = _load_json(req.input_path)
    errors = _schema_errors(data, DATUM)
    if errors:
        raise InputError("schema violations:\n  " + "\n  ".join(errors))
    try:
        datum = SphericalDatum.from_json(data)
    except (OrbitConeError, ValueError) as exc:
        raise InputError(f"invalid datum: {exc}") from None
    if "fan" in data:
        fan = Fan.from_rays(data["fan"], datum.rank) if data["fan"] else Fan((), datum.rank)
    else:
        fan = Fan.from_rays([[d.v] for d in datum.g_stable_divisors], datum.rank) \
            if datum.g_stable_divisors else Fan((), datum.rank)
    return ExampleInstance(datum.name or Path(req.input_path).stem, datum, fan)


def _header(req: RunRequest, inst: ExampleInstance | None) -> dict:
    head = {"tool": "orbitcone", "version": __version__, "command": req.command}
    if inst is not None:
        head["datum"] = inst.name
        head["datum_hash"] = inst.datum.digest()
    return head


SIGN_NOTE = {"plus_pol": "library convention, comparable with the moment polytope",
             "minus_pol": "negated, the moment image as written natively"}


# -- commands ------------------------------------------------------------------

def cmd_valcone(req, inst):
    c = valuation_cone(inst.datum)
    report = {"valuation_cone": c.to_json(), "dimension": c.dim,
              "facets": len(c.facet_normals), "horospherical": is_horospherical(inst.datum)}
    rows = [{"kind": "ray", "vector": " ".join(fmt_vec(r))} for r in c.rays]
    rows += [{"kind": "lineality", "vector": " ".join(fmt_vec(r))} for r in c.lineality]
    rows += [{"kind": "facet_normal", "vector": " ".join(fmt_vec(r))} for r in c.facet_normals]
    return report, rows


def _polytope_report(pol):
    data = pol.to_json()
    return {"polytope": data, "sign_convention": SIGN_NOTE,
            "vertices_plus_pol": data["vertices"],
            "vertices_minus_pol": [_neg_pol(v) for v in data["vertices"]]}


def cmd_polytope(req, inst):
    pol = moment_polytope(inst.datum)
    report = _polytope_report(pol)
    rows = [{"vertex": i, "plus_pol": " ".join(v), "minus_pol": " ".join(_neg_pol(v))}
            for i, v in enumerate(report["vertices_plus_pol"])]
    return report, rows


def _model(req, inst):
    complete = not (req.allow_incomplete or not inst.require_complete)
    return orbit_space_model(inst.datum, inst.fan, require_complete=complete)


def _face_rows(model):
    rows = []
    for status, faces in (("removed", model.removed_faces), ("retained", model.retained_faces)):
        for f in faces:
            rows.append({"status": status, "dimension": f.dimension,
                         "active": " ".join(str(i) for i in sorted(f.active)),
                         "point_plus_pol": " ".join(fmt_vec(f.point)),
                         "point_minus_pol": " ".join(_neg_pol(fmt_vec(f.point)))})
    return rows


def cmd_orbit_space(req, inst):
    model = _model(req, inst)
    report = model.to_json()
    report.update({k: v for k, v in _polytope_report(model.polytope).items() if k != "polytope"})
    report["removed_union_connected"] = model.removed_union_connected()
    report["valuation_cone_facets"] = [fmt_vec(n) for n in model.valuation_cone.facet_normals]
    return report, _face_rows(model)


def cmd_stratify(req, inst):
    model = _model(req, inst)
    reports = stratify_all(inst.datum, model)
    keys = sorted({r.type_key for r in reports})
    report = {"strata": [r.to_json() for r in reports], "type_count": len(keys),
              "retained_faces": len(model.retained_faces)}
    rows = [{"dimension": r.face.dimension, "active": " ".join(sorted(r.active_divisors)),
             "chart_complement": " ".join(sorted(r.chart_complement)),
             "levi_roots": len(r.levi_roots), "type_key": r.type_key,
             "satellite_hint": r.satellite_hint or ""} for r in reports]
    return report, rows


def cmd_verify_fan(req, inst):
    rep = verify_toroidal_normal_fan(inst.datum, inst.fan)
    report = rep.to_json()
    rows = [{"cone_rays": " ".join("(" + ",".join(fmt_vec(r)) + ")" for r in c.rays),
             "face_active": " ".join(str(i) for i in sorted(f.active)), "matched": True}
            for c, f in rep.matches]
    rows += [{"cone_rays": " ".join("(" + ",".join(fmt_vec(r)) + ")" for r in c.rays),
              "face_active": "", "matched": False} for c in rep.unmatched]
    if not rep.ok:
        raise VerificationFailure(report, "fan is not part of the normal fan inside Val")
    return report, rows


def _parse_vector(text: str) -> list[Fraction]:
    try:
        return [Fraction(p.strip()) for p in text.split(",") if p.strip()]
    except ValueError:
        raise InputError(f"cannot parse vector {text!r}") from None


def _weighted(inst):
    w = inst.representation
    if w is None or not hasattr(w, "weights") or not isinstance(w.weights, tuple):
        raise InputError(f"example {inst.name!r} has no torus representation")
    return w


def cmd_invert_moment(req, inst):
    w = _weighted(inst)
    if req.mu is None:
        raise InputError("--mu is required")
    mu_pol = _parse_vector(req.mu)
    if len(mu_pol) != w.rank:
        raise InputError(f"--mu needs {w.rank} coordinates")
    mu_native = [-float(x) for x in mu_pol]
    cfg = req.config
    try:
        xi = invert_toric_moment(w, mu_native, cfg)
    except OrbitConeError as exc:
        raise InputError(f"{type(exc).__name__}: {exc}") from None
    resid = float(np.linalg.norm(toric_moment(w, xi) - np.array(mu_native)))
    report = {"mu_plus_pol": [str(x) for x in mu_pol], "mu_minus_pol": [str(-x) for x in mu_pol],
              "sign_convention": SIGN_NOTE, "xi": _num(xi), "residual": _num(resid)}
    return report, [{"coordinate": i, "xi": _num(x)} for i, x in enumerate(xi)]


def cmd_kempf_ness(req, inst):
    w = _weighted(inst)
    rep = TorusRepresentation(w.matrix)
    rng = np.random.default_rng(req.seed)
    if req.mu is not None:
        v = np.array([float(x) for x in _parse_vector(req.mu)], dtype=complex)
        if len(v) != rep.dim:
            raise InputError(f"vector needs {rep.dim} coordinates")
    else:
        v = rng.normal(size=rep.dim) + 1j * rng.normal(size=rep.dim)
    out = kempf_ness_minimize(rep, v, req.config)
    if isinstance(out, MinimumFound):
        report = {"outcome": "MinimumFound", "stabilizer_dim": out.stabilizer_dim,
                  "moment_norm": _num(out.moment_norm), "norm": _num(out.norm),
                  "point": _num(out.point)}
    else:
        report = {"outcome": "Divergent", "parameter_norm": _num(out.parameter_norm),
                  "reason": out.reason}
    report["vector"] = _num(v)
    return report, [{k: v for k, v in report.items() if not isinstance(v, list)}]


def cmd_cartan(req, inst):
    if req.input_path is not None:
        data = _load_json(req.input_path)
        errors = _schema_errors(data, MATRIX)
        if errors:
            raise InputError("schema violations:\n  " + "\n  ".join(errors))
        h = np.array([[complex(*e) if isinstance(e, list) else e for e in row]
                      for row in data["matrix"]], dtype=complex)
    else:
        n = req.size
        rng = np.random.default_rng(req.seed)
        h = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        h /= np.linalg.det(h) ** (1 / n)
    try:
        res = cartan_decompose(h)
    except OrbitConeError as exc:
        raise InputError(f"{type(exc).__name__}: {exc}") from None
    report = {"val": _num(list(res.val.coordinates)), "k1": _num(res.k1), "k2": _num(res.k2),
              "a": _num(np.diag(res.a).real), "residual": _num(res.residual(h))}
    return report, [{"index": i, "val": _num(x)} for i, x in enumerate(res.val.coordinates)]


def cmd_sample_orbits(req, inst):
    rng = np.random.default_rng(req.seed)
    kinds = ("generic", "collinear", "zero")
    rows = []
    for i in range(req.count):
        kind = kinds[i % 3]
        s = sample_sl2cubed_orbit(*random_sum_zero_triple(rng, kind), req.config)
        rows.append({"construction": kind, "inv1": _num(s.invariants[0]),
                     "inv2": _num(s.invariants[1]), "inv3": _num(s.invariants[2]),
                     "stabilizer_dim": s.stabilizer_dim, "stratum": s.stratum_class,
                     "cone_face": s.cone_face})
    strata = sorted({r["stratum"] for r in rows})
    report = {"samples": len(rows), "strata": strata, "stratum_count": len(strata),
              "valuation_cone_faces": len(Cone.from_inequalities(
                  [(-1, 0, 0), (0, -1, 0), (0, 0, -1)], 3).faces()),
              "rows": rows}
    return report, rows


HANDLERS = {
    "valcone": cmd_valcone, "polytope": cmd_polytope, "orbit-space": cmd_orbit_space,
    "stratify": cmd_stratify, "verify-fan": cmd_verify_fan, "invert-moment": cmd_invert_moment,
    "kempf-ness": cmd_kempf_ness, "cartan": cmd_cartan, "sample-orbits": cmd_sample_orbits,
}


def _render(report: dict, rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_num(report), indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    fields = []
    for r in rows:
        for k in r:
            if k not in fields:
                fields.append(k)
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow(_num(r))
    return buf.getvalue()


def run(req: RunRequest) -> tuple[int, str]:
    """Execute a request; returns ``(exit_code, text)``."""
    inst = None
    try:
        if req.command not in ("cartan", "sample-orbits"):
            inst = load_instance(req)
        report, rows = HANDLERS[req.command](req, inst)
        code = 0
    except VerificationFailure as exc:
        report, rows, code = {**exc.report, "error": str(exc)}, [], 2
    except InputError as exc:
        report, rows, code = {"error": str(exc)}, [], 1
    except (MissingRootSystem, InvalidDatum) as exc:
        report, rows, code = {"error": f"{type(exc).__name__}: {exc}"}, [], 1
    except OrbitConeError as exc:
        # a failed pipeline check, e.g. an incomplete fan
        report, rows, code = {"error": f"{type(exc).__name__}: {exc}"}, [], 2
    out = {**_header(req, inst), **report, "exit_code": code}
    return code, _render(out, rows, req.output_format if code == 0 else "json")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orbitcone", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        src = s.add_mutually_exclusive_group()
        src.add_argument("--example", choices=sorted(EXAMPLES))
        src.add_argument("--input", help="JSON file (datum, or matrix for cartan)")
        s.add_argument("--format", choices=("json", "csv"), default="json")
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--tol", type=float, default=None, help="residual tolerance")
        s.add_argument("--mu", help="comma-separated rationals (a vector for kempf-ness)")
        s.add_argument("--out", help="write the report here instead of stdout")
        s.add_argument("--count", type=int, default=99, help="samples for sample-orbits")
        s.add_argument("--size", type=int, default=2, help="matrix size for random cartan input")
        s.add_argument("--allow-incomplete", action="store_true",
                       help="build the orbit-space model even if the fan misses part of Val")
    return p


def _glue_values(argv: Sequence[str]) -> list[str]:
    # argparse reads "-1/2" as an option; bind vector values to their flag
    out, it = [], iter(argv)
    for tok in it:
        if tok == "--mu":
            out.append(f"--mu={next(it, '')}")
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_values(argv))
    cfg = NumericConfig(residual_tol=args.tol) if args.tol else NumericConfig()
    try:
        req = RunRequest(args.command, args.input, args.example, args.format, args.seed,
                         args.tol, args.mu, args.out, args.count, args.size,
                         args.allow_incomplete, cfg)
    except InputError as exc:
        print(json.dumps({"error": str(exc), "exit_code": 1}), file=sys.stderr)
        return 1
    code, text = run(req)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
