"""Freeze example data and derived invariants as golden files (tests/golden/v1).

Run after an intentional change to an example; the test suite compares the
live pipeline against these files.
"""
import argparse
import json
from pathlib import Path

from orbitcone import __version__
from orbitcone.examples import EXAMPLES, sl2_group_divisor_vectors
from orbitcone.polycore.rational import fmt_vec
from orbitcone.spherical import moment_polytope, orbit_space_model, valuation_cone

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden" / "v1"

PROVENANCE = {
    "sl2cubed": "lattice, spherical roots and color vectors are the reference values for SL2^3/SL2; "
                "kappa and multiplicities chosen for a bounded test polytope",
    "sl2-group": "divisor vectors computed by the Laurent curve oracle, then frozen",
    "flag": "rank zero, single point",
    "toric-segment": "torus with weights 0 and 1",
    "toric-square": "torus with the unit square as weights",
    "toy-triangle": "synthetic test datum",
    "toy-wedge": "synthetic test datum",
    "horo-triangle": "synthetic test datum",
}


def golden(name: str) -> dict:
    inst = EXAMPLES[name]()
    d = inst.datum
    pol = moment_polytope(d)
    model = orbit_space_model(d, inst.fan, require_complete=inst.require_complete)
    val = valuation_cone(d)
    out = {
        "provenance": PROVENANCE[name],
        "generated_by": f"orbitcone {__version__}",
        "datum": d.to_json(),
        "fan_maximal_cones": [[fmt_vec(r) for r in c.rays] for c in inst.fan.maximal_cones],
        "valuation_cone": {"dim": val.dim, "rays": [fmt_vec(r) for r in val.rays],
                           "lineality": [fmt_vec(r) for r in val.lineality],
                           "facet_normals": [fmt_vec(r) for r in val.facet_normals]},
        "vertices": [fmt_vec(v) for v in pol.vertices],
        "face_count": len(pol.faces),
        "removed_active_sets": [sorted(f.active) for f in model.removed_faces],
    }
    if name == "sl2-group":
        out["oracle_divisor_vectors"] = sl2_group_divisor_vectors()
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=GOLDEN)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name in sorted(EXAMPLES):
        path = args.out / f"{name}.json"
        path.write_text(json.dumps(golden(name), indent=2, sort_keys=True) + "\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
