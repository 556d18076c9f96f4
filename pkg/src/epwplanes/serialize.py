"""JSON formats for families, Lagrangians, polynomials, certificates and run
manifests.  Scalars travel as decimal strings "n" or "n/d"; documents are
emitted with sorted keys so identical inputs give identical bytes."""

import hashlib
import json
import sys

from .errors import WrongAmbient, WrongDimension
from .lagrangian import LagrangianSubspace
from .linalg import Subspace
from .planes import PlaneFamily
from .poly import MultiPoly
from .scalars import scalar_from_str, scalar_to_str

PACKAGE_VERSION = "0.1.0"


def _row_strs(row):
    return [scalar_to_str(x) for x in row]


def _row_vals(row):
    return [scalar_from_str(x) for x in row]


def family_to_json(family: PlaneFamily) -> dict:
    return {
        "ambient": family.ambient_dim,
        "planes": [{"basis": [_row_strs(r) for r in m.rows]} for m in family.members],
    }


def family_from_json(doc: dict) -> PlaneFamily:
    ambient = int(doc["ambient"])
    if ambient not in (6, 7):
        raise WrongAmbient(f"ambient must be 6 or 7, got {ambient}")
    members = []
    for entry in doc["planes"]:
        rows = [_row_vals(r) for r in entry["basis"]]
        sp = Subspace(ambient, rows)
        if sp.dim != 3:
            raise WrongDimension(f"plane basis has rank {sp.dim}")
        members.append(sp)
    return PlaneFamily(ambient, members)


def lagrangian_to_json(a: LagrangianSubspace, planes=None) -> dict:
    doc = {"ambient": 6, "basis": [_row_strs(r) for r in a.rows]}
    if planes:
        doc["planes"] = [{"basis": [_row_strs(r) for r in w.rows]} for w in planes]
    return doc


def lagrangian_from_json(doc: dict):
    """Returns (LagrangianSubspace, list of marked planes, possibly empty)."""
    rows = [_row_vals(r) for r in doc["basis"]]
    a = LagrangianSubspace(Subspace(20, rows))
    planes = []
    for entry in doc.get("planes", []):
        planes.append(Subspace(6, [_row_vals(r) for r in entry["basis"]]))
    return a, planes


def poly_to_json(f: MultiPoly) -> list:
    return [
        {"exp": list(e), "coeff": scalar_to_str(c) if f.p is None else str(c)}
        for e, c in f.sorted_terms()
    ]


def poly_from_json(items, nvars, p=None) -> MultiPoly:
    terms = {}
    for it in items:
        c = scalar_from_str(it["coeff"])
        terms[tuple(int(k) for k in it["exp"])] = int(c) if p is not None else c
    return MultiPoly(nvars, terms, p)


def epw_to_json(eq) -> dict:
    return {
        "polynomial": [] if eq.identically_zero else poly_to_json(eq.y),
        "identically_zero": eq.identically_zero,
        "hyperplane": _row_strs(eq.hyperplane),
    }


def subspace_to_json(s: Subspace) -> dict:
    return {"ambient": s.ambient_dim, "basis": [_row_strs(r) for r in s.rows]}


def certificate_to_json(cert) -> dict:
    return {
        "verdict": cert.verdict,
        "primes": list(cert.primes),
        "witness": None if cert.witness is None else subspace_to_json(cert.witness),
        "reason": cert.reason,
        "span_dim": cert.span_dim,
        "isotropic_dim": cert.isotropic_dim,
        "spanning_lagrangian": cert.spanning_lagrangian,
        "counts": getattr(cert, "counts", None),
    }


def family_report_to_json(rep) -> dict:
    return {
        "size": rep.size,
        "incidence": rep.incidence,
        "intersection_dims": rep.intersection_dims,
        "line_pairs": [list(p) for p in rep.line_pairs],
        "all_pairwise_incident": rep.all_pairwise_incident,
        "span_dim": rep.span_dim,
        "not_finitely_completable": rep.not_finitely_completable,
    }


def curve_to_json(c) -> dict:
    return {
        "is_plane": c.is_plane,
        "polynomial": [] if c.is_plane else poly_to_json(c.c),
        "frame": [[str(x) for x in r] for r in c.frame],
    }


def singularity_report_to_json(rep) -> dict:
    return {
        "points": [
            {
                "point": [scalar_to_str(x) for x in r.point],
                "n_p": r.n_p,
                "multiplicity": r.multiplicity,
                "cusp": r.cusp,
            }
            for r in rep.records
        ],
        "tallies": {str(j): rep.tallies[j] for j in sorted(rep.tallies)},
        "component_count": rep.component_count,
        "notes": rep.notes,
    }


def audit_to_json(audit) -> dict:
    return {
        "cap": audit.cap,
        "binding": audit.binding,
        "violated": audit.violated,
        "feasible": audit.feasible,
    }


def psi_report_to_json(rep) -> dict:
    return {
        "prime": rep.prime,
        "ambient_points": rep.ambient_points,
        "common_zeros": rep.common_zeros,
        "grassmann_points": rep.grassmann_points,
        "projected_points": rep.projected_points,
        "containment": rep.containment,
    }


def run_manifest(command, inputs: dict, seed, primes) -> dict:
    """Digest of the run: command, sha256 of each input blob, seed, primes.

    Wall-clock time goes to stderr, never into the document, so reruns with
    identical inputs stay byte-identical.
    """
    return {
        "command": list(command),
        "inputs": {
            name: hashlib.sha256(blob).hexdigest() for name, blob in sorted(inputs.items())
        },
        "seed": seed,
        "primes": list(primes),
        "versions": {
            "epwplanes": PACKAGE_VERSION,
            "python": "%d.%d" % sys.version_info[:2],
        },
    }


def emit(doc, out=None):
    """Write a JSON document with deterministic bytes to a path or stdout."""
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)
    return text
