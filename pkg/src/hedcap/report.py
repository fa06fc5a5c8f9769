"""Versioned JSON report documents with embedded, re-checkable certificates."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

import jsonschema
import numpy as np

from .bounds import BoundReport, PairReport
from .formats import decode_graph6, encode_graph6
from .graph import Graph, complement, induced_subgraph, or_power
from .paley import is_automorphism, is_complementing, vertex_orbit
from .search import verify_coloring, verify_homomorphism
from .theta import CertifiedValue, SolverConfig, verify_certificate

__all__ = [
    "SCHEMA_VERSION",
    "REPORT_SCHEMA",
    "ReportError",
    "ReportDocument",
    "graph_input",
    "bound_report_dict",
    "pair_report_dict",
    "theta_dict",
    "bound_report_certificates",
    "pair_report_certificates",
    "theta_certificate",
]

SCHEMA_VERSION = "1.0"

_CERT_KINDS = ["clique", "independent-set", "coloring", "homomorphism", "complementing", "automorphisms", "theta"]

REPORT_SCHEMA: dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "additionalProperties": False,
    "required": ["schema_version", "command", "inputs", "results", "certificates", "timing"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"type": "array", "items": {"type": "string"}},
        "inputs": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["id", "n", "graph6", "sha256"],
                "properties": {
                    "id": {"type": "string"},
                    "n": {"type": "integer", "minimum": 0},
                    "graph6": {"type": "string"},
                    "sha256": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
                },
            },
        },
        "results": {"type": "object"},
        "certificates": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["kind"],
                "properties": {"kind": {"enum": _CERT_KINDS}},
            },
        },
        "timing": {"type": "object", "additionalProperties": {"type": "number"}},
    },
}


class ReportError(ValueError):
    pass


def graph_input(gid: str, g: Graph) -> dict[str, Any]:
    g6 = encode_graph6(g)
    return {"id": gid, "n": g.n, "graph6": g6.decode("ascii"), "sha256": hashlib.sha256(g6).hexdigest()}


def _entry_dict(e) -> dict[str, Any]:
    return {"value": e.value, "kind": e.kind, "provenance": e.provenance, "detail": e.detail}


def bound_report_dict(r: BoundReport) -> dict[str, Any]:
    return {
        "graph": r.graph_id,
        "n": r.n,
        "best_lower": r.best_lower,
        "best_upper": r.best_upper,
        "exact": r.exact,
        "entries": [_entry_dict(e) for e in r.entries],
        "notices": list(r.notices),
    }


def pair_report_dict(r: PairReport) -> dict[str, Any]:
    out = {
        "F": r.f_id,
        "G": r.g_id,
        "upper": r.upper,
        "best_lower": r.best_lower,
        "verdict": r.verdict,
        "lower_candidates": [_entry_dict(e) for e in r.lower_candidates],
        "value_interval": None if r.value_interval is None else list(r.value_interval),
        "homomorphisms": {
            k: None if v is None else {"exists": v["mapping"] is not None, "reason": v["reason"]}
            for k, v in r.homomorphisms.items()
        },
        "factors": [bound_report_dict(r.f_report), bound_report_dict(r.g_report)],
        "notices": list(r.notices),
    }
    if r.cap is not None:
        out["cap"] = r.cap
    if r.hypotheses:
        out["hypotheses"] = [{"name": h.name, "holds": h.holds, "detail": h.detail} for h in r.hypotheses]
    if r.narrative:
        out["narrative"] = list(r.narrative)
    return out


def theta_dict(v: CertifiedValue) -> dict[str, Any]:
    return {
        "value": v.value,
        "lower": v.lower,
        "upper": v.upper,
        "gap": v.gap,
        "iterations": v.iterations,
        "status": v.status,
    }


def theta_certificate(gid: str, v: CertifiedValue, of_complement: bool, matrices: bool = True) -> dict[str, Any]:
    return {
        "kind": "theta",
        "graph": gid,
        "complement": of_complement,
        "lower": v.lower,
        "upper": v.upper,
        "primal": v.primal.tolist() if matrices and v.primal is not None else None,
        "dual": v.dual.tolist() if matrices and v.dual is not None else None,
    }


def bound_report_certificates(
    r: BoundReport, g: Graph, cfg: SolverConfig | None = None, matrices: bool = True
) -> list[dict[str, Any]]:
    from .theta import theta_bar

    gid = r.graph_id
    certs: list[dict[str, Any]] = []
    for e in r.entries:
        c = e.certificate
        if e.provenance == "clique-power":
            certs.append({"kind": "clique", "graph": gid, "power": c["power"], "vertices": c["clique"]})
        elif e.provenance == "self-complementary-square":
            certs.append({"kind": "complementing", "graph": gid, "sigma": c["sigma"]})
            certs.append({"kind": "clique", "graph": gid, "power": 2, "vertices": c["clique"]})
        elif e.provenance == "vertex-transitive-selfcomp-theorem" and e.kind == "lower":
            certs.append({"kind": "automorphisms", "graph": gid, "generators": c["generators"]})
        elif e.provenance == "theta-bar":
            tb = theta_bar(g, cfg or SolverConfig())
            certs.append(theta_certificate(gid, tb, True, matrices))
        elif e.provenance == "chromatic":
            certs.append({"kind": "coloring", "graph": gid, "k": int(e.value), "colors": c["coloring"]})
    return certs


def pair_report_certificates(
    r: PairReport, f: Graph, g: Graph, cfg: SolverConfig | None = None, matrices: bool = True
) -> list[dict[str, Any]]:
    certs = bound_report_certificates(r.f_report, f, cfg, matrices)
    certs += bound_report_certificates(r.g_report, g, cfg, matrices)
    for key, (src, dst) in {"F->G": (r.f_id, r.g_id), "G->F": (r.g_id, r.f_id)}.items():
        h = r.homomorphisms.get(key)
        if h is not None and h["mapping"] is not None:
            certs.append({"kind": "homomorphism", "source": src, "target": dst, "mapping": h["mapping"]})
    return certs


def _matrix(x) -> np.ndarray | None:
    return None if x is None else np.asarray(x, dtype=float)


@dataclass
class ReportDocument:
    command: list[str]
    inputs: list[dict[str, Any]] = field(default_factory=list)
    results: dict[str, Any] = field(default_factory=dict)
    certificates: list[dict[str, Any]] = field(default_factory=list)
    timing: dict[str, float] = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def add_input(self, gid: str, g: Graph) -> None:
        if not any(i["id"] == gid for i in self.inputs):
            self.inputs.append(graph_input(gid, g))

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "command": list(self.command),
            "inputs": self.inputs,
            "results": self.results,
            "certificates": self.certificates,
            "timing": self.timing,
        }

    def to_json(self) -> str:
        doc = self.to_dict()
        jsonschema.validate(doc, REPORT_SCHEMA)
        return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> ReportDocument:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ReportError(f"not JSON: {exc}") from exc
        try:
            jsonschema.validate(doc, REPORT_SCHEMA)
        except jsonschema.ValidationError as exc:
            raise ReportError(f"schema violation: {exc.message}") from exc
        return cls(
            command=doc["command"],
            inputs=doc["inputs"],
            results=doc["results"],
            certificates=doc["certificates"],
            timing=doc["timing"],
            schema_version=doc["schema_version"],
        )

    def graphs(self) -> dict[str, Graph]:
        out = {}
        for item in self.inputs:
            g6 = item["graph6"].encode("ascii")
            if hashlib.sha256(g6).hexdigest() != item["sha256"]:
                raise ReportError(f"hash mismatch for input {item['id']}")
            out[item["id"]] = decode_graph6(g6).with_label(item["id"])
        return out

    def verify(self) -> list[str]:
        """Re-check every embedded certificate; returns a list of failures."""
        failures = []
        try:
            graphs = self.graphs()
        except (ReportError, ValueError) as exc:
            return [str(exc)]
        for idx, cert in enumerate(self.certificates):
            try:
                ok = self._verify_one(cert, graphs)
            except (KeyError, IndexError, TypeError, ValueError) as exc:
                ok = False
                cert = {**cert, "error": str(exc)}
            if not ok:
                failures.append(f"certificate {idx} ({cert.get('kind')}) failed")
        return failures

    @staticmethod
    def _verify_one(cert: dict[str, Any], graphs: dict[str, Graph]) -> bool:
        kind = cert["kind"]
        if kind == "homomorphism":
            return verify_homomorphism(graphs[cert["source"]], graphs[cert["target"]], cert["mapping"])
        g = graphs[cert["graph"]]
        if kind == "clique":
            power = cert.get("power", 1)
            host = g if power == 1 else or_power(g, power)
            if "subgraph" in cert:
                host = induced_subgraph(g, cert["subgraph"])
            return host.is_clique(cert["vertices"])
        if kind == "independent-set":
            return g.is_independent(cert["vertices"])
        if kind == "coloring":
            return verify_coloring(g, cert["colors"], cert["k"])
        if kind == "complementing":
            return is_complementing(g, cert["sigma"])
        if kind == "automorphisms":
            gens = cert["generators"]
            return all(is_automorphism(g, p) for p in gens) and len(vertex_orbit(gens, 0)) == g.n
        if kind == "theta":
            h = complement(g) if cert["complement"] else g
            primal, dual = _matrix(cert["primal"]), _matrix(cert["dual"])
            if primal is None or dual is None:
                return cert["lower"] <= cert["upper"]
            value = CertifiedValue(cert["lower"], cert["upper"], 0, "document", primal, dual)
            return verify_certificate(h, value)
        return False
