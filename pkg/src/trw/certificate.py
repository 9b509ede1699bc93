"""JSON certificates and the wire forms of polynomials.

Integers travel as decimal strings so arbitrary precision survives any JSON
reader.  Field names here are a stable interface.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any

from . import __version__
from .intpoly import IntPoly
from .multipoly import MultiParamPoly, ParamXPoly


def intpoly_to_json(f: IntPoly, var: str = "x") -> dict:
    return {"var": var, "coeffs": [str(c) for c in f.coeffs]}


def intpoly_from_json(d: dict) -> IntPoly:
    return IntPoly(int(c) for c in d["coeffs"])


def multipoly_to_json(p: MultiParamPoly) -> dict:
    return {
        "params": list(p.params),
        "terms": [{"exps": list(e), "coeff": str(c)} for e, c in p.terms],
    }


def multipoly_from_json(d: dict) -> MultiParamPoly:
    return MultiParamPoly(
        tuple(d["params"]), tuple((tuple(t["exps"]), int(t["coeff"])) for t in d["terms"])
    )


def paramxpoly_to_json(pf: ParamXPoly) -> dict:
    return {
        "var": "x",
        "params": list(pf.params),
        "coeffs": [multipoly_to_json(c) for c in pf.coeffs],
    }


def paramxpoly_from_json(d: dict) -> ParamXPoly:
    return ParamXPoly(tuple(d["params"]), tuple(multipoly_from_json(c) for c in d["coeffs"]))


def family_to_json(fam) -> dict:
    return {
        "name": fam.name,
        "params": list(fam.params),
        "degree": fam.degree,
        "poly": paramxpoly_to_json(fam.poly),
        "poly_text": str(fam.poly),
        "default_range": {p: [str(lo), str(hi)] for p, (lo, hi) in fam.default_range.items()},
        "provenance": fam.provenance,
    }


@dataclass
class Certificate:
    command: str
    inputs: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    elapsed_ms: float = 0
    tool_version: str = __version__

    def to_dict(self) -> dict:
        return {
            "tool_version": self.tool_version,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "failures": self.failures,
            "elapsed_ms": self.elapsed_ms,
        }

    @classmethod
    def from_dict(cls, d: dict) -> Certificate:
        return cls(
            command=d["command"],
            inputs=d["inputs"],
            results=d["results"],
            failures=d["failures"],
            elapsed_ms=d["elapsed_ms"],
            tool_version=d["tool_version"],
        )

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def load_schema() -> dict[str, Any]:
    text = resources.files("trw").joinpath("certificate.schema.json").read_text(encoding="utf-8")
    return json.loads(text)
