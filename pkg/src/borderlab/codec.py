"""JSON (dict) encoding of every object that crosses the CLI/service boundary.

All numbers travel as rational strings ("p/q" or an integer literal); headline
values additionally carry a 30-digit decimal rendering.  Encoders and decoders
round-trip exactly.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .chow import ChowVector, MembershipVerdict, VertexVerdict
from .graphs import Multigraph
from .hypercube import BoundedFunction, WeightVector
from .interim import DistinguishedSets, ExPostRule, FeasibilityVerdict, ReducedForm
from .model import (
    Environment,
    Explicit,
    FeasibleFamily,
    GraphicalMatroid,
    KUnit,
    PublicProject,
    SingleItem,
    SingleMinded,
    require_valid,
)
from .ratlp import FarkasCertificate
from .rational import decimal_str, format_rational, parse_rational


def rationals(values) -> tuple[Fraction, ...]:
    return tuple(parse_rational(v) for v in values)


def rational_strings(values) -> list[str]:
    return [format_rational(v) for v in values]


def value_fields(value: Fraction, key: str = "value") -> dict:
    return {key: format_rational(value), f"{key}_decimal": decimal_str(value)}


# ---------------------------------------------------------------------------
# graphs
# ---------------------------------------------------------------------------


def graph_from_dict(d: dict) -> Multigraph:
    return Multigraph(
        vertices=int(d["vertices"]),
        edges=tuple((int(u), int(v)) for u, v in d.get("edges", [])),
        directed=bool(d.get("directed", False)),
    )


def graph_to_dict(g: Multigraph) -> dict:
    return {
        "vertices": g.vertices,
        "directed": g.directed,
        "edges": [[u, v] for u, v in g.edges],
    }


# ---------------------------------------------------------------------------
# environments
# ---------------------------------------------------------------------------


def family_from_dict(d: dict) -> FeasibleFamily:
    kind = d.get("kind")
    if kind == "single_item":
        return SingleItem()
    if kind == "k_unit":
        return KUnit(k=int(d["k"]))
    if kind == "public_project":
        return PublicProject()
    if kind == "single_minded":
        return SingleMinded(tuple(frozenset(b) for b in d["bundles"]))
    if kind == "graphical_matroid":
        return GraphicalMatroid(graph_from_dict(d["graph"]))
    if kind == "explicit":
        return Explicit(tuple(frozenset(int(i) for i in s) for s in d["sets"]))
    raise ValueError(f"unknown family kind {kind!r}")


def family_to_dict(family: FeasibleFamily) -> dict:
    if isinstance(family, SingleItem):
        return {"kind": "single_item"}
    if isinstance(family, KUnit):
        return {"kind": "k_unit", "k": family.k}
    if isinstance(family, PublicProject):
        return {"kind": "public_project"}
    if isinstance(family, SingleMinded):
        return {"kind": "single_minded", "bundles": [sorted(b) for b in family.bundles]}
    if isinstance(family, GraphicalMatroid):
        return {"kind": "graphical_matroid", "graph": graph_to_dict(family.graph)}
    if isinstance(family, Explicit):
        return {"kind": "explicit", "sets": [sorted(s) for s in family.sets]}
    raise TypeError(f"unknown family {family!r}")


def environment_from_dict(d: dict) -> Environment:
    env = Environment(
        players=int(d["players"]),
        supports=tuple(rationals(s) for s in d["supports"]),
        priors=tuple(rationals(p) for p in d["priors"]),
        family=family_from_dict(d["family"]),
    )
    return require_valid(env)


def environment_to_dict(env: Environment) -> dict:
    return {
        "players": env.players,
        "supports": [rational_strings(s) for s in env.supports],
        "priors": [rational_strings(p) for p in env.priors],
        "family": family_to_dict(env.family),
    }


# ---------------------------------------------------------------------------
# rules and reduced forms
# ---------------------------------------------------------------------------


def interim_rule_from(d) -> tuple[tuple[Fraction, ...], ...]:
    rows = d["y"] if isinstance(d, dict) else d
    return tuple(rationals(row) for row in rows)


def interim_rule_to_list(y) -> list[list[str]]:
    return [rational_strings(row) for row in y]


def reduced_form_from_dict(d: dict) -> ReducedForm:
    return ReducedForm(
        y=tuple(rationals(row) for row in d["y"]),
        q=tuple(rationals(row) for row in d["q"]),
    )


def reduced_form_to_dict(rf: ReducedForm) -> dict:
    return {
        "y": [rational_strings(row) for row in rf.y],
        "q": [rational_strings(row) for row in rf.q],
    }


def expost_to_dict(rule: ExPostRule) -> dict:
    return {
        "sets": [sorted(s) for s in rule.sets],
        "rows": {
            " ".join(map(str, t)): rational_strings(probs)
            for t, probs in sorted(rule.rows.items())
        },
    }


# ---------------------------------------------------------------------------
# certificates and verdicts
# ---------------------------------------------------------------------------


def certificate_to_dict(cert) -> dict:
    if isinstance(cert, DistinguishedSets):
        return {"kind": "distinguished_sets", "sets": [sorted(s) for s in cert.sets]}
    if isinstance(cert, FarkasCertificate):
        return {
            "kind": "farkas",
            "constraint_multipliers": rational_strings(cert.constraint_multipliers),
            "lower_multipliers": rational_strings(cert.lower_multipliers),
            "upper_multipliers": rational_strings(cert.upper_multipliers),
        }
    if isinstance(cert, WeightVector):
        return {
            "kind": "separating_functional",
            "a0": format_rational(cert.a0 if cert.a0 is not None else Fraction(0)),
            "weights": rational_strings(cert.weights),
        }
    raise TypeError(f"unknown certificate {cert!r}")


def feasibility_to_dict(verdict: FeasibilityVerdict, include_witness: bool = True) -> dict:
    out: dict = {"status": verdict.status}
    if verdict.feasible and verdict.witness is not None and include_witness:
        out["witness"] = expost_to_dict(verdict.witness)
    if not verdict.feasible and verdict.certificate is not None:
        out["certificate"] = certificate_to_dict(verdict.certificate)
    return out


def chow_membership_to_dict(verdict: MembershipVerdict) -> dict:
    out: dict = {"status": verdict.status}
    if verdict.witness is not None:
        out["witness"] = rational_strings(verdict.witness.table)
    if verdict.certificate is not None:
        out["certificate"] = certificate_to_dict(verdict.certificate)
    return out


def vertex_to_dict(verdict: VertexVerdict) -> dict:
    out: dict = {"status": verdict.status, "unique_witness": verdict.unique_witness}
    if verdict.witness is not None:
        out["witness"] = rational_strings(verdict.witness.table)
    if verdict.halfspace is not None:
        out["halfspace"] = {
            "a0": format_rational(verdict.halfspace.a0 or Fraction(0)),
            "weights": rational_strings(verdict.halfspace.weights),
        }
    return out


# ---------------------------------------------------------------------------
# hypercube objects
# ---------------------------------------------------------------------------


def bounded_function_from(values) -> BoundedFunction:
    table = rationals(values)
    n = len(table).bit_length() - 1
    if len(table) != 2**n:
        raise ValueError(f"table length {len(table)} is not a power of two")
    return BoundedFunction(n, table)


def chow_vector_from(values) -> ChowVector:
    return ChowVector(rationals(values))


def weight_vector_from(values, a0=None) -> WeightVector:
    return WeightVector(rationals(values), a0=None if a0 is None else parse_rational(a0))


def digest(payload) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canonical.encode()).hexdigest()
