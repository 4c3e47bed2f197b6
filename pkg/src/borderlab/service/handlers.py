"""One handler per operation, shared verbatim by the HTTP app and the CLI.

Each handler converts a request model into core objects, runs the operation,
and renders a plain results dict (rational strings, deterministic key order).
Verdicts such as "infeasible" are results; only malformed input or cap
overruns raise.
"""

from __future__ import annotations

from fractions import Fraction

from .. import boolpp, chow, codec, gadgets, interim, optimize
from ..hypercube import DEFAULT_CAP
from ..model import validate
from ..rational import decimal_str, format_rational
from . import schemas


def _cap(request) -> int:
    return request.cap if request.cap is not None else DEFAULT_CAP


def validate_environment(model: schemas.EnvironmentModel) -> dict:
    env = codec.environment_from_dict(model.model_dump())
    report = validate(env)
    return {"ok": report.ok, "problems": list(report.problems)}


def feasible(request: schemas.FeasibleRequest) -> dict:
    env = codec.environment_from_dict(request.environment.model_dump())
    y = codec.interim_rule_from(request.y)
    if request.method == "border":
        verdict = interim.border_check(env, y, cap=_cap(request))
    else:
        verdict = interim.membership_lp(env, y, cap=_cap(request))
    out = codec.feasibility_to_dict(verdict)
    out["method"] = request.method
    return out


def optrev(request: schemas.OptRevRequest) -> dict:
    env = codec.environment_from_dict(request.environment.model_dump())
    if request.method == "myerson":
        value, rule = optimize.myerson_single_item(env, cap=_cap(request))
        out = codec.value_fields(value)
        out["interim_rule"] = codec.interim_rule_to_list(rule)
    else:
        value, rf, _witness = optimize.opt_rev_lp(env, cap=_cap(request))
        out = codec.value_fields(value)
        out["reduced_form"] = codec.reduced_form_to_dict(rf)
    out["method"] = request.method
    return out


def optwel(request: schemas.OptWelRequest) -> dict:
    env = codec.environment_from_dict(request.environment.model_dump())
    return codec.value_fields(optimize.opt_wel(env, cap=_cap(request)))


def khintchine(request: schemas.WeightsRequest) -> dict:
    weights = codec.weight_vector_from(request.weights)
    value = boolpp.khintchine(weights, cap=_cap(request))
    return {"K": format_rational(value), "K_decimal": decimal_str(value)}


def pp_rev(request: schemas.WeightsRequest) -> dict:
    return codec.value_fields(boolpp.pp_opt_rev(codec.rationals(request.weights), cap=_cap(request)))


def pp_audit(request: schemas.WeightsRequest) -> dict:
    report = boolpp.mechanism_audit(codec.rationals(request.weights), cap=_cap(request))
    out = {
        "truthful": report.truthful,
        "ex_post_ir": report.ex_post_ir,
        "revenue_matches_k_half": report.revenue_matches_k_half,
        "ok": report.ok,
    }
    out.update(codec.value_fields(report.expected_revenue, key="expected_revenue"))
    return out


def chow_compute(request: schemas.ChowComputeRequest) -> dict:
    f = codec.bounded_function_from(request.function)
    vec = chow.chow_vector(f, cap=_cap(request))
    return {"chow": codec.rational_strings(vec.c)}


def chow_opt(request: schemas.ChowOptRequest) -> dict:
    a = codec.weight_vector_from(request.weights, a0=request.a0)
    optimum = chow.chow_opt(a, cap=_cap(request))
    out = codec.value_fields(optimum.value)
    out["optimizer"] = codec.rational_strings(optimum.optimizer.table)
    return out


def chow_member(request: schemas.ChowVectorRequest) -> dict:
    verdict = chow.chow_membership(codec.chow_vector_from(request.vector), cap=_cap(request))
    return codec.chow_membership_to_dict(verdict)


def chow_vertex(request: schemas.ChowVectorRequest) -> dict:
    verdict = chow.is_vertex(codec.chow_vector_from(request.vector), cap=_cap(request))
    return codec.vertex_to_dict(verdict)


def chow_from_conditionals(request: schemas.ConditionalsRequest) -> dict:
    vec = chow.conditionals_to_chow(codec.rationals(request.conditionals))
    return {"chow": codec.rational_strings(vec.c)}


def chow_majority(request: schemas.MajorityRequest) -> dict:
    report = chow.majority_extremality(request.n, cap=_cap(request))
    out = {"n": report.n}
    out.update(codec.value_fields(report.sensitivity_sum, key="sensitivity_sum"))
    out["equals_chow_opt"] = report.equals_chow_opt
    out["sweep_performed"] = report.sweep_performed
    if report.sweep_max is not None:
        out["sweep_max"] = format_rational(report.sweep_max)
        out["majority_attains_sweep_max"] = report.majority_attains_sweep_max
    out["ok"] = report.ok
    return out


def reduce_partition(request: schemas.PartitionRequest) -> dict:
    instance = gadgets.PartitionInstance(tuple(request.weights))
    a0, a1 = gadgets.partition_gadget(instance)
    probability, count = gadgets.partition_count_via_khintchine(instance, cap=_cap(request))
    out = {
        "a0": codec.rational_strings(a0.weights),
        "a1": codec.rational_strings(a1.weights),
    }
    out.update(codec.value_fields(probability, key="probability"))
    out["count"] = count
    return out


def reduce_stconn(request: schemas.StConnRequest) -> dict:
    g = codec.graph_from_dict(request.graph.model_dump())
    gadget = gadgets.stconn_gadget(g, request.s, request.t, request.k)
    p, check = gadgets.stconn_recover(g, request.s, request.t, request.k, cap=_cap(request))
    out = codec.value_fields(p, key="p")
    out["check"] = check
    out["red_edges"] = gadget.red_count
    out["internal_vertices"] = gadget.internal_count
    out["blue_multiplicity"] = gadget.multiplicity
    return out


def reduce_matroid(request: schemas.MatroidRequest) -> dict:
    g = codec.graph_from_dict(request.graph.model_dump())
    report = gadgets.matroid_gadget_check(g, request.s, request.t, cap=_cap(request))
    return {
        "C1": format_rational(report.c1),
        "C2": format_rational(report.c2),
        "p": format_rational(report.p),
        "identity": report.identity_holds,
    }
