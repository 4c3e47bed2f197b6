"""HTTP surface: every endpoint, verdict-vs-error status codes, round trips."""

import pytest
from fastapi.testclient import TestClient

from borderlab.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


TWO_BIDDER_ITEM = {
    "players": 2,
    "supports": [["0", "1"], ["0", "1"]],
    "priors": [["1/2", "1/2"], ["1/2", "1/2"]],
    "family": {"kind": "single_item"},
}

PAIR_PROJECT = {
    "players": 2,
    "supports": [["0", "1"], ["0", "1"]],
    "priors": [["1/2", "1/2"], ["1/2", "1/2"]],
    "family": {"kind": "public_project"},
}


def test_health(client):
    assert client.get("/health").json() == {"status": "ok"}


def test_environment_validate(client):
    r = client.post("/environment/validate", json=TWO_BIDDER_ITEM)
    assert r.status_code == 200
    assert r.json()["results"]["ok"] is True


def test_feasible_lp_and_border_agree(client):
    payload = {
        "environment": TWO_BIDDER_ITEM,
        "y": [["1/4", "3/4"], ["1/4", "3/4"]],
    }
    lp = client.post("/feasible", json={**payload, "method": "lp"}).json()["results"]
    border = client.post("/feasible", json={**payload, "method": "border"}).json()["results"]
    assert lp["status"] == border["status"] == "feasible"
    assert "witness" in lp


def test_feasible_border_certificate(client):
    r = client.post(
        "/feasible",
        json={
            "environment": TWO_BIDDER_ITEM,
            "y": [["1/4", "1"], ["1/4", "1"]],
            "method": "border",
        },
    )
    body = r.json()["results"]
    assert r.status_code == 200  # infeasible is a result, not an error
    assert body["status"] == "infeasible"
    assert body["certificate"] == {"kind": "distinguished_sets", "sets": [[1], [1]]}


def test_optrev_both_methods(client):
    lp = client.post("/optrev", json={"environment": TWO_BIDDER_ITEM}).json()["results"]
    fast = client.post(
        "/optrev", json={"environment": TWO_BIDDER_ITEM, "method": "myerson"}
    ).json()["results"]
    assert lp["value"] == fast["value"] == "3/4"
    assert "reduced_form" in lp and "interim_rule" in fast


def test_optwel(client):
    r = client.post("/optwel", json={"environment": PAIR_PROJECT})
    assert r.json()["results"]["value"] == "1"  # E max(0, v1+v2) = (0+1+1+2)/4


def test_khintchine_and_pp(client):
    assert client.post("/khintchine", json={"weights": ["3", "1"]}).json()["results"]["K"] == "3"
    assert client.post("/pp/rev", json={"weights": ["3", "1"]}).json()["results"]["value"] == "3/2"
    audit = client.post("/pp/audit", json={"weights": ["3", "1"]}).json()["results"]
    assert audit["ok"] and audit["expected_revenue"] == "3/2"


def test_chow_endpoints(client):
    compute = client.post(
        "/chow/compute", json={"function": ["0", "0", "0", "1", "0", "1", "1", "1"]}
    ).json()["results"]
    assert compute["chow"] == ["1/2", "1/4", "1/4", "1/4"]

    opt = client.post("/chow/opt", json={"a0": "0", "weights": ["1", "1", "1"]}).json()["results"]
    assert opt["value"] == "3/4"

    member = client.post(
        "/chow/member", json={"vector": ["1/2", "3/10", "3/10"]}
    ).json()["results"]
    assert member["status"] == "infeasible"
    assert member["certificate"]["kind"] == "separating_functional"

    vertex = client.post("/chow/vertex", json={"vector": ["1/2", "1/2"]}).json()["results"]
    assert vertex["status"] == "vertex"

    conds = client.post(
        "/chow/from-conditionals", json={"conditionals": ["1/2", "7/10", "7/10"]}
    ).json()["results"]
    assert conds["chow"] == ["1/2", "1/5", "1/5"]

    maj = client.post("/chow/majority", json={"n": 3}).json()["results"]
    assert maj["ok"] and maj["sensitivity_sum"] == "3/4"


def test_reduce_endpoints(client):
    part = client.post("/reduce/partition", json={"weights": [1, 1]}).json()["results"]
    assert part["probability"] == "1/2" and part["count"] == 2

    stconn = client.post(
        "/reduce/stconn",
        json={
            "graph": {"vertices": 3, "directed": True, "edges": [[0, 2], [2, 1], [0, 1]]},
            "s": 0,
            "t": 1,
            "k": 12,
        },
    ).json()["results"]
    assert stconn["p"] == "5/8" and stconn["check"] is True

    matroid = client.post(
        "/reduce/matroid",
        json={"graph": {"vertices": 2, "edges": [[0, 1]]}, "s": 0, "t": 1},
    ).json()["results"]
    assert matroid == {"C1": "3/2", "C2": "5/4", "p": "1/2", "identity": True}


def test_domain_errors_are_400(client):
    r = client.post("/khintchine", json={"weights": []})
    assert r.status_code == 400

    bad_env = dict(TWO_BIDDER_ITEM, priors=[["1/2", "1/3"], ["1/2", "1/2"]])
    r = client.post("/optwel", json={"environment": bad_env})
    assert r.status_code == 400
    assert "sum" in r.json()["error"]["message"]

    r = client.post("/khintchine", json={"weights": ["1"] * 40, "cap": 100})
    assert r.status_code == 400
    assert r.json()["error"]["type"] == "CapExceeded"


def test_shape_errors_are_422(client):
    assert client.post("/khintchine", json={}).status_code == 422
    assert client.post("/optrev", json={"environment": {"players": 1}}).status_code == 422


def test_environment_round_trip(client):
    from borderlab import codec

    env = codec.environment_from_dict(TWO_BIDDER_ITEM)
    emitted = codec.environment_to_dict(env)
    assert codec.environment_from_dict(emitted) == env
