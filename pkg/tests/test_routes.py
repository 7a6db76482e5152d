# tests/test_routes.py
import json
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from quallogic.main import app

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_root(client):
    assert client.get("/").json()["service"] == "quallogic"


# ---------------- syntax ----------------
def test_parse_and_print(client):
    res = client.post("/syntax/parse", json={"lang": "BIG", "formula": "p -> q -> r"})
    assert res.status_code == 200
    body = res.json()
    assert body["formula"] == "p -> q -> r"
    again = client.post("/syntax/print", json={"ast": body["ast"]})
    assert again.json()["formula"] == "p -> q -> r"
    assert again.json()["lang"] == "BIG"


def test_syntax_error_is_a_bad_request(client):
    res = client.post("/syntax/parse", json={"formula": "p &"})
    assert res.status_code == 400
    assert res.json()["detail"]["error"] == "syntax"


def test_language_error_is_a_bad_request(client):
    res = client.post("/syntax/parse", json={"lang": "CPL", "formula": "neg p"})
    assert res.status_code == 400
    assert res.json()["detail"]["error"] == "language"


# ---------------- evaluation ----------------
def test_eval_big(client):
    res = client.post("/eval/big", json={"formula": "p -< q", "valuation": {"p": "1/2", "q": "1/3"}})
    assert res.json() == {"value": "1/2"}


def test_eval_g2(client):
    res = client.post("/eval/g2", json={"formula": "p o- q", "lang": "G2NEL",
                                        "valuation": {"p": ["1/2", "1/4"], "q": ["1/3", "1/2"]}})
    assert res.json() == {"value": ["1/2", "1/3"]}


def test_eval_qg(client):
    model = {"states": 1, "v": {"r": []}, "mu": {"[]": "0", "[0]": "1/2"}}
    res = client.post("/eval/qg", json={"formula": "B(r | ~r)", "model": model})
    assert res.json() == {"value": "1/2"}


def test_bd_entails_with_search(client):
    res = client.post("/eval/bd-entails", json={"phi": "p & neg p", "chi": "q", "max_states": 2})
    body = res.json()
    assert body["status"] == "fails"
    assert body["witness"] == {"p": "b", "q": "f"}
    assert body["model"]["states"] == 1


# ---------------- decision ----------------
@pytest.mark.parametrize("query, payload, status", [
    ("big-valid", {"conclusion": "(p -> q) | (q -> p)"}, "holds"),
    ("big-entails", {"conclusion": "q", "premises": ["p", "p -> q"], "strategy": "grid"}, "holds"),
    ("g2-entails", {"conclusion": "p | neg p", "lang": "G2ORD"}, "fails"),
    ("qg-entails", {"conclusion": "B(p | q)", "premises": ["B(p)"]}, "holds"),
])
def test_decide(client, query, payload, status):
    res = client.post(f"/decide/{query}", json=payload)
    assert res.status_code == 200
    assert res.json()["status"] == status


def test_unknown_decision_is_not_found(client):
    assert client.post("/decide/everything", json={"conclusion": "p"}).status_code == 404


# ---------------- kripke ----------------
def test_kripke_support_and_entailment(client):
    model = {"states": 2, "order": [0, 1], "vplus": {"p": [0, 1], "q": []}, "vminus": {"p": [], "q": []}}
    res = client.post("/kripke/support", json={"model": model, "formula": "p -< q", "state": 1})
    assert res.json()["positive"] is True
    res = client.post("/kripke/entails", params={"max_states": 1}, json={"conclusion": "p | neg p"})
    assert res.json()["status"] == "fails"


def test_kripke_counterpart(client):
    res = client.post("/kripke/counterpart", json={"valuation": {"p": ["1", "0"]}})
    assert res.json()["model"]["states"] == 3
    res = client.post("/kripke/counterpart", json={})
    assert res.status_code == 400


def test_persistence(client):
    res = client.post("/kripke/persistence", params={"max_states": 2}, json={"formulas": ["p -< q"]})
    body = res.json()
    assert body["upward"] == 0 and body["printed"] > 0


# ---------------- measures ----------------
def test_check_property(client):
    frame = {"states": 2, "mu": {"[]": "0", "[0]": "0", "[1]": "0", "[0,1]": "1/2"}}
    res = client.post("/model/check-property", json={"frame": frame, "property": "cond_III"})
    assert res.json()["status"] == "fails"
    res = client.post("/model/frame-validates", json={"frame": frame, "formula": "snot B(p) -> delta (B(q) <-> B(p | q))"})
    assert res.json()["status"] == "fails"


def test_correspondence(client):
    res = client.post("/model/correspondence", json={"condition": "III", "max_states": 2, "grid": 2})
    assert res.json()["holds"] is True


def test_search_countermodel(client):
    res = client.post("/model/search-countermodel", json={"conclusion": "B(r | ~r)"})
    body = res.json()
    assert body["status"] == "fails"
    assert body["model"]["states"] == 1


def test_canonical_model(client):
    res = client.post("/model/canonical", json={"valuation": {"B(p)": "3/4", "B(p | q)": "1/2"}})
    assert res.status_code == 400
    assert res.json()["detail"]["error"] == "inconsistent"


# ---------------- qualitative probability ----------------
def test_qp_sat(client):
    model = {"states": 2, "weights": {"0": ["1", "0"], "1": ["0", "1"]}, "v": {"p": [0]}}
    res = client.post("/qp/sat", json={"model": model, "formula": "Bot <= p"})
    assert res.json()["status"] == "holds"
    res = client.post("/qp/sat", json={"model": model, "formula": "p <= Bot", "state": 0})
    assert res.json()["status"] == "fails"


def test_translate_sif(client):
    res = client.post("/qp/translate-sif", json={"formula": "p <= q"})
    assert res.json()["formula"] == "delta (B(p) -> B(q))"
    res = client.post("/qp/translate-sif", json={"formula": "(p <= q) <= r"})
    assert res.json()["detail"]["error"] == "not-sif"


def test_generated_instances(client):
    res = client.post("/qp/gen-e", json={"phis": ["p"], "chis": ["q"]})
    assert res.json()["formula"] == "delta (B(p & q | ~p & ~q) <-> B(Top))"
    res = client.post("/qp/gen-kps", json={"m": 1, "phis": ["p"], "chis": ["q"], "family": "A4"})
    assert res.json()["formula"] == "(p & q | ~p & ~q ~~ Top) => (q <= p)"


def test_represent_lp(client):
    order = {"states": 2, "rank": {"[]": 0, "[0]": 1, "[1]": 1, "[0,1]": 2}}
    res = client.post("/qp/represent-lp", json={"order": order})
    assert res.json()["witness"]["weights"] == ["1/2", "1/2"]
    res = client.post("/qp/represent-lp", json={"order": {"states": 2, "rank": {"[]": 0}}})
    assert res.json()["detail"]["error"] == "order"


def test_qp_counterpart_and_random_model(client):
    model = {"states": 2, "v": {"p": [0]}, "mu": {"[]": "0", "[0]": "1/4", "[1]": "3/4", "[0,1]": "1"}}
    assert client.post("/qp/counterpart", json={"model": model}).json()["status"] == "holds"
    res = client.post("/qp/random-model", params={"max_states": 2, "seed": 7}, json={"variables": ["p"]})
    assert res.json()["model"]["states"] == 2


# ---------------- proofs ----------------
def test_match_axiom(client):
    res = client.post("/prove/match-axiom", json={"calculus": "hqg", "formula": "B(p & q) -> B(p)"})
    assert res.json()["schema"] == "reg"
    res = client.post("/prove/match-axiom", json={"calculus": "RFDE", "formula": ["p", "p | q"]})
    assert res.json()["schema"] == "or_i1"


def test_check_derivation(client):
    derivation = json.loads((DATA / "reg.json").read_text(encoding="utf-8"))
    res = client.post("/prove/check", json={"derivation": derivation})
    assert res.json()["status"] == "accept"
    derivation["steps"][-1]["formula"] = "B(p) -> B(p & q)"
    body = client.post("/prove/check", json={"derivation": derivation}).json()
    assert body["status"] == "reject"
    assert body["first_failure"]["index"] == len(derivation["steps"])


def test_malformed_derivation_is_a_bad_request(client):
    res = client.post("/prove/check", json={"derivation": {"calculus": "HBIG", "steps": []}})
    assert res.status_code == 400
    assert res.json()["detail"]["error"] == "derivation"


@pytest.mark.parametrize("path, payload", [
    ("/eval/qg", {"formula": "B(p)", "model": {"v": {}}}),
    ("/eval/qg", {"formula": "B(p)", "model": {"states": 1, "v": {"p": [0]}, "mu": {"[]": "0", "[0]": "1/0"}}}),
    ("/qp/sat", {"formula": "p", "model": {"states": 1, "weights": {"0": ["1/0"]}, "v": {}}}),
    ("/qp/represent-lp", {"order": {"states": 64, "rank": {}}}),
])
def test_malformed_models_are_bad_requests(client, path, payload):
    res = client.post(path, json=payload)
    assert res.status_code == 400
    assert res.json()["detail"]["error"] in ("model", "order")
