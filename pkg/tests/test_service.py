"""HTTP API contract tests over the in-process test client."""

import json

import pytest
from fastapi.testclient import TestClient

from fairaudit.cohorts import masking_cohort
from fairaudit.service import create_app

UPLOAD_FIELDS = {
    "label_column": "label",
    "prediction_column": "prediction",
    "positive_label": "1",
    "k": "4",
}


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


@pytest.fixture(scope="module")
def dataset(client):
    csv = masking_cohort().to_csv(index=False).encode()
    r = client.post(
        "/datasets",
        files={"file": ("mask.csv", csv, "text/csv")},
        data=UPLOAD_FIELDS,
    )
    assert r.status_code == 201
    return r.json()


def test_upload_reports_schema(dataset):
    assert dataset["row_count"] == 190
    assert dataset["dropped_rows"] == 0
    names = [f["name"] for f in dataset["features"]]
    assert names == ["shade", "shape"]
    assert "accuracy" in dataset["metrics"]


def test_duplicate_upload_new_id_same_schema(client, dataset):
    csv = masking_cohort().to_csv(index=False).encode()
    r = client.post(
        "/datasets", files={"file": ("mask.csv", csv, "text/csv")}, data=UPLOAD_FIELDS
    )
    assert r.status_code == 201
    assert r.json()["dataset_id"] != dataset["dataset_id"]
    assert r.json()["features"] == dataset["features"]


def test_upload_missing_prediction_column(client):
    r = client.post(
        "/datasets",
        files={"file": ("bad.csv", b"a,label\nx,1\ny,0\n", "text/csv")},
        data={"label_column": "label", "prediction_column": "prediction", "positive_label": "1"},
    )
    assert r.status_code == 422
    assert "prediction" in r.json()["detail"]


def test_features_distributions(client, dataset):
    r = client.get(f"/datasets/{dataset['dataset_id']}/features")
    assert r.status_code == 200
    body = r.json()
    shade = next(f for f in body["features"] if f["name"] == "shade")
    assert shade["values"] == ["dark", "light"]
    assert sum(shade["counts"]) == 190


def test_generate_groups_and_averages(client, dataset):
    ds = dataset["dataset_id"]
    r = client.post(
        f"/datasets/{ds}/groups",
        json={"selection": {"shade": ["dark", "light"]}, "metrics": ["accuracy", "fpr"]},
    )
    assert r.status_code == 201
    body = r.json()
    assert len(body["groups"]) == 2
    assert set(body["dataset_averages"]) == {"accuracy", "fpr"}
    accs = {g["name"]: g["metrics"]["accuracy"] for g in body["groups"]}
    assert accs["shade=dark"] == pytest.approx(2 / 3)


def test_generate_empty_selection_is_400(client, dataset):
    r = client.post(f"/datasets/{dataset['dataset_id']}/groups", json={"selection": {}})
    assert r.status_code == 400


def test_generate_unknown_metric_is_400(client, dataset):
    r = client.post(
        f"/datasets/{dataset['dataset_id']}/groups",
        json={"selection": {"shade": ["dark"]}, "metrics": ["nope"]},
    )
    assert r.status_code == 400


def test_list_groups_with_min_size(client, dataset):
    ds = dataset["dataset_id"]
    r = client.get(f"/datasets/{ds}/groups", params={"metrics": "accuracy", "min_size": 10})
    assert r.status_code == 200
    assert all(g["size"] >= 10 for g in r.json()["groups"])


def test_suggested_sorted_ascending(client, dataset):
    ds = dataset["dataset_id"]
    r = client.get(f"/datasets/{ds}/suggested", params={"sort": "accuracy", "min_size": 10})
    assert r.status_code == 200
    body = r.json()
    values = [g["metrics"]["accuracy"] for g in body["groups"]]
    defined = [v for v in values if v is not None]
    assert defined == sorted(defined)
    first = body["groups"][0]
    assert first["dominant_features"]
    assert "distributions" in first


def test_suggested_unknown_sort_is_400(client, dataset):
    r = client.get(f"/datasets/{dataset['dataset_id']}/suggested", params={"sort": "zzz"})
    assert r.status_code == 400


def test_similar_divergence_mode(client, dataset):
    ds = dataset["dataset_id"]
    groups = client.post(
        f"/datasets/{ds}/groups",
        json={"selection": {"shade": ["dark", "light"], "shape": ["circle", "square"]}},
    ).json()["groups"]
    gid = groups[0]["id"]
    r = client.get(f"/datasets/{ds}/groups/{gid}/similar", params={"min_size": 0})
    assert r.status_code == 200
    body = r.json()
    assert body["mode"] == "divergence"
    distances = [n["distance"] for n in body["neighbors"]]
    assert distances == sorted(distances)
    assert all("most_divergent_feature" in n for n in body["neighbors"])


def test_similar_counterfactual_mode(client, dataset):
    ds = dataset["dataset_id"]
    groups = client.post(
        f"/datasets/{ds}/groups",
        json={"selection": {"shade": ["dark"], "shape": ["circle"]}},
    ).json()["groups"]
    gid = groups[0]["id"]
    r = client.get(f"/datasets/{ds}/groups/{gid}/similar", params={"radius": 1})
    assert r.status_code == 200
    body = r.json()
    assert body["mode"] == "counterfactual"
    assert len(body["neighbors"]) == 2
    deltas = [n["delta"] for n in body["neighbors"] if n["delta"] is not None]
    assert deltas == sorted(deltas, reverse=True)


def test_similar_unknown_group_404(client, dataset):
    r = client.get(f"/datasets/{dataset['dataset_id']}/groups/feedbeef0000/similar")
    assert r.status_code == 404


def test_detail_and_selection_roundtrip(client, dataset):
    ds = dataset["dataset_id"]
    groups = client.post(
        f"/datasets/{ds}/groups",
        json={"selection": {"shade": ["dark", "light"], "shape": ["circle", "square"]}},
    ).json()["groups"]
    pinned, hovered = groups[0]["id"], groups[1]["id"]
    r = client.get(f"/datasets/{ds}/detail", params={"pinned": pinned, "hovered": hovered})
    assert r.status_code == 200
    body = r.json()
    assert body["pinned"]["id"] == pinned
    assert body["hovered"]["id"] == hovered
    assert "constraints" in body["pinned"]
    assert "distributions" in body["pinned"]
    assert "label_balance" in body["pinned"]

    r = client.post(f"/datasets/{ds}/selection", json={"pinned": pinned, "hovered": hovered})
    assert r.status_code == 200
    r = client.post(f"/datasets/{ds}/export", json={})
    assert r.status_code == 200
    doc = r.json()
    assert [g["id"] for g in doc["groups"]] == [pinned, hovered]


def test_export_schema_round_trip(client, dataset):
    ds = dataset["dataset_id"]
    groups = client.post(
        f"/datasets/{ds}/groups", json={"selection": {"shade": ["dark"]}}
    ).json()["groups"]
    r = client.post(f"/datasets/{ds}/export", json={"ids": [groups[0]["id"]]})
    assert r.status_code == 200
    doc = r.json()
    assert doc["tool_version"]
    assert doc["dataset_id"] == ds
    (g,) = doc["groups"]
    assert g["kind"] == "predicate"
    assert g["constraints"] == {"shade": "dark"}
    assert set(g["confusion"]) == {"tp", "tn", "fp", "fn"}
    assert sum(g["confusion"].values()) == g["size"]
    assert set(g["metrics"]) >= {"accuracy", "recall", "fpr", "f1"}
    # JSON round trip preserves exact values
    assert json.loads(json.dumps(doc)) == doc


def test_export_nothing_selected_is_400(client):
    csv = masking_cohort().to_csv(index=False).encode()
    ds = client.post(
        "/datasets", files={"file": ("m.csv", csv, "text/csv")}, data=UPLOAD_FIELDS
    ).json()["dataset_id"]
    r = client.post(f"/datasets/{ds}/export", json={})
    assert r.status_code == 400


def test_unknown_dataset_404(client):
    assert client.get("/datasets/nope/features").status_code == 404


def test_payload_values_bit_exact(client, dataset):
    """The same number must appear identically in every payload that carries it."""
    ds = dataset["dataset_id"]
    listed = client.get(f"/datasets/{ds}/groups", params={"metrics": "accuracy"}).json()
    for g in listed["groups"]:
        detail = client.get(f"/datasets/{ds}/groups/{g['id']}").json()
        assert detail["metrics"]["accuracy"] == g["metrics"]["accuracy"]


def test_recluster_endpoint(client):
    csv = masking_cohort().to_csv(index=False).encode()
    ds = client.post(
        "/datasets", files={"file": ("m.csv", csv, "text/csv")}, data=UPLOAD_FIELDS
    ).json()["dataset_id"]
    r = client.post(f"/datasets/{ds}/recluster", params={"k": 2, "seed": 1})
    assert r.status_code == 200
    assert r.json()["clusters"] == 2
    r = client.get(f"/datasets/{ds}/suggested", params={"sort": "accuracy", "min_size": 0})
    assert len(r.json()["groups"]) == 2


def test_suggested_descending_order(client, dataset):
    ds = dataset["dataset_id"]
    asc = client.get(f"/datasets/{ds}/suggested", params={"sort": "fpr", "min_size": 0}).json()
    desc = client.get(
        f"/datasets/{ds}/suggested", params={"sort": "fpr", "order": "desc", "min_size": 0}
    ).json()
    asc_vals = [g["metrics"]["fpr"] for g in asc["groups"] if g["metrics"]["fpr"] is not None]
    desc_vals = [g["metrics"]["fpr"] for g in desc["groups"] if g["metrics"]["fpr"] is not None]
    assert asc_vals == sorted(asc_vals)
    assert desc_vals == sorted(desc_vals, reverse=True)
