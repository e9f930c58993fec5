import json
from datetime import datetime, timedelta, timezone

import pytest
from fastapi.testclient import TestClient

from hadithcheck.analytics import QueryLog, QueryLogEntry, read_log
from hadithcheck.corpus import Grade
from hadithcheck.server import MAX_QUERY_CHARS, ServerConfig, create_app
from hadithcheck.verdict import Status

from .conftest import SAMPLE_CORPUS


@pytest.fixture
def app(tmp_path):
    config = ServerConfig(
        corpus_path=str(SAMPLE_CORPUS),
        log_path=str(tmp_path / "queries.log"),
    )
    application = create_app(config)
    yield application
    application.state.query_log.close()


@pytest.fixture
def client(app):
    with TestClient(app, raise_server_exceptions=False) as c:
        yield c


def log_lines(app):
    with open(app.state.query_log.path, encoding="utf-8") as fh:
        return [line for line in fh if line.strip()]


def test_verify_identity(app, client, corpus):
    record = corpus.get("bukhari-0001")
    resp = client.post(
        "/api/v1/verify",
        json={"text": record.matn_raw, "page_url": "https://a.example/p"},
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["status"] == "found"
    assert body["query_normalized"] == record.matn_norm
    assert body["matches"][0]["hadith_id"] == record.id
    assert body["matches"][0]["score"] == 1.0
    assert body["matches"][0]["book"] == "bukhari"
    assert body["matches"][0]["number"] == 1
    assert body["matches"][0]["matn"] == record.matn_raw
    assert body["best_grade"] == record.grade.value

    lines = log_lines(app)
    assert len(lines) == 1
    logged = json.loads(lines[0])
    assert logged["domain"] == "a.example"
    assert logged["url"] == "https://a.example/p"
    assert logged["status"] == "found"
    assert logged["hadith_id"] == record.id
    assert logged["query"] == record.matn_raw


def test_verify_not_found_logged(app, client):
    resp = client.post("/api/v1/verify", json={"text": "كلام عادي ليس له اصل هنا", "page_url": None})
    assert resp.status_code == 200
    body = resp.json()
    assert body["status"] in ("found", "not_found")
    lines = log_lines(app)
    assert len(lines) == 1
    logged = json.loads(lines[0])
    assert logged["status"] == body["status"]


def test_verify_empty_text(app, client):
    resp = client.post("/api/v1/verify", json={"text": "", "page_url": None})
    assert resp.status_code == 400
    assert resp.json() == {"error": "empty_query"}
    assert log_lines(app) == []


def test_verify_latin_gibberish_is_empty_query(client):
    resp = client.post("/api/v1/verify", json={"text": "lorem ipsum 123 !!"})
    assert resp.status_code == 400
    assert resp.json()["error"] == "empty_query"


def test_verify_too_long(client):
    resp = client.post("/api/v1/verify", json={"text": "م" * (MAX_QUERY_CHARS + 1)})
    assert resp.status_code == 413
    assert resp.json()["error"] == "query_too_long"


@pytest.mark.parametrize(
    "body",
    [
        b"",
        b"not json at all",
        b"[1,2,3]",
        b'"just a string"',
        b"{}",
        b'{"page_url": "https://x.example"}',
        b'{"text": 42}',
        b'{"text": "abc", "page_url": 7}',
        b"\xff\xfe\x00",
    ],
)
def test_verify_malformed_bodies(app, client, body):
    resp = client.post(
        "/api/v1/verify", content=body, headers={"content-type": "application/json"}
    )
    assert resp.status_code == 400
    assert resp.json()["error"] == "bad_request"
    assert log_lines(app) == []


def test_every_200_appends_exactly_one_line(app, client, corpus):
    records = list(corpus)[:10]
    ok = 0
    for record in records:
        resp = client.post("/api/v1/verify", json={"text": record.matn_raw})
        if resp.status_code == 200:
            ok += 1
    client.post("/api/v1/verify", json={"text": ""})
    assert ok == 10
    assert len(log_lines(app)) == 10


def test_arabic_never_ascii_escaped(client, corpus):
    record = corpus.get("muslim-0001")
    resp = client.post("/api/v1/verify", json={"text": record.matn_raw})
    assert "\\u06" not in resp.text
    assert record.matn_norm.split()[0] in resp.text


def test_log_write_failure_counted(app, client, monkeypatch, corpus):
    def boom(entry):
        raise OSError("disk full")

    monkeypatch.setattr(app.state.query_log, "append", boom)
    record = corpus.get("bukhari-0002")
    resp = client.post("/api/v1/verify", json={"text": record.matn_raw})
    assert resp.status_code == 200  # verification still succeeds
    health = client.get("/api/v1/health").json()
    assert health["log_write_failures"] == 1


def test_health(client):
    resp = client.get("/api/v1/health")
    assert resp.status_code == 200
    body = resp.json()
    assert body == {"status": "ok", "corpus_size": 500, "log_write_failures": 0}
    assert client.get("/api/v1/health").json() == body


def test_trends_empty(client):
    resp = client.get("/api/v1/trends")
    assert resp.status_code == 200
    assert resp.json() == {"trends": []}


def test_trends_counts_and_enrichment(app, client, corpus):
    a = corpus.get("bukhari-0001")
    b = corpus.get("muslim-0002")
    for _ in range(3):
        client.post("/api/v1/verify", json={"text": a.matn_raw})
    client.post("/api/v1/verify", json={"text": b.matn_raw})
    body = client.get("/api/v1/trends?window_days=7&limit=10").json()
    assert [(t["hadith_id"], t["query_count"]) for t in body["trends"]] == [
        (a.id, 3),
        (b.id, 1),
    ]
    top = body["trends"][0]
    assert top["book"] == "bukhari"
    assert top["number"] == 1
    assert top["grade"] == a.grade.value
    assert "last_seen" in top


def test_trends_window_excludes_old(app, client):
    old = QueryLogEntry.create(
        datetime.now(timezone.utc) - timedelta(days=8),
        "قديم",
        None,
        Status.FOUND,
        Grade.SAHIH,
        "bukhari-0001",
    )
    app.state.query_log.append(old)
    body = client.get("/api/v1/trends?window_days=7").json()
    assert body["trends"] == []
    body = client.get("/api/v1/trends?window_days=30").json()
    assert len(body["trends"]) == 1


@pytest.mark.parametrize("query", ["window_days=0", "limit=0", "window_days=-2", "limit=abc", "window_days=1.5"])
def test_trends_param_validation(client, query):
    resp = client.get(f"/api/v1/trends?{query}")
    assert resp.status_code == 400
    assert resp.json()["error"] == "bad_request"


def test_sites_empty(client):
    assert client.get("/api/v1/sites").json() == {"sites": []}


def test_sites_scores(app, client):
    now = datetime.now(timezone.utc)
    log = app.state.query_log
    for _ in range(3):
        log.append(
            QueryLogEntry.create(now, "q", "https://x.example/p", Status.FOUND, Grade.SAHIH, "a")
        )
    log.append(
        QueryLogEntry.create(now, "q", "https://x.example/p", Status.FOUND, Grade.DAEEF, "b")
    )
    for _ in range(4):
        log.append(
            QueryLogEntry.create(now, "q", "https://y.example/p", Status.FOUND, Grade.DAEEF, "c")
        )
    body = client.get("/api/v1/sites").json()
    assert [s["domain"] for s in body["sites"]] == ["x.example", "y.example"]
    assert round(body["sites"][0]["score"], 6) == 0.666667
    assert round(body["sites"][1]["score"], 6) == 0.166667
    assert body["sites"][0]["sahih_count"] == 3
    assert body["sites"][0]["dhaeef_count"] == 1


def test_sites_param_validation(client):
    assert client.get("/api/v1/sites?limit=0").status_code == 400
    assert client.get("/api/v1/sites?limit=x").status_code == 400


def test_cors_headers_present(client):
    resp = client.post(
        "/api/v1/verify",
        json={"text": ""},
        headers={"origin": "chrome-extension://abcdef"},
    )
    assert resp.headers.get("access-control-allow-origin") == "*"


def test_cors_preflight(client):
    resp = client.options(
        "/api/v1/verify",
        headers={
            "origin": "chrome-extension://abcdef",
            "access-control-request-method": "POST",
            "access-control-request-headers": "content-type",
        },
    )
    assert resp.status_code == 200
    assert "access-control-allow-origin" in resp.headers


def test_custom_cors_allowlist(tmp_path, corpus):
    config = ServerConfig(
        corpus_path=str(SAMPLE_CORPUS),
        log_path=str(tmp_path / "q.log"),
        cors_origins=("chrome-extension://allowed",),
    )
    app = create_app(config)
    try:
        with TestClient(app) as client:
            resp = client.get(
                "/api/v1/health", headers={"origin": "chrome-extension://allowed"}
            )
            assert (
                resp.headers.get("access-control-allow-origin")
                == "chrome-extension://allowed"
            )
    finally:
        app.state.query_log.close()


def test_server_rejects_bad_corpus(tmp_path):
    bad = tmp_path / "bad.jsonl"
    bad.write_text("oops\n", encoding="utf-8")
    from hadithcheck.corpus import CorpusError

    with pytest.raises(CorpusError):
        create_app(ServerConfig(corpus_path=str(bad), log_path=str(tmp_path / "q.log")))
