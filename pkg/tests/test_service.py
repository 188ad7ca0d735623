import threading

import pytest
from fastapi.testclient import TestClient

from nameline.ingest import IngestConfig
from nameline.service import ServiceConfig, create_app


@pytest.fixture()
def app(model_dir, wiki_endpoint, tmp_path):
    config = ServiceConfig(
        model_dir=str(model_dir),
        ingest=IngestConfig(endpoint=wiki_endpoint, cache_dir=str(tmp_path / "cache")),
    )
    return create_app(config)


@pytest.fixture()
def client(app):
    return TestClient(app, raise_server_exceptions=False)


class TestHealth:
    def test_health_reports_model_version(self, client, fixture_model_set):
        response = client.get("/api/health")
        assert response.status_code == 200
        body = response.json()
        assert body["status"] == "ok"
        assert body["model_version"] == fixture_model_set.version


class TestTimelineEndpoint:
    def test_query_fixture_contains_1914(self, client):
        response = client.get("/api/timeline", params={"query": "Saint Petersburg"})
        assert response.status_code == 200
        body = response.json()
        assert body["query"] == "Saint Petersburg"
        years = [entry["year"] for entry in body["entries"]]
        assert 1914 in years
        assert years == sorted(years)
        petrograd = [e for e in body["entries"]
                     if e["year"] == 1914 and "Petrograd" in e["text"]]
        assert petrograd

    def test_both_params_rejected(self, client):
        response = client.get("/api/timeline",
                              params={"query": "A", "url": "http://x/"})
        assert response.status_code == 400

    def test_no_params_rejected(self, client):
        assert client.get("/api/timeline").status_code == 400

    def test_unknown_article_404(self, client):
        response = client.get("/api/timeline", params={"query": "No Such Place Xyz"})
        assert response.status_code == 404

    def test_article_without_evolutions_is_200_empty(self, client):
        response = client.get("/api/timeline", params={"query": "Quiet Meadow"})
        assert response.status_code == 200
        assert response.json()["entries"] == []

    def test_offline_mode_maps_to_502(self, model_dir, wiki_endpoint, tmp_path):
        config = ServiceConfig(
            model_dir=str(model_dir),
            ingest=IngestConfig(endpoint=wiki_endpoint, offline=True,
                                cache_dir=str(tmp_path / "cache")),
        )
        client = TestClient(create_app(config), raise_server_exceptions=False)
        response = client.get("/api/timeline", params={"query": "Saint Petersburg"})
        assert response.status_code == 502

    def test_upstream_failure_502(self, model_dir, tmp_path):
        config = ServiceConfig(
            model_dir=str(model_dir),
            ingest=IngestConfig(endpoint="http://127.0.0.1:1/w/api.php",
                                cache_dir=str(tmp_path / "cache")),
        )
        client = TestClient(create_app(config), raise_server_exceptions=False)
        response = client.get("/api/timeline", params={"query": "Anything"})
        assert response.status_code == 502

    def test_compute_timeout_504(self, model_dir, wiki_endpoint, tmp_path, monkeypatch):
        import nameline.service as service_module

        def slow_analyze(*args, **kwargs):
            import time
            time.sleep(2.0)
            raise AssertionError("should have timed out first")

        monkeypatch.setattr(service_module, "analyze", slow_analyze)
        config = ServiceConfig(
            model_dir=str(model_dir),
            ingest=IngestConfig(endpoint=wiki_endpoint, cache_dir=str(tmp_path / "c")),
            compute_timeout_seconds=0.2,
        )
        client = TestClient(create_app(config), raise_server_exceptions=False)
        response = client.get("/api/timeline", params={"query": "Saint Petersburg"})
        assert response.status_code == 504

    def test_repeat_request_served_from_cache(self, app, client):
        params = {"query": "Saint Petersburg"}
        first = client.get("/api/timeline", params=params)
        second = client.get("/api/timeline", params=params)
        assert first.status_code == second.status_code == 200
        assert first.json() == second.json()
        assert app.state.compute_count == 1

    def test_failed_fetches_are_not_cached(self, app, client):
        for _ in range(2):
            assert client.get("/api/timeline",
                              params={"query": "No Such Place Xyz"}).status_code == 404

    def test_concurrent_identical_requests_compute_once(self, app, client):
        params = {"query": "Saint Petersburg"}
        barrier = threading.Barrier(4)
        statuses = []

        def worker():
            barrier.wait()
            statuses.append(client.get("/api/timeline", params=params).status_code)

        threads = [threading.Thread(target=worker) for _ in range(4)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert statuses == [200, 200, 200, 200]
        assert app.state.compute_count == 1


class TestStaticAssets:
    def test_ui_served_when_static_dir_present(self, model_dir, wiki_endpoint, tmp_path):
        static = tmp_path / "static"
        static.mkdir()
        (static / "index.html").write_text("<!doctype html><title>ui</title>", "utf-8")
        config = ServiceConfig(
            model_dir=str(model_dir),
            static_dir=str(static),
            ingest=IngestConfig(endpoint=wiki_endpoint, cache_dir=str(tmp_path / "c")),
        )
        client = TestClient(create_app(config), raise_server_exceptions=False)
        response = client.get("/")
        assert response.status_code == 200
        assert "ui" in response.text

    def test_missing_model_dir_fails_at_startup(self, tmp_path):
        config = ServiceConfig(model_dir=str(tmp_path / "nothing"))
        with pytest.raises(Exception):
            create_app(config)
