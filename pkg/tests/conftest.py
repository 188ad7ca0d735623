import json
import threading
from http.server import BaseHTTPRequestHandler, HTTPServer
from importlib import resources
from pathlib import Path
from urllib.parse import parse_qs, urlparse

import pytest

from nameline.pipeline import save_model_set
from nameline.svm import TrainConfig
from nameline.training import build_datasets, load_corpus, train_model_set

FIXTURES = Path(__file__).parent / "fixtures"


def package_fixture(name: str) -> Path:
    return Path(str(resources.files("nameline").joinpath(f"fixtures/{name}")))


@pytest.fixture(scope="session")
def fixture_corpus_path():
    return package_fixture("corpus.jsonl")


@pytest.fixture(scope="session")
def fixture_articles(fixture_corpus_path):
    return load_corpus(fixture_corpus_path)


@pytest.fixture(scope="session")
def fixture_datasets(fixture_articles):
    return build_datasets(fixture_articles, ratio=1.0, seed=0)


@pytest.fixture(scope="session")
def fixture_model_set(fixture_datasets):
    return train_model_set(fixture_datasets, TrainConfig(seed=0))


@pytest.fixture(scope="session")
def model_dir(fixture_model_set, tmp_path_factory):
    directory = tmp_path_factory.mktemp("models")
    save_model_set(fixture_model_set, directory)
    return directory


@pytest.fixture(scope="session")
def sp_text():
    return package_fixture("saint_petersburg.txt").read_text("utf-8")


@pytest.fixture(scope="session")
def recorded_wiki_payload():
    return json.loads((FIXTURES / "recorded_wiki_saint_petersburg.json").read_text("utf-8"))


class _WikiHandler(BaseHTTPRequestHandler):
    payload: dict = {}

    def do_GET(self):  # noqa: N802  (stdlib handler API)
        params = parse_qs(urlparse(self.path).query)
        title = params.get("titles", [""])[0]
        if title == "Rate Limited Town":
            self.send_response(429)
            self.end_headers()
            return
        if title == "Quiet Meadow":
            body = json.dumps({
                "query": {"pages": {"77": {
                    "pageid": 77, "ns": 0, "title": "Quiet Meadow",
                    "extract": "The grass grew tall. Rain fell often.",
                }}}
            }).encode("utf-8")
        elif title == "Saint Petersburg":
            body = json.dumps(self.payload).encode("utf-8")
        else:
            body = json.dumps({
                "query": {"pages": {"-1": {"ns": 0, "title": title, "missing": ""}}}
            }).encode("utf-8")
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, *args):
        pass


@pytest.fixture(scope="session")
def wiki_endpoint(recorded_wiki_payload):
    """Local HTTP server replaying the recorded encyclopedia response."""
    handler = type("Handler", (_WikiHandler,), {"payload": recorded_wiki_payload})
    server = HTTPServer(("127.0.0.1", 0), handler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_port}/w/api.php"
    server.shutdown()
    thread.join(timeout=5)
