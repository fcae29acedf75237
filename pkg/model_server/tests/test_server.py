from __future__ import annotations

import pytest
import requests

from model_server.server import TagModel, TagServer
from model_server.synthetic import overfit_documents, write_conll
from model_server.train import TrainingConfig, train


@pytest.fixture(scope="module")
def quick_server(tmp_path_factory):
    """A server over a barely-trained (1-epoch) checkpoint: protocol tests
    only care about the wire behavior, not tag quality."""
    workdir = tmp_path_factory.mktemp("quick-model")
    data = workdir / "tiny.conll"
    write_conll(overfit_documents(6, seed=5), data)
    checkpoint = workdir / "ckpt"
    train(data, checkpoint, TrainingConfig(epochs=1, batch_size=4, seed=0))
    model = TagModel.load(checkpoint)
    model.max_seq_len = 16  # small limit so the rejection path is testable
    with TagServer(model) as server:
        yield server


def _post(server, payload=None, raw: bytes | None = None):
    url = server.endpoint + "/v1/tag"
    if raw is not None:
        return requests.post(url, data=raw,
                             headers={"Content-Type": "application/json"},
                             timeout=10)
    return requests.post(url, json=payload, timeout=10)


class TestProtocol:
    def test_six_tokens_six_tags(self, quick_server):
        response = _post(quick_server,
                         {"id": "r1", "tokens": ["What", "is", "force?",
                                                 "Answer", "as", "directed."]})
        assert response.status_code == 200
        assert response.headers["Content-Type"].startswith("application/json")
        payload = response.json()
        assert payload["id"] == "r1"
        assert len(payload["tags"]) == 6
        assert all(t in ("B-Question", "I-Question", "O")
                   for t in payload["tags"])

    def test_unicode_id_echoed_bit_exactly(self, quick_server):
        response = _post(quick_server, {"id": "doc-Ω#3", "tokens": ["What"]})
        assert response.json()["id"] == "doc-Ω#3"

    def test_unknown_pieces_still_tagged(self, quick_server):
        response = _post(quick_server,
                         {"id": "r2", "tokens": ["zzz", "qqq"]})
        assert len(response.json()["tags"]) == 2

    def test_empty_tokens(self, quick_server):
        response = _post(quick_server, {"id": "r3", "tokens": []})
        assert response.status_code == 200
        assert response.json() == {"id": "r3", "tags": []}

    def test_missing_tokens_is_client_error(self, quick_server):
        response = _post(quick_server, {"id": "r4"})
        assert response.status_code == 400
        assert isinstance(response.json()["error"], str)

    def test_malformed_json_is_client_error(self, quick_server):
        response = _post(quick_server, raw=b"{nope")
        assert response.status_code == 400
        assert "JSON" in response.json()["error"]

    def test_non_list_tokens_rejected(self, quick_server):
        response = _post(quick_server, {"id": "r5", "tokens": "What"})
        assert response.status_code == 400

    def test_overlong_input_rejected_with_protocol_error(self, quick_server):
        tokens = ["tok"] * 17  # limit is 16 in this fixture
        response = _post(quick_server, {"id": "r6", "tokens": tokens})
        assert response.status_code == 400
        assert "sequence limit" in response.json()["error"]

    def test_unknown_path_is_404_with_error_body(self, quick_server):
        response = requests.post(quick_server.endpoint + "/v2/tag",
                                 json={"id": "x", "tokens": []}, timeout=10)
        assert response.status_code == 404
        assert "error" in response.json()

    def test_get_is_not_served(self, quick_server):
        response = requests.get(quick_server.endpoint + "/v1/tag", timeout=10)
        assert response.status_code == 404

    def test_concurrent_requests(self, quick_server):
        from concurrent.futures import ThreadPoolExecutor

        def hit(i: int):
            payload = _post(quick_server,
                            {"id": f"c{i}", "tokens": ["What", "is"]}).json()
            return payload["id"], len(payload["tags"])

        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(hit, range(16)))
        assert results == [(f"c{i}", 2) for i in range(16)]
