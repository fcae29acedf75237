"""The /v1/tag inference server.

Request:  POST /v1/tag  {"id": "<string>", "tokens": ["<piece>", ...]}
Response: 200 {"id": "<same string>", "tags": ["O", "B-Question", ...]}

The id is echoed bit-exactly and exactly one tag is returned per token.
Malformed requests and inputs beyond the model's sequence limit get a non-2xx
status with an {"error": "<message>"} body; the client is expected to window
long inputs before sending.
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

import torch
from transformers import BertForTokenClassification

from .labels import LABELS
from .vocab import WordVocab

WIRE_PATH = "/v1/tag"


class TagModel:
    """A loaded checkpoint that turns piece strings into tag strings."""

    def __init__(self, model: BertForTokenClassification, vocab: WordVocab,
                 labels: tuple[str, ...] = LABELS, max_seq_len: int = 512):
        self.model = model.eval()
        self.vocab = vocab
        self.labels = labels
        self.max_seq_len = max_seq_len

    @classmethod
    def load(cls, checkpoint_dir: str | Path) -> "TagModel":
        checkpoint_dir = Path(checkpoint_dir)
        model = BertForTokenClassification.from_pretrained(checkpoint_dir)
        vocab = WordVocab.load(checkpoint_dir / "vocab.txt")
        labels_path = checkpoint_dir / "labels.json"
        labels = tuple(json.loads(labels_path.read_text(encoding="utf-8"))) \
            if labels_path.exists() else LABELS
        return cls(model, vocab, labels)

    def tag(self, tokens: list[str]) -> list[str]:
        if not tokens:
            return []
        if len(tokens) > self.max_seq_len:
            raise ValueError(
                f"{len(tokens)} tokens exceed the sequence limit of "
                f"{self.max_seq_len}; window the input before sending")
        ids = torch.tensor([self.vocab.encode_pieces(tokens)],
                           dtype=torch.long)
        with torch.no_grad():
            logits = self.model(input_ids=ids).logits[0]
        return [self.labels[i] for i in logits.argmax(-1).tolist()]


class _Handler(BaseHTTPRequestHandler):
    tag_model: TagModel

    def log_message(self, *args) -> None:
        pass

    def _send(self, status: int, payload: dict) -> None:
        body = json.dumps(payload, ensure_ascii=False).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def do_POST(self) -> None:
        if self.path != WIRE_PATH:
            self._send(404, {"error": f"no such path: {self.path}"})
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            request = json.loads(self.rfile.read(length))
        except ValueError:
            self._send(400, {"error": "request body is not valid JSON"})
            return
        if not isinstance(request, dict) or not isinstance(request.get("id"),
                                                           str):
            self._send(400, {"error": "request must be an object with a "
                                      "string 'id'"})
            return
        tokens = request.get("tokens")
        if not isinstance(tokens, list) or any(not isinstance(t, str)
                                               for t in tokens):
            self._send(400, {"error": "request needs a 'tokens' list of "
                                      "strings"})
            return
        try:
            tags = self.tag_model.tag(tokens)
        except ValueError as exc:
            self._send(400, {"error": str(exc)})
            return
        except Exception as exc:  # inference failure must not kill the server
            self._send(500, {"error": f"inference failed: {exc}"})
            return
        self._send(200, {"id": request["id"], "tags": tags})

    def do_GET(self) -> None:
        self._send(404, {"error": "only POST /v1/tag is served"})


class TagServer:
    """Threaded HTTP server around a loaded model; context manager."""

    def __init__(self, tag_model: TagModel, host: str = "127.0.0.1",
                 port: int = 0):
        handler = type("BoundHandler", (_Handler,),
                       {"tag_model": tag_model})
        self._server = ThreadingHTTPServer((host, port), handler)
        self._thread = threading.Thread(target=self._server.serve_forever,
                                        daemon=True)

    @property
    def endpoint(self) -> str:
        host, port = self._server.server_address[:2]
        return f"http://{host}:{port}"

    def start(self) -> "TagServer":
        self._thread.start()
        return self

    def __enter__(self) -> "TagServer":
        return self.start()

    def __exit__(self, *exc_info) -> None:
        self.stop()

    def stop(self) -> None:
        self._server.shutdown()
        self._server.server_close()
        self._thread.join(timeout=5)

    def serve_forever(self) -> None:
        self._thread.start()
        self._thread.join()


def serve(checkpoint_dir: str | Path, host: str = "127.0.0.1",
          port: int = 8080) -> None:
    """Load a checkpoint and serve /v1/tag until interrupted."""
    server = TagServer(TagModel.load(checkpoint_dir), host, port)
    print(f"serving {checkpoint_dir} at {server.endpoint}{WIRE_PATH}")
    server.serve_forever()
