"""The /v1/tag wire protocol: client, local stub server, and conformance.

One JSON document per request over HTTP POST:

    request:  {"id": "<string>", "tokens": ["<t1>", ...]}
    response: {"id": "<string>", "tags": ["O", "B-Question", ...]}

Content type is application/json both ways. A non-2xx status carries
``{"error": "<message>"}``. The response must echo the request id and return
exactly one tag per token, every tag being one of the three serialized BIO
forms. The client retries once on transport failure and never on a malformed
response: a protocol violation is a bug in the server, not a flake.

:class:`StubTagServer` is a minimal in-process implementation used by tests
and demos; :func:`run_conformance` drives any server (stub or real) through
the protocol contract and reports one result per check.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Callable, Sequence

import requests

from .core import BioTag

WIRE_PATH = "/v1/tag"


class RemoteTagError(Exception):
    """Base for remote tagging failures; names the endpoint and request."""

    def __init__(self, endpoint: str, request_id: str, message: str):
        super().__init__(f"{message} (endpoint {endpoint}, request id "
                         f"{request_id!r})")
        self.endpoint = endpoint
        self.request_id = request_id


class RemoteTransportError(RemoteTagError):
    """Connection-level failure after the single retry."""


class RemoteTimeoutError(RemoteTagError):
    """The server did not answer within the configured timeout."""


class RemoteServerError(RemoteTagError):
    """The server answered with a non-2xx status and an error body."""


class MalformedResponseError(RemoteTagError):
    """A 2xx response violating the protocol invariants."""


def normalize_endpoint(url: str) -> str:
    """Accept either a base URL or a full /v1/tag URL."""
    url = url.rstrip("/")
    return url if url.endswith(WIRE_PATH) else url + WIRE_PATH


def post_tag(endpoint: str, request_id: str, tokens: Sequence[str],
             timeout_s: float = 10.0) -> list[BioTag]:
    """Send one tagging request and validate the response invariants."""
    url = normalize_endpoint(endpoint)
    body = {"id": request_id, "tokens": list(tokens)}
    response = None
    for attempt in (0, 1):
        try:
            response = requests.post(url, json=body, timeout=timeout_s)
            break
        except requests.exceptions.Timeout:
            if attempt:
                raise RemoteTimeoutError(
                    endpoint, request_id,
                    f"timed out after {timeout_s:g}s") from None
        except requests.exceptions.RequestException as exc:
            if attempt:
                raise RemoteTransportError(
                    endpoint, request_id, f"transport failure: {exc}") from None
    if not 200 <= response.status_code < 300:
        try:
            message = response.json().get("error", response.text)
        except ValueError:
            message = response.text
        raise RemoteServerError(
            endpoint, request_id,
            f"server returned {response.status_code}: {message}")
    try:
        payload = response.json()
    except ValueError:
        raise MalformedResponseError(endpoint, request_id,
                                     "response body is not JSON") from None
    if not isinstance(payload, dict):
        raise MalformedResponseError(endpoint, request_id,
                                     "response is not a JSON object")
    if payload.get("id") != request_id:
        raise MalformedResponseError(
            endpoint, request_id,
            f"response id {payload.get('id')!r} does not echo the request id")
    tags = payload.get("tags")
    if not isinstance(tags, list):
        raise MalformedResponseError(endpoint, request_id,
                                     "response has no 'tags' list")
    if len(tags) != len(tokens):
        raise MalformedResponseError(
            endpoint, request_id,
            f"{len(tags)} tags for {len(tokens)} tokens")
    try:
        return [BioTag.parse(t) for t in tags]
    except (ValueError, TypeError) as exc:
        raise MalformedResponseError(endpoint, request_id,
                                     f"unparsable tag: {exc}") from None


TagFn = Callable[[str, list[str]], Sequence[str]]


class _StubHandler(BaseHTTPRequestHandler):
    tag_fn: TagFn

    def log_message(self, *args) -> None:  # keep test output quiet
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
        length = int(self.headers.get("Content-Length", "0"))
        raw = self.rfile.read(length)
        try:
            request = json.loads(raw)
        except ValueError:
            self._send(400, {"error": "request body is not valid JSON"})
            return
        if not isinstance(request, dict) or "id" not in request:
            self._send(400, {"error": "request must be an object with 'id'"})
            return
        tokens = request.get("tokens")
        if not isinstance(tokens, list) or any(not isinstance(t, str)
                                               for t in tokens):
            self._send(400, {"error": "request needs a 'tokens' list of "
                                      "strings"})
            return
        try:
            tags = list(self.tag_fn(request["id"], tokens))
        except Exception as exc:
            self._send(400, {"error": str(exc)})
            return
        self._send(200, {"id": request["id"], "tags": tags})


class StubTagServer:
    """An in-process /v1/tag server driven by a (request_id, tokens) -> tags
    callable. Use as a context manager; ``endpoint`` gives the base URL."""

    def __init__(self, tag_fn: TagFn, host: str = "127.0.0.1", port: int = 0):
        handler = type("BoundStubHandler", (_StubHandler,), {"tag_fn": staticmethod(tag_fn)})
        self._server = ThreadingHTTPServer((host, port), handler)
        self._thread = threading.Thread(target=self._server.serve_forever,
                                        daemon=True)

    @property
    def endpoint(self) -> str:
        host, port = self._server.server_address[:2]
        return f"http://{host}:{port}"

    def __enter__(self) -> "StubTagServer":
        self._thread.start()
        return self

    def __exit__(self, *exc_info) -> None:
        self._server.shutdown()
        self._server.server_close()
        self._thread.join(timeout=5)


@dataclass(frozen=True, slots=True)
class ConformanceCheck:
    name: str
    passed: bool
    detail: str = ""


def _check_tagging(url: str, request_id: str, tokens: list[str],
                   timeout_s: float) -> ConformanceCheck:
    name = f"tagging round trip ({request_id!r}, {len(tokens)} tokens)"
    try:
        response = requests.post(url, json={"id": request_id,
                                            "tokens": tokens},
                                 timeout=timeout_s)
    except requests.exceptions.RequestException as exc:
        return ConformanceCheck(name, False, f"transport failure: {exc}")
    if response.status_code != 200:
        return ConformanceCheck(name, False,
                                f"status {response.status_code}: "
                                f"{response.text[:200]}")
    if "application/json" not in response.headers.get("Content-Type", ""):
        return ConformanceCheck(
            name, False, f"content type is "
            f"{response.headers.get('Content-Type')!r}, not application/json")
    try:
        payload = response.json()
    except ValueError:
        return ConformanceCheck(name, False, "body is not JSON")
    if payload.get("id") != request_id:
        return ConformanceCheck(name, False,
                                f"id not echoed bit-exactly: "
                                f"{payload.get('id')!r}")
    tags = payload.get("tags")
    if not isinstance(tags, list) or len(tags) != len(tokens):
        return ConformanceCheck(name, False,
                                f"expected {len(tokens)} tags, got "
                                f"{tags if not isinstance(tags, list) else len(tags)}")
    bad = [t for t in tags if t not in ("B-Question", "I-Question", "O")]
    if bad:
        return ConformanceCheck(name, False, f"invalid tag strings: {bad[:5]}")
    return ConformanceCheck(name, True)


def _check_error(url: str, name: str, raw_body: bytes,
                 timeout_s: float) -> ConformanceCheck:
    try:
        response = requests.post(url, data=raw_body,
                                 headers={"Content-Type": "application/json"},
                                 timeout=timeout_s)
    except requests.exceptions.RequestException as exc:
        return ConformanceCheck(name, False, f"transport failure: {exc}")
    if 200 <= response.status_code < 300:
        return ConformanceCheck(name, False,
                                f"expected a non-2xx status, got "
                                f"{response.status_code}")
    try:
        payload = response.json()
    except ValueError:
        return ConformanceCheck(name, False, "error body is not JSON")
    if not isinstance(payload, dict) or not isinstance(payload.get("error"),
                                                       str):
        return ConformanceCheck(name, False,
                                "error body lacks an 'error' string")
    return ConformanceCheck(name, True)


def run_conformance(endpoint: str, timeout_s: float = 10.0,
                    ) -> list[ConformanceCheck]:
    """Exercise a /v1/tag server against the protocol contract.

    Returns one result per check; the server conforms iff all pass.
    """
    url = normalize_endpoint(endpoint)
    results = [
        _check_tagging(url, "conf-1",
                       ["Answer", "the", "following", ".", "What", "is",
                        "force", "?"], timeout_s),
        _check_tagging(url, "conf-2", ["What"], timeout_s),
        _check_tagging(url, "conf-unicode-Ω", ["density", "##s", "[UNK]"],
                       timeout_s),
        _check_tagging(url, "conf-long", [f"tok{i}" for i in range(64)],
                       timeout_s),
        _check_error(url, "malformed JSON rejected", b"{not json",
                     timeout_s),
        _check_error(url, "missing tokens rejected", b'{"id": "x"}',
                     timeout_s),
        _check_error(url, "non-list tokens rejected",
                     b'{"id": "x", "tokens": "What"}', timeout_s),
    ]
    return results
