"""Stateless HTTP service over the core engine.

Every request carries the model in its body; nothing is stored server
side, so repeating a request yields an identical response.  Handlers call
pure functions only -- the threading server needs no extra locking.

Endpoints (JSON in/out):

    GET  /healthz                   liveness probe
    GET  /api/examples              bundled (and --model-dir) example models
    POST /api/validate              {model} -> validation report (always 200)
    POST /api/posterior             {model, given} -> posterior document
    POST /api/layout                {model, orientation?, given?} -> mosaic document
    POST /api/ratio                 {model, given, of} -> ratio document
    POST /api/tree                  {model} -> tree document

Malformed bodies and invalid models answer 400 with the report; unknown
labels and zero-marginal conditioning answer 422.  GET / serves the built
UI assets when they are present (``bayes_mosaic/ui`` inside the package,
or the directory named by ``BAYES_MOSAIC_UI_DIR``).
"""

from __future__ import annotations

import json
import logging
import mimetypes
import os
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .core import (
    BayesModel,
    UnknownLabelError,
    ZeroMarginalError,
    posterior,
    validate_model,
)
from .model_io import ModelFileError, load_model_json, model_from_dict, model_to_dict
from .mosaic import Orientation, highlight_condition, layout, ratio_figure
from .schema import (
    SCHEMA_VERSION,
    mosaic_document,
    posterior_document,
    ratio_document,
    tree_document,
    validation_document,
)
from .tree import build_tree

logger = logging.getLogger("bayes_mosaic.server")

UI_ENV_VAR = "BAYES_MOSAIC_UI_DIR"


class ApiError(Exception):
    """Maps straight to an HTTP error response."""

    def __init__(self, status: int, payload: dict):
        self.status = status
        self.payload = payload
        super().__init__(payload.get("error", "api error"))


def _bad_request(message: str, violations: list | None = None) -> ApiError:
    payload: dict = {"error": message}
    if violations is not None:
        payload["violations"] = violations
    return ApiError(400, payload)


def _model_from_body(body: dict) -> BayesModel:
    if "model" not in body:
        raise _bad_request("request body needs a 'model' field")
    try:
        model, _title = model_from_dict(body["model"])
    except ModelFileError as exc:
        raise _bad_request(str(exc)) from exc
    return model


def _valid_model_from_body(body: dict) -> BayesModel:
    model = _model_from_body(body)
    violations = validate_model(model)
    if violations:
        raise _bad_request(
            "invalid model",
            [{"where": v.where, "message": v.message} for v in violations],
        )
    return model


def _resolve_outcome(model: BayesModel, body: dict, key: str = "given") -> int:
    if key not in body or not isinstance(body[key], str):
        raise _bad_request(f"request body needs a string '{key}' field")
    try:
        return model.find_outcome(body[key])
    except UnknownLabelError as exc:
        raise ApiError(422, {"error": str(exc)}) from exc


def _resolve_event(model: BayesModel, body: dict, key: str = "of") -> int:
    if key not in body or not isinstance(body[key], str):
        raise _bad_request(f"request body needs a string '{key}' field")
    try:
        return model.find_event(body[key])
    except UnknownLabelError as exc:
        raise ApiError(422, {"error": str(exc)}) from exc


def _orientation_from_body(body: dict) -> Orientation:
    raw = body.get("orientation", Orientation.A_AS_COLUMNS.value)
    try:
        return Orientation(raw)
    except ValueError:
        valid = ", ".join(o.value for o in Orientation)
        raise _bad_request(f"unknown orientation {raw!r}; expected one of: {valid}") from None


def handle_validate(body: dict) -> dict:
    model = _model_from_body(body)
    return validation_document(validate_model(model))


def handle_posterior(body: dict) -> dict:
    model = _valid_model_from_body(body)
    b = _resolve_outcome(model, body)
    try:
        return posterior_document(posterior(model, b))
    except ZeroMarginalError as exc:
        raise ApiError(422, {"error": str(exc)}) from exc


def handle_layout(body: dict) -> dict:
    model = _valid_model_from_body(body)
    lay = layout(model, _orientation_from_body(body))
    if body.get("given") is None:
        return mosaic_document(lay)
    b = _resolve_outcome(model, body)
    highlight = highlight_condition(lay, b)
    try:
        marginal = posterior(model, b).denominator
    except ZeroMarginalError:
        marginal = 0.0
    return mosaic_document(lay, highlight, given=model.outcome_texts[b], marginal=marginal)


def handle_ratio(body: dict) -> dict:
    model = _valid_model_from_body(body)
    a = _resolve_event(model, body)
    b = _resolve_outcome(model, body)
    try:
        return ratio_document(ratio_figure(model, a, b))
    except ZeroMarginalError as exc:
        raise ApiError(422, {"error": str(exc)}) from exc


def handle_tree(body: dict) -> dict:
    model = _valid_model_from_body(body)
    return tree_document(build_tree(model))


POST_ROUTES = {
    "/api/validate": handle_validate,
    "/api/posterior": handle_posterior,
    "/api/layout": handle_layout,
    "/api/ratio": handle_ratio,
    "/api/tree": handle_tree,
}


def _package_ui_dir() -> Path | None:
    override = os.environ.get(UI_ENV_VAR)
    if override:
        p = Path(override)
        return p if p.is_dir() else None
    p = Path(__file__).parent / "ui"
    return p if p.is_dir() else None


def _load_extra_examples(model_dir: str | None) -> list[dict]:
    if model_dir is None:
        return []
    root = Path(model_dir)
    if not root.is_dir():
        raise NotADirectoryError(f"--model-dir {model_dir} is not a readable directory")
    entries = []
    for path in sorted(root.glob("*.json")):
        try:
            model, title = load_model_json(path)
        except ModelFileError as exc:
            logger.warning("skipping %s: %s", path, exc)
            continue
        entries.append(
            {"name": path.stem, "title": title or path.stem, "model": model_to_dict(model, title)}
        )
    return entries


class BayesMosaicServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address: tuple[str, int], examples_doc: dict, ui_dir: Path | None):
        super().__init__(address, RequestHandler)
        self.examples_doc = examples_doc
        self.ui_dir = ui_dir


class RequestHandler(BaseHTTPRequestHandler):
    server: BayesMosaicServer

    def log_message(self, format: str, *args) -> None:
        logger.info("%s %s", self.address_string(), format % args)

    def _send_json(self, status: int, doc: dict) -> None:
        data = json.dumps(doc).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def _send_file(self, path: Path) -> None:
        data = path.read_bytes()
        ctype = mimetypes.guess_type(path.name)[0] or "application/octet-stream"
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def do_GET(self) -> None:  # noqa: N802 (http.server API)
        path = self.path.split("?", 1)[0]
        if path == "/healthz":
            self._send_json(200, {"status": "ok"})
            return
        if path == "/api/examples":
            self._send_json(200, self.server.examples_doc)
            return
        self._serve_static(path)

    def _serve_static(self, path: str) -> None:
        ui_dir = self.server.ui_dir
        if ui_dir is None:
            if path == "/":
                body = (
                    "<!doctype html><title>bayes-mosaic</title>"
                    "<p>UI assets are not installed. The JSON API lives under "
                    "<code>/api/</code>; see <code>/healthz</code> and "
                    "<code>/api/examples</code>.</p>"
                ).encode("utf-8")
                self.send_response(200)
                self.send_header("Content-Type", "text/html; charset=utf-8")
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)
                return
            self._send_json(404, {"error": f"no such resource: {path}"})
            return
        rel = path.lstrip("/") or "index.html"
        target = (ui_dir / rel).resolve()
        if not str(target).startswith(str(ui_dir.resolve()) + os.sep) and target != ui_dir.resolve():
            self._send_json(404, {"error": "not found"})
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            self._send_json(404, {"error": f"no such resource: {path}"})
            return
        self._send_file(target)

    def do_POST(self) -> None:  # noqa: N802 (http.server API)
        path = self.path.split("?", 1)[0]
        handler = POST_ROUTES.get(path)
        if handler is None:
            self._send_json(404, {"error": f"no such endpoint: {path}"})
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            raw = self.rfile.read(length) if length else b""
            try:
                body = json.loads(raw.decode("utf-8")) if raw else {}
            except (json.JSONDecodeError, UnicodeDecodeError) as exc:
                raise _bad_request(f"request body is not valid JSON: {exc}") from exc
            if not isinstance(body, dict):
                raise _bad_request("request body must be a JSON object")
            self._send_json(200, handler(body))
        except ApiError as exc:
            self._send_json(exc.status, exc.payload)
        except Exception:  # pragma: no cover - last-resort guard
            logger.exception("unhandled error for %s", path)
            self._send_json(500, {"error": "internal server error"})


def build_examples_doc(model_dir: str | None = None) -> dict:
    from .model_io import bundled_examples

    entries = [
        {"name": name, "title": title, "model": model_to_dict(model, title)}
        for name, title, model in bundled_examples()
    ]
    entries.extend(_load_extra_examples(model_dir))
    return {"schema_version": SCHEMA_VERSION, "kind": "examples", "examples": entries}


def create_server(
    host: str = "127.0.0.1", port: int = 0, model_dir: str | None = None
) -> BayesMosaicServer:
    return BayesMosaicServer((host, port), build_examples_doc(model_dir), _package_ui_dir())


def serve(host: str, port: int, model_dir: str | None = None) -> int:
    """Run until interrupted; returns a process exit code."""
    try:
        httpd = create_server(host, port, model_dir)
    except (OSError, NotADirectoryError) as exc:
        print(f"error: {exc}", flush=True)
        return 1
    bound = httpd.server_address
    ui = "with UI assets" if httpd.ui_dir else "API only"
    print(f"serving on http://{bound[0]}:{bound[1]}/ ({ui}); Ctrl-C to stop", flush=True)
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
    return 0
