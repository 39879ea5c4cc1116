"""File-driven command line: validate models, query posteriors, emit figures.

Exit codes: 0 ok, 1 I/O or parse error, 2 validation failure,
3 query error (unknown label or zero-marginal conditioning).
"""

from __future__ import annotations

import argparse
import difflib
import json
import os
import sys
from pathlib import Path

from . import server
from .core import (
    BayesModel,
    InvalidModelError,
    UnknownLabelError,
    ZeroMarginalError,
    posterior,
    require_valid,
    validate_model,
)
from .model_io import ModelFileError, load_model
from .mosaic import Orientation, highlight_condition, layout, ratio_figure
from .render import LabelMode, RenderStyle, StyleError, decimal_text, render_mosaic, render_ratio, render_tree
from .schema import mosaic_document, posterior_document, ratio_document, tree_document
from .tree import build_tree

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_QUERY = 3

STYLE_ENV_VAR = "BAYES_MOSAIC_STYLE"

_LABEL_MODES = {"none": LabelMode.NONE, "labels": LabelMode.LABELS, "probs": LabelMode.LABELS_AND_PROBS}
_ORIENTATIONS = {"columns": Orientation.A_AS_COLUMNS, "rows": Orientation.A_AS_ROWS}


class _Parser(argparse.ArgumentParser):
    # usage mistakes are parse errors, not validation failures
    def error(self, message: str) -> "argparse.NoReturn":  # type: ignore[name-defined]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_IO)


def _add_style_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--width", type=float, help="canvas width in pixels")
    p.add_argument("--height", type=float, help="canvas height in pixels")
    p.add_argument("--gutter", type=float, help="gap between tiles in pixels")
    p.add_argument("--font-size", type=float, help="label font size")
    p.add_argument("--label-mode", choices=sorted(_LABEL_MODES), help="tile labelling")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bayes-mosaic", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def model_cmd(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("path", help="model file (JSON, or CSV with --from-csv)")
        p.add_argument("--from-csv", action="store_true", help="read a given,outcome,p CSV")
        return p

    model_cmd("validate", "check a model file against the probability axioms")

    p = model_cmd("posterior", "print the posterior distribution for an observed outcome")
    p.add_argument("--given", required=True, metavar="B", help="observed outcome label")
    p.add_argument("--json", action="store_true", help="emit the posterior document as JSON")
    p.add_argument("--precision", type=int, default=4, help="printed decimal places (1..12)")

    p = model_cmd("mosaic", "render the mosaic to an SVG file")
    p.add_argument("--highlight", metavar="B", help="shade all cells of this outcome")
    p.add_argument("--orientation", choices=sorted(_ORIENTATIONS), default="columns")
    p.add_argument("--out", required=True, help="output SVG path")
    _add_style_flags(p)

    p = model_cmd("ratio", "render the fraction-of-mosaics figure for P(A|B)")
    p.add_argument("--given", required=True, metavar="B", help="conditioning outcome label")
    p.add_argument("--of", required=True, metavar="A", dest="of_event", help="target event label")
    p.add_argument("--out", required=True, help="output SVG path")
    _add_style_flags(p)

    p = model_cmd("tree", "render the probability tree to an SVG file")
    p.add_argument("--out", required=True, help="output SVG path")
    _add_style_flags(p)

    p = model_cmd("export", "write a layout document as JSON")
    p.add_argument("--kind", required=True, choices=["mosaic", "ratio", "tree"])
    p.add_argument("--given", metavar="B", help="outcome label (ratio; optional for mosaic)")
    p.add_argument("--of", metavar="A", dest="of_event", help="event label (ratio)")
    p.add_argument("--orientation", choices=sorted(_ORIENTATIONS), default="columns")
    p.add_argument("--out", required=True, help="output JSON path")

    p = sub.add_parser("serve", help="serve the HTTP API (and UI assets when present)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--model-dir", help="directory of extra model files to list as examples")

    return parser


def _load(args: argparse.Namespace) -> BayesModel:
    model, _title = load_model(args.path, from_csv=args.from_csv)
    return model


def _style_from_args(args: argparse.Namespace) -> RenderStyle:
    values: dict = {}
    style_path = os.environ.get(STYLE_ENV_VAR)
    if style_path:
        try:
            doc = json.loads(Path(style_path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise StyleError(f"cannot read style file {style_path}: {exc}") from exc
        if not isinstance(doc, dict):
            raise StyleError(f"style file {style_path} must hold a JSON object")
        allowed = set(RenderStyle.__dataclass_fields__)
        for key, value in doc.items():
            if key not in allowed:
                raise StyleError(f"style file {style_path}: unknown field {key!r}")
            values[key] = LabelMode(value) if key == "label_mode" else value
    if getattr(args, "width", None) is not None:
        values["canvas_width"] = args.width
    if getattr(args, "height", None) is not None:
        values["canvas_height"] = args.height
    if getattr(args, "gutter", None) is not None:
        values["gutter"] = args.gutter
    if getattr(args, "font_size", None) is not None:
        values["font_size"] = args.font_size
    if getattr(args, "label_mode", None) is not None:
        values["label_mode"] = _LABEL_MODES[args.label_mode]
    return RenderStyle(**values)


def _raise_with_hint(text: str, valid: tuple[str, ...], kind: str) -> "argparse.NoReturn":  # type: ignore[name-defined]
    err = UnknownLabelError(text, valid, kind)
    # cutoff 0.5 so one wrong character in a two-character label still hints
    hints = difflib.get_close_matches(text, valid, n=3, cutoff=0.5)
    if hints:
        err.args = (err.args[0] + f" (did you mean {', '.join(hints)}?)",)
    raise err


def _resolve_outcome(model: BayesModel, text: str) -> int:
    try:
        return model.find_outcome(text)
    except UnknownLabelError:
        _raise_with_hint(text, model.outcome_texts, "outcome")


def _resolve_event(model: BayesModel, text: str) -> int:
    try:
        return model.find_event(text)
    except UnknownLabelError:
        _raise_with_hint(text, model.event_texts, "event")


def _write_text(path: str, content: str) -> None:
    Path(path).write_text(content, encoding="utf-8")


def cmd_validate(args: argparse.Namespace) -> int:
    model = _load(args)
    violations = validate_model(model)
    if not violations:
        print("valid")
        return EXIT_OK
    for v in violations:
        print(v)
    return EXIT_VALIDATION


def cmd_posterior(args: argparse.Namespace) -> int:
    precision = args.precision
    if not 1 <= precision <= 12:
        print("--precision must be between 1 and 12", file=sys.stderr)
        return EXIT_IO
    model = _load(args)
    require_valid(model)
    b = _resolve_outcome(model, args.given)
    result = posterior(model, b)
    if args.json:
        print(json.dumps(posterior_document(result), indent=2))
        return EXIT_OK
    given = result.conditioned_on.text

    def dt(v: float) -> str:
        return decimal_text(v, precision)

    print(f"P({given}) = {dt(result.denominator)}")
    for i, lab in enumerate(result.events):
        print(
            f"P({lab.text}|{given}) = {dt(result.numerator_terms[i])} / "
            f"{dt(result.denominator)} = {dt(result.posterior[i])}"
        )
    return EXIT_OK


def cmd_mosaic(args: argparse.Namespace) -> int:
    model = _load(args)
    style = _style_from_args(args)
    lay = layout(model, _ORIENTATIONS[args.orientation])
    highlight = None
    if args.highlight is not None:
        highlight = highlight_condition(lay, _resolve_outcome(model, args.highlight))
    _write_text(args.out, render_mosaic(lay, highlight, style))
    return EXIT_OK


def cmd_ratio(args: argparse.Namespace) -> int:
    model = _load(args)
    style = _style_from_args(args)
    figure = ratio_figure(model, _resolve_event(model, args.of_event), _resolve_outcome(model, args.given))
    _write_text(args.out, render_ratio(figure, style))
    return EXIT_OK


def cmd_tree(args: argparse.Namespace) -> int:
    model = _load(args)
    style = _style_from_args(args)
    _write_text(args.out, render_tree(build_tree(model), style))
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    model = _load(args)
    if args.kind == "mosaic":
        lay = layout(model, _ORIENTATIONS[args.orientation])
        if args.given is not None:
            b = _resolve_outcome(model, args.given)
            doc = mosaic_document(
                lay,
                highlight_condition(lay, b),
                given=model.outcome_texts[b],
                marginal=posterior(model, b).denominator,
            )
        else:
            require_valid(model)
            doc = mosaic_document(lay)
    elif args.kind == "ratio":
        if args.given is None or args.of_event is None:
            print("export --kind ratio needs --given and --of", file=sys.stderr)
            return EXIT_IO
        doc = ratio_document(
            ratio_figure(model, _resolve_event(model, args.of_event), _resolve_outcome(model, args.given))
        )
    else:
        doc = tree_document(build_tree(model))
    _write_text(args.out, json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    return server.serve(args.host, args.port, model_dir=args.model_dir)


_COMMANDS = {
    "validate": cmd_validate,
    "posterior": cmd_posterior,
    "mosaic": cmd_mosaic,
    "ratio": cmd_ratio,
    "tree": cmd_tree,
    "export": cmd_export,
    "serve": cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except InvalidModelError as exc:
        for v in exc.violations:
            print(v)
        return EXIT_VALIDATION
    except (ModelFileError, StyleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UnknownLabelError, ZeroMarginalError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_QUERY


if __name__ == "__main__":
    raise SystemExit(main())
