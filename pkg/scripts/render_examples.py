#!/usr/bin/env python3
"""Render every figure for the bundled example models.

Writes mosaics (plain and conditioned), ratio figures, trees, and the JSON
layout documents into an output directory, then prints the posterior tables
so the numbers can be eyeballed against the figures.

Usage: python scripts/render_examples.py [--out-dir OUT] [--gutter PX]
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from bayes_mosaic import (
    RenderStyle,
    build_tree,
    bundled_examples,
    highlight_condition,
    layout,
    mosaic_document,
    posterior,
    ratio_document,
    ratio_figure,
    render_mosaic,
    render_ratio,
    render_tree,
    tree_document,
)
from bayes_mosaic.render import decimal_text


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="out/figures", help="where to write figures")
    parser.add_argument("--gutter", type=float, default=2.0, help="tile gap in pixels")
    args = parser.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    style = RenderStyle(gutter=args.gutter)

    for name, title, model in bundled_examples():
        print(f"== {name}: {title}")
        lay = layout(model)

        (out / f"{name}_mosaic.svg").write_text(render_mosaic(lay, style=style), encoding="utf-8")
        (out / f"{name}_tree.svg").write_text(render_tree(build_tree(model), style), encoding="utf-8")
        (out / f"{name}_tree.json").write_text(
            json.dumps(tree_document(build_tree(model)), indent=2) + "\n", encoding="utf-8"
        )
        (out / f"{name}_mosaic.json").write_text(
            json.dumps(mosaic_document(lay), indent=2) + "\n", encoding="utf-8"
        )

        for b, b_label in enumerate(model.outcome_texts):
            result = posterior(model, b)
            svg = render_mosaic(lay, highlight_condition(lay, b), style)
            (out / f"{name}_mosaic_given_{b_label}.svg").write_text(svg, encoding="utf-8")
            print(f"   P({b_label}) = {decimal_text(result.denominator)}")
            for i, a_label in enumerate(model.event_texts):
                fig = ratio_figure(model, i, b)
                (out / f"{name}_ratio_{a_label}_given_{b_label}.svg").write_text(
                    render_ratio(fig, style), encoding="utf-8"
                )
                print(f"     P({a_label}|{b_label}) = {decimal_text(fig.value)}")

        (out / f"{name}_ratio.json").write_text(
            json.dumps(ratio_document(ratio_figure(model, 0, 1)), indent=2) + "\n",
            encoding="utf-8",
        )

    count = len(list(out.glob("*.svg"))) + len(list(out.glob("*.json")))
    print(f"wrote {count} files to {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
