"""Batch figure renderer over exported bundles."""

from __future__ import annotations

import argparse
import logging
import sys

from . import render
from .bundle import load_bundle


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="probscape-viz",
        description="Render t-SNE scatters and similarity heatmaps from an "
                    "exported analysis bundle")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tsne", help="embed a representation and plot it")
    p.add_argument("--bundle", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--representation", default="")
    p.add_argument("--dims", type=int, choices=(2, 3), default=2)
    p.add_argument("--perplexity", type=float,
                   default=render.DEFAULT_PERPLEXITY)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--dpi", type=int, default=150)
    p.set_defaults(func=cmd_tsne)

    p = sub.add_parser("heatmap", help="plot cross-representation similarity")
    p.add_argument("--bundle", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--pair", default="",
                   help="rep_a,rep_b (default: every exported pair)")
    p.add_argument("--dpi", type=int, default=150)
    p.set_defaults(func=cmd_heatmap)
    return parser


def cmd_tsne(args) -> int:
    bundle = load_bundle(args.bundle)
    names = [args.representation] if args.representation \
        else sorted(bundle.representations)
    for name in names:
        written = render.tsne_plot(bundle, name, args.out, dims=args.dims,
                                   perplexity=args.perplexity, seed=args.seed,
                                   dpi=args.dpi)
        for path in written:
            print(f"wrote {path}")
    return 0


def cmd_heatmap(args) -> int:
    bundle = load_bundle(args.bundle)
    pairs = [tuple(args.pair.split(","))] if args.pair \
        else sorted(bundle.similarities)
    if not pairs:
        print("bundle holds no similarity matrices", file=sys.stderr)
        return 2
    for rep_a, rep_b in pairs:
        print(f"wrote {render.heatmap_plot(bundle, rep_a, rep_b, args.out, dpi=args.dpi)}")
    return 0


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (KeyError, ValueError, FileNotFoundError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
