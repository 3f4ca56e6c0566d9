"""
render - draw the image of a polar grid under a certified map
"""
import sys
from pathlib import Path

from cli.formats import load_step_map
from core.svg_render import parse_grid, render_svg
from utils.config import get_config


def add_parser(subparsers):
    parser = subparsers.add_parser("render", help="render a certified map as SVG")
    parser.add_argument("polygon", help="polygon JSON file")
    parser.add_argument("certificate", help="certificate JSON file")
    parser.add_argument("--grid", help="circles x radials, e.g. 6x12")
    parser.add_argument("--svg", help="output file (default: standard output)")
    parser.set_defaults(handler=run)
    return parser


def run(args) -> int:
    config = get_config()
    circles, radials = parse_grid(args.grid or config.get("render.grid", "6x12"))
    step_map, _ = load_step_map(args.polygon, args.certificate)
    svg = render_svg(step_map, circles, radials,
                     samples=config.get("render.samples", 512),
                     size=config.get("render.size", 640))
    if args.svg:
        Path(args.svg).write_text(svg, encoding="utf-8")
    else:
        sys.stdout.write(svg)
    return 0
