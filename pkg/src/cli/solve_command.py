"""
solve - build and certify a step map for a polygon file
"""
from pathlib import Path

from cli.formats import CertificateFile, PolygonFile, dumps
from core.errors import NotCertifiedError
from core.mapper import SolverOptions, solve
from core.pole_sum import RootOptions
from core.svg_render import parse_grid, render_svg
from utils.config import get_config
from utils.logger import get_logger

EXIT_OK = 0
EXIT_NOT_CERTIFIED = 2

FLAG_KEYS = {
    "min_margin": "solver.min_margin",
    "eps0": "solver.eps0",
    "max_halvings": "solver.max_halvings",
    "seed_grid": "roots.seed_grid",
}


EPILOG = (
    "exit status: 0 certified; 2 not certified, including ERR_EPSILON_EXHAUSTED and "
    "ERR_COLLINEAR_TRIPLE when every ear order leaves three collinear vertices; "
    "3 invalid input"
)


def add_parser(subparsers):
    parser = subparsers.add_parser("solve", help="construct a certified univalent step map",
                                   epilog=EPILOG)
    parser.add_argument("input", help="polygon JSON file")
    parser.add_argument("--out", help="certificate path (default: <input>.certificate.json)")
    parser.add_argument("--svg", help="also render the certified map to this SVG file")
    parser.add_argument("--min-margin", type=float, help="required exterior margin of the zeros")
    parser.add_argument("--eps0", type=float, help="first arc width tried for each ear")
    parser.add_argument("--max-halvings", type=int, help="cap on epsilon halvings per ear")
    parser.add_argument("--seed-grid", type=int, help="rotated starting circles for the root finder")
    parser.set_defaults(handler=run)
    return parser


def default_output(input_path) -> Path:
    path = Path(input_path)
    return path.with_name(f"{path.stem}.certificate.json")


def run(args) -> int:
    config = get_config()
    logger = get_logger()
    polygon = PolygonFile.read(args.input).polygon()
    for name, key in FLAG_KEYS.items():
        if getattr(args, name) is not None:
            config.set(key, getattr(args, name))
    options = SolverOptions.from_config(config)
    root_options = RootOptions.from_config(config)

    try:
        certificate = solve(polygon, options, root_options)
    except NotCertifiedError as e:
        logger.log_operation("solve", f"{args.input}: {e}", success=False)
        print(dumps({"certified": False, "error": e.to_dict()}), end="")
        return EXIT_NOT_CERTIFIED

    out = Path(args.out) if args.out else default_output(args.input)
    CertificateFile.from_certificate(certificate).write(out)

    certified = certificate.exterior_margin > options.min_margin and certificate.checks.passed
    print(f"certified: {'yes' if certified else 'no'}")
    print(f"vertices: {polygon.n}")
    print(f"exterior margin: {certificate.exterior_margin!r}")
    for k, step in enumerate(certificate.ear_trace, start=1):
        print(f"ear {k}: index={step.ear_index} epsilon={step.epsilon!r} "
              f"halvings={step.halvings} margin={step.margin!r}")
    print(f"certificate: {out}")

    if args.svg:
        circles, radials = parse_grid(config.get("render.grid", "6x12"))
        svg = render_svg(certificate.step_map, circles, radials,
                         samples=config.get("render.samples", 512),
                         size=config.get("render.size", 640))
        Path(args.svg).write_text(svg, encoding="utf-8")
        print(f"svg: {args.svg}")

    return EXIT_OK if certified else EXIT_NOT_CERTIFIED
