"""
verify - re-check a certificate against its polygon
"""
from cli.formats import dumps, load_step_map
from core.certify import VerificationOptions, verify
from core.pole_sum import RootOptions
from utils.config import get_config

EXIT_OK = 0
EXIT_FAILED = 2


def add_parser(subparsers):
    parser = subparsers.add_parser("verify", help="independently verify a certificate")
    parser.add_argument("polygon", help="polygon JSON file")
    parser.add_argument("certificate", help="certificate JSON file")
    parser.add_argument("--grid-radii", type=int, help="radii of the Jacobian grid")
    parser.add_argument("--grid-angles", type=int, help="angles of the Jacobian grid")
    parser.add_argument("--boundary-samples", type=int, help="samples of the boundary curve")
    parser.add_argument("--interior-points", type=int, dest="interior_count",
                        help="interior winding test points")
    parser.set_defaults(handler=run)
    return parser


def run(args) -> int:
    config = get_config()
    step_map, _ = load_step_map(args.polygon, args.certificate)
    options = VerificationOptions.from_config(
        config,
        grid_radii=args.grid_radii,
        grid_angles=args.grid_angles,
        boundary_samples=args.boundary_samples,
        interior_count=args.interior_count,
    )
    report = verify(step_map, options, RootOptions.from_config(config))
    print(dumps(report.to_dict()), end="")
    return EXIT_OK if report.passed else EXIT_FAILED
