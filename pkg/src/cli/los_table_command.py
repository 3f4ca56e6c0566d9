"""
los-table - law-of-sines convergence table as CSV
"""
import csv
import math
import sys

from core.asymptotics import los_empirical, los_limit
from core.errors import NonpositiveLengthError

COLUMNS = ["angle", "y", "omega_over_y", "limit", "abs_error"]


def _float_list(text: str):
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"expected comma-separated numbers, got {text!r}")


def add_parser(subparsers):
    parser = subparsers.add_parser("los-table", help="omega/y against the law-of-sines limit")
    parser.add_argument("--A", type=float, required=True, help="distance from x_0 to the interval")
    parser.add_argument("--B", type=float, required=True, help="interval length")
    parser.add_argument("--angles", type=_float_list, default=[math.pi / 2],
                        help="approach angles in radians, comma-separated")
    parser.add_argument("--ys", type=_float_list, default=[1e-1, 1e-2, 1e-3, 1e-4],
                        help="heights y, comma-separated")
    parser.set_defaults(handler=run)
    return parser


def run(args) -> int:
    for y in args.ys:
        if not y > 0:
            raise NonpositiveLengthError(f"y must be positive, got {y}")
    limit = los_limit(args.A, args.B)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(COLUMNS)
    for angle in args.angles:
        for y in args.ys:
            value = los_empirical(args.A, args.B, angle, y)
            writer.writerow([repr(angle), repr(y), repr(value), repr(limit), repr(abs(value - limit))])
    return 0
