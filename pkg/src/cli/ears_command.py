"""
ears - list the ears of a polygon
"""
from cli.formats import PolygonFile, dumps
from core.polygon import find_ears


def add_parser(subparsers):
    parser = subparsers.add_parser("ears", help="list ears with robustness scores")
    parser.add_argument("polygon", help="polygon JSON file")
    parser.set_defaults(handler=run)
    return parser


def run(args) -> int:
    polygon = PolygonFile.read(args.polygon).polygon()
    payload = {"vertices": [[z.real, z.imag] for z in polygon.vertices]}
    payload.update(find_ears(polygon).to_dict())
    print(dumps(payload), end="")
    return 0
