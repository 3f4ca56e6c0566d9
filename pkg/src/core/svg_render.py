"""
SVG rendering of a step map
Draws the target polygon and the images of concentric circles and radii
"""
import math
from typing import Dict, List, Tuple

import numpy as np

from core.poisson import StepMap, evaluate_map

TWO_PI = 2.0 * math.pi
RADIAL_LIMIT = 1.0 - 1e-3
PADDING = 0.06


def _fmt(value: float) -> str:
    text = f"{value:.3f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def _attrs(props: Dict[str, object]) -> str:
    return " ".join(f'{k.replace("_", "-")}="{v}"' for k, v in props.items())


def parse_grid(spec: str) -> Tuple[int, int]:
    """'RxS' -> (circles, radials)"""
    try:
        circles, radials = (int(part) for part in spec.lower().split("x"))
    except ValueError:
        raise ValueError(f"grid must look like RxS, got {spec!r}")
    if circles < 0 or radials < 0:
        raise ValueError("grid counts must be non-negative")
    return circles, radials


class _Canvas:
    """Plane-to-pixel transform with the y axis flipped"""

    def __init__(self, points: np.ndarray, size: int):
        lo_x, hi_x = points.real.min(), points.real.max()
        lo_y, hi_y = points.imag.min(), points.imag.max()
        span = max(hi_x - lo_x, hi_y - lo_y)
        pad = PADDING * span
        self.scale = size / (span + 2 * pad)
        self.lo_x, self.hi_y, self.pad = lo_x, hi_y, pad
        self.width = int(math.ceil((hi_x - lo_x + 2 * pad) * self.scale))
        self.height = int(math.ceil((hi_y - lo_y + 2 * pad) * self.scale))

    def xy(self, z: complex) -> Tuple[float, float]:
        return ((z.real - self.lo_x + self.pad) * self.scale,
                (self.hi_y - z.imag + self.pad) * self.scale)

    def points(self, zs) -> str:
        return " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (self.xy(z) for z in zs))


def grid_curves(m: StepMap, circles: int, radials: int, samples: int = 512) -> List[np.ndarray]:
    """Images of the circles |z| = i / (circles + 1) and of the radii at angles 2 pi j / radials"""
    curves = []
    theta = np.linspace(0.0, TWO_PI, samples)
    for i in range(1, circles + 1):
        r = i / (circles + 1)
        curves.append(evaluate_map(m, r * np.exp(1j * theta)))
    radius = np.linspace(0.0, RADIAL_LIMIT, samples)
    for j in range(radials):
        curves.append(evaluate_map(m, radius * np.exp(1j * TWO_PI * j / radials)))
    return curves


def render_svg(m: StepMap, circles: int = 6, radials: int = 12,
               samples: int = 512, size: int = 640) -> str:
    """SVG 1.1 document; identical input gives identical bytes"""
    vertices = m.vertices
    canvas = _Canvas(vertices, size)
    stroke = _fmt(max(1.0, size / 640))

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg ' + _attrs({
            "xmlns": "http://www.w3.org/2000/svg",
            "version": "1.1",
            "width": canvas.width,
            "height": canvas.height,
            "viewBox": f"0 0 {canvas.width} {canvas.height}",
        }) + '>',
        '<g ' + _attrs({"fill": "none", "stroke": "#4a7fb5",
                       "stroke_width": _fmt(0.5 * float(stroke))}) + '>',
    ]
    for curve in grid_curves(m, circles, radials, samples):
        lines.append(f'<polyline points="{canvas.points(curve)}"/>')
    lines.append('</g>')

    lines.append('<polygon ' + _attrs({
        "points": canvas.points(vertices),
        "fill": "none",
        "stroke": "#1b1b1b",
        "stroke_width": stroke,
    }) + '/>')

    lines.append('<g ' + _attrs({"font_family": "sans-serif", "font_size": 12, "fill": "#1b1b1b"}) + '>')
    for k, z in enumerate(vertices):
        x, y = canvas.xy(z)
        lines.append(f'<text x="{_fmt(x + 4)}" y="{_fmt(y - 4)}">c_{k + 1}</text>')
    lines.append('</g>')
    lines.append('</svg>')
    return "\n".join(lines) + "\n"
