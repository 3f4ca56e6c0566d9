"""
Polygon and certificate JSON files
Floats are written with repr, the shortest text that reads back to the same double
"""
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from core.errors import FileFormatError
from core.mapper import Certificate
from core.poisson import StepMap
from core.polygon import Polygon, normalize

VERTEX_MATCH_TOLERANCE = 1e-12


def _reject_constant(name):
    raise FileFormatError(f"non-finite number {name} is not allowed")


def _load_json(path) -> Any:
    with open(path, "r", encoding="utf-8") as f:
        try:
            return json.load(f, parse_constant=_reject_constant)
        except json.JSONDecodeError as e:
            raise FileFormatError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})")


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def _number(value, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise FileFormatError(f"{what} must be a number")
    value = float(value)
    if not math.isfinite(value):
        raise FileFormatError(f"{what} must be finite")
    return value


def _point(value, what: str) -> complex:
    if not isinstance(value, list) or len(value) != 2:
        raise FileFormatError(f"{what} must be an [x, y] pair")
    return complex(_number(value[0], what), _number(value[1], what))


def _point_list(payload: Dict, key: str, path) -> List[complex]:
    values = payload.get(key)
    if not isinstance(values, list):
        raise FileFormatError(f"{path}: '{key}' must be a list of [x, y] pairs")
    return [_point(v, f"{key}[{i}]") for i, v in enumerate(values)]


def _pair(z: complex) -> List[float]:
    return [float(z.real), float(z.imag)]


def _finite_or_none(value: float) -> Optional[float]:
    return None if value is None or math.isinf(value) else float(value)


@dataclass
class PolygonFile:
    """{"vertices": [[x, y], ...]}"""
    vertices: List[complex]

    @classmethod
    def read(cls, path) -> "PolygonFile":
        payload = _load_json(path)
        if not isinstance(payload, dict):
            raise FileFormatError(f"{path}: expected a JSON object")
        return cls(_point_list(payload, "vertices", path))

    def write(self, path):
        Path(path).write_text(dumps({"vertices": [_pair(z) for z in self.vertices]}),
                              encoding="utf-8")

    def polygon(self) -> Polygon:
        return normalize(self.vertices)


@dataclass
class CertificateFile:
    """Serialized Certificate"""
    vertices: List[complex]
    angles: List[float]
    roots: List[complex] = field(default_factory=list)
    root_error_radii: List[float] = field(default_factory=list)
    exterior_margin: Optional[float] = None
    vertex_offset: int = 0
    ear_trace: List[Dict[str, Any]] = field(default_factory=list)
    verification: Optional[Dict[str, Any]] = None

    @classmethod
    def from_certificate(cls, certificate: Certificate) -> "CertificateFile":
        m = certificate.step_map
        return cls(
            vertices=list(m.polygon.vertices),
            angles=[float(t) for t in m.partition],
            roots=[complex(r) for r in certificate.roots.roots],
            root_error_radii=[float(r) for r in certificate.roots.error_radii],
            exterior_margin=_finite_or_none(certificate.exterior_margin),
            vertex_offset=certificate.vertex_offset,
            ear_trace=[step.to_dict() for step in certificate.ear_trace],
            verification=certificate.checks.to_dict() if certificate.checks else None,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "vertices": [_pair(z) for z in self.vertices],
            "angles": self.angles,
            "roots": [_pair(z) for z in self.roots],
            "root_error_radii": self.root_error_radii,
            "exterior_margin": self.exterior_margin,
            "vertex_offset": self.vertex_offset,
            "ear_trace": self.ear_trace,
            "verification": self.verification,
        }

    def write(self, path):
        Path(path).write_text(dumps(self.to_dict()), encoding="utf-8")

    @classmethod
    def read(cls, path) -> "CertificateFile":
        payload = _load_json(path)
        if not isinstance(payload, dict):
            raise FileFormatError(f"{path}: expected a JSON object")
        angles = payload.get("angles")
        if not isinstance(angles, list):
            raise FileFormatError(f"{path}: 'angles' must be a list")
        offset = payload.get("vertex_offset", 0)
        if isinstance(offset, bool) or not isinstance(offset, int):
            raise FileFormatError(f"{path}: 'vertex_offset' must be an integer")
        margin = payload.get("exterior_margin")
        radii = payload.get("root_error_radii", [])
        if not isinstance(radii, list):
            raise FileFormatError(f"{path}: 'root_error_radii' must be a list")
        return cls(
            vertices=_point_list(payload, "vertices", path),
            angles=[_number(t, f"angles[{i}]") for i, t in enumerate(angles)],
            roots=_point_list(payload, "roots", path) if "roots" in payload else [],
            root_error_radii=[_number(r, "root_error_radii") for r in radii],
            exterior_margin=None if margin is None else _number(margin, "exterior_margin"),
            vertex_offset=offset,
            ear_trace=list(payload.get("ear_trace") or []),
            verification=payload.get("verification"),
        )


def load_step_map(polygon_path, certificate_path) -> Tuple[StepMap, CertificateFile]:
    """
    Rebuild a certificate's step map against the polygon file it was solved for

    Raises:
        FileFormatError: the certificate's vertices are not the polygon's
            (rotated by vertex_offset) within 1e-12
    """
    polygon = PolygonFile.read(polygon_path).polygon()
    certificate = CertificateFile.read(certificate_path)
    if len(certificate.vertices) != polygon.n:
        raise FileFormatError(
            f"certificate has {len(certificate.vertices)} vertices, polygon has {polygon.n}")
    expected = polygon.rotated(certificate.vertex_offset)
    gap = np.abs(np.array(certificate.vertices) - expected.as_array()).max()
    if gap > VERTEX_MATCH_TOLERANCE:
        raise FileFormatError(
            "certificate vertices do not match the polygon",
            {"max_deviation": float(gap)},
        )
    return StepMap(expected, np.array(certificate.angles)), certificate
