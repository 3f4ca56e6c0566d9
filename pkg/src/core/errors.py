"""
Error types for the harmonic mapper
Every error carries a stable ERR_* code used by the command line and in reports
"""
from typing import Any, Dict, Optional


class HarmonicMappingError(Exception):
    """Base class for all mapper errors"""

    code = "ERR_HARMONIC_MAPPING"

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = dict(details or {})

    def to_dict(self) -> Dict[str, Any]:
        """Serializable view used in command output"""
        payload = {"code": self.code, "message": self.message}
        if self.details:
            payload["details"] = self.details
        return payload

    def __str__(self):
        return f"{self.code}: {self.message}"


# Input validation ----------------------------------------------------------

class InvalidPolygonError(HarmonicMappingError, ValueError):
    code = "ERR_INVALID_POLYGON"


class TooFewVerticesError(InvalidPolygonError):
    code = "ERR_TOO_FEW_VERTICES"


class DuplicateVertexError(InvalidPolygonError):
    code = "ERR_DUPLICATE_VERTEX"


class SelfIntersectingError(InvalidPolygonError):
    code = "ERR_SELF_INTERSECTING"


class CollinearTripleError(InvalidPolygonError):
    code = "ERR_COLLINEAR_TRIPLE"


class InvalidPartitionError(HarmonicMappingError, ValueError):
    code = "ERR_INVALID_PARTITION"


class CoincidentPolesError(HarmonicMappingError, ValueError):
    code = "ERR_COINCIDENT_POLES"


class AtPoleError(HarmonicMappingError, ValueError):
    code = "ERR_AT_POLE"


class OutOfDiskError(HarmonicMappingError, ValueError):
    code = "ERR_OUT_OF_DISK"


class NotUpperHalfPlaneError(HarmonicMappingError, ValueError):
    code = "ERR_NOT_UPPER_HALF_PLANE"


class NonpositiveLengthError(HarmonicMappingError, ValueError):
    code = "ERR_NONPOSITIVE_LENGTH"


class IndexRangeError(HarmonicMappingError, ValueError):
    code = "ERR_INDEX_RANGE"


class IndexAdjacentError(HarmonicMappingError, ValueError):
    code = "ERR_INDEX_ADJACENT"


class FileFormatError(HarmonicMappingError, ValueError):
    """Malformed or inconsistent polygon / certificate file"""
    code = "ERR_FILE_FORMAT"


# Internal consistency ------------------------------------------------------

class NotAnEarError(HarmonicMappingError):
    code = "ERR_NOT_AN_EAR"


class NoTwoEarsError(HarmonicMappingError):
    code = "ERR_NO_TWO_EARS"


class NotOutsideCornerError(HarmonicMappingError):
    code = "ERR_NOT_OUTSIDE_CORNER"


# Solver outcomes -----------------------------------------------------------

class NotCertifiedError(HarmonicMappingError):
    """The construction could not produce a certified map"""
    code = "ERR_NOT_CERTIFIED"


class RootsNotConvergedError(NotCertifiedError):
    code = "ERR_ROOTS_NOT_CONVERGED"


class EpsilonExhaustedError(NotCertifiedError):
    code = "ERR_EPSILON_EXHAUSTED"


class EarChainExhaustedError(NotCertifiedError):
    """Every ear order dead-ends in a polygon with three collinear vertices"""
    code = "ERR_COLLINEAR_TRIPLE"
