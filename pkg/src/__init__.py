"""
Harmonic Mapper
Univalent harmonic step maps of the unit disk onto simple polygons
"""
__version__ = "1.0.0"
