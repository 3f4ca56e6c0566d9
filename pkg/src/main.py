"""
Harmonic Mapper - Main Entry Point
Univalent harmonic step maps of the unit disk onto simple polygons
"""
import os
import sys

# Add src directory to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from cli.app import main  # noqa: E402


if __name__ == "__main__":
    sys.exit(main())
