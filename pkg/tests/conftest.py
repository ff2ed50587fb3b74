"""Pytest configuration: makes helpers importable and will host shared fixtures."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))
