import sys
from pathlib import Path

# make tests importable both from the repo root and an installed package
sys.path.insert(0, str(Path(__file__).resolve().parent))
