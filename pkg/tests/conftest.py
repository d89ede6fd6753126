import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from hypothesis import settings

# sympy-backed oracles are slow enough that per-example deadlines only add noise
settings.register_profile("relnum", deadline=None, max_examples=100)
settings.load_profile("relnum")
