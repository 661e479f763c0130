import os
import sys

# allow running the suite from a fresh checkout without installing
_src = os.path.join(os.path.dirname(__file__), "..", "src")
if not any(os.path.samefile(p, _src) if os.path.exists(p) else False for p in sys.path):
    sys.path.insert(0, os.path.abspath(_src))
