"""Two-level minimal-time evolution laboratory.

Bloch-sphere dynamics, the time-optimal Hermitian Hamiltonian family and the
PT-symmetric non-Hermitian sector, with first-arrival timing utilities and a
declarative sweep runner.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
