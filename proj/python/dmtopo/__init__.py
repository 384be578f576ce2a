"""Lindbladian dynamics of fermionic Gaussian states.

Correlation-matrix evolution under non-Hermitian damping matrices,
density-matrix (modular-Hamiltonian) topology via winding numbers, and
PT phase maps in (u, w) parameter space.
"""

from dmtopo._core import *  # noqa: F401,F403
from dmtopo._core import __doc__ as _core_doc  # noqa: F401
