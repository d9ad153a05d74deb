"""Spin-1 (qutrit) dynamics in elliptically modulated magnetic fields.

Subpackages: operator algebra (su3), Jacobi elliptic functions (elliptic),
adaptive integration (ode), single-qutrit dynamics (qutrit), coupled pairs
(biqutrit), chains of 2..6 sites (chain), entanglement measures
(entanglement), figure scenarios (figures), self-verification (verify), and
the command-line interface (cli).
"""

from . import biqutrit, chain, elliptic, entanglement, ode, qutrit, su3

__version__ = "0.1.0"

__all__ = [
    "biqutrit",
    "chain",
    "elliptic",
    "entanglement",
    "ode",
    "qutrit",
    "su3",
    "__version__",
]
