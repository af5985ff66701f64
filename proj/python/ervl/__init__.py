"""Exact and numerical verification of the energy-reversal counterexample.

Thin wrapper over the compiled core; exact rationals cross the boundary as
"p/q" strings.
"""

try:
    from ._ervl import *  # noqa: F401,F403  (installed layout)
except ImportError:  # pragma: no cover - build-tree layout
    from _ervl import *  # noqa: F401,F403
