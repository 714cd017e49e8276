"""Sharp lowest-eigenvalue bounds for Schrodinger operators -Delta + V with
confining potentials: deficit of the eigenvalue inequality, stability
distance to the harmonic family, and the supporting functional inequalities
(log-Sobolev, Gibbs principle, Pinsker, Golden-Thompson)."""

try:
    from ._core import *  # noqa: F401,F403  (installed package layout)
    from ._core import __version__  # noqa: F401
except ImportError:  # build-tree layout: _core.so next to the build dir
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
