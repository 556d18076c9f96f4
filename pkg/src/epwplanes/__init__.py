"""Exact machinery for finite complete families of pairwise incident planes,
Lagrangian subspaces of the 20-dimensional third wedge power of C^6, EPW
sextic hypersurfaces and their plane degeneracy-locus curves."""

from ._core import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
