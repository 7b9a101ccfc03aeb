"""Eigenvalue bounds and discrete spectral geometry of surfaces in S^3."""

import json as _json

from ._sphere_spectra import *  # noqa: F401,F403
from ._sphere_spectra import __version__, constants_json, verify_surface_json


def verify_surface(mesh, source="python", offsets=(), seed=None):
    """Run the full verification suite and return the report as a dict."""
    kwargs = {"source": source, "offsets": list(offsets)}
    if seed is not None:
        kwargs["seed"] = seed
    return _json.loads(verify_surface_json(mesh, **kwargs))


def constants(n, lam=None, eps=None, beta=None):
    """Bound constants and, given lam, the parameter chain, as a dict."""
    return _json.loads(constants_json(n, lam, eps, beta))


__all__ = ["__version__", "verify_surface", "constants"]
