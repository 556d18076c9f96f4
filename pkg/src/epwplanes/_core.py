"""Backend selector: compiled extension if it built, pure Python otherwise.

Set EPWPLANES_FORCE_PURE=1 in the environment to force the fallback (used by
the backend-agreement tests and the benchmark).
"""

import os

if os.environ.get("EPWPLANES_FORCE_PURE") == "1":
    from . import _purecore as _impl
else:
    try:
        from . import _fastcore as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _purecore as _impl

BACKEND = _impl.BACKEND
rank_mod = _impl.rank_mod
det_mod = _impl.det_mod
batch_det_mod = _impl.batch_det_mod
batch_rank_mod = _impl.batch_rank_mod
enumerate_incident = _impl.enumerate_incident
theta_scan = _impl.theta_scan
