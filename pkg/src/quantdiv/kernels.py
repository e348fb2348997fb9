"""Backend selection for the hot kernels.

Prefers the compiled extension; falls back to the numpy implementation when
the extension is missing or the environment variable QUANTDIV_PURE is set to
a non-empty value. BACKEND names the active implementation.
"""

import os

if os.environ.get("QUANTDIV_PURE"):
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _pykernels as _impl  # type: ignore[no-redef]

BACKEND: str = _impl.BACKEND
pair_stats = _impl.pair_stats
hsd_max_stats = _impl.hsd_max_stats
