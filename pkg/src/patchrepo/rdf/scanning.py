"""Scanner backend selection.

The compiled tokenizer is preferred when the extension was built; the
pure-Python twin is the fallback. Setting PATCHREPO_PURE=1 forces the
fallback, which the parity tests and benchmarks use to pin down a backend.
"""

from __future__ import annotations

import os

from patchrepo.rdf import _scan_py

if os.environ.get("PATCHREPO_PURE"):
    _impl = _scan_py
else:
    try:
        from patchrepo.rdf import _scan_c as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _scan_py

tokenize = _impl.tokenize
BACKEND: str = _impl.BACKEND
