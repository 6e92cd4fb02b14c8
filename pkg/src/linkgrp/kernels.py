"""Backend selection for the rewriting kernels.

The compiled extension is used when it imports; set ``LINKGRP_PURE_PYTHON=1``
to force the pure-Python fallback.
"""
import os

from . import _pykernels as python_backend

compiled_backend = None
if not os.environ.get("LINKGRP_PURE_PYTHON"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

backend = compiled_backend or python_backend
BACKEND = backend.BACKEND

free_reduce = backend.free_reduce
scan_chain = backend.scan_chain
first_chain = backend.first_chain
reduce_word = backend.reduce_word
