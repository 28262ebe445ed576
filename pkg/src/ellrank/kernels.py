"""Kernel selection: the compiled extension when built, else pure Python.

Set ``ELLRANK_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
FieldTables = _kernels_py.FieldTables

if not os.environ.get("ELLRANK_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None
    if _compiled is not None:
        FieldTables = _compiled.FieldTables
        BACKEND = "cython"

PythonFieldTables = _kernels_py.FieldTables


def compiled_tables():
    """The compiled ``FieldTables`` class, or None when the extension is missing."""
    try:
        from . import _kernels
    except ImportError:
        return None
    return _kernels.FieldTables
