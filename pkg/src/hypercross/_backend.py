"""Select the compiled counting kernels, falling back to pure Python.

Set ``HYPERCROSS_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py as pure

compiled = None
if os.environ.get("HYPERCROSS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as compiled
    except ImportError:  # extension not built
        compiled = None

kernels = compiled if compiled is not None else pure
BACKEND = "compiled" if compiled is not None else "python"

count_cross = kernels.count_cross
cross_products = kernels.cross_products
