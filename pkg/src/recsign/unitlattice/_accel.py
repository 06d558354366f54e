"""Backend selection for the grid kernels.

The compiled extension is used when it imports; ``RECSIGN_PURE_PYTHON=1``
forces the fallback (used by the benchmark and the twin-equivalence tests).
"""

import os

from . import _pykernels

BACKEND = "python"
kernels = _pykernels

if os.environ.get("RECSIGN_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:  # extension not built
        pass

orbit_grid = kernels.orbit_grid
lattice_grid = kernels.lattice_grid
empty_windows = kernels.empty_windows
lattice_points_in_disk = kernels.lattice_points_in_disk
