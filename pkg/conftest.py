# Doctests were written against NumPy 1.x scalar reprs (``True``, ``1.5``);
# NumPy 2 prints ``np.True_``, ``np.float64(1.5)``.  Restore the legacy repr.
import numpy as np

if np.lib.NumpyVersion(np.__version__) >= "2.0.0":
    np.set_printoptions(legacy="1.25")
