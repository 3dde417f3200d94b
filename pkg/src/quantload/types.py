""" Defines utility types, for type hinting

Utility Types
-------------
- **Vector_T**
    anything accepted where a vector of floats is expected
    (numpy array, list or tuple of numbers)

- **Matrix_T**
    anything accepted where a design matrix is expected

- **MonthKey_T**
    a calendar month as a (year, month) pair

- **TauLike_T**
    a quantile level, either a validated 'Tau' or a plain float
"""

from typing import Sequence, Union, TYPE_CHECKING

import numpy as np
import numpy.typing as npt

if TYPE_CHECKING:
    from quantload.solver import Tau

Vector_T = Union[ npt.NDArray[np.floating], Sequence[float] ]

Matrix_T = Union[ npt.NDArray[np.floating], Sequence[Sequence[float]] ]

MonthKey_T = tuple[ int, int ]

TauLike_T = Union[ 'Tau', float ]
