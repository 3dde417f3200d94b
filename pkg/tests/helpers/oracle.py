""" Brute-force reference for the quantile fit

An optimal vertex of the quantile linear program interpolates p observations,
so the smallest objective over every exactly interpolating subset of
size p is the optimum. Only usable for small N (every subset is tried).

Exported Functions
------------------
- **subset_oracle**( design, targets, tau )
    returns (minimal objective, coefficients reaching it)

- **pinball**( residuals, tau )
    independent evaluation of the quantile objective
"""

import itertools

import numpy as np

# subsets whose square system is worse conditioned are skipped
_MAX_CONDITION = 1e12


def pinball( residuals: np.ndarray, tau: float ) -> np.ndarray:
    """ Quantile objective of residuals along the last axis """
    return tau * np.clip( residuals, 0.0, None ).sum( axis=-1 ) - ( 1.0 - tau ) * np.clip( residuals, None, 0.0 ).sum( axis=-1 )


def subset_oracle( design: np.ndarray, targets: np.ndarray, tau: float ) -> tuple[ float, np.ndarray ]:
    """ Returns the smallest objective over all size-p interpolating subsets, with its coefficients """
    X = np.asarray( design, dtype=float )
    y = np.asarray( targets, dtype=float )
    n_rows, n_cols = X.shape

    subsets = np.array( list( itertools.combinations( range( n_rows ), n_cols ) ) )
    systems = X[subsets]
    solvable = np.linalg.cond( systems ) < _MAX_CONDITION
    if not solvable.any():
        raise ValueError( "no interpolating subset, the design is rank deficient" )

    betas = np.linalg.solve( systems[solvable], y[subsets[solvable]][..., None] )[..., 0]
    objectives = pinball( y[None, :] - betas @ X.T, tau )
    best = int( np.argmin( objectives ) )
    return float( objectives[best] ), betas[best]
