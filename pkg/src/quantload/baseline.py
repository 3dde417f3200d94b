""" Ordinary least squares baseline (multiple linear regression)

Solved through a column-pivoted QR factorization of the design,
never through the normal equations: the same-month lag columns are
strongly collinear and X'X squares their condition number.

Exported Classes
----------------
- **LinearModel**
    fitted coefficients with their residual sum of squares

Exported Functions
------------------
- **solve_ols**( design, targets, feature_names )
- **fit_ols**( supervised )
- **predict_ols**( model, design )
"""

import logging
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np
import scipy.linalg

from quantload._typed import TypedTuple
from quantload._helpers import as_vector, as_matrix, check_design, frozen, names_or_default
from quantload.dataset import SupervisedSet
from quantload.types import Vector_T, Matrix_T
from quantload.exceptions import ConfigError, RankDeficientError, UnderdeterminedError

logger = logging.getLogger( __name__ )


@dataclass( frozen=True, eq=False )
class LinearModel:
    """ Least squares linear model, forecast = x' coefficients

    Attributes
    ----------
    - **coefficients**
        one coefficient per feature (read-only array)

    - **feature_names**
        labels aligned with the coefficients

    - **sse**
        residual sum of squares on the fitting rows
    """
    coefficients: np.ndarray
    feature_names: TypedTuple[str]
    sse: float

    def __post_init__( self ):
        coefficients = as_vector( self.coefficients, name='coefficients' )
        names = names_or_default( self.feature_names, coefficients.shape[0] )
        sse = float( self.sse )
        if not np.isfinite( sse ) or sse < 0.0:
            raise ConfigError( f"sse must be finite and >= 0, received {sse}" )
        object.__setattr__( self, 'coefficients', frozen( coefficients ) )
        object.__setattr__( self, 'feature_names', TypedTuple( names, i_type=str ) )
        object.__setattr__( self, 'sse', sse )

    def predict( self, design: Matrix_T ) -> np.ndarray:
        return predict_ols( self, design )


def solve_ols(
        design: Matrix_T,
        targets: Vector_T,
        feature_names: Optional[Iterable[str]] = None,
) -> LinearModel:
    """ Returns the coefficients minimizing the sum of squared residuals

    Parameters
    ----------
    - **design**
        N x p feature rows, full column rank, N >= p

    - **targets**
        N observed values

    - **feature_names** (optional)
        p labels, 'x0', 'x1'... when omitted

    Raises
    ------
    - **quantload.exceptions.UnderdeterminedError**
        if N < p

    - **quantload.exceptions.RankDeficientError**
        if the design columns are linearly dependent

    - **quantload.exceptions.DimensionMismatchError**
        if the shapes disagree or an entry is not finite
    """
    y = as_vector( targets, name='targets' )
    X = as_matrix( design, name='design' )
    check_design( X, n_rows=y.shape[0] )
    n_rows, n_cols = X.shape
    names = names_or_default( feature_names, n_cols )
    if n_rows < n_cols:
        raise UnderdeterminedError( f"{n_rows} observation(s) for {n_cols} coefficients" )

    q, r, permutation = scipy.linalg.qr( X, mode='economic', pivoting=True )
    diagonal = np.abs( np.diag( r ) )
    rank_tolerance = diagonal[0] * max( n_rows, n_cols ) * np.finfo( float ).eps
    if diagonal[0] == 0.0 or diagonal[-1] <= rank_tolerance:
        raise RankDeficientError( f"design columns are linearly dependent (|R| diagonal {diagonal.tolist()})" )

    solution = scipy.linalg.solve_triangular( r, q.T @ y )
    beta = np.empty( n_cols )
    beta[permutation] = solution

    residuals = y - X @ beta
    sse = float( residuals @ residuals )
    logger.info( "fitted least squares model on %d rows: sse %.6g", n_rows, sse )
    return LinearModel( beta, names, sse )  # type: ignore[arg-type]


def fit_ols( supervised: SupervisedSet ) -> LinearModel:
    """ Fits the least squares model of a supervised set (see 'solve_ols') """
    return solve_ols( supervised.design, supervised.targets, supervised.feature_names )


def predict_ols( model: LinearModel, design: Matrix_T ) -> np.ndarray:
    """ Returns the forecasts x_i' coefficients of every design row

    Raises
    ------
    - **quantload.exceptions.DimensionMismatchError**
        if the column count differs from the coefficient count
    """
    X = as_matrix( design, name='design' )
    check_design( X, n_cols=model.coefficients.shape[0] )
    return X @ model.coefficients
