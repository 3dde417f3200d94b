""" Linear quantile regression solved exactly as a linear program

The weighted absolute-error objective

    tau * sum_{y_i > x_i'b} |y_i - x_i'b|  +  (1 - tau) * sum_{y_i < x_i'b} |y_i - x_i'b|

is the linear program

    minimize    tau * sum(u) + (1 - tau) * sum(v)
    subject to  X b + u - v = y,   u >= 0,   v >= 0,   b free

A basis of that program keeps every coefficient basic, plus one of (u_i, v_i)
for all observations but p of them. The p remaining observations are
interpolated exactly, their index set 'h' is all the solver tracks:
b = X_h^-1 y_h, the sign of each other residual tells which of u_i / v_i is basic.

The simplex runs on that representation. An edge frees one interpolated
observation k, letting its residual go positive (u_k enters) or negative
(v_k enters). Steps follow the steepest reduced cost and walk past every
breakpoint of the line search while the objective keeps decreasing,
so that one step may replace several elementary pivots. After 'bland_after'
steps the solver switches to Bland's smallest-index rule with elementary
pivots, which can't cycle.

Exported Classes
----------------
- **Tau**
    validated quantile level, strictly inside (0, 1)

- **SolverOptions**
    tolerances, pivot budget and tie-break rule

- **QuantileModel**
    fitted coefficients, with the minimized objective

Exported Functions
------------------
- **pinball_loss**( residuals, tau )
- **pinball_objective**( targets, design, beta, tau )
- **solve_quantile**( design, targets, tau, options, feature_names )
- **fit_quantile**( supervised, tau, options )
- **tau_from_prices**( prices )
- **predict**( model, design )
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np
import scipy.linalg

from quantload._typed import TypedTuple
from quantload._helpers import (
    as_vector,
    as_matrix,
    check_design,
    check_tau_value,
    frozen,
    names_or_default,
)
from quantload.dataset import SupervisedSet
from quantload.metrics import PriceTags
from quantload.types import Vector_T, Matrix_T, TauLike_T
from quantload.exceptions import (
    ConfigError,
    DimensionMismatchError,
    PivotLimitError,
    RankDeficientError,
)

logger = logging.getLogger( __name__ )

TIE_BREAK_RULES = ( 'lowest-vertex', )


# -------------------- Types --------------------

@dataclass( frozen=True )
class Tau:
    """ Quantile level, strictly between 0 and 1

    Raises
    ------
    - **quantload.exceptions.InvalidTauError**
        if value is not a real number in the open interval (0, 1)
    """
    value: float

    def __post_init__( self ):
        object.__setattr__( self, 'value', check_tau_value( self.value ) )

    def __float__( self ) -> float:
        return self.value

    @classmethod
    def coerce( cls, tau: TauLike_T ) -> 'Tau':
        """ Returns 'tau' itself if it is a Tau, a validated Tau built from it otherwise """
        if isinstance( tau, Tau ):
            return tau
        return cls( tau )  # type: ignore[arg-type]


@dataclass( frozen=True )
class SolverOptions:
    """ Settings of the simplex solver

    Attributes
    ----------
    - **feasibility_tolerance**
        threshold under which reduced costs, residuals (relative to the
        largest target) and pivot entries count as zero

    - **max_pivots** (optional)
        pivot budget, 100 x (N + p) when unset

    - **tie_break**
        rule for degenerate optima, only 'lowest-vertex' is defined:
        the vertex the deterministic pivot sequence reaches first

    - **bland_after** (optional)
        pivot count after which Bland's rule is engaged, 10 x (N + p) when unset

    Raises
    ------
    - **quantload.exceptions.ConfigError**
        if a setting is out of range
    """
    feasibility_tolerance: float = 1e-9
    max_pivots: Optional[int] = None
    tie_break: str = 'lowest-vertex'
    bland_after: Optional[int] = None

    def __post_init__( self ):
        if not float( self.feasibility_tolerance ) > 0.0:
            raise ConfigError( f"feasibility_tolerance must be > 0, received {self.feasibility_tolerance}" )
        if self.max_pivots is not None and self.max_pivots < 1:
            raise ConfigError( f"max_pivots must be a positive integer, received {self.max_pivots}" )
        if self.bland_after is not None and self.bland_after < 0:
            raise ConfigError( f"bland_after must be >= 0, received {self.bland_after}" )
        if self.tie_break not in TIE_BREAK_RULES:
            raise ConfigError( f"unknown tie_break rule {self.tie_break!r}, expected one of {TIE_BREAK_RULES}" )

    def pivot_budget( self, n_rows: int, n_cols: int ) -> int:
        if self.max_pivots is None:
            return 100 * ( n_rows + n_cols )
        return self.max_pivots

    def bland_threshold( self, n_rows: int, n_cols: int ) -> int:
        if self.bland_after is None:
            return 10 * ( n_rows + n_cols )
        return self.bland_after


@dataclass( frozen=True, eq=False )
class QuantileModel:
    """ Linear conditional-quantile model, forecast = x' coefficients

    Attributes
    ----------
    - **coefficients**
        one coefficient per feature (read-only array)

    - **tau**
        the quantile level it was fitted for

    - **feature_names**
        labels aligned with the coefficients

    - **objective_value**
        minimized weighted absolute-error sum (price-normalized cost)

    - **options**
        the solver settings used

    - **pivots**
        simplex steps taken

    - **basis**
        indices of the observations the solution interpolates

    Raises
    ------
    - **quantload.exceptions.DimensionMismatchError**
        if coefficients and labels have different lengths

    - **quantload.exceptions.ConfigError**
        if objective_value is negative or not finite
    """
    coefficients: np.ndarray
    tau: Tau
    feature_names: TypedTuple[str]
    objective_value: float
    options: SolverOptions = field( default_factory=SolverOptions )
    pivots: int = 0
    basis: tuple[ int, ... ] = ()

    def __post_init__( self ):
        coefficients = as_vector( self.coefficients, name='coefficients' )
        names = names_or_default( self.feature_names, coefficients.shape[0] )
        objective = float( self.objective_value )
        if not np.isfinite( objective ) or objective < 0.0:
            raise ConfigError( f"objective_value must be finite and >= 0, received {objective}" )

        object.__setattr__( self, 'coefficients', frozen( coefficients ) )
        object.__setattr__( self, 'feature_names', TypedTuple( names, i_type=str ) )
        object.__setattr__( self, 'tau', Tau.coerce( self.tau ) )
        object.__setattr__( self, 'objective_value', objective )
        object.__setattr__( self, 'basis', tuple( int(row) for row in self.basis ) )

    def predict( self, design: Matrix_T ) -> np.ndarray:
        return predict( self, design )


# -------------------- Objective --------------------

def pinball_loss( residuals: Vector_T, tau: TauLike_T ) -> float:
    """ Returns tau * (sum of positive residuals) + (1 - tau) * (sum of |negative residuals|)

    Zero residuals contribute nothing.
    """
    level = Tau.coerce( tau ).value
    errors = as_vector( residuals, name='residuals' )
    positive = errors[ errors > 0.0 ].sum()
    negative = -errors[ errors < 0.0 ].sum()
    return float( level * positive + ( 1.0 - level ) * negative )


def pinball_objective( targets: Vector_T, design: Matrix_T, beta: Vector_T, tau: TauLike_T ) -> float:
    """ Evaluates the quantile objective of the coefficients 'beta'

    Parameters
    ----------
    - **targets**
        N observed values

    - **design**
        N x p feature rows

    - **beta**
        p coefficients

    - **tau**
        quantile level

    Raises
    ------
    - **quantload.exceptions.DimensionMismatchError**
        if the shapes disagree or an entry is not finite

    - **quantload.exceptions.InvalidTauError**
        if tau is not strictly between 0 and 1
    """
    y = as_vector( targets, name='targets' )
    X = as_matrix( design, name='design' )
    b = as_vector( beta, name='beta' )
    check_design( X, n_rows=y.shape[0], n_cols=b.shape[0] )
    return pinball_loss( y - X @ b, tau )


# -------------------- Simplex --------------------

def _initial_basis( X: np.ndarray ) -> np.ndarray:
    """ Picks p observations whose rows form a well-conditioned square system

    Uses a column-pivoted QR factorization of X' (columns of X' are observations).

    Raises
    ------
    - **quantload.exceptions.RankDeficientError**
        if the design columns are linearly dependent
    """
    n_rows, n_cols = X.shape
    if n_rows < n_cols:
        raise RankDeficientError(
            f"{n_rows} observation(s) can't determine {n_cols} coefficients"
        )

    _, r, permutation = scipy.linalg.qr( X.T, mode='economic', pivoting=True )
    diagonal = np.abs( np.diag( r ) )
    rank_tolerance = diagonal[0] * max( n_rows, n_cols ) * np.finfo( float ).eps
    rank = int( np.count_nonzero( diagonal > rank_tolerance ) ) if diagonal[0] > 0.0 else 0
    logger.debug( "design rank %d for %d columns", rank, n_cols )
    if rank < n_cols:
        raise RankDeficientError(
            f"design has rank {rank} but {n_cols} columns, "
            "some features are linear combinations of the others"
        )
    return np.sort( permutation[:n_cols] )


def _simplex( X: np.ndarray, y: np.ndarray, tau: float, options: SolverOptions ) -> tuple[ np.ndarray, np.ndarray, int ]:
    """ Runs the simplex on validated arrays, returns (beta, basis rows, pivot count) """
    n_rows, n_cols = X.shape
    tolerance = options.feasibility_tolerance
    zero_residual = tolerance * max( 1.0, float( np.max( np.abs( y ) ) ) )
    budget = options.pivot_budget( n_rows, n_cols )
    bland_after = options.bland_threshold( n_rows, n_cols )

    basis = _initial_basis( X )
    in_basis = np.zeros( n_rows, dtype=bool )
    in_basis[basis] = True

    lu = scipy.linalg.lu_factor( X[basis] )
    beta = scipy.linalg.lu_solve( lu, y[basis] )
    residuals = y - X @ beta
    # +1: u_i basic (residual >= 0), -1: v_i basic
    side = np.where( residuals >= 0.0, 1, -1 )

    pivots = 0
    bland = False

    while True:
        weights = np.where( side > 0, -tau, 1.0 - tau )
        weights[in_basis] = 0.0
        z = scipy.linalg.lu_solve( lu, X.T @ weights, trans=1 )

        cost_up = tau - z           # u_k enters, residual k turns positive
        cost_down = ( 1.0 - tau ) + z   # v_k enters, residual k turns negative
        improving_up = cost_up < -tolerance
        improving_down = cost_down < -tolerance
        if not ( improving_up.any() or improving_down.any() ):
            break

        if pivots >= budget:
            raise PivotLimitError(
                f"no optimal vertex after {pivots} pivots (budget {budget}), "
                "the pivot sequence is cycling or the problem is badly scaled"
            )
        if not bland and pivots >= bland_after:
            bland = True
            logger.warning( "engaging Bland's rule after %d pivots", pivots )

        if bland:
            # smallest variable index: every u_k comes before every v_k
            if improving_up.any():
                candidates = np.flatnonzero( improving_up )
                position, direction = int( candidates[ np.argmin( basis[candidates] ) ] ), 1
            else:
                candidates = np.flatnonzero( improving_down )
                position, direction = int( candidates[ np.argmin( basis[candidates] ) ] ), -1
            slope = ( cost_up if direction > 0 else cost_down )[position]
        else:
            costs = np.concatenate( ( cost_up, cost_down ) )
            best = int( np.argmin( costs ) )
            position, direction = best % n_cols, ( 1 if best < n_cols else -1 )
            slope = costs[best]

        unit = np.zeros( n_cols )
        unit[position] = 1.0
        step = -direction * scipy.linalg.lu_solve( lu, unit )
        change = X @ step

        # basic u_i / v_i that decrease along the edge
        blocking = ( ~in_basis ) & ( side * change > tolerance )
        rows = np.flatnonzero( blocking )
        if rows.size == 0:
            raise PivotLimitError(
                "no observation blocks an improving edge, numerical breakdown of the simplex"
            )
        ratios = np.maximum( residuals[rows] / change[rows], 0.0 )
        variable_index = np.where( side[rows] > 0, n_cols + rows, n_cols + n_rows + rows )
        order = np.lexsort( ( variable_index, ratios ) )

        if bland:
            leaving = int( rows[ order[0] ] )
            crossed = np.empty( 0, dtype=int )
        else:
            # walk the breakpoints while the objective keeps decreasing
            slopes = slope + np.cumsum( np.abs( change[ rows[order] ] ) )
            stops = np.flatnonzero( slopes >= -tolerance )
            if stops.size == 0:
                raise PivotLimitError(
                    "objective decreases past every breakpoint, numerical breakdown of the simplex"
                )
            leaving = int( rows[ order[ stops[0] ] ] )
            crossed = rows[ order[ :stops[0] ] ]

        entering_row = int( basis[position] )
        basis[position] = leaving
        in_basis[entering_row] = False
        in_basis[leaving] = True
        side[entering_row] = direction
        side[crossed] = -side[crossed]

        order_in_basis = np.argsort( basis )
        basis = basis[order_in_basis]
        lu = scipy.linalg.lu_factor( X[basis] )
        beta = scipy.linalg.lu_solve( lu, y[basis] )
        residuals = y - X @ beta
        side = np.where( residuals > zero_residual, 1, np.where( residuals < -zero_residual, -1, side ) )
        pivots += 1

    logger.debug( "simplex optimal after %d pivots (bland=%s)", pivots, bland )
    return beta, basis, pivots


# -------------------- Operations --------------------

def solve_quantile(
        design: Matrix_T,
        targets: Vector_T,
        tau: TauLike_T,
        options: SolverOptions = SolverOptions(),
        feature_names: Optional[Iterable[str]] = None,
) -> QuantileModel:
    """ Fits the linear tau-quantile model of 'targets' on 'design'

    The returned coefficients are an optimal vertex of the linear program:
    they interpolate at least p observations exactly.

    Parameters
    ----------
    - **design**
        N x p feature rows, full column rank

    - **targets**
        N observed values

    - **tau**
        quantile level, strictly between 0 and 1

    - **options** (optional)
        solver settings

    - **feature_names** (optional)
        p labels, 'x0', 'x1'... when omitted

    Raises
    ------
    - **quantload.exceptions.RankDeficientError**
        if the columns of the design are linearly dependent (or N < p)

    - **quantload.exceptions.PivotLimitError**
        if the pivot budget is exhausted or the simplex breaks down

    - **quantload.exceptions.DimensionMismatchError**
        if the shapes disagree or an entry is not finite

    - **quantload.exceptions.InvalidTauError**
        if tau is out of range
    """
    level = Tau.coerce( tau )
    y = as_vector( targets, name='targets' )
    X = as_matrix( design, name='design' )
    check_design( X, n_rows=y.shape[0] )
    if y.shape[0] < 1 or X.shape[1] < 1:
        raise DimensionMismatchError( f"can't fit a model on a {X.shape[0]} x {X.shape[1]} design" )
    names = names_or_default( feature_names, X.shape[1] )

    beta, basis, pivots = _simplex( X, y, level.value, options )
    objective = pinball_loss( y - X @ beta, level )

    logger.info( "fitted tau=%.4g quantile model on %d rows: objective %.6g, %d pivots",
                 level.value, y.shape[0], objective, pivots )
    return QuantileModel(
        coefficients=beta,
        tau=level,
        feature_names=names,  # type: ignore[arg-type]
        objective_value=objective,
        options=options,
        pivots=pivots,
        basis=tuple( basis ),
    )


def fit_quantile(
        supervised: SupervisedSet,
        tau: TauLike_T,
        options: SolverOptions = SolverOptions(),
) -> QuantileModel:
    """ Fits the tau-quantile model of a supervised set (see 'solve_quantile') """
    return solve_quantile( supervised.design, supervised.targets, tau, options, supervised.feature_names )


def tau_from_prices( prices: PriceTags ) -> Tau:
    """ Returns the quantile level implied by the error prices, p_plus / (p_plus + p_minus)

    Raises
    ------
    - **quantload.exceptions.NonPositivePriceError**
        if a price is not greater than 0 (checked by PriceTags)
    """
    prices = PriceTags( prices.p_plus, prices.p_minus )
    return Tau( prices.p_plus / ( prices.p_plus + prices.p_minus ) )


def predict( model: QuantileModel, design: Matrix_T ) -> np.ndarray:
    """ Returns the forecasts x_i' coefficients of every design row

    Raises
    ------
    - **quantload.exceptions.DimensionMismatchError**
        if the column count differs from the coefficient count
    """
    X = as_matrix( design, name='design' )
    check_design( X, n_cols=model.coefficients.shape[0] )
    return X @ model.coefficients
