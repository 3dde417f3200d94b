""" Forecast accuracy metrics and the economic load forecast error

Residuals are actual - forecast: a positive error is an under-forecast,
priced p_plus per energy unit, a negative error an over-forecast, priced p_minus.
Exact-zero residuals cost nothing.

Exported Classes
----------------
- **PriceTags**
    prices of positive and negative errors

- **EvaluationReport**
    all the metrics of one split

Exported Functions
------------------
- **mape**, **mae**, **mse**, **rmse**
    symmetric accuracy metrics

- **elfe**( actual, forecast, prices )
    economic load forecast error, in currency

- **elfe_over_d**( actual, forecast, prices )
    economic error divided by (p_plus + p_minus)

- **evaluate**( actual, forecast, prices, split_label )
    bundles every metric in an EvaluationReport

- **reports_frame**( reports ) / **format_report_table**( reports ) / **write_reports**( path, reports )
    tabular views of a list of reports
"""

import logging
import math
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Iterable

import numpy as np
import pandas as pd

from quantload._helpers import as_vector, check_same_length, check_prices, check_tau_value
from quantload.types import Vector_T
from quantload.exceptions import ZeroActualError, DimensionMismatchError, InvariantViolationError, IoError

logger = logging.getLogger( __name__ )

# relative slack for the rmse^2 == mse consistency check
_CONSISTENCY_TOLERANCE = 1e-9


@dataclass( frozen=True )
class PriceTags:
    """ Prices attached to forecast errors, currency per energy unit

    Attributes
    ----------
    - **p_plus**
        price of a positive error (actual > forecast)

    - **p_minus**
        price of a negative error (actual < forecast)

    Raises
    ------
    - **quantload.exceptions.NonPositivePriceError**
        if a price is not finite and greater than 0
    """
    p_plus: float
    p_minus: float

    def __post_init__( self ):
        p_plus, p_minus = check_prices( self.p_plus, self.p_minus )
        object.__setattr__( self, 'p_plus', p_plus )
        object.__setattr__( self, 'p_minus', p_minus )

    @property
    def total( self ) -> float:
        return self.p_plus + self.p_minus

    @classmethod
    def from_level( cls, tau: float ) -> 'PriceTags':
        """ Prices (tau, 1 - tau), whose sum is 1 and whose implied quantile level is tau """
        level = check_tau_value( tau )
        return cls( level, 1.0 - level )


def _pair( actual: Vector_T, forecast: Vector_T, *, allow_empty: bool = False ) -> tuple[ np.ndarray, np.ndarray ]:
    y = as_vector( actual, name='actual' )
    f = as_vector( forecast, name='forecast' )
    check_same_length( actual=y, forecast=f )
    if not allow_empty and y.shape[0] == 0:
        raise DimensionMismatchError( "metrics need at least one observation" )
    return y, f


# -------------------- Symmetric metrics --------------------

def mape( actual: Vector_T, forecast: Vector_T ) -> float:
    """ Mean absolute percentage error, in percent

    Raises
    ------
    - **quantload.exceptions.ZeroActualError**
        if an actual value is 0

    - **quantload.exceptions.DimensionMismatchError**
        if the vectors have different (or zero) lengths
    """
    y, f = _pair( actual, forecast )
    if np.any( y == 0.0 ):
        zero_rows = np.flatnonzero( y == 0.0 ).tolist()
        raise ZeroActualError( f"percentage error undefined for zero actual values (rows {zero_rows})" )
    return float( np.mean( np.abs( ( y - f ) / y ) ) * 100.0 )


def mae( actual: Vector_T, forecast: Vector_T ) -> float:
    """ Mean absolute error """
    y, f = _pair( actual, forecast )
    return float( np.mean( np.abs( y - f ) ) )


def mse( actual: Vector_T, forecast: Vector_T ) -> float:
    """ Mean squared error """
    y, f = _pair( actual, forecast )
    return float( np.mean( ( y - f ) ** 2 ) )


def rmse( actual: Vector_T, forecast: Vector_T ) -> float:
    """ Root mean squared error """
    return math.sqrt( mse( actual, forecast ) )


# -------------------- Economic metrics --------------------

def elfe( actual: Vector_T, forecast: Vector_T, prices: PriceTags ) -> float:
    """ Economic load forecast error

    p_plus x (sum of positive errors) + p_minus x (sum of |negative errors|)

    Raises
    ------
    - **quantload.exceptions.DimensionMismatchError**
        if the vectors have different lengths

    - **quantload.exceptions.NonPositivePriceError**
        if a price is not greater than 0
    """
    prices = PriceTags( prices.p_plus, prices.p_minus )
    y, f = _pair( actual, forecast, allow_empty=True )
    errors = y - f
    under = errors[ errors > 0.0 ].sum()
    over = -errors[ errors < 0.0 ].sum()
    return float( prices.p_plus * under + prices.p_minus * over )


def elfe_over_d( actual: Vector_T, forecast: Vector_T, prices: PriceTags ) -> float:
    """ Economic error divided by (p_plus + p_minus)

    Equal to the quantile-regression objective of the residuals
    at tau = p_plus / (p_plus + p_minus).
    """
    return elfe( actual, forecast, prices ) / PriceTags( prices.p_plus, prices.p_minus ).total


# -------------------- Report --------------------

@dataclass( frozen=True )
class EvaluationReport:
    """ Metrics of one split

    Attributes
    ----------
    - **split_label**
        name of the split ('train', 'validation'...)

    - **n**
        number of observations

    - **mape** (percent), **mae**, **mse**, **rmse** (load units)

    - **elfe** (currency), **elfe_over_d** (price-normalized)

    Raises
    ------
    - **quantload.exceptions.InvariantViolationError**
        if a metric is negative or not finite, or rmse^2 differs from mse
    """
    split_label: str
    n: int
    mape: float
    mae: float
    mse: float
    rmse: float
    elfe: float
    elfe_over_d: float

    def __post_init__( self ):
        for name in ( 'mape', 'mae', 'mse', 'rmse', 'elfe', 'elfe_over_d' ):
            value = getattr( self, name )
            if not math.isfinite( value ) or value < 0.0:
                raise InvariantViolationError( f"{self.split_label}: {name} must be finite and >= 0, got {value}" )
        if not math.isclose( self.rmse ** 2, self.mse, rel_tol=_CONSISTENCY_TOLERANCE, abs_tol=1e-300 ):
            raise InvariantViolationError( f"{self.split_label}: rmse^2 = {self.rmse ** 2} differs from mse = {self.mse}" )

    def as_row( self ) -> dict[ str, str | int | float ]:
        """ Returns the report as an ordered mapping, field name -> value """
        return { item.name: getattr( self, item.name ) for item in fields( self ) }


REPORT_FIELDS = tuple( item.name for item in fields( EvaluationReport ) )


def evaluate( actual: Vector_T, forecast: Vector_T, prices: PriceTags, split_label: str ) -> EvaluationReport:
    """ Computes every metric of a split

    Raises
    ------
    - the exceptions of the individual metrics
    """
    y, f = _pair( actual, forecast )
    return EvaluationReport(
        split_label=split_label,
        n=int( y.shape[0] ),
        mape=mape( y, f ),
        mae=mae( y, f ),
        mse=mse( y, f ),
        rmse=rmse( y, f ),
        elfe=elfe( y, f, prices ),
        elfe_over_d=elfe_over_d( y, f, prices ),
    )


def reports_frame( reports: Iterable[EvaluationReport] ) -> pd.DataFrame:
    """ Returns one row per report, columns in REPORT_FIELDS order """
    return pd.DataFrame( [ report.as_row() for report in reports ], columns=list( REPORT_FIELDS ) )


def format_report_table( reports: Iterable[EvaluationReport] ) -> str:
    """ Returns a human readable table of the reports """
    return reports_frame( reports ).to_string( index=False, float_format=lambda value: f"{value:.6g}" )


def write_reports( path: str | Path, reports: Iterable[EvaluationReport] ) -> None:
    """ Writes the reports as a comma-separated table, numbers with 17 significant digits

    Raises
    ------
    - **quantload.exceptions.IoError**
        if the file can't be written
    """
    frame = reports_frame( reports )
    try:
        frame.to_csv( path, index=False, float_format='%.17g', lineterminator='\n' )
    except OSError as err:
        raise IoError( f"can't write report file {path}: {err}" ) from err
    logger.info( "wrote %d report(s) to %s", len( frame ), path )
