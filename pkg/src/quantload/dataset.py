""" Calendar-indexed load series and the lagged supervised learning problem built from them

A target month (Y, m) is explained by the loads of the same calendar month
in the previous years, together with the heating and cooling degree days
recorded for the target month itself.

Exported Classes
----------------
- **MonthlyRecord**
    one month of load and degree-day observations

- **LoadSeries**
    type-restricted tuple of records, strictly increasing in (year, month)

- **SupervisedSet**
    design matrix, targets, feature labels and (year, month) index of every row

- **SplitSpec**
    fraction of the rows used for training

Exported Functions
------------------
- **build_supervised**( series, lead_months, lag_years, include_intercept )
    builds the lagged supervised set of a series

- **chronological_split**( supervised, spec )
    splits a supervised set into training and validation rows, without shuffling
"""

import logging
import math
from dataclasses import dataclass
from decimal import Decimal
from functools import cached_property
from typing import TYPE_CHECKING, Iterable, Optional

if TYPE_CHECKING:
    from typing_extensions import Self

import numpy as np

from quantload._typed import TypedTuple
from quantload._helpers import as_vector, as_matrix, frozen, names_or_default
from quantload.types import Vector_T, Matrix_T, MonthKey_T
from quantload.exceptions import (
    InvalidRecordError,
    UnorderedSeriesError,
    DuplicateMonthError,
    EmptyResultError,
    NonMonthlyLeadError,
    DegenerateSplitError,
    DimensionMismatchError,
    ConfigError,
)

logger = logging.getLogger( __name__ )

INTERCEPT_NAME = 'intercept'


# -------------------- Records --------------------

@dataclass( frozen=True, slots=True )
class MonthlyRecord:
    """ One month of observations

    Attributes
    ----------
    - **year**
        calendar year (>= 1900)

    - **month**
        calendar month, 1 to 12

    - **load**
        energy quantity of the month (GWh, or dimensionless once normalized)

    - **hdd** / **cdd**
        total heating / cooling degree days of the month (>= 0)

    Raises
    ------
    - **quantload.exceptions.InvalidRecordError**
        if one of the invariants above is broken
    """
    year: int
    month: int
    load: float
    hdd: float
    cdd: float

    def __post_init__( self ):
        if isinstance( self.year, bool ) or not isinstance( self.year, int ) or self.year < 1900:
            raise InvalidRecordError( f"year must be an integer >= 1900, received {self.year!r}" )
        if isinstance( self.month, bool ) or not isinstance( self.month, int ) or not 1 <= self.month <= 12:
            raise InvalidRecordError( f"month must be an integer in 1..12, received {self.month!r}" )

        for name in ( 'load', 'hdd', 'cdd' ):
            value = getattr( self, name )
            try:
                value = float( value )
            except (TypeError, ValueError) as err:
                raise InvalidRecordError( f"{name} must be a real number, received {value!r}" ) from err
            if not math.isfinite( value ):
                raise InvalidRecordError( f"{name} must be finite, received {value}" )
            object.__setattr__( self, name, value )

        if self.hdd < 0.0:
            raise InvalidRecordError( f"hdd must be non-negative, received {self.hdd}" )
        if self.cdd < 0.0:
            raise InvalidRecordError( f"cdd must be non-negative, received {self.cdd}" )

    @property
    def key( self ) -> MonthKey_T:
        return ( self.year, self.month )

    def with_load( self, load: float ) -> 'MonthlyRecord':
        """ Returns a copy of the record holding another load value """
        return MonthlyRecord( self.year, self.month, load, self.hdd, self.cdd )


def _month_ordinal( key: MonthKey_T ) -> int:
    year, month = key
    return year * 12 + ( month - 1 )

def _ordinal_key( ordinal: int ) -> MonthKey_T:
    return ( ordinal // 12, ordinal % 12 + 1 )


class LoadSeries( TypedTuple[MonthlyRecord] ):
    """ Ordered collection of monthly records

    Records are strictly increasing in (year, month).
    Missing months are allowed here, they only prevent
    the rows needing them from being built.

    Raises
    ------
    - **quantload.exceptions.TypeRestrictionError**
        if an item is not a MonthlyRecord

    - **quantload.exceptions.DuplicateMonthError**
        if a month appears twice

    - **quantload.exceptions.UnorderedSeriesError**
        if the records are not in chronological order

    Usage Example
    -------------
    >>> series = LoadSeries( [ MonthlyRecord( 2000, 1, 10.0, 800.0, 0.0 ) ] )
    >>> series.lookup( 2000, 1 ).load # -> 10.0
    """

    def __new__( cls, records: Iterable[MonthlyRecord] = (), **_ignored ) -> "Self":
        return super().__new__( cls, records, i_type=MonthlyRecord )

    @classmethod
    def _unpickle( cls, items: tuple, i_type: type ) -> "Self":
        return cls( items )

    def _validate( self ):
        records = tuple( self )
        for previous, current in zip( records, records[1:] ):
            if current.key == previous.key:
                raise DuplicateMonthError( f"month {_format_key(current.key)} appears twice in the series" )
            if current.key < previous.key:
                raise UnorderedSeriesError(
                    f"records must be in chronological order, "
                    f"{_format_key(current.key)} follows {_format_key(previous.key)}"
                )

    def _from_trusted( self, items: tuple ) -> 'LoadSeries':
        return LoadSeries( items )

    @property
    def records( self ) -> tuple[ MonthlyRecord, ... ]:
        return tuple( self )

    @cached_property
    def _by_key( self ) -> dict[ MonthKey_T, MonthlyRecord ]:
        return { record.key: record for record in self }

    def lookup( self, year: int, month: int ) -> Optional[MonthlyRecord]:
        """ Returns the record of the given month, or None if it is missing """
        return self._by_key.get( (year, month) )

    def loads( self ) -> np.ndarray:
        """ Returns the loads as a float vector, in series order """
        return np.array( [ record.load for record in self ], dtype=float )

    def missing_months( self ) -> list[ MonthKey_T ]:
        """ Returns the calendar months absent between the first and the last record """
        if len( self ) < 2:
            return []
        present = { _month_ordinal( record.key ) for record in self }
        first = _month_ordinal( self[0].key )
        last = _month_ordinal( self[-1].key )
        return [ _ordinal_key( ordinal ) for ordinal in range( first, last + 1 ) if ordinal not in present ]

    def __repr__( self ) -> str:
        if not self:
            return "LoadSeries[]"
        return f"LoadSeries[{_format_key(self[0].key)}..{_format_key(self[-1].key)}, {len(self)} records]"


def _format_key( key: MonthKey_T ) -> str:
    return f"{key[0]:04d}-{key[1]:02d}"


# -------------------- Supervised set --------------------

@dataclass( frozen=True, eq=False )
class SupervisedSet:
    """ Lagged supervised learning problem

    Row i pairs the target y_i with the feature row x_{i-l} available
    one lead time before it. Arrays are stored read-only.

    Attributes
    ----------
    - **targets**
        vector of the N target loads

    - **design**
        N x p matrix of feature rows

    - **feature_names**
        p labels, in column order

    - **index**
        (year, month) of every row, chronological

    - **lead_months** / **lag_years**
        the construction parameters

    Raises
    ------
    - **quantload.exceptions.DimensionMismatchError**
        if the row counts, or the label count, disagree,
        or if an entry is not finite

    - **quantload.exceptions.UnorderedSeriesError**
        if the index is not strictly chronological
    """
    targets: np.ndarray
    design: np.ndarray
    feature_names: TypedTuple[str]
    index: TypedTuple[tuple]
    lead_months: int = 12
    lag_years: int = 11

    def __post_init__( self ):
        targets = as_vector( self.targets, name='targets' )
        design = as_matrix( self.design, name='design' )
        if design.shape[0] != targets.shape[0]:
            raise DimensionMismatchError(
                f"design has {design.shape[0]} rows for {targets.shape[0]} targets"
            )
        names = names_or_default( self.feature_names, design.shape[1] )
        index = tuple( ( int(year), int(month) ) for year, month in self.index )
        if len( index ) != targets.shape[0]:
            raise DimensionMismatchError( f"index has {len(index)} entries for {targets.shape[0]} targets" )
        for previous, current in zip( index, index[1:] ):
            if current <= previous:
                raise UnorderedSeriesError(
                    f"rows must be chronological, {_format_key(current)} follows {_format_key(previous)}"
                )

        object.__setattr__( self, 'targets', frozen( targets ) )
        object.__setattr__( self, 'design', frozen( design ) )
        object.__setattr__( self, 'feature_names', TypedTuple( names, i_type=str ) )
        object.__setattr__( self, 'index', TypedTuple( index, i_type=tuple ) )

    @classmethod
    def from_arrays(
            cls,
            targets: Vector_T,
            design: Matrix_T,
            feature_names: Optional[Iterable[str]] = None,
            *,
            start: MonthKey_T = ( 1900, 1 ),
            lead_months: int = 12,
            lag_years: int = 1,
    ) -> 'SupervisedSet':
        """ Builds a set from plain arrays, indexing the rows with consecutive months from 'start' """
        n_rows = as_vector( targets, name='targets' ).shape[0]
        first = _month_ordinal( start )
        index = [ _ordinal_key( first + row ) for row in range( n_rows ) ]
        return cls( targets, design, feature_names, index, lead_months, lag_years )  # type: ignore[arg-type]

    @property
    def n_rows( self ) -> int:
        return self.targets.shape[0]

    @property
    def n_features( self ) -> int:
        return self.design.shape[1]

    @property
    def has_intercept( self ) -> bool:
        return INTERCEPT_NAME in self.feature_names

    def __len__( self ) -> int:
        return self.n_rows

    def take( self, start: int, stop: int ) -> 'SupervisedSet':
        """ Returns the rows start..stop-1 as a new set """
        return SupervisedSet(
            self.targets[start:stop],
            self.design[start:stop],
            self.feature_names,
            self.index[start:stop],
            self.lead_months,
            self.lag_years,
        )

    def concat( self, other: 'SupervisedSet' ) -> 'SupervisedSet':
        """ Returns the rows of self followed by the rows of other

        Raises
        ------
        - **quantload.exceptions.DimensionMismatchError**
            if the feature labels differ

        - **quantload.exceptions.UnorderedSeriesError**
            if other doesn't start after self
        """
        if tuple( other.feature_names ) != tuple( self.feature_names ):
            raise DimensionMismatchError( "can't concatenate sets with different features" )
        return SupervisedSet(
            np.concatenate( ( self.targets, other.targets ) ),
            np.vstack( ( self.design, other.design ) ),
            self.feature_names,
            tuple( self.index ) + tuple( other.index ),
            self.lead_months,
            self.lag_years,
        )


@dataclass( frozen=True )
class SplitSpec:
    """ Chronological split rule: the first floor(train_fraction x N) rows train the model

    Raises
    ------
    - **quantload.exceptions.ConfigError**
        if train_fraction is not strictly between 0 and 1
    """
    train_fraction: float = 0.6

    def __post_init__( self ):
        if not 0.0 < float( self.train_fraction ) < 1.0:
            raise ConfigError( f"train_fraction must lie strictly between 0 and 1, received {self.train_fraction}" )

    def train_size( self, n_rows: int ) -> int:
        # decimal reading of the fraction, 0.29 x 100 gives 29 and not 28
        return math.floor( Decimal( repr( float(self.train_fraction) ) ) * n_rows )


# -------------------- Operations --------------------

def lag_feature_names( lead_months: int, lag_years: int, include_intercept: bool = True ) -> tuple[ str, ... ]:
    """ Returns the feature labels produced by 'build_supervised' for these parameters """
    lead_years = lead_months // 12
    names = [ f"load_lag_{lead_years + k}y" for k in range( lag_years ) ]
    names += [ 'hdd', 'cdd' ]
    if include_intercept:
        names.append( INTERCEPT_NAME )
    return tuple( names )


def build_supervised(
        series: LoadSeries,
        lead_months: int = 12,
        lag_years: int = 11,
        include_intercept: bool = True,
) -> SupervisedSet:
    """ Builds the lagged supervised set of a series

    For a target at (Y, m) with a lead of L years, the feature row is
    [ load(Y-L, m), load(Y-L-1, m), ..., load(Y-L-lag_years+1, m), hdd(Y, m), cdd(Y, m), 1 ]
    where the trailing 1 is present only with 'include_intercept'.
    Degree days are the recorded values of the target month.
    Targets with a missing lag are skipped, never imputed.

    Parameters
    ----------
    - **series**
        the monthly records

    - **lead_months**
        lead time in months, a positive multiple of 12

    - **lag_years**
        number of same-month lags (>= 1)

    - **include_intercept**
        append a constant 1.0 column named 'intercept'

    Raises
    ------
    - **quantload.exceptions.NonMonthlyLeadError**
        if lead_months is not a positive multiple of 12

    - **quantload.exceptions.ConfigError**
        if lag_years < 1

    - **quantload.exceptions.EmptyResultError**
        if the series is empty, or no target has a complete lag window
    """
    if isinstance( lead_months, bool ) or not isinstance( lead_months, int ) or lead_months < 1 or lead_months % 12:
        raise NonMonthlyLeadError(
            f"lead_months must be a positive multiple of 12 (same-month lags), received {lead_months!r}"
        )
    if isinstance( lag_years, bool ) or not isinstance( lag_years, int ) or lag_years < 1:
        raise ConfigError( f"lag_years must be a positive integer, received {lag_years!r}" )
    if not len( series ):
        raise EmptyResultError( "can't build a supervised set from an empty series" )

    lead_years = lead_months // 12
    targets, rows, index = [], [], []
    skipped = 0

    for record in series:
        lags = [
            series.lookup( record.year - lead_years - k, record.month )
            for k in range( lag_years )
        ]
        if any( lag is None for lag in lags ):
            skipped += 1
            continue

        row = [ lag.load for lag in lags ]  # type: ignore[union-attr]
        row += [ record.hdd, record.cdd ]
        if include_intercept:
            row.append( 1.0 )

        targets.append( record.load )
        rows.append( row )
        index.append( record.key )

    if not rows:
        raise EmptyResultError(
            f"no target of the series has a complete window of {lag_years} lag year(s) "
            f"at a lead of {lead_months} months"
        )

    logger.info(
        "built %d supervised rows (%s..%s), %d targets without a complete lag window",
        len(rows), _format_key(index[0]), _format_key(index[-1]), skipped
    )
    return SupervisedSet(
        np.array( targets, dtype=float ),
        np.array( rows, dtype=float ),
        lag_feature_names( lead_months, lag_years, include_intercept ),
        index,  # type: ignore[arg-type]
        lead_months,
        lag_years,
    )


def chronological_split( supervised: SupervisedSet, spec: SplitSpec = SplitSpec() ) -> tuple[ SupervisedSet, SupervisedSet ]:
    """ Splits a supervised set into (training, validation), keeping row order

    Raises
    ------
    - **quantload.exceptions.DegenerateSplitError**
        if either side would be empty
    """
    n_rows = supervised.n_rows
    n_train = spec.train_size( n_rows )
    if n_train < 1 or n_train >= n_rows:
        raise DegenerateSplitError(
            f"a train fraction of {spec.train_fraction} over {n_rows} rows "
            f"gives {n_train} training and {n_rows - n_train} validation rows"
        )

    logger.info( "split %d rows into %d training and %d validation rows", n_rows, n_train, n_rows - n_train )
    return supervised.take( 0, n_train ), supervised.take( n_train, n_rows )
