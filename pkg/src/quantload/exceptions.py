""" Defines custom exceptions for the quantload package

Every exception carries an 'exit_code' class attribute,
the command line interface returns it when the error reaches the top level.

Custom Exceptions
-----------------
- **_QuantLoadError**
    Private base class for all quantload custom exceptions

- **DataError**
    Base exception for invalid or unusable input data
    - InvalidRecordError, UnorderedSeriesError, EmptyResultError,
      NonMonthlyLeadError, DegenerateSplitError, ParseError,
      DuplicateMonthError, EmptyFileError, NormalizationError,
      IndexMismatchError, ZeroActualError, TypeRestrictionError

- **ModelError**
    Base exception for errors raised while fitting or applying a model
    - InvalidTauError, NonPositivePriceError, RankDeficientError,
      UnderdeterminedError, PivotLimitError, DimensionMismatchError,
      ModelFileError

- **RunError**
    Base exception for errors of the command line runs
    - ConfigError, IoError, InvariantViolationError
"""

from typing import Optional


class _QuantLoadError( Exception ):
    """ Private base class for all quantload custom exceptions """
    exit_code: int = 1


# -------------------- Data --------------------

class DataError( _QuantLoadError ):
    """ Base exception for invalid or unusable input data """
    exit_code = 10

class InvalidRecordError( DataError ):
    """ DataError: a monthly record breaks one of its invariants
    (month out of range, negative degree days, non-finite load, wrong item type)
    """
    exit_code = 11

class UnorderedSeriesError( DataError ):
    """ DataError: the records of a series are not strictly increasing in (year, month) """
    exit_code = 12

class EmptyResultError( DataError ):
    """ DataError: no target of the series has a complete lag window """
    exit_code = 13

class NonMonthlyLeadError( DataError ):
    """ DataError: the lead time is not a whole number of years
    
    Lag features are taken from the same calendar month,
    so only leads that are multiples of 12 months are meaningful.
    """
    exit_code = 14

class DegenerateSplitError( DataError ):
    """ DataError: a chronological split would leave one side empty """
    exit_code = 15

class ParseError( DataError ):
    """ DataError: a line of an input file could not be parsed

    Attributes
    ----------
    - **line**
        1-based line number in the file (None when unknown)
    """
    exit_code = 16

    def __init__( self, message:str, *, line:Optional[int] = None ):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__( message )

class DuplicateMonthError( DataError ):
    """ DataError: the same (year, month) appears twice """
    exit_code = 17

class EmptyFileError( DataError ):
    """ DataError: an input file holds no data row """
    exit_code = 18

class NormalizationError( DataError ):
    """ DataError: the requested normalization can't be applied to the loads """
    exit_code = 19

class IndexMismatchError( DataError ):
    """ DataError: the dates of a prediction file disagree with the evaluation split """
    exit_code = 20

class ZeroActualError( DataError ):
    """ DataError: a percentage error was requested on a zero actual value """
    exit_code = 21

class TypeRestrictionError( DataError ):
    """ DataError: an item of the wrong type was given to a type-restricted collection """
    exit_code = 22


# -------------------- Model --------------------

class ModelError( _QuantLoadError ):
    """ Base exception for errors raised while fitting or applying a model """
    exit_code = 30

class InvalidTauError( ModelError ):
    """ ModelError: a quantile level outside the open interval (0, 1) """
    exit_code = 31

class NonPositivePriceError( ModelError ):
    """ ModelError: an error price is zero, negative, or not finite """
    exit_code = 32

class RankDeficientError( ModelError ):
    """ ModelError: the design columns are linearly dependent beyond tolerance """
    exit_code = 33

class UnderdeterminedError( ModelError ):
    """ ModelError: fewer observations than coefficients """
    exit_code = 34

class PivotLimitError( ModelError ):
    """ ModelError: the simplex solver exceeded its pivot budget or broke down numerically
    
    Never returned as a success: it signals cycling or a solver defect.
    """
    exit_code = 35

class DimensionMismatchError( ModelError ):
    """ ModelError: vectors and matrices with incompatible shapes """
    exit_code = 36

class ModelFileError( ModelError ):
    """ ModelError: a model file is malformed or of the wrong kind """
    exit_code = 37


# -------------------- Run --------------------

class RunError( _QuantLoadError ):
    """ Base exception for errors of the command line runs """
    exit_code = 50

class ConfigError( RunError ):
    """ RunError: invalid or contradictory run configuration """
    exit_code = 51

class IoError( RunError ):
    """ RunError: a file could not be read or written """
    exit_code = 52

class InvariantViolationError( RunError ):
    """ RunError: a post-run consistency check failed """
    exit_code = 53
