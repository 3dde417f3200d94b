""" Reading and writing the comma-separated files of the pipeline

Series files
------------
    date,load,hdd,cdd
    2000-01,1234.5,812.0,0.0

One month per line, date as YYYY-MM, decimal point, no thousands
separator, UTF-8 (a byte order mark is tolerated), LF or CRLF line endings.
Line numbers in error messages count the header as line 1.

Prediction files
----------------
    date,actual,forecast,residual

Every number written by this module has 17 significant digits,
reading a written file gives back the exact same floats.

Exported Classes
----------------
- **IngestOptions**
    normalization mode and strictness of the reader

Exported Functions
------------------
- **read_series**( path, options ) / **write_series**( path, series )
- **normalize_series**( series, mode )
- **write_predictions**( path, index, actual, forecast ) / **read_predictions**( path )
- **write_table**( path, frame )
"""

import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np
import pandas as pd

from quantload._helpers import as_vector, check_same_length, format_number
from quantload.dataset import LoadSeries, MonthlyRecord
from quantload.types import Vector_T, MonthKey_T
from quantload.exceptions import (
    _QuantLoadError,
    ConfigError,
    DimensionMismatchError,
    DuplicateMonthError,
    EmptyFileError,
    IoError,
    NormalizationError,
    ParseError,
)

logger = logging.getLogger( __name__ )

SERIES_COLUMNS = ( 'date', 'load', 'hdd', 'cdd' )
PREDICTION_COLUMNS = ( 'date', 'actual', 'forecast', 'residual' )
NORMALIZE_MODES = ( 'none', 'divide_by_max' )

_DATE_PATTERN = re.compile( r'^(\d{4})-(\d{2})$' )
_NUMBER_PATTERN = re.compile( r'^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$' )

# stands in for the rows of lines holding too many fields
_BAD_LINE = '\x00bad-line'


@dataclass( frozen=True )
class IngestOptions:
    """ Settings of 'read_series'

    Attributes
    ----------
    - **normalize**
        'none' (default) or 'divide_by_max' (every load divided by the series maximum)

    - **strict**
        reject the file on the first unreadable line (default),
        or skip such lines with a warning

    Raises
    ------
    - **quantload.exceptions.ConfigError**
        if the normalization mode is unknown
    """
    normalize: str = 'none'
    strict: bool = True

    def __post_init__( self ):
        if self.normalize not in NORMALIZE_MODES:
            raise ConfigError( f"unknown normalization {self.normalize!r}, expected one of {NORMALIZE_MODES}" )


# -------------------- Parsing helpers --------------------

def _undecodable_line( path: str | Path ) -> Optional[int]:
    """ Returns the number of the first line that isn't UTF-8 """
    try:
        lines = Path( path ).read_bytes().splitlines()
    except OSError:
        return None
    for number, line in enumerate( lines, start=1 ):
        try:
            line.decode( 'utf-8' )
        except UnicodeDecodeError:
            return number
    return None


def _read_frame( path: str | Path, columns: tuple[ str, ... ] ) -> pd.DataFrame:
    """ Reads a csv file as text cells, one row per physical line after the header

    The header is read as a data row: pandas takes no implicit index column
    when the first record has an extra field.
    """

    def flag_bad_line( fields: list[ str ] ) -> list[ str ]:
        # shorter rows are padded by pandas
        return [ _BAD_LINE, str( len( fields ) ) ]

    try:
        frame = pd.read_csv(
            path,
            header=None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=False,
            encoding='utf-8-sig',
            engine='python',
            on_bad_lines=flag_bad_line,
        )
    except pd.errors.EmptyDataError as err:
        raise EmptyFileError( f"{path} is empty" ) from err
    except pd.errors.ParserError as err:
        raise ParseError( f"{path} is not a readable csv file: {err}" ) from err
    except UnicodeDecodeError as err:
        line = _undecodable_line( path )
        raise ParseError( f"{path} is not UTF-8 text: {err}", line=line ) from err
    except OSError as err:
        raise IoError( f"can't read {path}: {err}" ) from err

    header = tuple( _cell( name ) for name in frame.iloc[0] )
    if header != columns:
        raise ParseError( f"expected the header {','.join(columns)}, found {','.join(header)}", line=1 )
    records = frame.iloc[1:].reset_index( drop=True )
    records.columns = list( columns )
    return records


def _cell( value: object ) -> str:
    # missing trailing fields come back as NaN
    return value.strip() if isinstance( value, str ) else ''


def _parse_date( text: str ) -> MonthKey_T:
    match = _DATE_PATTERN.match( text )
    if match is None:
        raise ParseError( f"date must look like YYYY-MM, found {text!r}" )
    return int( match.group(1) ), int( match.group(2) )


def _parse_number( text: str, column: str ) -> float:
    if not _NUMBER_PATTERN.match( text ):
        raise ParseError( f"{column} must be a decimal number, found {text!r}" )
    return float( text )


def _check_width( cells: Sequence[ str ] ):
    if cells[0] == _BAD_LINE:
        raise ParseError( f"expected {len(SERIES_COLUMNS)} fields, found {cells[1]}" )


def _text_rows( frame: pd.DataFrame ) -> Iterable[ tuple[ int, list[ str ] ] ]:
    """ Yields (line number, stripped cells) for every non blank row """
    for offset, row in enumerate( frame.itertuples( index=False, name=None ) ):
        cells = [ _cell( value ) for value in row ]
        if not any( cells ):
            continue
        yield offset + 2, cells


# -------------------- Series --------------------

def _parse_series_row( cells: list[ str ] ) -> MonthlyRecord:
    _check_width( cells )
    for column, cell in zip( SERIES_COLUMNS, cells ):
        if not cell:
            raise ParseError( f"missing {column} value" )
    year, month = _parse_date( cells[0] )
    load, hdd, cdd = ( _parse_number( cell, column ) for column, cell in zip( SERIES_COLUMNS[1:], cells[1:] ) )
    return MonthlyRecord( year, month, load, hdd, cdd )


def normalize_series( series: LoadSeries, mode: str = 'divide_by_max' ) -> LoadSeries:
    """ Returns the series with its loads rescaled

    Parameters
    ----------
    - **mode**
        'none' returns the series unchanged,
        'divide_by_max' divides every load by the largest one (the peak becomes 1.0)

    Raises
    ------
    - **quantload.exceptions.NormalizationError**
        if the largest load is not greater than 0

    - **quantload.exceptions.ConfigError**
        if the mode is unknown
    """
    IngestOptions( normalize=mode )
    if mode == 'none' or not len( series ):
        return series

    peak = float( np.max( series.loads() ) )
    if peak <= 0.0:
        raise NormalizationError( f"can't divide by the maximum load, it is {peak}" )
    return LoadSeries( record.with_load( record.load / peak ) for record in series )


def read_series( path: str | Path, options: IngestOptions = IngestOptions() ) -> LoadSeries:
    """ Reads a series file

    Records are returned sorted by (year, month), whatever the order of the lines.

    Raises
    ------
    - **quantload.exceptions.ParseError**
        if a line can't be read (strict mode), or the header is wrong

    - **quantload.exceptions.DuplicateMonthError**
        if a month appears on two lines

    - **quantload.exceptions.EmptyFileError**
        if the file holds no record

    - **quantload.exceptions.NormalizationError**
        if divide_by_max is requested on a series whose maximum is not positive

    - **quantload.exceptions.IoError**
        if the file can't be read
    """
    frame = _read_frame( path, SERIES_COLUMNS )

    records: list[ MonthlyRecord ] = []
    lines: dict[ MonthKey_T, int ] = {}
    for line, cells in _text_rows( frame ):
        try:
            record = _parse_series_row( cells )
        except _QuantLoadError as err:
            if options.strict:
                raise ParseError( f"{err} (in {path})", line=line ) from err
            logger.warning( "skipping line %d of %s: %s", line, path, err )
            continue

        if record.key in lines:
            raise DuplicateMonthError(
                f"{path}: month {cells[0]} appears on lines {lines[record.key]} and {line}"
            )
        lines[record.key] = line
        records.append( record )

    if not records:
        raise EmptyFileError( f"{path} holds no record" )

    records.sort( key=lambda record: record.key )
    series = normalize_series( LoadSeries( records ), options.normalize )
    logger.info( "read %d monthly records from %s", len( series ), path )
    missing = series.missing_months()
    if missing:
        logger.debug( "%d calendar months missing in %s", len( missing ), path )
    return series


def _format_date( key: MonthKey_T ) -> str:
    return f"{key[0]:04d}-{key[1]:02d}"


def _write_frame( path: str | Path, frame: pd.DataFrame, what: str ):
    try:
        frame.to_csv( path, index=False, lineterminator='\n' )
    except OSError as err:
        raise IoError( f"can't write {what} file {path}: {err}" ) from err
    logger.info( "wrote %d rows to %s", len( frame ), path )


def write_series( path: str | Path, series: LoadSeries ) -> None:
    """ Writes a series file that 'read_series' reads back identically

    Raises
    ------
    - **quantload.exceptions.IoError**
        if the file can't be written
    """
    frame = pd.DataFrame(
        [
            ( _format_date( record.key ), format_number( record.load ),
              format_number( record.hdd ), format_number( record.cdd ) )
            for record in series
        ],
        columns=list( SERIES_COLUMNS ),
    )
    _write_frame( path, frame, 'series' )


# -------------------- Predictions --------------------

def write_predictions(
        path: str | Path,
        index: Sequence[ MonthKey_T ],
        actual: Vector_T,
        forecast: Vector_T,
) -> None:
    """ Writes one line per observation: date, actual, forecast, residual (actual - forecast)

    Raises
    ------
    - **quantload.exceptions.DimensionMismatchError**
        if the index and the vectors have different lengths

    - **quantload.exceptions.IoError**
        if the file can't be written
    """
    y = as_vector( actual, name='actual' )
    f = as_vector( forecast, name='forecast' )
    check_same_length( actual=y, forecast=f )
    if len( index ) != y.shape[0]:
        raise DimensionMismatchError( f"{len(index)} dates given for {y.shape[0]} predictions" )

    frame = pd.DataFrame(
        [
            ( _format_date( key ), format_number( a ), format_number( b ), format_number( a - b ) )
            for key, a, b in zip( index, y.tolist(), f.tolist() )
        ],
        columns=list( PREDICTION_COLUMNS ),
    )
    _write_frame( path, frame, 'prediction' )


def read_predictions( path: str | Path ) -> tuple[ list[ MonthKey_T ], np.ndarray, np.ndarray ]:
    """ Reads a prediction file back as (index, actual, forecast)

    The residual column is checked for presence, not recomputed.

    Raises
    ------
    - **quantload.exceptions.ParseError**
        if the header or a line can't be read

    - **quantload.exceptions.EmptyFileError**
        if the file is completely empty (a header-only file is an empty prediction set)

    - **quantload.exceptions.IoError**
        if the file can't be read
    """
    frame = _read_frame( path, PREDICTION_COLUMNS )

    index: list[ MonthKey_T ] = []
    actual: list[ float ] = []
    forecast: list[ float ] = []
    for line, cells in _text_rows( frame ):
        try:
            _check_width( cells )
            key = _parse_date( cells[0] )
            values = [ _parse_number( cell, column ) for column, cell in zip( PREDICTION_COLUMNS[1:], cells[1:] ) ]
        except ParseError as err:
            raise ParseError( f"{err} (in {path})", line=line ) from err
        index.append( key )
        actual.append( values[0] )
        forecast.append( values[1] )

    logger.debug( "read %d predictions from %s", len( index ), path )
    return index, np.array( actual, dtype=float ), np.array( forecast, dtype=float )


def write_table( path: str | Path, frame: pd.DataFrame ) -> None:
    """ Writes a report table, floats with 17 significant digits

    Raises
    ------
    - **quantload.exceptions.IoError**
        if the file can't be written
    """
    try:
        frame.to_csv( path, index=False, float_format='%.17g', lineterminator='\n' )
    except OSError as err:
        raise IoError( f"can't write table file {path}: {err}" ) from err
    logger.info( "wrote %d rows to %s", len( frame ), path )
