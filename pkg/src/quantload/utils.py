""" Defines utility functions

Model files are flat text documents, one 'key: value' line per field,
numbers written with 17 significant digits so that a saved model
reloads bit-identical.

    kind: quantile
    tau: 0.69999999999999996
    feature_names: load_lag_1y,hdd,cdd,intercept
    coefficients: 0.5,1.25,-0.75,3
    objective_value: 12.5
    feasibility_tolerance: 1.0000000000000001e-09
    max_pivots: none
    tie_break: lowest-vertex
    bland_after: none

Least squares models use 'kind: ols' and store 'sse' instead of
tau, objective_value and the solver settings.

Utility Functions
-----------------
- **format_number**( value )
    17 significant digit text of a float

- **save_model**( path, model )
    writes a QuantileModel or a LinearModel to a model file

- **load_model**( path )
    reads a model file back

- **is_quantile_model**( model ) / **is_linear_model**( model )
    type guards
"""

import logging
from pathlib import Path
from typing import Any, TypeGuard, Union

from quantload._helpers import format_number
from quantload.baseline import LinearModel
from quantload.solver import QuantileModel, SolverOptions, Tau
from quantload.exceptions import _QuantLoadError, ModelFileError, IoError

logger = logging.getLogger( __name__ )

__all__ = [ 'format_number', 'save_model', 'load_model', 'is_quantile_model', 'is_linear_model' ]

Model_T = Union[ QuantileModel, LinearModel ]

QUANTILE_KIND = 'quantile'
OLS_KIND = 'ols'
_NONE = 'none'


def is_quantile_model( model: Any ) -> TypeGuard[ QuantileModel ]:
    """ Returns True if the given object is a fitted quantile model """
    return isinstance( model, QuantileModel )

def is_linear_model( model: Any ) -> TypeGuard[ LinearModel ]:
    """ Returns True if the given object is a fitted least squares model """
    return isinstance( model, LinearModel )


# -------------------- Writing --------------------

def _join_numbers( values: Any ) -> str:
    return ','.join( format_number( value ) for value in values )

def _optional_int( value: int | None ) -> str:
    return _NONE if value is None else str( int(value) )


def _model_fields( model: Model_T ) -> list[ tuple[ str, str ] ]:
    if not ( is_quantile_model( model ) or is_linear_model( model ) ):
        raise ModelFileError(
            f"only QuantileModel and LinearModel instances can be saved, received ({type(model).__name__})"
        )
    for name in model.feature_names:
        if ',' in name or '\n' in name or not name.strip():
            raise ModelFileError( f"feature name {name!r} can't be stored in a model file" )
    names = ','.join( model.feature_names )

    if is_quantile_model( model ):
        return [
            ( 'kind', QUANTILE_KIND ),
            ( 'tau', format_number( model.tau.value ) ),
            ( 'feature_names', names ),
            ( 'coefficients', _join_numbers( model.coefficients ) ),
            ( 'objective_value', format_number( model.objective_value ) ),
            ( 'feasibility_tolerance', format_number( model.options.feasibility_tolerance ) ),
            ( 'max_pivots', _optional_int( model.options.max_pivots ) ),
            ( 'tie_break', model.options.tie_break ),
            ( 'bland_after', _optional_int( model.options.bland_after ) ),
        ]
    return [
        ( 'kind', OLS_KIND ),
        ( 'feature_names', names ),
        ( 'coefficients', _join_numbers( model.coefficients ) ),
        ( 'sse', format_number( model.sse ) ),
    ]


def save_model( path: str | Path, model: Model_T ) -> None:
    """ Writes a fitted model to a text file (overwritten if it exists)

    Raises
    ------
    - **quantload.exceptions.ModelFileError**
        if the object is not a supported model, or a feature name can't be stored

    - **quantload.exceptions.IoError**
        if the file can't be written
    """
    document = ''.join( f"{key}: {value}\n" for key, value in _model_fields( model ) )
    try:
        with open( path, 'w', encoding='utf-8', newline='\n' ) as stream:
            stream.write( document )
    except OSError as err:
        raise IoError( f"can't write model file {path}: {err}" ) from err
    logger.info( "wrote %s model to %s", 'quantile' if is_quantile_model( model ) else 'least squares', path )


# -------------------- Reading --------------------

def _parse_document( text: str, path: str | Path ) -> dict[ str, str ]:
    entries: dict[ str, str ] = {}
    for number, line in enumerate( text.splitlines(), start=1 ):
        if not line.strip():
            continue
        key, separator, value = line.partition( ':' )
        if not separator:
            raise ModelFileError( f"{path}, line {number}: expected 'key: value', found {line!r}" )
        key = key.strip()
        if key in entries:
            raise ModelFileError( f"{path}, line {number}: field {key!r} appears twice" )
        entries[key] = value.strip()
    return entries


def _require( entries: dict[ str, str ], key: str, path: str | Path ) -> str:
    try:
        return entries[key]
    except KeyError:
        raise ModelFileError( f"{path}: missing field {key!r}" ) from None


def _parse_float( text: str, key: str, path: str | Path ) -> float:
    try:
        return float( text )
    except ValueError as err:
        raise ModelFileError( f"{path}: field {key!r} is not a number ({text!r})" ) from err


def _parse_optional_int( text: str, key: str, path: str | Path ) -> int | None:
    if text == _NONE:
        return None
    try:
        return int( text )
    except ValueError as err:
        raise ModelFileError( f"{path}: field {key!r} is not an integer ({text!r})" ) from err


def load_model( path: str | Path ) -> Model_T:
    """ Reads a model file written by 'save_model'

    Raises
    ------
    - **quantload.exceptions.ModelFileError**
        if the document is malformed, incomplete or describes an invalid model

    - **quantload.exceptions.IoError**
        if the file can't be read
    """
    try:
        with open( path, 'r', encoding='utf-8' ) as stream:
            text = stream.read()
    except OSError as err:
        raise IoError( f"can't read model file {path}: {err}" ) from err

    entries = _parse_document( text, path )
    kind = _require( entries, 'kind', path )
    names = _require( entries, 'feature_names', path ).split( ',' )
    coefficients = [
        _parse_float( item, 'coefficients', path )
        for item in _require( entries, 'coefficients', path ).split( ',' )
    ]

    try:
        if kind == QUANTILE_KIND:
            options = SolverOptions(
                feasibility_tolerance=_parse_float( _require( entries, 'feasibility_tolerance', path ), 'feasibility_tolerance', path ),
                max_pivots=_parse_optional_int( _require( entries, 'max_pivots', path ), 'max_pivots', path ),
                tie_break=_require( entries, 'tie_break', path ),
                bland_after=_parse_optional_int( _require( entries, 'bland_after', path ), 'bland_after', path ),
            )
            model: Model_T = QuantileModel(
                coefficients=coefficients,  # type: ignore[arg-type]
                tau=Tau( _parse_float( _require( entries, 'tau', path ), 'tau', path ) ),
                feature_names=names,  # type: ignore[arg-type]
                objective_value=_parse_float( _require( entries, 'objective_value', path ), 'objective_value', path ),
                options=options,
            )
        elif kind == OLS_KIND:
            model = LinearModel(
                coefficients,  # type: ignore[arg-type]
                names,  # type: ignore[arg-type]
                _parse_float( _require( entries, 'sse', path ), 'sse', path ),
            )
        else:
            raise ModelFileError( f"{path}: unknown model kind {kind!r}, expected '{QUANTILE_KIND}' or '{OLS_KIND}'" )
    except ModelFileError:
        raise
    except _QuantLoadError as err:
        raise ModelFileError( f"{path}: invalid model ({err})" ) from err

    logger.debug( "read %s model with %d coefficients from %s", kind, len( coefficients ), path )
    return model
