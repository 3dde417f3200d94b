""" Defines private validation helpers shared by the quantload modules

Every public operation validates its numeric inputs once, at the boundary,
with the helpers below. Inner routines trust the arrays they receive.
"""

from typing import Any, Iterable

import numpy as np

from quantload.exceptions import (
    TypeRestrictionError,
    DimensionMismatchError,
    InvalidTauError,
    NonPositivePriceError,
)

# Type Checking

def check_types( *items:Any, i_type:type ):
    """ Private helper checking the type of a number of items

    Parameters
    ----------
    - ***items**
        all the items given that needs to be checked

    - **i_type**
        the expected type for the items
        (comparaison is made using isinstance)

    Raises
    ------
    - **quantload.exceptions.TypeRestrictionError**
        if an item with an incompatible type is found
    """
    for item in items:
        if not isinstance( item, i_type ):
            raise TypeRestrictionError(
                f"Type-restricted collection was expecting items of type {i_type.__name__}, "
                "but received an incompatible item:\n"
                f"({type(item).__name__}): {item}"
            )


# Numeric arrays

def as_vector( values:Any, *, name:str ) -> np.ndarray:
    """ Private helper converting 'values' to a finite 1-d float array

    Parameters
    ----------
    - **values**
        anything numpy can turn into a 1-d array of floats

    - **name**
        name of the argument, used in error messages

    Raises
    ------
    - **quantload.exceptions.DimensionMismatchError**
        if the values are not one dimensional, or contain NaN / infinite entries
    """
    try:
        vector = np.asarray( values, dtype=float )
    except (TypeError, ValueError) as err:
        raise DimensionMismatchError( f"'{name}' can't be read as a float vector: {err}" ) from err

    if vector.ndim == 0:
        vector = vector.reshape( 1 )
    if vector.ndim != 1:
        raise DimensionMismatchError( f"'{name}' must be one dimensional, received shape {vector.shape}" )
    if not np.all( np.isfinite( vector ) ):
        raise DimensionMismatchError( f"'{name}' contains non-finite entries" )
    return vector


def as_matrix( values:Any, *, name:str ) -> np.ndarray:
    """ Private helper converting 'values' to a finite 2-d float array

    A 1-d input is read as a single column.

    Raises
    ------
    - **quantload.exceptions.DimensionMismatchError**
        if the values are not two dimensional, or contain NaN / infinite entries
    """
    try:
        matrix = np.asarray( values, dtype=float )
    except (TypeError, ValueError) as err:
        raise DimensionMismatchError( f"'{name}' can't be read as a float matrix: {err}" ) from err

    if matrix.ndim == 1:
        matrix = matrix.reshape( -1, 1 )
    if matrix.ndim != 2:
        raise DimensionMismatchError( f"'{name}' must be two dimensional, received shape {matrix.shape}" )
    if not np.all( np.isfinite( matrix ) ):
        raise DimensionMismatchError( f"'{name}' contains non-finite entries" )
    return matrix


def check_same_length( *, actual:np.ndarray, forecast:np.ndarray ):
    """ Private helper checking that two vectors pair up element-wise

    Raises
    ------
    - **quantload.exceptions.DimensionMismatchError**
        if the lengths differ
    """
    if actual.shape[0] != forecast.shape[0]:
        raise DimensionMismatchError(
            f"actual and forecast must have the same length, "
            f"received {actual.shape[0]} and {forecast.shape[0]}"
        )


def check_design( design:np.ndarray, *, n_rows:int | None = None, n_cols:int | None = None ):
    """ Private helper checking the shape of a design matrix

    Parameters
    ----------
    - **design**
        a 2-d float array

    - **n_rows** (optional)
        expected row count (usually the number of targets)

    - **n_cols** (optional)
        expected column count (usually the number of coefficients)

    Raises
    ------
    - **quantload.exceptions.DimensionMismatchError**
        if a dimension differs from the expected one
    """
    if n_rows is not None and design.shape[0] != n_rows:
        raise DimensionMismatchError(
            f"design has {design.shape[0]} rows but {n_rows} targets were given"
        )
    if n_cols is not None and design.shape[1] != n_cols:
        raise DimensionMismatchError(
            f"design has {design.shape[1]} columns but the model has {n_cols} coefficients"
        )


def frozen( array:np.ndarray ) -> np.ndarray:
    """ Private helper returning a read-only copy of an array """
    copy = np.array( array, dtype=float, copy=True )
    copy.setflags( write=False )
    return copy


# Scalars

def check_tau_value( value:Any ) -> float:
    """ Private helper checking a quantile level

    Raises
    ------
    - **quantload.exceptions.InvalidTauError**
        if value is not a real number strictly between 0 and 1
    """
    try:
        tau = float( value )
    except (TypeError, ValueError) as err:
        raise InvalidTauError( f"tau must be a real number, received ({type(value).__name__}): {value}" ) from err

    if not 0.0 < tau < 1.0:
        raise InvalidTauError( f"tau must lie strictly between 0 and 1, received {tau}" )
    return tau


def check_prices( p_plus:Any, p_minus:Any ) -> tuple[ float, float ]:
    """ Private helper checking a pair of error prices

    Raises
    ------
    - **quantload.exceptions.NonPositivePriceError**
        if a price is not a finite number greater than 0
    """
    checked = []
    for label, price in ( ('p_plus', p_plus), ('p_minus', p_minus) ):
        try:
            value = float( price )
        except (TypeError, ValueError) as err:
            raise NonPositivePriceError( f"{label} must be a real number, received {price!r}" ) from err
        if not np.isfinite( value ) or value <= 0.0:
            raise NonPositivePriceError( f"{label} must be finite and greater than 0, received {value}" )
        checked.append( value )
    return checked[0], checked[1]


def names_or_default( names:Iterable[str] | None, n_cols:int ) -> tuple[ str, ... ]:
    """ Private helper returning feature labels, generating 'x0', 'x1'... when none are given

    Raises
    ------
    - **quantload.exceptions.DimensionMismatchError**
        if the given labels don't match the column count
    """
    if names is None:
        return tuple( f"x{col}" for col in range( n_cols ) )
    labels = tuple( names )
    if len( labels ) != n_cols:
        raise DimensionMismatchError(
            f"{len(labels)} feature names given for {n_cols} design columns"
        )
    return labels


# Text output

def format_number( value: float ) -> str:
    """ Private helper writing a float with 17 significant digits (exact round trip) """
    return f"{float(value):.17g}"
