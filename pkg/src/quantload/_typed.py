""" Defines the type-restricted immutable tuple used by the quantload data types

(i) not exported, the public types built on it are
'LoadSeries' (records) and the label/index tuples of 'SupervisedSet'.

Defined Classes
---------------
- **TypedTuple**
    tuple subclass whose items are all instances of a single type,
    slices and additions stay type-restricted

Utility Types
-------------
- **Item_T**
    Type bound to the tuple class, describing the type of the instance's items
"""
from typing import TYPE_CHECKING, Iterable, Generator, TypeVar, Type, SupportsIndex, overload

if TYPE_CHECKING:
    from typing_extensions import Self

from quantload._helpers import check_types

# type bound to the tuple class,
# describing the type of the instance's items
Item_T = TypeVar( 'Item_T' )


class TypedTuple( tuple[Item_T, ...] ):
    """ Class based on tuple, insuring the type safety of its items

    It can be used exactly like the built-in tuple but its items are type-restricted,
    if the type restriction is broken, it fails with a TypeRestrictionError

    Subclasses can add their own checks by overriding '_validate',
    it runs once, after the item types were checked.

    Attributes
    ----------
    - **i_type**
        The type restriction for the items

    Raises
    ------
    - **quantload.exceptions.TypeRestrictionError**
        if an item in the initial 'items' is not an instance of 'i_type'
    """
    i_type: Type[Item_T]

    def __new__(
            cls,
            items: Iterable[Item_T] = (),
            *,
            i_type: Type[Item_T],
            _skip_type_check: bool = False
    ) -> "Self":
        """ Checks the given 'items' before creating the instance

        Parameters
        ----------
        - **items** (optional)
            The initial items given to the tuple.

        - **i_type**
            The type restriction for the tuple's items

        - **_skip_type_check** (PRIVATE)
            internal shortcut allowing to skip the checks for
            instance generation from trusted items (slices of a checked instance).
        """
        if isinstance( items, Generator ):
            # because generators can be only used once
            items = tuple( items )

        if not _skip_type_check:
            check_types( *items, i_type=i_type )

        instance = super().__new__( cls, items )
        instance.i_type = i_type
        if not _skip_type_check:
            instance._validate()
        return instance

    def _validate( self ):
        """ Hook for subclass invariants, runs after the type checks """

    def _from_trusted( self, items: tuple ) -> 'TypedTuple[Item_T]':
        """ Builds a new instance of the same kind from items taken out of this one """
        return TypedTuple( items, i_type=self.i_type, _skip_type_check=True )

    @classmethod
    def _unpickle( cls, items: tuple, i_type: type ) -> "Self":
        return cls( items, i_type=i_type, _skip_type_check=True )

    def __reduce__( self ):
        # keyword-only 'i_type' is not handled by the default tuple reduction
        return ( _restore, ( type(self), tuple(self), self.i_type ) )

    # -------------------- Representation --------------------

    def __repr__( self ) -> str:
        typename = self.i_type.__name__
        return f"{type(self).__name__}[{typename}]:{tuple(self)}"

    def __str__( self ) -> str:
        return self.__repr__()

    # -------------------- Overriding --------------------
    # -> Operations returning a tuple return a typed instance

    @overload
    def __getitem__( self, key: SupportsIndex, / ) -> Item_T: ...
    @overload
    def __getitem__( self, key: slice, / ) -> 'TypedTuple[Item_T]': ...
    def __getitem__( self, key: SupportsIndex | slice, / ) -> 'Item_T | TypedTuple[Item_T]':
        """ Returns value for self[key], a slice returns an instance of the same kind """
        if isinstance( key, slice ):
            return self._from_trusted( tuple.__getitem__( self, key ) )
        return super().__getitem__( key )

    def __add__( self, value: tuple, / ) -> 'TypedTuple[Item_T]':  # type: ignore[override]
        """ (TYPE-CHECKED) Return self+value as a new instance of the same kind """
        check_types( *value, i_type=self.i_type )
        joined = self._from_trusted( tuple.__add__( self, tuple(value) ) )
        joined._validate()
        return joined


def _restore( cls: type, items: tuple, i_type: type ) -> TypedTuple:
    """ Private module-level constructor used by pickle (process-based sweep workers) """
    return cls._unpickle( items, i_type )
