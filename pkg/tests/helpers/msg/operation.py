from typing import Any, Optional, Type

from . import _data_formaters as formaters

# message generation

def valid_operation_failed(
        operation_name: str,
        operation_inputs: dict[ str, Any ],
        err: Exception,
) -> str:
    """ Returns a formatted failure message for valid operation failure

    Parameters
    ----------
    - **operation_name**
        the name of the operation that failed
        ( usually the name of the function handling that operation )

    - **operation_inputs**
        the named values the operation was performed with

    - **err**
        the exception raised
    """
    title = f"'{operation_name}' operation raised unexpected exception"
    return (
        "\n***\n"
        f"{formaters.red_title(title)}\n"
        f"{formaters.titled_data( 'inputs', formaters.inputs( operation_inputs ) )}\n"
        f"{formaters.titled_data( 'exception raised', formaters.value_with_type( err ) )}"
        "\n***\n"
    )

def valid_operation_unexpected_result(
        operation_name: str,
        operation_inputs: dict[ str, Any ],
        result: Any,
        expected: Any,
) -> str:
    """ Returns a formatted failure message for a valid operation returning an incorrect result

    Parameters
    ----------
    - **operation_name**
        the name of the operation

    - **operation_inputs**
        the named values the operation was performed with

    - **result**
        the value returned by the operation

    - **expected**
        the value it should have returned
    """
    title = f"'{operation_name}' operation returned an unexpected result"
    return (
        "\n***\n"
        f"{formaters.red_title(title)}\n"
        f"{formaters.titled_data( 'inputs', formaters.inputs( operation_inputs ) )}\n"
        f"{formaters.titled_data( 'result', formaters.value_with_type( result ) )}\n"
        f"{formaters.titled_data( 'expected', formaters.value_with_type( expected ) )}"
        "\n***\n"
    )

def invalid_operation_handling_failed(
        operation_name: str,
        operation_inputs: dict[ str, Any ],
        expected_exception: Type[Exception],
        result: Any = None,
        err: Optional[Exception] = None,
) -> str:
    """ Returns a formatted failure message for an invalid operation that wasn't handled correctly

    ( it either succeeded, or raised another exception than the expected one )

    Parameters
    ----------
    - **operation_name**
        the name of the operation

    - **operation_inputs**
        the named values the operation was performed with

    - **expected_exception**
        the exception class that should have been raised

    - **result** (optional)
        the value returned, if the operation succeeded

    - **err** (optional)
        the exception raised, if it wasn't the expected one
    """
    title = f"'{operation_name}' operation should have raised {expected_exception.__name__}"
    outcome = (
        formaters.titled_data( 'exception raised', formaters.value_with_type( err ) )
        if err is not None
        else formaters.titled_data( 'returned', formaters.value_with_type( result ) )
    )
    return (
        "\n***\n"
        f"{formaters.red_title(title)}\n"
        f"{formaters.titled_data( 'inputs', formaters.inputs( operation_inputs ) )}\n"
        f"{outcome}"
        "\n***\n"
    )
