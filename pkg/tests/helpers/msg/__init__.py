""" Module declaring functions generating the failure messages for quantload tests

each function returns a formatted message giving all the needed failure informations
depending on the failure type,
there is one message formatting function for every failure type.

Exported functions
------------------
- **valid_operation_failed**
    message indicating that the execution of a valid operation,
    raised an unexpected exception

- **valid_operation_unexpected_result**
    message indicating that the execution of a valid operation,
    returned an incorrect result

- **invalid_operation_handling_failed**
    message indicating that the execution of an operation in a way that should have failed,
    wasn't handled correctly

- **objective_differs_from_oracle**
    message indicating that a quantile fit isn't optimal

- **coverage_bound_broken**
    message indicating that a quantile fit leaves too many or too few targets below it
"""

from .operation import (
    valid_operation_failed,
    valid_operation_unexpected_result,
    invalid_operation_handling_failed,
)

from .optimality import (
    objective_differs_from_oracle,
    coverage_bound_broken,
)

__all__ = [
    "valid_operation_failed",
    "valid_operation_unexpected_result",
    "invalid_operation_handling_failed",

    "objective_differs_from_oracle",
    "coverage_bound_broken",
]
