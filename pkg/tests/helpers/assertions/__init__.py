""" Module providing assertion helper functions for quantload tests

each function is performing a certain operation and a number of assertions
to check if the operation has behaved as expected

Exported Functions
------------------
- **operation_succeeds**
    testing an operation with valid inputs against expected results

- **operation_fails**
    testing an operation with invalid inputs against the expected exception

- **objective_matches_oracle**
    testing that a quantile fit reaches the brute-force minimum

- **coverage_bound_holds**
    testing the share of targets below a quantile fit
"""

from .operation_asserts import (
    operation_succeeds,
    operation_fails,
)

from .optimality_asserts import (
    objective_matches_oracle,
    coverage_bound_holds,
)

__all__ = [
    "operation_succeeds",
    "operation_fails",

    "objective_matches_oracle",
    "coverage_bound_holds",
]
