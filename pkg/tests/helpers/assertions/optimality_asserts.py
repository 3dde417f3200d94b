import unittest

import numpy as np

from quantload.solver import QuantileModel
from tests.helpers import msg, oracle


def objective_matches_oracle(
        test_case: unittest.TestCase,
        model: QuantileModel,
        design: np.ndarray,
        targets: np.ndarray,
        tolerance: float = 1e-9,
):
    """ Asserts that a fitted objective is the smallest objective of every interpolating subset

    Also checks that the reported objective is the one of the returned coefficients.

    Parameters
    ----------
    - **test_case**
        the TestCase instance from which the function is called

    - **model**
        the fitted model

    - **design** / **targets**
        the data it was fitted on

    - **tolerance** (optional)
        absolute tolerance on the objective
    """
    tau = model.tau.value
    inputs = { 'design': design, 'targets': targets, 'tau': tau }
    best, _ = oracle.subset_oracle( design, targets, tau )

    recomputed = float( oracle.pinball( targets - design @ model.coefficients, tau ) )
    test_case.assertAlmostEqual( model.objective_value, recomputed, delta=tolerance )
    test_case.assertAlmostEqual( model.objective_value, best, delta=tolerance,
        msg=msg.objective_differs_from_oracle( inputs, model.objective_value, best, tolerance )
    )


def coverage_bound_holds(
        test_case: unittest.TestCase,
        model: QuantileModel,
        design: np.ndarray,
        targets: np.ndarray,
        zero_tolerance: float = 1e-9,
):
    """ Asserts |#{y_i < x_i'b} / N - tau| <= p / N at a fitted solution

    Parameters
    ----------
    - **zero_tolerance** (optional)
        residuals above -zero_tolerance x max(1, max |y|) count as zero
        (the interpolated observations)
    """
    n_rows, n_cols = design.shape
    residuals = targets - design @ model.coefficients
    zero = zero_tolerance * max( 1.0, float( np.max( np.abs( targets ) ) ) )
    below = int( np.count_nonzero( residuals < -zero ) )

    test_case.assertLessEqual(
        abs( below / n_rows - model.tau.value ), n_cols / n_rows + 1e-12,
        msg.coverage_bound_broken(
            { 'design': design, 'targets': targets, 'tau': model.tau.value },
            below, n_rows, n_cols
        )
    )
