""" Testing module for the quantload package

(i) Samples are deterministic: random instances come from seeded generators,
and the sample load series encode their own dates (see tests.helpers.TestSamples).
"""

import unittest
from tests.test_cases import BaseTest

def load_tests( loader:unittest.TestLoader, standard_tests, pattern ) -> unittest.TestSuite:
    # Create a test suite
    test_suite = unittest.TestSuite()

    # Load base tests
    base_tests = loader.loadTestsFromTestCase(BaseTest)
    test_suite.addTests(base_tests)

    # Run base tests and collect results
    base_tests_result = unittest.TestResult()
    base_tests.run(base_tests_result)

    # Only if the base tests pass, add the other tests
    if base_tests_result.wasSuccessful():
        from tests.test_cases import (
            UtilityTests,
            DatasetTests,
            SolverTests,
            BaselineTests,
            MetricsTests,
            IngestionTests,
            SyntheticTests,
            CommandLineTests,
            AcceptanceTests,
        )

        # Add the other test cases to the test suite
        test_suite.addTests(loader.loadTestsFromTestCase(UtilityTests))
        test_suite.addTests(loader.loadTestsFromTestCase(DatasetTests))
        test_suite.addTests(loader.loadTestsFromTestCase(SolverTests))
        test_suite.addTests(loader.loadTestsFromTestCase(BaselineTests))
        test_suite.addTests(loader.loadTestsFromTestCase(MetricsTests))
        test_suite.addTests(loader.loadTestsFromTestCase(IngestionTests))
        test_suite.addTests(loader.loadTestsFromTestCase(SyntheticTests))
        test_suite.addTests(loader.loadTestsFromTestCase(CommandLineTests))
        test_suite.addTests(loader.loadTestsFromTestCase(AcceptanceTests))

    return test_suite
