""" Module declaring helpers for testing the quantload package

Exports
-------
- **TestSamples**
    class aimed at generating standardized test samples for testing

- **assertions**
    Module exporting assertion functions testing specific things
    - operation results and failures
    - optimality of quantile fits

- **msg**
    Module exporting functions formatting messages for failure logging

- **oracle**
    brute-force reference solutions of the quantile fit
"""
from . import msg, oracle
from .test_samples import TestSamples
from . import assertions

__all__ = [
    "TestSamples",
    "assertions",
    "msg",
    "oracle",
]
