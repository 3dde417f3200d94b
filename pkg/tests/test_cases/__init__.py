""" Module declaring unittest TestCases for testing quantload

Exported Classes
----------------
- **BaseTest**
    all other tests are dependent on the behaviour tested in that class,
    other tests shouldn't be executed if this one fails.
    - testing the initialisation of the domain types in different conditions
    - testing the type-restricted tuple

- **DatasetTests**
    testing the lagged supervised set and the chronological split

- **SolverTests**
    testing the exact quantile regression solver

- **BaselineTests**
    testing the least squares baseline

- **MetricsTests**
    testing accuracy and economic metrics

- **IngestionTests**
    testing the csv readers and writers

- **UtilityTests**
    testing utility functions:
        - quantload.utils.save_model / load_model
        - quantload.utils.is_quantile_model / is_linear_model
        - quantload.utils.format_number

- **SyntheticTests**
    testing the synthetic series generator

- **CommandLineTests**
    testing every command of the command line interface

- **AcceptanceTests**
    end to end optimality and forecasting properties
"""

from .base import BaseTest
from .utils import UtilityTests

from .dataset import DatasetTests
from .solver import SolverTests
from .baseline import BaselineTests
from .metrics import MetricsTests
from .ingestion import IngestionTests
from .synthetic import SyntheticTests

from .cli import CommandLineTests
from .acceptance import AcceptanceTests

__all__ = [
    "BaseTest",
    "UtilityTests",
    "DatasetTests", "SolverTests", "BaselineTests", "MetricsTests",
    "IngestionTests", "SyntheticTests",
    "CommandLineTests", "AcceptanceTests",
]
