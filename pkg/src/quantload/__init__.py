""" Package forecasting monthly energy load with quantile regression

The forecast minimizing the economic cost of errors, when positive errors
(under-forecasts) cost p_plus and negative errors (over-forecasts) cost
p_minus per energy unit, is the conditional quantile of level
tau = p_plus / (p_plus + p_minus). The package builds the lagged
supervised problem of a monthly series, fits that quantile exactly as
a linear program, and scores forecasts with the usual accuracy metrics
and with the economic load forecast error.

Exported Classes
----------------

- data
    - **MonthlyRecord**, **LoadSeries** *(calendar series)*
    - **SupervisedSet**, **SplitSpec** *(learning problem)*
    - **IngestOptions** *(file reading settings)*

- models
    - **Tau**, **SolverOptions**, **QuantileModel** *(quantile regression)*
    - **LinearModel** *(least squares baseline)*

- evaluation
    - **PriceTags**, **EvaluationReport**

Exported Functions
------------------
- **read_series**, **write_series**, **normalize_series**, **write_predictions**, **read_predictions**
- **build_supervised**, **chronological_split**
- **fit_quantile**, **solve_quantile**, **predict**, **tau_from_prices**, **pinball_objective**, **pinball_loss**
- **fit_ols**, **solve_ols**, **predict_ols**
- **mape**, **mae**, **mse**, **rmse**, **elfe**, **elfe_over_d**, **evaluate**
- **synthetic_series**

Exported Sub-Modules
--------------------
- **utils**
    model files and number formatting

- **exceptions**
    quantload custom exceptions

- **types**
    type hinting utilities

- **cli**
    command line entry point
"""

from .dataset import (
    MonthlyRecord,
    LoadSeries,
    SupervisedSet,
    SplitSpec,
    build_supervised,
    chronological_split,
)
from .solver import (
    Tau,
    SolverOptions,
    QuantileModel,
    solve_quantile,
    fit_quantile,
    predict,
    tau_from_prices,
    pinball_objective,
    pinball_loss,
)
from .baseline import LinearModel, solve_ols, fit_ols, predict_ols
from .metrics import PriceTags, EvaluationReport, mape, mae, mse, rmse, elfe, elfe_over_d, evaluate
from .ingestion import IngestOptions, read_series, write_series, normalize_series, write_predictions, read_predictions
from .synthetic import synthetic_series

from . import utils, types, exceptions, cli

__all__ = [
    "MonthlyRecord", "LoadSeries", "SupervisedSet", "SplitSpec",
    "build_supervised", "chronological_split",
    "Tau", "SolverOptions", "QuantileModel",
    "solve_quantile", "fit_quantile", "predict", "tau_from_prices", "pinball_objective", "pinball_loss",
    "LinearModel", "solve_ols", "fit_ols", "predict_ols",
    "PriceTags", "EvaluationReport",
    "mape", "mae", "mse", "rmse", "elfe", "elfe_over_d", "evaluate",
    "IngestOptions", "read_series", "write_series", "normalize_series", "write_predictions", "read_predictions",
    "synthetic_series",
    "utils", "exceptions", "types", "cli",
]
