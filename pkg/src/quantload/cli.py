""" Command line entry point

    quantload <command> [options]

Commands
--------
- **ingest**
    validates (and optionally normalizes) a series file, writes series.csv

- **fit**
    fits the chosen method on the training rows, writes model.txt,
    predictions_train.csv, predictions_validation.csv and report.csv

- **predict**
    applies a saved model to every row of a series, writes predictions.csv

- **evaluate**
    scores prediction files against the error prices, writes report.csv

- **sweep**
    fits one quantile model per tau of the grid, writes sweep.csv

- **compare**
    scores the quantile model, the least squares baseline and external
    prediction files side by side, writes compare.csv

- **synth**
    writes a seeded synthetic series, synthetic.csv

Every failure is logged and mapped to the exit code of its exception class
(see quantload.exceptions), 0 means every output was written and every check passed.
"""

import argparse
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from quantload.baseline import fit_ols
from quantload.dataset import SupervisedSet, SplitSpec, build_supervised, chronological_split
from quantload.ingestion import (
    IngestOptions,
    NORMALIZE_MODES,
    read_series,
    write_series,
    write_predictions,
    read_predictions,
    write_table,
)
from quantload.metrics import PriceTags, EvaluationReport, evaluate, format_report_table, write_reports
from quantload.solver import QuantileModel, SolverOptions, Tau, fit_quantile, tau_from_prices
from quantload.synthetic import NOISE_KINDS, SyntheticProcess, synthetic_series
from quantload.utils import Model_T, save_model, load_model
from quantload.exceptions import (
    _QuantLoadError,
    ConfigError,
    DimensionMismatchError,
    IndexMismatchError,
    InvariantViolationError,
    IoError,
)

logger = logging.getLogger( __name__ )

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

METHODS = ( 'qr', 'mlr' )
COMMANDS = ( 'ingest', 'fit', 'predict', 'evaluate', 'sweep', 'compare', 'synth' )
DEFAULT_SWEEP_GRID = ( 0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9 )

PAIRED_METRICS = ( 'mape', 'mae', 'rmse', 'elfe_over_d' )
PAIRED_COLUMNS = tuple(
    f"{split}_{metric}" for metric in PAIRED_METRICS for split in ( 'train', 'validation' )
)

# relative slack of the post-fit checks
_CHECK_TOLERANCE = 1e-8


# -------------------- Configuration --------------------

@dataclass( frozen=True )
class RunConfig:
    """ Validated settings of one command

    Attributes
    ----------
    - **command**
        one of COMMANDS

    - **data_path**
        series file (required by every command but evaluate and synth)

    - **lead_months**, **lag_years**, **include_intercept**
        feature construction (12, 11, True)

    - **train_fraction**
        share of the rows used for training (0.6)

    - **method**
        'qr' (quantile regression) or 'mlr' (least squares)

    - **tau** / **prices**
        quantile level, or error prices implying it (mutually exclusive)

    - **sweep_grid**
        tau values of the sweep (0.50 to 0.90, step 0.05)

    - **output_dir**
        directory receiving every written file

    - **normalize**, **strict**
        ingestion settings

    - **jobs**
        concurrent sweep fits (joblib convention, -1 for every core)

    - **model_path**
        model file written by fit, read by predict (output_dir/model.txt when unset)

    - **prediction_paths**
        prediction files scored by evaluate

    - **external**
        external prediction files of compare, as NAME=PATH or PATH (named after the file stem)

    - **seed**, **start_year**, **years**, **noise**
        synthetic series settings

    Raises
    ------
    - **quantload.exceptions.ConfigError**
        if a setting is out of range or two settings conflict

    - **quantload.exceptions.InvalidTauError** / **NonPositivePriceError**
        if tau, a grid value or a price is out of range
    """
    command: str
    data_path: Optional[Path] = None
    lead_months: int = 12
    lag_years: int = 11
    train_fraction: float = 0.6
    method: str = 'qr'
    tau: Optional[Tau] = None
    prices: Optional[PriceTags] = None
    sweep_grid: tuple[ float, ... ] = DEFAULT_SWEEP_GRID
    output_dir: Path = Path( '.' )
    include_intercept: bool = True
    normalize: str = 'none'
    strict: bool = True
    jobs: int = 1
    model_path: Optional[Path] = None
    prediction_paths: tuple[ Path, ... ] = ()
    external: tuple[ str, ... ] = ()
    seed: int = 0
    start_year: int = 1900
    years: int = 30
    noise: str = 'gaussian'
    solver_options: SolverOptions = field( default_factory=SolverOptions )

    def __post_init__( self ):
        if self.command not in COMMANDS:
            raise ConfigError( f"unknown command {self.command!r}, expected one of {COMMANDS}" )
        if self.method not in METHODS:
            raise ConfigError( f"unknown method {self.method!r}, expected one of {METHODS}" )
        if self.tau is not None and self.prices is not None:
            raise ConfigError( "give either a quantile level or error prices, not both" )
        if self.tau is not None:
            object.__setattr__( self, 'tau', Tau.coerce( self.tau ) )
        if self.jobs == 0:
            raise ConfigError( "jobs must be a positive count, or negative (joblib convention)" )
        if not self.sweep_grid:
            raise ConfigError( "the sweep grid is empty" )
        object.__setattr__( self, 'sweep_grid', tuple( Tau( value ).value for value in self.sweep_grid ) )
        SplitSpec( self.train_fraction )
        IngestOptions( self.normalize, self.strict )
        SyntheticProcess( noise=self.noise )

    @classmethod
    def from_namespace( cls, args: argparse.Namespace ) -> 'RunConfig':
        """ Builds the configuration from parsed command line arguments """
        return cls(
            command=args.command,
            data_path=args.data,
            lead_months=args.lead_months,
            lag_years=args.lag_years,
            train_fraction=args.train_fraction,
            method=args.method,
            tau=None if args.tau is None else Tau( args.tau ),
            prices=None if args.prices is None else PriceTags( *args.prices ),
            sweep_grid=tuple( args.sweep_grid ),
            output_dir=args.output_dir,
            include_intercept=not args.no_intercept,
            normalize=args.normalize,
            strict=not args.lenient,
            jobs=args.jobs,
            model_path=args.model,
            prediction_paths=tuple( args.predictions ),
            external=tuple( args.external ),
            seed=args.seed,
            start_year=args.start_year,
            years=args.years,
            noise=args.noise,
        )

    @property
    def level( self ) -> Optional[Tau]:
        """ The quantile level given directly or implied by the prices, None if neither is set """
        if self.prices is not None:
            return tau_from_prices( self.prices )
        return self.tau

    def require_level( self ) -> Tau:
        level = self.level
        if level is None:
            raise ConfigError( "the quantile method needs --tau or --prices" )
        return level

    @property
    def evaluation_prices( self ) -> PriceTags:
        """ Prices scoring the forecasts: the given ones, else (tau, 1 - tau), else (0.5, 0.5) """
        if self.prices is not None:
            return self.prices
        if self.tau is not None:
            return PriceTags.from_level( self.tau.value )
        return PriceTags.from_level( 0.5 )

    @property
    def ingest_options( self ) -> IngestOptions:
        return IngestOptions( self.normalize, self.strict )

    @property
    def split_spec( self ) -> SplitSpec:
        return SplitSpec( self.train_fraction )

    @property
    def resolved_model_path( self ) -> Path:
        return self.model_path if self.model_path is not None else self.output_dir / 'model.txt'

    def require_data( self ) -> Path:
        if self.data_path is None:
            raise ConfigError( f"the {self.command} command needs --data" )
        return self.data_path


# -------------------- Pipeline steps --------------------

def _prepare_output( config: RunConfig ) -> Path:
    try:
        config.output_dir.mkdir( parents=True, exist_ok=True )
    except OSError as err:
        raise IoError( f"can't create the output directory {config.output_dir}: {err}" ) from err
    return config.output_dir


def _load_supervised( config: RunConfig ) -> SupervisedSet:
    series = read_series( config.require_data(), config.ingest_options )
    return build_supervised( series, config.lead_months, config.lag_years, config.include_intercept )


def _load_split( config: RunConfig ) -> tuple[ SupervisedSet, SupervisedSet ]:
    return chronological_split( _load_supervised( config ), config.split_spec )


def _fit( config: RunConfig, train: SupervisedSet ) -> Model_T:
    if config.method == 'qr':
        return fit_quantile( train, config.require_level(), config.solver_options )
    return fit_ols( train )


def _check_fit( model: Model_T, train: SupervisedSet ):
    """ Post-fit optimality checks on the training rows

    Raises
    ------
    - **quantload.exceptions.InvariantViolationError**
        if a quantile fit with an intercept breaks the coverage bound,
        or least squares residuals are not orthogonal to the design
    """
    residuals = train.targets - model.predict( train.design )
    n_rows, n_cols = train.design.shape

    if isinstance( model, QuantileModel ):
        if not train.has_intercept:
            return
        zero = _CHECK_TOLERANCE * max( 1.0, float( np.max( np.abs( train.targets ) ) ) )
        # targets on the fit may sit on either side of tau
        below = int( np.count_nonzero( residuals < -zero ) )
        at_or_below = int( np.count_nonzero( residuals <= zero ) )
        bound = n_cols / n_rows + _CHECK_TOLERANCE
        tau = model.tau.value
        if below / n_rows - tau > bound or tau - at_or_below / n_rows > bound:
            raise InvariantViolationError(
                f"{below} training targets below and {at_or_below} at or below the tau={tau} fit "
                f"over {n_rows} rows, outside the coverage bound {n_cols}/{n_rows}"
            )
        logger.debug( "coverage check passed: %d below, %d at or below the fit, of %d", below, at_or_below, n_rows )
        return

    scale = max( 1.0, float( np.linalg.norm( train.design ) * np.linalg.norm( train.targets ) ) )
    inner = float( np.max( np.abs( train.design.T @ residuals ) ) )
    if inner > _CHECK_TOLERANCE * scale:
        raise InvariantViolationError( f"least squares residuals not orthogonal to the design (max |X'r| = {inner})" )
    logger.debug( "orthogonality check passed: max |X'r| = %.3g", inner )


def _score( model: Model_T, supervised: SupervisedSet, prices: PriceTags, label: str ) -> tuple[ np.ndarray, EvaluationReport ]:
    forecast = model.predict( supervised.design )
    return forecast, evaluate( supervised.targets, forecast, prices, label )


def _paired_row( train: Optional[EvaluationReport], validation: EvaluationReport ) -> dict[ str, float ]:
    row: dict[ str, float ] = {}
    for metric in PAIRED_METRICS:
        row[f"train_{metric}"] = math.nan if train is None else getattr( train, metric )
        row[f"validation_{metric}"] = getattr( validation, metric )
    return row


def _print_frame( frame: pd.DataFrame ):
    print( frame.to_string( index=False, float_format=lambda value: f"{value:.6g}" ) )


# -------------------- Commands --------------------

def cmd_ingest( config: RunConfig ) -> Path:
    """ Reads and validates the series, writes its canonical form to series.csv """
    series = read_series( config.require_data(), config.ingest_options )
    target = _prepare_output( config ) / 'series.csv'
    write_series( target, series )

    missing = series.missing_months()
    print( f"{len(series)} records, {series.records[0].year}-{series.records[0].month:02d} "
           f"to {series.records[-1].year}-{series.records[-1].month:02d}, {len(missing)} missing months" )
    return target


def cmd_fit( config: RunConfig ) -> tuple[ Model_T, list[ EvaluationReport ] ]:
    """ Fits, checks and scores the configured method, writes the model, the predictions and the report """
    train, validation = _load_split( config )
    model = _fit( config, train )
    _check_fit( model, train )

    output = _prepare_output( config )
    save_model( config.resolved_model_path, model )

    prices = config.evaluation_prices
    reports = []
    for label, rows in ( ('train', train), ('validation', validation) ):
        forecast, report = _score( model, rows, prices, label )
        write_predictions( output / f"predictions_{label}.csv", list( rows.index ), rows.targets, forecast )
        reports.append( report )

    write_reports( output / 'report.csv', reports )
    print( format_report_table( reports ) )
    return model, reports


def cmd_predict( config: RunConfig ) -> Path:
    """ Applies a saved model to every complete row of the series, writes predictions.csv

    Raises
    ------
    - **quantload.exceptions.DimensionMismatchError**
        if the features built from the series are not the ones of the model
    """
    model = load_model( config.resolved_model_path )
    supervised = _load_supervised( config )
    if tuple( supervised.feature_names ) != tuple( model.feature_names ):
        raise DimensionMismatchError(
            f"the model expects the features {tuple(model.feature_names)}, "
            f"the series gives {tuple(supervised.feature_names)} "
            "(check --lead-months, --lag-years and --no-intercept)"
        )

    target = _prepare_output( config ) / 'predictions.csv'
    write_predictions( target, list( supervised.index ), supervised.targets, model.predict( supervised.design ) )
    return target


def cmd_evaluate( config: RunConfig ) -> list[ EvaluationReport ]:
    """ Scores every prediction file against the evaluation prices, writes report.csv """
    if not config.prediction_paths:
        raise ConfigError( "the evaluate command needs at least one --predictions file" )

    prices = config.evaluation_prices
    reports = []
    for path in config.prediction_paths:
        _, actual, forecast = read_predictions( path )
        reports.append( evaluate( actual, forecast, prices, Path( path ).stem ) )

    write_reports( _prepare_output( config ) / 'report.csv', reports )
    print( format_report_table( reports ) )
    return reports


def _sweep_row(
        train: SupervisedSet,
        validation: SupervisedSet,
        tau: float,
        options: SolverOptions,
        prices: Optional[PriceTags],
) -> dict[ str, float ]:
    model = fit_quantile( train, tau, options )
    _check_fit( model, train )
    scoring = prices if prices is not None else PriceTags.from_level( tau )
    _, train_report = _score( model, train, scoring, 'train' )
    _, validation_report = _score( model, validation, scoring, 'validation' )
    return { 'tau': tau, **_paired_row( train_report, validation_report ) }


def cmd_sweep( config: RunConfig ) -> pd.DataFrame:
    """ Fits a quantile model per grid value, writes sweep.csv

    Forecasts are scored at the configured prices, or at (tau, 1 - tau)
    of each grid value when neither tau nor prices is given.
    """
    if config.method != 'qr':
        raise ConfigError( "the sweep command only runs the quantile method (--method qr)" )
    train, validation = _load_split( config )

    prices = config.evaluation_prices if config.level is not None else None
    logger.info( "sweeping %d tau values with %s job(s)", len( config.sweep_grid ), config.jobs )
    rows = Parallel( n_jobs=config.jobs )(
        delayed( _sweep_row )( train, validation, tau, config.solver_options, prices )
        for tau in config.sweep_grid
    )

    frame = pd.DataFrame( rows, columns=[ 'tau', *PAIRED_COLUMNS ] )
    write_table( _prepare_output( config ) / 'sweep.csv', frame )
    _print_frame( frame )
    return frame


def _parse_external( entry: str ) -> tuple[ str, Path ]:
    name, separator, path = entry.partition( '=' )
    if separator:
        if not name or not path:
            raise ConfigError( f"external predictions must be given as NAME=PATH or PATH, received {entry!r}" )
        return name, Path( path )
    return Path( entry ).stem, Path( entry )


def _external_reports(
        path: Path,
        train: SupervisedSet,
        validation: SupervisedSet,
        prices: PriceTags,
) -> tuple[ Optional[EvaluationReport], EvaluationReport ]:
    """ Scores an external prediction file, covering the validation rows or every row

    Raises
    ------
    - **quantload.exceptions.IndexMismatchError**
        if the dates of the file are neither the validation dates nor all the dates
    """
    index, actual, forecast = read_predictions( path )
    train_keys, validation_keys = list( train.index ), list( validation.index )

    if index == validation_keys:
        expected = validation.targets
    elif index == train_keys + validation_keys:
        expected = np.concatenate( ( train.targets, validation.targets ) )
    else:
        raise IndexMismatchError(
            f"{path}: {len(index)} dates that are neither the {len(validation_keys)} validation dates "
            f"nor the {len(train_keys) + len(validation_keys)} dates of the whole set"
        )

    if not np.array_equal( actual, expected ):
        logger.warning( "%s: actual values differ from the series, scoring against the series", path )

    if len( index ) == len( validation_keys ):
        return None, evaluate( validation.targets, forecast, prices, 'validation' )

    n_train = len( train_keys )
    return (
        evaluate( train.targets, forecast[:n_train], prices, 'train' ),
        evaluate( validation.targets, forecast[n_train:], prices, 'validation' ),
    )


def cmd_compare( config: RunConfig ) -> pd.DataFrame:
    """ Scores qr, mlr and every external prediction file on the same split, writes compare.csv """
    train, validation = _load_split( config )
    prices = config.evaluation_prices
    level = config.require_level()

    rows = []
    for name, model in (
            ( 'qr', fit_quantile( train, level, config.solver_options ) ),
            ( 'mlr', fit_ols( train ) ),
    ):
        _check_fit( model, train )
        _, train_report = _score( model, train, prices, 'train' )
        _, validation_report = _score( model, validation, prices, 'validation' )
        rows.append( { 'method': name, **_paired_row( train_report, validation_report ) } )

    names = { 'qr', 'mlr' }
    for entry in config.external:
        name, path = _parse_external( entry )
        if name in names:
            raise ConfigError( f"method name {name!r} is used twice in the comparison" )
        names.add( name )
        train_report, validation_report = _external_reports( path, train, validation, prices )
        rows.append( { 'method': name, **_paired_row( train_report, validation_report ) } )

    frame = pd.DataFrame( rows, columns=[ 'method', *PAIRED_COLUMNS ] )
    write_table( _prepare_output( config ) / 'compare.csv', frame )
    _print_frame( frame )
    return frame


def cmd_synth( config: RunConfig ) -> Path:
    """ Writes a seeded synthetic series to synthetic.csv """
    series = synthetic_series( config.start_year, config.years, config.seed, SyntheticProcess( noise=config.noise ) )
    target = _prepare_output( config ) / 'synthetic.csv'
    write_series( target, series )
    return target


COMMAND_FUNCTIONS: dict[ str, Callable[ [RunConfig], Any ] ] = {
    'ingest': cmd_ingest,
    'fit': cmd_fit,
    'predict': cmd_predict,
    'evaluate': cmd_evaluate,
    'sweep': cmd_sweep,
    'compare': cmd_compare,
    'synth': cmd_synth,
}


# -------------------- Entry point --------------------

def build_parser() -> argparse.ArgumentParser:
    """ Returns the argument parser, one sub-parser per command sharing every option """
    common = argparse.ArgumentParser( add_help=False )
    common.add_argument( '--data', type=Path, help="series file (date,load,hdd,cdd)" )
    common.add_argument( '--lead-months', type=int, default=12, help="lead time, a multiple of 12 (default 12)" )
    common.add_argument( '--lag-years', type=int, default=11, help="same-month lag years (default 11)" )
    common.add_argument( '--train-fraction', type=float, default=0.6, help="share of training rows (default 0.6)" )
    common.add_argument( '--method', choices=METHODS, default='qr' )

    level = common.add_mutually_exclusive_group()
    level.add_argument( '--tau', type=float, help="quantile level in (0, 1)" )
    level.add_argument( '--prices', type=float, nargs=2, metavar=( 'P_PLUS', 'P_MINUS' ),
                        help="prices of positive and negative errors, implying tau = P_PLUS / (P_PLUS + P_MINUS)" )

    common.add_argument( '--sweep-grid', type=float, nargs='+', default=list( DEFAULT_SWEEP_GRID ) )
    common.add_argument( '--output-dir', type=Path, default=Path( '.' ) )
    common.add_argument( '--no-intercept', action='store_true', help="don't append the constant feature" )
    common.add_argument( '--normalize', choices=NORMALIZE_MODES, default='none' )
    common.add_argument( '--lenient', action='store_true', help="skip unreadable lines instead of failing" )
    common.add_argument( '--jobs', type=int, default=1, help="concurrent sweep fits" )
    common.add_argument( '--model', type=Path, help="model file (default OUTPUT_DIR/model.txt)" )
    common.add_argument( '--predictions', type=Path, nargs='+', default=[], help="prediction files to evaluate" )
    common.add_argument( '--external', nargs='+', default=[], metavar='NAME=PATH',
                         help="external prediction files to compare" )
    common.add_argument( '--seed', type=int, default=0, help="synthetic series seed" )
    common.add_argument( '--start-year', type=int, default=1900, help="synthetic series first year" )
    common.add_argument( '--years', type=int, default=30, help="synthetic series length in years" )
    common.add_argument( '--noise', choices=NOISE_KINDS, default='gaussian', help="synthetic series noise" )

    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument( '-v', '--verbose', action='store_true' )
    verbosity.add_argument( '-q', '--quiet', action='store_true' )

    parser = argparse.ArgumentParser(
        prog='quantload',
        description="Economic load forecasting with quantile regression",
    )
    subparsers = parser.add_subparsers( dest='command', required=True )
    for command in COMMANDS:
        subparsers.add_parser( command, parents=[ common ], help=COMMAND_FUNCTIONS[command].__doc__.strip().splitlines()[0] )
    return parser


def configure_logging( verbose: bool = False, quiet: bool = False ) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig( level=level, format=LOG_FORMAT )
    logging.getLogger( 'quantload' ).setLevel( level )


def main( argv: Optional[Sequence[str]] = None ) -> int:
    """ Runs one command, returns its exit code """
    args = build_parser().parse_args( argv )
    configure_logging( args.verbose, args.quiet )

    try:
        config = RunConfig.from_namespace( args )
        COMMAND_FUNCTIONS[config.command]( config )
    except _QuantLoadError as err:
        logger.error( "%s: %s", type( err ).__name__, err )
        return err.exit_code
    return 0
