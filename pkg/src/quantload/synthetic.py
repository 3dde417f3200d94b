""" Seeded synthetic monthly series with a known conditional quantile structure

Each calendar month follows its own first order autoregression across years

    load(Y, m) = constant + persistence * load(Y-1, m) + heating_slope * hdd(Y, m) + cooling_slope * cdd(Y, m) + noise

with i.i.d. noise, so the tau-quantile of load(Y, m) given the previous year
and the degree days is linear in them: only the constant moves, by the
tau-quantile of the noise.

Degree days follow a cosine season (heating peaks in January, cooling
in July) scaled by a random factor per month, never negative.

Exported Classes
----------------
- **SyntheticProcess**
    parameters of the generating process

Exported Functions
------------------
- **synthetic_series**( start_year, n_years, seed, process )
- **noise_quantile**( tau, process )
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
import scipy.stats

from quantload.dataset import LoadSeries, MonthlyRecord
from quantload.solver import Tau
from quantload.types import TauLike_T
from quantload.exceptions import ConfigError

logger = logging.getLogger( __name__ )

NOISE_KINDS = ( 'gaussian', 'laplace' )

_MONTHS = np.arange( 1, 13 )
_SEASON = np.cos( 2.0 * np.pi * ( _MONTHS - 1 ) / 12.0 )


@dataclass( frozen=True )
class SyntheticProcess:
    """ Parameters of the same-month autoregressive process

    Attributes
    ----------
    - **constant**, **persistence**, **heating_slope**, **cooling_slope**
        coefficients of the process (|persistence| < 1)

    - **noise**
        'gaussian' or 'laplace'

    - **noise_scale**
        standard deviation of the noise (> 0)

    - **heating_peak** / **cooling_peak**
        mean degree days of January / July

    Raises
    ------
    - **quantload.exceptions.ConfigError**
        if a parameter is out of range
    """
    constant: float = 200.0
    persistence: float = 0.8
    heating_slope: float = 0.5
    cooling_slope: float = 0.8
    noise: str = 'gaussian'
    noise_scale: float = 10.0
    heating_peak: float = 900.0
    cooling_peak: float = 300.0

    def __post_init__( self ):
        if self.noise not in NOISE_KINDS:
            raise ConfigError( f"unknown noise {self.noise!r}, expected one of {NOISE_KINDS}" )
        if not abs( self.persistence ) < 1.0:
            raise ConfigError( f"persistence must lie strictly between -1 and 1, received {self.persistence}" )
        if not self.noise_scale > 0.0:
            raise ConfigError( f"noise_scale must be > 0, received {self.noise_scale}" )
        if self.heating_peak < 0.0 or self.cooling_peak < 0.0:
            raise ConfigError( "degree day peaks must be >= 0" )

    def draw_noise( self, rng: np.random.Generator, size: int ) -> np.ndarray:
        if self.noise == 'gaussian':
            return rng.normal( 0.0, self.noise_scale, size )
        # laplace with the same standard deviation
        return rng.laplace( 0.0, self.noise_scale / math.sqrt( 2.0 ), size )


def noise_quantile( tau: TauLike_T, process: SyntheticProcess = SyntheticProcess() ) -> float:
    """ Returns the tau-quantile of the noise of the process """
    level = Tau.coerce( tau ).value
    if process.noise == 'gaussian':
        return float( scipy.stats.norm.ppf( level, loc=0.0, scale=process.noise_scale ) )
    return float( scipy.stats.laplace.ppf( level, loc=0.0, scale=process.noise_scale / math.sqrt( 2.0 ) ) )


def synthetic_series(
        start_year: int = 1900,
        n_years: int = 30,
        seed: int = 0,
        process: SyntheticProcess = SyntheticProcess(),
) -> LoadSeries:
    """ Generates n_years x 12 consecutive monthly records, deterministic for a given seed

    The first year starts every month at the stationary mean of its process.

    Raises
    ------
    - **quantload.exceptions.ConfigError**
        if n_years < 1

    - **quantload.exceptions.InvalidRecordError**
        if start_year < 1900
    """
    if n_years < 1:
        raise ConfigError( f"n_years must be >= 1, received {n_years}" )

    rng = np.random.default_rng( seed )
    heating_mean = process.heating_peak * ( 1.0 + _SEASON ) / 2.0
    cooling_mean = process.cooling_peak * ( 1.0 - _SEASON ) / 2.0

    hdd = np.maximum( heating_mean * rng.uniform( 0.8, 1.2, ( n_years, 12 ) ), 0.0 )
    cdd = np.maximum( cooling_mean * rng.uniform( 0.8, 1.2, ( n_years, 12 ) ), 0.0 )
    noise = process.draw_noise( rng, n_years * 12 ).reshape( n_years, 12 )

    drivers = process.heating_slope * hdd + process.cooling_slope * cdd
    previous = ( process.constant + process.heating_slope * heating_mean + process.cooling_slope * cooling_mean ) \
        / ( 1.0 - process.persistence )

    load = np.empty( ( n_years, 12 ) )
    for year in range( n_years ):
        load[year] = process.constant + process.persistence * previous + drivers[year] + noise[year]
        previous = load[year]

    series = LoadSeries(
        MonthlyRecord( start_year + year, month, float( load[year, month - 1] ),
                       float( hdd[year, month - 1] ), float( cdd[year, month - 1] ) )
        for year in range( n_years )
        for month in _MONTHS.tolist()
    )
    logger.info( "generated %d synthetic months from %d (seed %d, %s noise)",
                 len( series ), start_year, seed, process.noise )
    return series
