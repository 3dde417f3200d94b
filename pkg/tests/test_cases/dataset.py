import unittest

import numpy as np

from quantload import (
    LoadSeries,
    SplitSpec,
    build_supervised,
    chronological_split,
)
from quantload.dataset import lag_feature_names
from quantload.exceptions import (
    ConfigError,
    DegenerateSplitError,
    EmptyResultError,
    NonMonthlyLeadError,
)

from tests.helpers import TestSamples, assertions


class DatasetTests( unittest.TestCase ):
    """ Testing the construction of the lagged supervised set

    Tested Functions
    ----------------
    - build_supervised
    - chronological_split
    - lag_feature_names

    Tested
    ------
    - row content and row count
    - skipped targets (missing lags)
    - parameter validation
    - split sizes and order
    """

    def __init__( self, *args, **kwargs ):
        """ Setting up common ressources for tests """
        self.samples = TestSamples( self )
        super().__init__( *args, **kwargs )

    def test_rows( self ):
        """ Tests the rows built from Jan 2000 - Sep 2015 (one year lead, eleven lags) """
        supervised = build_supervised( self.samples.monthly_series(), lead_months=12, lag_years=11 )

        self.assertEqual( supervised.n_rows, 57 )
        self.assertEqual( supervised.n_features, 14 )
        self.assertEqual( supervised.index[0], ( 2011, 1 ) )
        self.assertEqual( supervised.index[-1], ( 2015, 9 ) )

        expected = [ self.samples.load_of( year, 1 ) for year in range( 2010, 1999, -1 ) ]
        expected += [ 600.0, 5.0, 1.0 ]
        np.testing.assert_array_equal( supervised.design[0], expected )
        self.assertEqual( supervised.targets[0], self.samples.load_of( 2011, 1 ) )

        self.assertEqual(
            tuple( supervised.feature_names ),
            tuple( f"load_lag_{k}y" for k in range( 1, 12 ) ) + ( 'hdd', 'cdd', 'intercept' )
        )
        self.assertTrue( supervised.has_intercept )

        # rebuilding gives the same arrays, bit for bit
        rebuilt = build_supervised( self.samples.monthly_series(), lead_months=12, lag_years=11 )
        np.testing.assert_array_equal( rebuilt.design, supervised.design )
        np.testing.assert_array_equal( rebuilt.targets, supervised.targets )

    def test_row_alignment( self ):
        """ Every lag column holds the load of the same calendar month, k years before the target """
        supervised = build_supervised( self.samples.monthly_series(), lead_months=24, lag_years=3, include_intercept=False )
        self.assertEqual( tuple( supervised.feature_names ), ( 'load_lag_2y', 'load_lag_3y', 'load_lag_4y', 'hdd', 'cdd' ) )

        for row, ( year, month ) in enumerate( supervised.index ):
            with self.subTest( target=( year, month ) ):
                self.assertEqual( supervised.targets[row], self.samples.load_of( year, month ) )
                for column, years_back in enumerate( ( 2, 3, 4 ) ):
                    self.assertEqual( supervised.design[row, column], self.samples.load_of( year - years_back, month ) )
                self.assertEqual( supervised.design[row, 3], float( 13 - month ) * 50.0 )
                self.assertEqual( supervised.design[row, 4], float( month ) * 5.0 )

    def test_missing_months( self ):
        """ Targets whose lag window has a gap are skipped, never imputed """
        complete = build_supervised( self.samples.monthly_series(), 12, 11 )
        gapped = build_supervised( self.samples.monthly_series( skip=[ ( 2005, 3 ) ] ), 12, 11 )

        self.assertEqual( gapped.n_rows, complete.n_rows - 5 )
        self.assertFalse( any( month == 3 for _, month in gapped.index ) )

        # a missing target month only removes its own row
        missing_target = build_supervised( self.samples.monthly_series( skip=[ ( 2015, 6 ) ] ), 12, 11 )
        self.assertEqual( missing_target.n_rows, complete.n_rows - 1 )
        self.assertNotIn( ( 2015, 6 ), tuple( missing_target.index ) )

    def test_minimal_series( self ):
        """ Tests the smallest series giving a row, and the largest giving none """
        self.assertEqual( build_supervised( self.samples.januaries( 2000, 2011 ), 12, 11 ).n_rows, 1 )

        with self.assertRaises( EmptyResultError ):
            build_supervised( self.samples.januaries( 2000, 2010 ), 12, 11 )
        with self.assertRaises( EmptyResultError ):
            build_supervised( LoadSeries(), 12, 1 )

    def test_invalid_parameters( self ):
        """ Tests the validation of the lead time and of the lag count """
        series = self.samples.monthly_series( ( 2000, 1 ), ( 2003, 12 ) )
        assertions.operation_fails( self, build_supervised, [
            { 'series': series, 'lead_months': 6, 'lag_years': 1 },
            { 'series': series, 'lead_months': 0, 'lag_years': 1 },
            { 'series': series, 'lead_months': -12, 'lag_years': 1 },
            { 'series': series, 'lead_months': 12.0, 'lag_years': 1 },
        ], NonMonthlyLeadError )
        assertions.operation_fails( self, build_supervised, [
            { 'series': series, 'lead_months': 12, 'lag_years': 0 },
            { 'series': series, 'lead_months': 12, 'lag_years': True },
        ], ConfigError )

    def test_feature_names( self ):
        assertions.operation_succeeds( self, lag_feature_names, [
            ( { 'lead_months': 12, 'lag_years': 2 }, ( 'load_lag_1y', 'load_lag_2y', 'hdd', 'cdd', 'intercept' ) ),
            ( { 'lead_months': 36, 'lag_years': 1, 'include_intercept': False }, ( 'load_lag_3y', 'hdd', 'cdd' ) ),
        ])

    def test_split( self ):
        """ Tests split sizes, row order and degenerate splits """
        supervised = build_supervised( self.samples.monthly_series(), 12, 11 )
        train, validation = chronological_split( supervised, SplitSpec( 0.6 ) )

        self.assertEqual( ( train.n_rows, validation.n_rows ), ( 34, 23 ) )
        self.assertLess( train.index[-1], validation.index[0] )
        joined = train.concat( validation )
        np.testing.assert_array_equal( joined.design, supervised.design )
        np.testing.assert_array_equal( joined.targets, supervised.targets )
        self.assertEqual( tuple( joined.index ), tuple( supervised.index ) )

        two_rows = supervised.take( 0, 2 )
        self.assertEqual( [ part.n_rows for part in chronological_split( two_rows, SplitSpec( 0.5 ) ) ], [ 1, 1 ] )
        ten_rows = supervised.take( 0, 10 )
        self.assertEqual( [ part.n_rows for part in chronological_split( ten_rows, SplitSpec( 0.9 ) ) ], [ 9, 1 ] )

        self.assertEqual( SplitSpec( 0.29 ).train_size( 100 ), 29 )
        self.assertEqual( SplitSpec( 0.6 ).train_size( 57 ), 34 )

        with self.assertRaises( DegenerateSplitError ):
            chronological_split( supervised.take( 0, 1 ), SplitSpec( 0.5 ) )
        with self.assertRaises( DegenerateSplitError ):
            chronological_split( two_rows, SplitSpec( 0.4 ) )
        with self.assertRaises( DegenerateSplitError ):
            chronological_split( ten_rows, SplitSpec( 0.05 ) )
