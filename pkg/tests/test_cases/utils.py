import tempfile
import unittest
from pathlib import Path

import numpy as np

from quantload import SolverOptions, solve_quantile, solve_ols
from quantload.solver import QuantileModel, Tau
from quantload.utils import save_model, load_model, is_quantile_model, is_linear_model, format_number
from quantload.exceptions import ModelFileError, IoError

from tests.helpers import TestSamples


class UtilityTests( unittest.TestCase ):
    """ Testing utility functions

    Tested Functions
    ----------------
    - quantload.utils.save_model / load_model
    - quantload.utils.is_quantile_model / is_linear_model
    - quantload.utils.format_number
    """

    def __init__( self, *args, **kwargs ):
        """ Setting up common ressources for tests """
        self.samples = TestSamples( self )
        super().__init__( *args, **kwargs )

    def setUp( self ):
        self._directory = tempfile.TemporaryDirectory()
        self.directory = Path( self._directory.name )

    def tearDown( self ):
        self._directory.cleanup()

    def test_format_number( self ):
        for value in ( 0.1, 1.0 / 3.0, 1e-300, -2.5e17, 7.0 ):
            with self.subTest( value=value ):
                self.assertEqual( float( format_number( value ) ), value )
        self.assertEqual( format_number( 7.0 ), '7' )

    def test_quantile_model( self ):
        """ A saved quantile model reloads with identical coefficients and settings """
        rng = np.random.default_rng( 1 )
        design, targets = self.samples.random_instance( rng, 30, 3 )
        options = SolverOptions( feasibility_tolerance=1e-10, max_pivots=500 )
        model = solve_quantile( design, targets, 0.7, options, [ 'load_lag_1y', 'hdd', 'intercept' ] )

        path = self.directory / 'model.txt'
        save_model( path, model )
        loaded = load_model( path )

        self.assertTrue( is_quantile_model( loaded ) )
        self.assertFalse( is_linear_model( loaded ) )
        np.testing.assert_array_equal( loaded.coefficients, model.coefficients )
        self.assertEqual( tuple( loaded.feature_names ), ( 'load_lag_1y', 'hdd', 'intercept' ) )
        self.assertEqual( loaded.tau, Tau( 0.7 ) )
        self.assertEqual( loaded.objective_value, model.objective_value )
        self.assertEqual( loaded.options, options )
        np.testing.assert_array_equal( loaded.predict( design ), model.predict( design ) )

        text = path.read_text( encoding='utf-8' )
        self.assertTrue( text.startswith( 'kind: quantile\n' ) )
        self.assertIn( 'bland_after: none\n', text )

    def test_linear_model( self ):
        model = solve_ols( [ [ 0.0, 1.0 ], [ 1.0, 1.0 ], [ 2.0, 1.0 ], [ 3.0, 1.0 ] ], [ 0.0, 1.0, 2.0, 4.0 ], [ 'x', 'intercept' ] )
        path = self.directory / 'ols.txt'
        save_model( path, model )
        loaded = load_model( path )

        self.assertTrue( is_linear_model( loaded ) )
        np.testing.assert_array_equal( loaded.coefficients, model.coefficients )
        self.assertEqual( loaded.sse, model.sse )
        self.assertEqual( tuple( loaded.feature_names ), ( 'x', 'intercept' ) )

    def test_invalid_files( self ):
        """ Malformed, incomplete and inconsistent model files are rejected """
        valid = (
            'kind: quantile\ntau: 0.5\nfeature_names: a,b\ncoefficients: 1,2\nobjective_value: 3\n'
            'feasibility_tolerance: 1e-9\nmax_pivots: none\ntie_break: lowest-vertex\nbland_after: none\n'
        )
        self.assertTrue( is_quantile_model( load_model( self.samples.write_text( self.directory, 'valid.txt', valid ) ) ) )

        for name, text in (
                ( 'no_separator', valid + 'garbage line\n' ),
                ( 'duplicate', valid + 'tau: 0.6\n' ),
                ( 'no_objective', valid.replace( 'objective_value: 3\n', '' ) ),
                ( 'kind', valid.replace( 'kind: quantile', 'kind: forest' ) ),
                ( 'number', valid.replace( 'coefficients: 1,2', 'coefficients: 1,two' ) ),
                ( 'count', valid.replace( 'coefficients: 1,2', 'coefficients: 1,2,3' ) ),
                ( 'tau', valid.replace( 'tau: 0.5', 'tau: 1.5' ) ),
                ( 'pivots', valid.replace( 'max_pivots: none', 'max_pivots: many' ) ),
                ( 'empty', '' ),
        ):
            with self.subTest( case=name ):
                path = self.samples.write_text( self.directory, f"{name}.txt", text )
                with self.assertRaises( ModelFileError ):
                    load_model( path )

        with self.assertRaises( IoError ):
            load_model( self.directory / 'missing.txt' )

        model = QuantileModel( np.array( [ 1.0 ] ), Tau( 0.5 ), [ 'a,b' ], 0.0 )  # type: ignore[arg-type]
        with self.assertRaises( ModelFileError ):
            save_model( self.directory / 'bad_name.txt', model )
        with self.assertRaises( ModelFileError ):
            save_model( self.directory / 'not_a_model.txt', object() )  # type: ignore[arg-type]
