""" Runs the command line interface, python -m quantload <command> [options] """

import sys

from quantload.cli import main

sys.exit( main() )
