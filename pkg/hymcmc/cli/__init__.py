"""hymcmc command line interface."""

from hymcmc.cli.main import build_parser, main

__all__ = ['build_parser', 'main']
