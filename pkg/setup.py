"""Setup script for hymcmc."""
from setuptools import setup

# Configuration is in pyproject.toml
setup()
