"""Mixture linear ordering toolkit.

Item indices are 0-based in this module; the command-line tool and its JSON
files use 1-based indices.
"""

from ._mlop import *  # noqa: F401,F403
from ._mlop import __doc__  # noqa: F401

__version__ = "0.1.0"
