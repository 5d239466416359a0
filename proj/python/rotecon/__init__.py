"""Rotation economics of even-aged stands.

Thin wrapper over the compiled extension; every class and function lives in
``rotecon._core``.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "1.0.0"
