"""Cohomology toolkit for higher-rank graph presentations."""

from ._kcoh import *  # noqa: F401,F403
from ._kcoh import __doc__  # noqa: F401
