"""Curvature invariants, stratified determinant integrals and constant estimation."""

from ._ddvv import *  # noqa: F401,F403
from ._ddvv import __doc__  # noqa: F401
