"""Gaussian wave packet transform toolkit (python bindings)."""

from ._gwpt import *  # noqa: F401,F403
