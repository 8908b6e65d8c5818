from ._core import *  # noqa: F401,F403
from ._core import Error

__version__ = "0.1.0"
