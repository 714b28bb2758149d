"""Path-level software citations kept alongside version history.

The heavy lifting happens in the C++ core; this package re-exports it.
"""

from ._core import *  # noqa: F401,F403
from ._core import GitCiteError, ErrorCode, run_cli

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
