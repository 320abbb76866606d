"""Channel-level data-quality measures from pairwise-similarity performance.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
