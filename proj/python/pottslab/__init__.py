from ._pottslab import *  # noqa: F401,F403

__version__ = "1.0.0"
