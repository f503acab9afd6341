"""Check-worthiness ranking of tweets with a CNN over token embeddings."""

from checkworthy._core import *  # noqa: F401,F403
from checkworthy._core import __version__  # noqa: F401
