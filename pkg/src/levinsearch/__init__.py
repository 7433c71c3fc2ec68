"""Levin search, Hutter search and proof-driven Levin search on a toy machine."""

from .codec import CODEC_ID
from .vm import MACHINE_ID

__version__ = "0.1.0"
