"""Exact octonion projective planes, their polarities and Moufang sets."""

from .fields import *  # noqa: F401,F403
from .octonion import *  # noqa: F401,F403
from .plane import *  # noqa: F401,F403
from .jordan import *  # noqa: F401,F403
from .polarity import *  # noqa: F401,F403
from .moufang import *  # noqa: F401,F403
from . import fields, octonion, plane, jordan, polarity, moufang

__version__ = "0.1.0"

__all__ = [
    *fields.__all__,
    *octonion.__all__,
    *plane.__all__,
    *jordan.__all__,
    *polarity.__all__,
    *moufang.__all__,
]
