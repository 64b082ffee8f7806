"""Decoders for trellis-constrained (intersection) codes."""

try:
    from tcc._core import *  # noqa: F401,F403  (installed wheel layout)
    from tcc._core import __doc__  # noqa: F401
except ImportError:  # in-tree layout: _core sits next to the package dir
    from _core import *  # noqa: F401,F403
    from _core import __doc__  # noqa: F401

__version__ = "0.1.0"
