"""Python surface of the evi solver.

The compiled core lives in ``evi._evi`` when installed as a wheel; in a plain
CMake build tree the module sits on ``PYTHONPATH`` as ``_evi``.
"""

try:
    from ._evi import *  # noqa: F401,F403
    from . import _evi as core  # noqa: F401
except ImportError:  # build-tree layout
    from _evi import *  # noqa: F401,F403
    import _evi as core  # noqa: F401
