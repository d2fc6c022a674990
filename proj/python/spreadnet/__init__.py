"""Bass/SI spreading on random networks.

Python bindings over the C++ core: graph generators, the event-driven
simulator, the exact ODE solutions for Erdos-Renyi and d-regular networks,
and the small-network master-equation oracle.
"""

try:
    from ._spreadnet import *  # noqa: F401,F403  (installed package layout)
    from ._spreadnet import __doc__ as _core_doc
except ImportError:
    from _spreadnet import *  # noqa: F401,F403  (in-tree build: module on PYTHONPATH)
    from _spreadnet import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
