"""Built-in maximal-graph data used by the test and verification suites.

Every datum uses dh = dz on a disk with |g| > 1, anchored at 0 -> (0,0,0):
a spacelike plane (g == 2), three perturbed planes g = z + c, and one rational
example, each at domain radii 0.5 and 0.9.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .rational import HolomorphicForm, RationalHolomorphic
from .weierstrass import WeierstrassData

_VALIDITY = 2.0


def _dz() -> HolomorphicForm:
    return HolomorphicForm(RationalHolomorphic.constant(1.0, _VALIDITY))


def _datum(g: RationalHolomorphic, radius: float) -> WeierstrassData:
    return WeierstrassData(g, _dz(), radius)


def _g_plane() -> RationalHolomorphic:
    return RationalHolomorphic.constant(2.0, _VALIDITY)


def _g_shift(c: float) -> RationalHolomorphic:
    return RationalHolomorphic.polynomial([c, 1.0], _VALIDITY)


def _g_rational() -> RationalHolomorphic:
    return RationalHolomorphic(np.array([3.0, 1.0]), np.array([1.0, -0.2]), _VALIDITY)


_BUILDERS = {
    "plane": _g_plane,
    "shift2.5": lambda: _g_shift(2.5),
    "shift3": lambda: _g_shift(3.0),
    "shift4": lambda: _g_shift(4.0),
    "rational": _g_rational,
}

_RADII = {"r05": 0.5, "r09": 0.9}


@lru_cache(maxsize=1)
def catalog() -> dict[str, WeierstrassData]:
    """Name -> datum for all ten built-in graph data."""
    out = {}
    for gname, build in _BUILDERS.items():
        for rname, radius in _RADII.items():
            out[f"{gname}-{rname}"] = _datum(build(), radius)
    return out


def get(name: str) -> WeierstrassData:
    try:
        return catalog()[name]
    except KeyError:
        raise KeyError(f"unknown catalog datum {name!r}; known: {sorted(catalog())}") from None
