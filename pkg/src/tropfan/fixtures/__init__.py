"""Bundled golden fan documents for the worked examples.

Names: cross (four rays in the plane), curve_r3 (a uniquely balanced curve
fan in rank 3), surface_r4 (a duality surface fan in rank 4), surface_r3
(a surface fan whose proper stars are duality spaces while the fan is not),
u34_bergman (the Bergman fan of the rank-3 uniform matroid on 4 elements).
"""

from importlib import resources

NAMES = ("cross", "curve_r3", "surface_r4", "surface_r3", "u34_bergman")


def text(name: str) -> str:
    """Raw canonical JSON of a bundled fixture document."""
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; have {NAMES}")
    return resources.files(__package__).joinpath(f"{name}.json").read_text("utf-8")


def load(name: str):
    """Parse a bundled fixture into a weighted fan."""
    from ..io import parse_fan

    return parse_fan(text(name))
