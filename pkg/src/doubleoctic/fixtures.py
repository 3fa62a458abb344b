"""Built-in fixture corpus shipped with the package."""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .exact import Poly, Scalar, quad

__all__ = [
    "read_text",
    "list_fixtures",
    "FAMILIES",
    "OPERATORS",
    "TABLE_ROWS",
    "DEGENERATE_T0",
    "load_family",
    "infinity_fibre_forms",
    "load_builtin_operator",
    "load_cohomology",
    "transform_153_to_main",
    "transform_main_to_153",
]

_DATA = "doubleoctic.data"

FAMILIES = {
    "main": "families/main.arr",
    "meyer-153": "families/meyer-153.arr",
    "meyer-197": "families/meyer-197.arr",
    "family-96": "families/meyer-96.arr",
    "meyer-100": "families/meyer-100.arr",
    "meyer-155": "families/meyer-155.arr",
    "meyer-200": "families/meyer-200.arr",
}
ALIASES = {"153": "meyer-153", "197": "meyer-197", "96": "family-96", "meyer-96": "family-96",
           "100": "meyer-100", "155": "meyer-155", "200": "meyer-200"}
TABLE_ROWS = ("meyer-153", "meyer-197", "family-96", "meyer-100", "meyer-155", "meyer-200")

_OMEGA = quad(Fraction(-1, 2), Fraction(1, 2), -3)
DEGENERATE_T0: dict[str, Scalar] = {
    "main": Fraction(0),
    "meyer-153": Fraction(-2),
    "meyer-197": Fraction(-1, 2),
    "family-96": Fraction(-2),
    "meyer-100": Fraction(-1, 2),
    "meyer-155": _OMEGA,
    "meyer-200": _OMEGA,
}

OPERATORS = {
    "pf153": "pf153.op",
    "pf153_as_printed": "pf153_as_printed.op",
    "theta2": "theta2.op",
    "exponents-0-half-5half-3": "exponents-0-half-5half-3.op",
}


def read_text(relpath: str) -> str:
    return resources.files(_DATA).joinpath(relpath).read_text(encoding="utf-8")


def list_fixtures() -> list[str]:
    out = list(FAMILIES.values()) + ["families/main-infinity.arr"] + list(OPERATORS.values()) + ["cohomology.json"]
    return sorted(out)


def load_family(name: str):
    from .arrangement.forms import parse_arrangement

    name = ALIASES.get(name, name)
    if name not in FAMILIES:
        raise KeyError(f"unknown family {name!r}; known: {', '.join(FAMILIES)}")
    return parse_arrangement(read_text(FAMILIES[name]), label=name)


def infinity_fibre_forms():
    """The eight forms of the main family's fibre at infinity (two coincide, so
    they do not make an Arrangement)."""
    from .arrangement.forms import parse_form
    from .expr import strip_comments

    lines = [l.strip() for l in strip_comments(read_text("families/main-infinity.arr")).splitlines()]
    return [parse_form(l) for l in lines if l]


def load_builtin_operator(name: str):
    from .theta.operator import parse_operator

    name = name.removesuffix(".op")
    if name not in OPERATORS:
        raise KeyError(f"unknown operator {name!r}; known: {', '.join(OPERATORS)}")
    return parse_operator(read_text(OPERATORS[name]))


@lru_cache(maxsize=None)
def _cohomology_text() -> str:
    return read_text("cohomology.json")


def load_cohomology() -> dict:
    return json.loads(_cohomology_text())


def transform_153_to_main() -> list[list]:
    """Substitution ``(x,y,z,v) -> (-y-z-v, v, y, x+y+z+(s+1)v)``.

    It carries the table family 153 at parameter ``s`` onto the main family
    at ``s + 2``.  Row ``i`` holds the image of coordinate ``i``.
    """
    s = Poly((0, 1), "s")
    return [
        [0, -1, -1, -1],
        [0, 0, 0, 1],
        [0, 1, 0, 0],
        [1, 1, 1, s + 1],
    ]


def transform_main_to_153() -> list[list]:
    """Inverse of :func:`transform_153_to_main`, written in the main family's
    parameter: it carries the main family at ``s`` onto family 153 at ``s - 2``."""
    s = Poly((0, 1), "s")
    return [
        [1, 2 - s, 0, 1],
        [0, 0, 1, 0],
        [-1, -1, -1, 0],
        [0, 1, 0, 0],
    ]
