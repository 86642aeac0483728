"""Selection structures, the prime obstruction, classwise extension,
Vietoris models and chains of open families.

Documents are plain dicts in the same JSON schema the ``hypersel`` CLI uses.
"""

import functools
import json

from . import _core

__version__ = _core.__version__
DEFAULT_BUDGET = _core.default_budget


class HyperselError(RuntimeError):
    """A library failure; ``code`` is the error name, e.g. ``"NotPrime"``."""

    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _translate(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except _core.Error as e:
            code, message = e.args
            raise HyperselError(code, message) from None

    return wrapper


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


@_translate
def obstruction(m, p):
    """Certificate that m does not divide C(m, p) for prime p dividing m."""
    return json.loads(_core.obstruction(m, p))


@_translate
def obstruction_table(max_m):
    return json.loads(_core.obstruction_table(max_m))


@_translate
def search_regular(m, n, budget=DEFAULT_BUDGET):
    return json.loads(_core.search_regular(m, n, budget))


@_translate
def enumerate_selections(m, n, iso=False, budget=DEFAULT_BUDGET):
    return json.loads(_core.enumerate(m, n, iso, budget))


@_translate
def canonical(structure):
    return json.loads(_core.canonical(_text(structure)))


@_translate
def isomorphism(a, b):
    """Label map a -> b, or None."""
    return json.loads(_core.isomorphism(_text(a), _text(b)))


@_translate
def is_regular(structure):
    return _core.is_regular(_text(structure))


@_translate
def extend(selection, m, p, budget=DEFAULT_BUDGET):
    return json.loads(_core.extend(_text(selection), m, p, budget))


@_translate
def check_continuity(model):
    return json.loads(_core.check_continuity(_text(model)))


@_translate
def intersect_nonempty(a, b):
    return _core.intersect_nonempty(_text(a), _text(b))


@_translate
def is_nice(system):
    return json.loads(_core.is_nice(_text(system)))


@_translate
def build(system):
    return json.loads(_core.build(_text(system)))


@_translate
def derive(model, n=2):
    return json.loads(_core.derive(_text(model), n))


__all__ = [
    "HyperselError",
    "build",
    "canonical",
    "check_continuity",
    "derive",
    "enumerate_selections",
    "extend",
    "intersect_nonempty",
    "is_nice",
    "is_regular",
    "isomorphism",
    "obstruction",
    "obstruction_table",
    "search_regular",
]
