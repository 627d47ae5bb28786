"""Ramanujan expansions with multiplicative coefficients.

Specs are passed as dicts in the same JSON layout the command line reads.
Exact results come back as pairs of Fractions (real, imaginary).
"""

import json
from fractions import Fraction

from . import _core
from ._core import (
    UsageError,
    euler_phi,
    factorize,
    mobius,
    radical,
    ramanujan_sum,
    squarefree_count,
    zeta,
)

__version__ = _core.__version__

__all__ = [
    "UsageError",
    "classify",
    "cli",
    "euler_phi",
    "euler_selberg",
    "factorize",
    "mobius",
    "radical",
    "ramanujan_sum",
    "series",
    "squarefree_count",
    "zeta",
]


def _spec(spec):
    return spec if isinstance(spec, str) else json.dumps(spec)


def _exact(pair):
    return Fraction(pair[0]), Fraction(pair[1])


def classify(spec):
    return _core.classify(_spec(spec))


def series(spec, kind="R", a=1, b=1, c=1, x=None, exact=True):
    """Sum of the chosen series; the full sum when x is None (exact mode only)."""
    if exact:
        return _exact(_core.series_exact(_spec(spec), kind, a, b, c, x))
    if x is None:
        raise UsageError("float mode needs a truncation point x")
    return _core.series_float(_spec(spec), kind, a, b, c, float(x))


def euler_selberg(spec, a):
    out = _core.euler_selberg(_spec(spec), a)
    out["value"] = _exact(out["value"])
    out["factorized"] = _exact(out["factorized"])
    return out


def cli(*args):
    """Run a ramexp subcommand in process; returns (exit_code, stdout, stderr)."""
    return _core.cli([str(a) for a in args])
