"""Discrete flat fronts in hyperbolic space.

Every pipeline stage takes and returns JSON documents as Python dicts.
"""

import json

from . import _core
from ._core import FlatFrontError, cross_ratio, digits, poincare_project

__all__ = [
    "FlatFrontError",
    "cross_ratio",
    "darboux",
    "digits",
    "dual",
    "export_obj",
    "gauss",
    "generate",
    "invert",
    "moebius",
    "poincare_project",
    "validate",
    "weierstrass",
]


def _dump(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def generate(rows, cols, alpha=1.0, beta=1.0):
    """Linear lattice g(m, n) = m alpha + i n beta."""
    return json.loads(_core.generate(rows, cols, alpha, beta))


def moebius(holo, A, B, C, D):
    return json.loads(_core.moebius(_dump(holo), A, B, C, D))


def dual(holo, r_root=1.0):
    return json.loads(_core.dual(_dump(holo), r_root))


def weierstrass(holo, t, s=()):
    return json.loads(_core.weierstrass(_dump(holo), t, list(s)))


def gauss(doc, t=None):
    return json.loads(_core.gauss(_dump(doc), t))


def darboux(holo, t, seed):
    """Propagates a second leg from the point ``seed`` at the root vertex."""
    return json.loads(_core.darboux(_dump(holo), t, complex(seed)))


def invert(pair):
    return json.loads(_core.invert(_dump(pair)))


def validate(doc, t=None, s=()):
    return json.loads(_core.validate(_dump(doc), t, list(s)))


def export_obj(doc, s=0.0, t=None):
    """OBJ text of the front at ``s`` in the Poincare ball."""
    return _core.export_obj(_dump(doc), s, t)
