"""Stage systems of spectrally disjoint band-limited functions on compact groups.

Thin wrapper around the compiled core: configs, bundles, and reports are
plain dicts here and JSON documents on disk, with identical layouts.
"""

import json

from ._aus import construct as _construct
from ._aus import eval_f0 as _eval_f0
from ._aus import eval_stage as _eval_stage
from ._aus import verify as _verify

__all__ = ["construct", "verify", "eval_stage", "eval_f0"]
__version__ = "0.1.0"


def _as_text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def construct(config):
    """Build a stage system; `config` is a dict or JSON text. Returns the bundle dict."""
    return json.loads(_construct(_as_text(config)))


def verify(bundle):
    """Re-check a bundle (dict or JSON text). Returns the verification report dict."""
    return json.loads(_verify(_as_text(bundle)))


def eval_stage(bundle, m, points):
    """Evaluate stage `m` at group coordinates (an iterable of coordinate lists)."""
    return _eval_stage(_as_text(bundle), m, [list(p) for p in points])


def eval_f0(bundle, points):
    """Evaluate the bundle's reference function at group coordinates."""
    return _eval_f0(_as_text(bundle), [list(p) for p in points])
