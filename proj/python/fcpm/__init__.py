"""Python front end for the fcpm toolkit.

Every subcommand of the command-line tool is available through :func:`run`,
which takes keyword options and returns the decoded JSON envelope.
"""

import json

from . import _fcpm
from ._fcpm import COMMANDS, SCHEMA_VERSION, FcpmError

__all__ = ["COMMANDS", "SCHEMA_VERSION", "FcpmError", "run", "replay", "evaluate", "singular_polynomial"]


def _as_text(params):
    return params if isinstance(params, str) else json.dumps(params)


def _point(x):
    if isinstance(x, str):
        return x
    out = []
    for v in x:
        if isinstance(v, complex):
            out.append([v.real, v.imag])
        else:
            out.append(v)
    return json.dumps(out)


def run(command, **options):
    """Run a subcommand, e.g. ``run("eval", params={...}, x=[0.04, 0.09])``."""
    opts = {"command": command}
    for key, value in options.items():
        if value is None:
            continue
        if key in ("x", "z"):
            value = _point(value)
        opts[key] = value
    return json.loads(_fcpm.run_command(json.dumps(opts)))


def replay(envelope):
    return json.loads(_fcpm.replay(json.dumps(envelope)))


def evaluate(params, x, tol=1e-12, max_shells=500):
    return _fcpm.evaluate(_as_text(params), [complex(v) for v in x], tol, max_shells)


def singular_polynomial(p, m):
    return json.loads(_fcpm.singular_polynomial(p, m))
