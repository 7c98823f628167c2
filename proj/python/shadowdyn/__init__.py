"""Python access to the shadowdyn core.

Points are plain dicts in the same JSON form the CLI writes, e.g.
``{"u": 0.3, "v": 0.7}`` on the torus or ``{"t": 0.25}`` on the circle.
"""

import json
import math

from . import _core

__all__ = ["DynamicsError", "shadow", "iterate", "modulus", "cantor", "chain_classes", "sensitivity"]


class DynamicsError(RuntimeError):
    def __init__(self, message, certificate):
        super().__init__(message)
        self.certificate = certificate


def _call(fn, *args, **kwargs):
    try:
        return json.loads(fn(*args, **kwargs))
    except _core.DynamicsError as e:
        raise DynamicsError(str(e), json.loads(e.certificate_json)) from None


def shadow(system, points, lo=0, eps=math.inf):
    return _call(_core.shadow, system, json.dumps(list(points)), lo, eps)


def iterate(system, point, n):
    return _call(_core.iterate, system, json.dumps(point), n)


def modulus(system, eps, seed=0):
    return _call(_core.modulus, system, eps, seed)


def cantor(system, point, eps, k_max, horizon=50, seed=0, direction="unstable"):
    return _call(_core.cantor, system, json.dumps(point), eps, k_max, horizon, seed, direction)


def chain_classes(system, resolution, delta=0.0, seed=0):
    return _call(_core.chain_classes, system, list(resolution), delta, seed)


def sensitivity(system, samples, radii, horizon=30, seed=0):
    return _call(_core.sensitivity, system, samples, list(radii), horizon, seed)
