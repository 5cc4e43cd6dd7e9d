"""Classification toolkit for umbilical submanifolds of H^k x S^(n-k+1).

Euclidean spheres and planes are encoded as unit spacelike vectors of a
Lorentz space; congruence of the submanifolds they cut out is decided by the
spectrum of a Gram matrix, realizing isometries are constructed explicitly,
and canonical representatives, topology and rotational structure are derived
from the same data.
"""
from . import congruence, lightcone, lorentz, model, rotational, sampling, selftest
from .errors import InputError, PreconditionError, UmbilicError
from .lightcone import (
    Hyperplane,
    ModelContext,
    RoundObject,
    Sphere,
    decode,
    default_context,
    encode,
    pi_project,
    psi,
)
from .model import theta

__all__ = [
    "congruence",
    "lightcone",
    "lorentz",
    "model",
    "rotational",
    "sampling",
    "selftest",
    "UmbilicError",
    "InputError",
    "PreconditionError",
    "ModelContext",
    "RoundObject",
    "Sphere",
    "Hyperplane",
    "default_context",
    "psi",
    "pi_project",
    "encode",
    "decode",
    "theta",
]

__version__ = "0.1.0"
