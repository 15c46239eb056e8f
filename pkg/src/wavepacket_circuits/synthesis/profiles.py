""" Blending profiles beta and the bump window g(s) = cos(pi/2 beta(s/pi)) """
from fractions import Fraction
from typing import Tuple

import chex
import jax.numpy as jnp
import numpy as np
from flax import struct
from numpy.polynomial import Polynomial

from ..exceptions import DomainError, InvalidParams


@struct.dataclass
class BetaProfile:
    """
    Polynomial base of beta, ascending exact coefficients. With half_domain the
    base is given on [0, 1/2] and continued by beta(x) = 1 - beta(1 - x);
    otherwise it is given on [0, 1]. beta(-x) = beta(x) always.
    """

    name: str = struct.field(pytree_node=False)
    coefficients: Tuple[Fraction, ...] = struct.field(pytree_node=False)
    half_domain: bool = struct.field(pytree_node=False, default=True)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def base(self) -> Polynomial:
        return Polynomial([float(c) for c in self.coefficients])

    def composed(self, scale: float, offset: float) -> Polynomial:
        """base(offset + scale * x); the caller keeps the argument in the base domain."""
        return self.base(Polynomial([offset, scale]))

    def __call__(self, x) -> chex.Array:
        return eval_beta(self, x)


BETA_PRESETS = {
    "linear": BetaProfile("linear", (Fraction(0), Fraction(1)), True),
    "quadratic": BetaProfile("quadratic", (Fraction(0), Fraction(0), Fraction(2)), True),
    "deg7": BetaProfile(
        "deg7",
        tuple(Fraction(c) for c in (0, 0, 0, 0, 35, -84, 70, -20)),
        False,
    ),
}


def get_profile(name) -> BetaProfile:
    if isinstance(name, BetaProfile):
        return name
    if name not in BETA_PRESETS:
        raise InvalidParams(
            f"unknown beta profile {name!r}, expected one of {list(BETA_PRESETS)}"
        )
    return BETA_PRESETS[name]


def _polyval(coefficients, x):
    out = jnp.zeros_like(x)
    for c in reversed(coefficients):
        out = out * x + float(c)
    return out


def eval_beta(p: BetaProfile, x) -> chex.Array:
    x = jnp.asarray(x, dtype=jnp.float64)
    outside = jnp.abs(x) > 1 + 1e-12
    if bool(jnp.any(outside)):
        raise DomainError(float(x[outside].ravel()[0]) if x.ndim else float(x))
    x = jnp.minimum(jnp.abs(x), 1.0)
    if not p.half_domain:
        return _polyval(p.coefficients, x)
    return jnp.where(
        x <= 0.5,
        _polyval(p.coefficients, x),
        1.0 - _polyval(p.coefficients, 1.0 - x),
    )


def eval_g(p: BetaProfile, s) -> chex.Array:
    s = jnp.asarray(s, dtype=jnp.float64)
    inside = jnp.abs(s) < jnp.pi
    ratio = jnp.clip(s / jnp.pi, -1.0, 1.0)
    return jnp.where(inside, jnp.cos(jnp.pi / 2 * eval_beta(p, ratio)), 0.0)


def check_profile(p: BetaProfile, num_samples: int = 101) -> float:
    """max residual of beta(x) + beta(1-x) = 1 and the endpoint values."""
    xs = np.linspace(0.0, 1.0, num_samples)
    residual = jnp.max(jnp.abs(eval_beta(p, xs) + eval_beta(p, 1.0 - xs) - 1.0))
    ends = jnp.abs(eval_beta(p, jnp.array([0.0, 0.5, 1.0])) - jnp.array([0.0, 0.5, 1.0]))
    return float(jnp.maximum(residual, jnp.max(ends)))
