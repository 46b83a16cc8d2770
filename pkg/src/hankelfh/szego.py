"""Szego functions of the weight e^W * omega on [-1, 1].

The scalar jump problem D_+(x) D_-(x) = e^{W(x)} omega(x) on (-1, 1) is
solved by the product D = D_W * D_alpha * D_beta with

    D_W(z)     = exp( sqrt(z^2-1)/(2 pi) int W(x)/(sqrt(1-x^2)(z-x)) dx )
               = exp( (1/2) sum_k c_k phi(z)^{-k} ),   W = sum_k c_k T_k,
    D_alpha(z) = phi(z)^{-A/2} prod_j (z - t_j)^{alpha_j / 2},
    D_beta(z)  = e^{i pi B / 2} prod_j
                 ( (z t_j - 1 - i sqrt((z^2-1)(1-t_j^2))) / (z - t_j) )^{beta_j},

where phi(z) = z + sqrt(z^2-1) maps the cut plane onto the exterior of the
unit disk, A = sum alpha_j and B = sum beta_j. The closed Chebyshev form of
D_W is the termwise Cauchy transform of the series and stays accurate
arbitrarily close to the cut, where direct quadrature degrades.

All square roots and powers are principal-branch; D_beta then tends to its
stated limit along the positive real axis, and the discontinuities of the
individual D_alpha factors across (-infinity, -1) cancel in the product.
"""

from __future__ import annotations

import cmath
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .singularities import as_field

#: distance to [-1, 1] below which evaluation is flagged as branch-sensitive
CUT_WARNING_DISTANCE = 1e-8


class BranchCutWarning(UserWarning):
    pass


@dataclass(frozen=True)
class SzegoValues:
    D_W: complex
    D_alpha: complex
    D_beta: complex
    D_infinity: complex

    @property
    def D(self):
        return self.D_W * self.D_alpha * self.D_beta


def _distance_to_cut(z):
    if abs(z.real) <= 1.0:
        return abs(z.imag)
    return abs(z - np.sign(z.real))


def _sqrt_z2m1(z):
    """sqrt(z^2 - 1), analytic off [-1, 1], asymptotic to z at infinity."""
    return cmath.sqrt(z - 1.0) * cmath.sqrt(z + 1.0)


def _phi(z):
    return z + _sqrt_z2m1(z)


def szego_functions(z, W, cfg):
    """Evaluate D_W, D_alpha, D_beta and the limit D_infinity at z.

    z must lie off [-1, 1]; a BranchCutWarning is emitted when z is within
    1e-8 of the cut, where the one-sided limits differ.
    """
    z = complex(z)
    dist = _distance_to_cut(z)
    if dist == 0.0 and abs(z.real) <= 1.0:
        raise DomainError(f"Szego functions are not defined on [-1, 1]: z = {z}")
    if dist < CUT_WARNING_DISTANCE:
        warnings.warn(
            f"evaluating Szego functions {dist:.2e} from the branch cut",
            BranchCutWarning,
            stacklevel=2,
        )

    W = as_field(W)
    phi = _phi(z)
    root = _sqrt_z2m1(z)

    c = W.coeffs
    d_w = cmath.exp(0.5 * sum(c[k] * phi ** (-k) for k in range(len(c))))

    A = cfg.alpha_sum
    B = cfg.beta_sum
    d_alpha = phi ** (-0.5 * A)
    d_beta = cmath.exp(0.5j * np.pi * B)
    for s in cfg:
        d_alpha *= (z - s.t) ** (0.5 * s.alpha)
        ratio = (z * s.t - 1.0 - 1j * root * np.sqrt(1.0 - s.t ** 2)) / (z - s.t)
        d_beta *= ratio ** s.beta

    arc = sum(s.beta * np.arcsin(s.t) for s in cfg)
    d_inf = (
        cmath.exp(0.5 * c[0])
        * 2.0 ** (-0.5 * A)
        * cmath.exp(1j * arc)
    )
    return SzegoValues(
        D_W=complex(d_w),
        D_alpha=complex(d_alpha),
        D_beta=complex(d_beta),
        D_infinity=complex(d_inf),
    )


def weight_on_cut(x, W, cfg):
    """e^{W(x)} omega(x) for x strictly inside (-1, 1), off the singularities.

    omega(x) = prod_j |x - t_j|^{alpha_j} * e^{+/- i pi beta_j} with the plus
    sign left of t_j. Used to verify the jump relation D_+ D_- = e^W omega.
    """
    W = as_field(W)
    if not -1.0 < x < 1.0:
        raise DomainError("weight_on_cut needs x inside (-1, 1)")
    value = cmath.exp(W(x))
    for s in cfg:
        if x == s.t:
            raise DomainError("weight_on_cut evaluated at a singularity")
        value *= abs(x - s.t) ** s.alpha
        value *= cmath.exp(1j * np.pi * s.beta * (1.0 if x < s.t else -1.0))
    return complex(value)
