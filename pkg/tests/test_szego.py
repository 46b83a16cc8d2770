"""Szego functions: closed forms, limits, jump relation, branch behaviour."""

import cmath
import warnings

import mpmath as mp
import numpy as np
import pytest

import hankelfh as hf
from hankelfh.chebyshev import ChebSeries
from hankelfh.errors import DomainError
from hankelfh.szego import BranchCutWarning

W_SAMPLE = ChebSeries([0.1, 0.3, -0.2])


def cfg_sample():
    return hf.SingularityConfig(
        (
            hf.Singularity(-0.5, 0.7, 0.06j),
            hf.Singularity(0.3, 1.2, 0.1 + 0.02j),
        )
    )


def test_trivial_weight_all_ones():
    vals = hf.szego_functions(2.0 + 1.0j, None, hf.SingularityConfig())
    assert vals.D_W == 1.0
    assert vals.D_alpha == 1.0
    assert vals.D_beta == 1.0
    assert vals.D_infinity == 1.0


def test_alpha_function_limit_at_infinity():
    cfg = cfg_sample()
    vals = hf.szego_functions(1e9 + 0.5j, None, cfg)
    assert abs(vals.D_alpha - 2.0 ** (-cfg.alpha_sum / 2)) < 1e-8


def test_beta_function_limit_along_positive_axis():
    cfg = cfg_sample()
    arc = sum(s.beta * np.arcsin(s.t) for s in cfg)
    for x in (1e3, 1e6):
        vals = hf.szego_functions(complex(x, 0.0), None, cfg)
        assert abs(vals.D_beta - cmath.exp(1j * arc)) < 0.5 / x


def test_infinity_value_composition():
    cfg = cfg_sample()
    vals = hf.szego_functions(3.0 - 2.0j, W_SAMPLE, cfg)
    arc = sum(s.beta * np.arcsin(s.t) for s in cfg)
    expected = (
        cmath.exp(0.5 * W_SAMPLE.coeffs[0])
        * 2.0 ** (-cfg.alpha_sum / 2)
        * cmath.exp(1j * arc)
    )
    assert abs(vals.D_infinity - expected) < 1e-14


def test_w_function_against_integral_quadrature():
    # the defining Cauchy integral, evaluated with mpmath quadrature
    cfg = hf.SingularityConfig()

    def integrand_for(z):
        def f(th):
            c = float(mp.cos(th))
            return complex(W_SAMPLE(c)) / (z - c)

        return f

    for z in (1.7 + 0.9j, -2.1 + 0.4j, 0.3 + 1.5j):
        root = cmath.sqrt(z - 1) * cmath.sqrt(z + 1)
        integral = mp.quad(integrand_for(z), [0, mp.pi])
        oracle = cmath.exp(root / (2 * np.pi) * complex(integral))
        vals = hf.szego_functions(z, W_SAMPLE, cfg)
        assert abs(vals.D_W - oracle) < 1e-12


def test_jump_relation_on_cut():
    # D_+(x) D_-(x) = e^{W(x)} omega(x) at ten points staying clear of the
    # singularities (the one-sided limits converge like eps/dist there)
    cfg = cfg_sample()
    xs = [-0.93, -0.75, -0.62, -0.35, -0.15, 0.05, 0.18, 0.45, 0.66, 0.88]
    eps = 1e-7
    for x in xs:
        up = hf.szego_functions(complex(x, eps), W_SAMPLE, cfg)
        dn = hf.szego_functions(complex(x, -eps), W_SAMPLE, cfg)
        product = up.D * dn.D
        target = hf.weight_on_cut(float(x), W_SAMPLE, cfg)
        assert abs(product - target) / abs(target) < 1e-6, x


def test_product_continuous_across_left_ray():
    # individual factors jump across (-inf, -1) but the product does not
    cfg = cfg_sample()
    up = hf.szego_functions(complex(-3.0, 1e-10), W_SAMPLE, cfg)
    dn = hf.szego_functions(complex(-3.0, -1e-10), W_SAMPLE, cfg)
    assert abs(up.D - dn.D) / abs(up.D) < 1e-9


def test_domain_error_on_cut():
    with pytest.raises(DomainError):
        hf.szego_functions(0.25, None, cfg_sample())


def test_branch_cut_proximity_warning():
    with pytest.warns(BranchCutWarning):
        hf.szego_functions(0.5 + 1e-9j, None, cfg_sample())
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        hf.szego_functions(0.5 + 1e-7j, None, cfg_sample())


def test_beta_function_against_integral_definition():
    # the closed form equals the Cauchy transform of log omega_beta
    cfg = hf.SingularityConfig((hf.Singularity(0.3, 0.0, 0.1 + 0.02j),))
    beta = 0.1 + 0.02j
    t = 0.3
    def integrand_for(z):
        def f(th):
            c = float(mp.cos(th))
            return complex(1j * np.pi * beta * (1.0 if c < t else -1.0)) / (z - c)

        return f

    for z in (0.9 + 1.1j, -1.4 - 0.7j, 2.2 + 0.1j):
        root = cmath.sqrt(z - 1) * cmath.sqrt(z + 1)
        integral = mp.quad(integrand_for(z), [0, float(np.arccos(t)), mp.pi])
        oracle = cmath.exp(root / (2 * np.pi) * complex(integral))
        vals = hf.szego_functions(z, None, cfg)
        assert abs(vals.D_beta - oracle) < 1e-10
