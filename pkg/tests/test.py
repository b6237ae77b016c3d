#!usr/bin/python

# Copyright 2024 dispersive-lab developers
# See LICENSE for details.

import json
import logging
import warnings

import numpy as np
import pandas as pd
import pytest
from hypothesis import given
from hypothesis import settings as hypothesis_settings
from hypothesis import strategies as st

from dispersive_lab import *
from dispersive_lab.cli import main

# shared data

GAUSSIAN_WINDOW = GridSpec(-10.0, 20.0 / 1024, 1024)
NARROW_WINDOW = GridSpec(-5.0, 10.0 / 1024, 1024)
NU_LIST = [2.0 ** -k for k in range(3, 11)]
N_LIST = [2.0 ** k for k in range(4, 11)]
A_SHARP, GAMMA_SHARP = 0.5, 2.0


def gaussian_spectrum(window=GAUSSIAN_WINDOW, width=1.0):
    return SpectrumFunction.from_callable(lambda xi: np.exp(-width * xi ** 2), window)


def gaussian_solution(x, t, a=2.0, gamma=1.0):
    # ∫ e^{-ξ²} e^{-(t^γ - it)ξ²} e^{ixξ} dξ for a = 2
    c = 1.0 + t ** gamma - 1j * t
    return np.sqrt(np.pi / c) * np.exp(-x ** 2 / (4.0 * c))


def relative_error(values, reference):
    return np.max(np.abs(values - reference)) / np.max(np.abs(reference))


# settings

def test_settings_priority(monkeypatch):

    monkeypatch.setenv('DISPERSIVE_LAB_THREADS', '3')
    monkeypatch.setenv('DISPERSIVE_LAB_MAX_GRID', '4096')
    s = LabSettings.build()
    assert s.threads == 3
    assert s.max_grid == 4096

    # parameters win over the environment
    s = LabSettings.build(threads=2, max_grid=128)
    assert s == LabSettings(threads=2, max_grid=128)

    monkeypatch.setenv('DISPERSIVE_LAB_THREADS', 'many')
    with pytest.raises(LabInvalidArgumentError):
        LabSettings.build()


def test_settings_defaults(monkeypatch):

    monkeypatch.delenv('DISPERSIVE_LAB_THREADS', raising=False)
    monkeypatch.delenv('DISPERSIVE_LAB_MAX_GRID', raising=False)
    monkeypatch.setenv('HOME', '/nonexistent-home-for-tests')
    s = LabSettings.build()
    assert s.threads >= 1
    assert s.max_grid == 2 ** 22

    with pytest.raises(LabInvalidArgumentError):
        LabSettings(threads=0)


def test_grid_cap(monkeypatch):

    monkeypatch.setenv('DISPERSIVE_LAB_MAX_GRID', '64')
    with pytest.raises(LabResolutionError):
        GridSpec.symmetric(1.0, 128)

    try:
        GridSpec.symmetric(1.0, 128)
    except LabNumericError as e:
        assert e.code == 'RESOLUTION_FAILURE'
        assert e.required == 128


# util

def test_parse_sweep():

    assert parse_sweep({'min': 1, 'max': 16, 'factor': 2}).tolist() == [1, 2, 4, 8, 16]
    assert parse_sweep('0.25:1:2').tolist() == [0.25, 0.5, 1.0]
    assert parse_sweep([3, 1, 2]).tolist() == [1, 2, 3]
    assert np.allclose(parse_sweep({'min': 1e-3, 'max': 1, 'count': 4}), [1e-3, 1e-2, 1e-1, 1])

    for bad in [None, '1:2', 'a:b:c', {'min': 0, 'max': 1}, {'min': 1, 'max': 2, 'factor': 1}]:
        with pytest.raises(LabInvalidArgumentError):
            parse_sweep(bad)

    assert parse_float_list('1, 2,3') == [1.0, 2.0, 3.0]
    assert parse_float_list(None) == []


def test_json_helpers(tmp_path):

    path = str(tmp_path / 'doc.json')
    dump_json({'b': np.float64(1.5), 'a': np.arange(3)}, path)
    with open(path) as f:
        content = f.read()
    assert content.index('"a"') < content.index('"b"')
    assert load_json(path) == {'a': [0, 1, 2], 'b': 1.5}

    with pytest.raises(LabInvalidArgumentError):
        load_json(str(tmp_path / 'missing.json'))


def test_regression_report():

    x = np.arange(8, dtype=float)
    report = RegressionReport.fit(x, 2.0 * x + 1.0, predicted=2.0, tolerance=0.01)
    assert report.slope == pytest.approx(2.0)
    assert report.intercept == pytest.approx(1.0)
    assert report.r2 == pytest.approx(1.0)
    assert report.passed
    assert report.to_dict()['pass'] is True
    assert list(report.to_frame().columns) == ['x', 'y', 'slope', 'intercept', 'r2']

    loglog = RegressionReport.fit_loglog([1, 2, 4, 8], [3, 6, 12, 24])
    assert loglog.slope == pytest.approx(1.0)
    # fewer than six samples never pass
    assert not RegressionReport.fit_loglog([1, 2, 4, 8], [3, 6, 12, 24], predicted=1.0, tolerance=0.1).passed

    with pytest.raises(LabNumericError):
        RegressionReport.fit_loglog([1, 2], [0, 1])


def test_ordered_map():

    assert ordered_map(lambda v: v * v, range(50), threads=4) == [v * v for v in range(50)]
    assert ordered_map(lambda v: v + 1, [1, 2], threads=1) == [2, 3]
    assert ordered_map(lambda v: v, [], threads=4) == []


def test_quadrature():

    nodes, weights = gauss_legendre_rule(np.linspace(0.0, 2.0, 5), order=8)
    assert np.sum(weights * nodes ** 7) == pytest.approx(2.0 ** 8 / 8, rel=1e-13)

    edges = phase_panels(0.0, 10.0, lambda u: np.full_like(u, 8.0))
    assert np.max(np.diff(edges)) * 8.0 <= np.pi / 4 * 1.01

    # ∫_0^∞ e^{-ξ} e^{iyξ} dξ = 1/(1 - iy), moved onto the ray at π/4
    theta = np.pi / 4
    for y in [-3.0, 0.0, 3.0]:
        value = half_line_fourier(lambda xi: np.exp(-xi), y, theta, 40.0 / np.cos(theta),
                                  lambda u: np.full_like(u, np.sin(theta)))
        assert value == pytest.approx(1.0 / (1.0 - 1j * y), rel=1e-10)

    assert damping_length(complex(2.0), 1.0, exponent=40.0) == pytest.approx(20.0)
    assert np.isinf(damping_length(complex(0.0, 1.0), 1.0))


# grid

def test_grid_pairing():

    grid = GridSpec.symmetric(10.0, 201)
    assert grid.points[0] == -10.0
    assert grid.points[-1] == pytest.approx(10.0)

    window = GridSpec(-8.0, 1.0 / 16, 256)
    dual = window.dual()
    assert dual.is_dual_of(window)
    assert not grid.is_dual_of(window)
    assert dual.points[dual.n // 2] == pytest.approx(0.0, abs=1e-12)


def test_transforms_match_closed_form():

    fhat = gaussian_spectrum()
    f = inverse_transform(fhat)
    mask = np.abs(f.points) <= 10
    assert relative_error(f.values[mask], np.sqrt(np.pi) * np.exp(-f.points[mask] ** 2 / 4)) < 1e-10

    # direct summation on a grid that is not paired with the window
    grid = GridSpec.symmetric(10.0, 201)
    direct = inverse_transform(fhat, grid)
    assert relative_error(direct.values, np.sqrt(np.pi) * np.exp(-grid.points ** 2 / 4)) < 1e-10

    back = forward_transform(f)
    assert relative_error(back.values, np.exp(-back.points ** 2)) < 1e-10

    assert sobolev_norm(fhat, 0) == pytest.approx((np.pi / 2) ** 0.25, rel=1e-10)
    assert sobolev_norm(fhat, 1) > sobolev_norm(fhat, 0)


def test_parseval():

    fhat = gaussian_spectrum() + 0.5j * gaussian_spectrum(width=3.0)
    f = inverse_transform(fhat)
    assert f.lp_norm(2) ** 2 == pytest.approx(2 * np.pi * sobolev_norm(fhat, 0) ** 2, rel=1e-10)


def test_sampled_documents(tmp_path):

    g = SpectrumFunction.from_dict({'xi0': -1.0, 'dxi': 0.5, 're': [0, 1, 0]})
    assert g.xi0 == -1.0
    assert g.values.tolist() == [0, 1, 0]
    assert g.natural_grid().n == 3

    path = str(tmp_path / 'g.json')
    (2 * g).save(path)
    loaded = SpectrumFunction.load(path)
    assert loaded.values.tolist() == [0, 2, 0]

    with pytest.raises(LabInvalidArgumentError):
        SpectrumFunction.from_dict({'xi0': 0, 're': [1]})

    with open(path, 'w') as f:
        f.write('[0, 1, 0]')
    with pytest.raises(LabInvalidArgumentError):
        SpectrumFunction.load(path)

    with pytest.raises(LabInvalidArgumentError):
        GridFunction(0.0, 1.0, [1.0, np.nan])

    with pytest.raises(ValueError):
        g.values[0] = 3


def test_evolution_params():

    p = EvolutionParams(0.5, 2, 0.25)
    assert p.complex_time == complex(0.25, 0.0625)
    assert p.at(0.5).t == 0.5

    for a, gamma, t in [(0.5, 2, 1.5), (0.5, 2, 0), (0, 2, 0.5), (0.5, -1, 0.5), (0.5, 2, np.nan)]:
        with pytest.raises(LabInvalidArgumentError):
            EvolutionParams(a, gamma, t)


def test_comparison_with_other_types():

    assert EvolutionParams(0.5, 2, 0.25) == EvolutionParams(0.5, 2.0, 0.25)
    assert EvolutionParams(0.5, 2, 0.25) != 'a=0.5'
    assert GridSpec.symmetric(1.0, 11) != None  # noqa: E711
    assert TimeGrid.geometric(K=3) != [0.125, 0.25, 0.5]
    assert DiscreteMeasure.uniform(2) != None  # noqa: E711
    assert LabSettings(threads=2, max_grid=128) != {'threads': 2}
    assert OscillatoryKernelParams(0.5, 0.25, 0.2, 0.5, 2.0) != 0.5


# cutoffs

def test_cutoffs():

    c = CutoffFamily()
    assert c.chi([0.0, 1.0, 2.0, 3.0]).tolist() == [1.0, 1.0, 0.0, 0.0]
    assert c.mu([0.5, 1.0]).tolist() == [1.0, 0.0]
    assert c.eta([0.5, 1.0, 4.0, 5.0]).tolist() == [0.0, 0.0, 0.0, 0.0]

    xi = np.linspace(0, 3000, 10001)
    assert np.allclose(c.partition_sum(xi, 1024), c.chi(xi / 2048), atol=1e-12)
    assert np.allclose(c.partition_sum(np.linspace(0, 2048, 1001), 1024), 1.0, atol=1e-12)

    xi = np.concatenate((np.linspace(0, 64, 4097), np.geomspace(64, 2.0 ** 16, 4097)))
    assert np.allclose(c.partition_sum(xi, 2 ** 16), 1.0, atol=1e-12)

    assert dyadic_scales(8).tolist() == [1, 2, 4, 8]
    with pytest.raises(LabInvalidArgumentError):
        dyadic_scales(6)

    with pytest.raises(LabInvalidArgumentError):
        plateau_bump(0.0, 2.0, 1.0)


@given(st.lists(st.floats(min_value=-2, max_value=3), min_size=2, max_size=30))
def test_smooth_step_monotone(values):

    u = np.sort(np.asarray(values))
    s = smooth_step(u)
    assert np.all((s >= 0) & (s <= 1))
    assert np.all(np.diff(s) >= -1e-15)


# measures

def test_discrete_measure(tmp_path):

    mu = DiscreteMeasure.uniform(4)
    assert mu.positions.tolist() == [0.125, 0.375, 0.625, 0.875]
    assert mu.total_mass == pytest.approx(1.0)
    assert mu.in_unit_ball()
    assert not DiscreteMeasure([1.5], [1.0]).in_unit_ball()

    path = str(tmp_path / 'mu.json')
    mu.save(path)
    assert DiscreteMeasure.load(path) == mu

    for positions, weights in [([], []), ([0, 1], [1]), ([0], [-1]), ([np.inf], [1])]:
        with pytest.raises(LabInvalidArgumentError):
            DiscreteMeasure(positions, weights)


def test_cantor_construction():

    lefts, length = cantor_intervals(3)
    assert lefts.size == 8
    assert length == pytest.approx(1.0 / 27)
    assert lefts[1] == pytest.approx(2.0 / 27)

    mu = cantor_measure(5)
    assert mu.size == 32
    assert mu.total_mass == pytest.approx(1.0)
    assert cantor_dimension() == pytest.approx(np.log(2) / np.log(3))


# propagator

@pytest.mark.parametrize('t', [0.1, 0.25, 0.5])
def test_gaussian_oracle(t):

    fhat = gaussian_spectrum()
    u = propagate(fhat, EvolutionParams(2.0, 1.0, t))
    mask = np.abs(u.points) <= 10
    assert relative_error(u.values[mask], gaussian_solution(u.points[mask], t)) < 1e-8

    xs = np.array([-3.0, 0.0, 0.7, 5.0])
    assert relative_error(evaluate_at(fhat, EvolutionParams(2.0, 1.0, t), xs), gaussian_solution(xs, t)) < 1e-8


@hypothesis_settings(deadline=None, max_examples=50)
@given(st.floats(min_value=0.1, max_value=3), st.floats(min_value=0.1, max_value=4),
       st.floats(min_value=1e-6, max_value=0.999))
def test_multiplier_contracts(a, gamma, t):

    xi = np.linspace(-50, 50, 101)
    assert np.all(np.abs(multiplier(xi, EvolutionParams(a, gamma, t))) <= 1.0 + 1e-15)


def test_band_limit_warning():

    flat = SpectrumFunction.from_callable(lambda xi: np.ones_like(xi), GridSpec(-4.0, 1.0 / 32, 256))
    with pytest.warns(BandLimitWarning):
        propagate(flat, EvolutionParams(0.5, 2.0, 0.5))

    with warnings.catch_warnings():
        warnings.simplefilter('error')
        propagate(gaussian_spectrum(), EvolutionParams(0.5, 2.0, 0.5))


def test_semigroups():

    fhat = gaussian_spectrum()
    t = 0.3
    u = dissipative_propagate(fhat, t, 2.0)
    mask = np.abs(u.points) <= 10
    reference = np.sqrt(np.pi / (1 + t)) * np.exp(-u.points[mask] ** 2 / (4 * (1 + t)))
    assert relative_error(u.values[mask], reference) < 1e-10

    assert np.max(np.abs(generator_propagate(fhat, 0.0, 2.0).values)) == 0.0
    assert complex_semigroup_propagate(fhat, t, 1.0).n == fhat.n

    with pytest.raises(LabInvalidArgumentError):
        dissipative_propagate(fhat, -1.0, 2.0)


def test_dissipative_semigroup_property():

    fhat = gaussian_spectrum()
    s, t, a = 0.2, 0.3, 1.5
    once = dissipative_propagate(fhat, s + t, a)
    first = fhat.with_values(fhat.values * np.exp(-s * np.abs(fhat.points) ** a))
    assert relative_error(dissipative_propagate(first, t, a).values, once.values) < 1e-12

    norm = inverse_transform(fhat).lp_norm(2)
    for t in [0.1, 0.5, 0.9]:
        assert dissipative_propagate(fhat, t, a).lp_norm(2) <= norm * (1 + 1e-12)
        assert propagate(fhat, EvolutionParams(0.5, 2.0, t)).lp_norm(2) <= norm * (1 + 1e-12)


def test_ginzburg_landau_matches_propagator():

    fhat = gaussian_spectrum()
    t = 0.2
    gl = ginzburg_landau_propagate(fhat, np.sqrt(2) * t, -np.pi / 4)
    u = propagate(fhat, EvolutionParams(2.0, 1.0, t))
    assert relative_error(gl.values, u.values) < 1e-12

    # θ = 0 is the heat equation
    heat = ginzburg_landau_propagate(fhat, t, 0.0)
    assert relative_error(heat.values, dissipative_propagate(fhat, t, 2.0).values) < 1e-12

    with pytest.raises(LabInvalidArgumentError):
        ginzburg_landau_propagate(fhat, t, 2.0)


def test_truncated_propagation():

    fhat = gaussian_spectrum()
    p = EvolutionParams(0.5, 2.0, 0.3)
    grid = GridSpec.symmetric(10.0, 101)

    # μ(ξ/64) and μ(x/64) equal 1 on the whole window and grid
    truncated = propagate_truncated(fhat, p, 64, grid=grid, threads=2)
    assert relative_error(truncated.values, propagate(fhat, p, grid).values) < 1e-10

    # a variable time map agrees with the constant one pointwise
    times = np.where(grid.points < 0, 0.3, 0.6)
    variable = propagate_truncated(fhat, p, 64, txmap=times, grid=grid)
    right = propagate(fhat, p.at(0.6), grid).values
    assert relative_error(variable.values[grid.points >= 0], right[grid.points >= 0]) < 1e-10

    with pytest.raises(LabInvalidArgumentError):
        propagate_truncated(fhat, p, 64, txmap=np.ones(3), grid=grid)

    with pytest.raises(LabInvalidArgumentError):
        propagate_truncated(fhat, p, 0.5, grid=grid)


# kernels

def test_poisson_closed_forms():

    t = 0.5
    c = (1 + 1j) * t
    for x in [0.0, 0.5, 2.0]:
        # a = 1: 2c/(c² + x²)
        assert poisson_kernel(x, t, 1.0) == pytest.approx(2 * c / (c ** 2 + x ** 2), rel=1e-9)
        # a = 2: complex Gaussian
        assert poisson_kernel(x, t, 2.0) == pytest.approx(np.sqrt(np.pi / c) * np.exp(-x ** 2 / (4 * c)), rel=1e-9)


def test_poisson_scaling_identity():

    rng = np.random.default_rng(0)
    for _ in range(100):
        x, t, a = rng.uniform(0, 5), rng.uniform(0.05, 1), rng.uniform(0.5, 1.5)
        scale = t ** (-1.0 / a)
        assert poisson_kernel(x, t, a) == pytest.approx(scale * poisson_kernel(x * scale, 1.0, a), rel=1e-8)


def test_poisson_bound_ratio_at_origin():

    # a = 1, x = 0: |L| = √2/t against the bound 1/t
    for t in [0.01, 0.5, 2.0]:
        assert poisson_bound_ratio(0.0, t, 1.0) == pytest.approx(np.sqrt(2), rel=1e-8)


def test_poisson_bound_refinement():

    # 20 times by 200 positions, against the same sweep with every midpoint inserted
    a_values = [0.5, 1.0, 1.5, 2.0]
    coarse = bound_ratio_sweep(KernelCheck.poisson, a_values, np.geomspace(1e-3, 1, 20), np.linspace(0, 50, 200),
                               threads=4)
    fine = bound_ratio_sweep(KernelCheck.poisson, a_values, np.geomspace(1e-3, 1, 39), np.linspace(0, 50, 399),
                             threads=4)
    assert list(coarse.columns) == ['a', 't', 'x', 'ratio']
    assert np.all(np.isfinite(fine['ratio']))

    for a in a_values:
        sup_coarse = coarse[coarse['a'] == a]['ratio'].max()
        sup_fine = fine[fine['a'] == a]['ratio'].max()
        assert abs(sup_fine - sup_coarse) <= 0.1 * sup_coarse


def test_heat_kernels():

    t = 0.4
    for x in [0.0, 0.3, 3.0]:
        assert fractional_heat_kernel(x, t, 1.0) == pytest.approx(2 * t / (t ** 2 + x ** 2), rel=1e-9)
        weighted = 2 * t * (t ** 2 - x ** 2) / (t ** 2 + x ** 2) ** 2
        assert fractional_heat_kernel(x, t, 1.0, weighted=True) == pytest.approx(weighted, rel=1e-9, abs=1e-12)

    assert np.isfinite(heat_bound_ratio(1.0, 0.01, 0.5))

    with pytest.raises(LabInvalidArgumentError):
        fractional_heat_kernel(1.0, 0.0, 1.0)


def test_bessel_kernel():

    for x in [0.1, 0.5, 1.0, 3.0]:
        assert bessel_kernel(x, 0.5) == pytest.approx(bessel_potential(x, 0.5), rel=1e-8)

    values = [bessel_kernel_check(x, 0.5) for x in [1e-3, 1e-2, 1e-1, 1.0]]
    assert max(values) < 10 * min(values)

    with pytest.raises(LabInvalidArgumentError):
        bessel_kernel(1.0, 1.5)

    with pytest.raises(LabInvalidArgumentError):
        bessel_kernel(0.0, 0.5)


def test_kernel_check_names():

    assert KernelCheck.from_string('lambda') is KernelCheck.lambda_sum
    assert KernelCheck.from_string('oscillatory-local') is KernelCheck.oscillatory_local
    assert 'lambda' in KernelCheck.all()

    with pytest.raises(LabInvalidArgumentError):
        KernelCheck.from_string('gauss')


def test_oscillatory_params():

    prm = OscillatoryKernelParams(t1=0.5, t2=0.25, alpha=0.2, a=0.5, gamma=2)
    assert prm.t == 0.25
    assert prm.eps == pytest.approx(0.3125)
    assert OscillatoryKernelParams.from_dict(prm.to_dict()) == prm
    assert prm.with_alpha(0.1).alpha == 0.1


def test_lambda_piece_matches_direct_sum():

    prm = OscillatoryKernelParams(t1=0.5, t2=0.25, alpha=0.2, a=0.5, gamma=2)
    cutoffs = CutoffFamily()
    M = 4
    window = GridSpec(-16.5, 1e-3, 33001)
    fhat = SpectrumFunction.from_callable(
        lambda xi: np.exp(1j * prm.t * np.abs(xi) ** prm.a) * cutoffs.eta(np.abs(xi) / M)
        * np.exp(-prm.eps * np.abs(xi) ** prm.a) * (1 + xi ** 2) ** (-prm.alpha / 2), window)

    for x in [0.0, 0.4, 3.0]:
        assert lambda_M(x, prm, M, cutoffs) == pytest.approx(synthesize(fhat, [-x])[0], rel=1e-7, abs=1e-10)

    # above the truncation scale the piece vanishes
    assert lambda_M(0.5, OscillatoryKernelParams(0.5, 0.25, 0.2, 0.5, 2, N=4), 4) == 0


def test_full_kernel_matches_direct_sum():

    prm = OscillatoryKernelParams(t1=0.5, t2=0.25, alpha=0.2, a=0.5, gamma=2, N=8)
    cutoffs = CutoffFamily()
    window = GridSpec(-16.5, 1e-3, 33001)
    fhat = SpectrumFunction.from_callable(
        lambda xi: np.exp(1j * prm.t * np.abs(xi) ** prm.a) * (1 - cutoffs.chi(np.abs(xi)))
        * cutoffs.mu(np.abs(xi) / prm.N) * np.exp(-prm.eps * np.abs(xi) ** prm.a)
        * (1 + xi ** 2) ** (-prm.alpha / 2), window)

    for x in [0.0, 1.5]:
        assert oscillatory_kernel(x, prm, cutoffs) == pytest.approx(synthesize(fhat, [-x])[0], rel=1e-6, abs=1e-9)


def test_summability_crossover():

    assert summability_exponent(0.5, 2, 0.2) == pytest.approx(-0.075)
    assert summability_exponent(1.0, 2, 0.2) == pytest.approx(0.3)
    with pytest.raises(LabUnsupportedRegimeError):
        summability_exponent(1.5, 2, 0.2)

    prm = OscillatoryKernelParams(t1=0.5, t2=0.25, alpha=0.2, a=0.5, gamma=2, N=8192)
    above = lambda_l1_partial_sums(prm, M_max=1024)
    below = lambda_l1_partial_sums(prm.with_alpha(0.05), M_max=1024)

    assert list(above.columns) == ['M', 'term', 'partial_sum', 't1', 't2', 'capped']
    assert not above['capped'].any()
    assert np.all(above['term'] > 0)
    assert np.all(np.diff(above['partial_sum']) > 0)
    assert below['term'].values[-1] > above['term'].values[-1]

    # the critical family moves both times with the scale (the given pair has t2 = t1/2 too)
    assert np.allclose(above['t2'], above['t1'] / 2)

    slope_above = term_slope(above).slope
    slope_below = term_slope(below).slope
    assert slope_above <= -0.05
    assert slope_below > slope_above
    assert slope_below - slope_above == pytest.approx(0.15, abs=0.03)


def test_capped_scales_are_dropped():

    prm = OscillatoryKernelParams(t1=0.5, t2=0.25, alpha=0.2, a=0.5, gamma=2, N=64)
    terms = lambda_l1_partial_sums(prm, M_max=128, critical_times=False)

    # M >= N has no band left under the cap, 4M > N/2 touches its transition
    assert list(terms['M']) == [1, 2, 4, 8, 16, 32]
    assert list(terms['capped']) == [False, False, False, False, True, True]
    assert np.all(terms['term'] > 0)

    with pytest.raises(LabInvalidArgumentError):
        term_slope(terms)


def test_lambda_norm_positive():

    prm = OscillatoryKernelParams(t1=0.5, t2=0.25, alpha=0.2, a=0.5, gamma=2)
    norms = [lambda_l1_norm(prm, M) for M in [1, 2, 4]]
    assert all(n > 0 for n in norms)


def test_local_bounds():

    assert local_bound_exponents(0.5, 0.5, 0.5) == [-0.5]
    assert local_bound_integral(0.5, 0.5, 0.5) == pytest.approx(2.0)

    exponents = local_bound_exponents(0.2, 2.0, 0.5)
    assert len(exponents) == 2
    assert exponents[1] == pytest.approx(-sigma_exponent(0.5, 2.0, 0.2))
    assert local_kernel_bound(0.5, 0.2, 2.0, 0.5) == pytest.approx(sum(0.5 ** p for p in exponents))

    assert local_bound_exponents(0.8, 2.0, 1.0) == pytest.approx([-0.2, -0.4])
    assert local_bound_integral(0.8, 2.0, 1.0) == pytest.approx(1 / 0.8 + 1 / 0.6)

    with pytest.raises(LabUnsupportedRegimeError):
        local_bound_exponents(0.1, 2.0, 0.5)

    with pytest.raises(LabInvalidArgumentError):
        sigma_exponent(1.0, 2.0, 0.2)

    with pytest.raises(LabInvalidArgumentError):
        local_kernel_bound(0.0, 0.2, 2.0, 0.5)


def test_local_ratio_sweep():

    prm = OscillatoryKernelParams(t1=0.5, t2=0.25, alpha=0.3, a=0.5, gamma=2, N=256)
    frame = local_ratio_sweep(prm, [0.05, 0.2, 0.8], times=[(0.5, 0.25), (0.3, 0.2)])
    assert list(frame.columns) == ['t1', 't2', 'x', 'ratio']
    assert len(frame) == 6
    assert np.all(np.isfinite(frame['ratio']))


# maximal functions

def test_time_grid():

    tg = TimeGrid.geometric()
    assert np.allclose(tg.samples, 2.0 ** -np.arange(20, 0, -1))
    assert len(tg.refine()) == 39
    assert len(TimeGrid.from_times([0.5, 0.5, 2.0, -1.0, 0.25])) == 2
    assert len(tg.merge(TimeGrid.from_times([0.3]))) == 21

    designated = TimeGrid.designated([0.05, 0.1], 0.25, 0.5)
    assert designated.samples.tolist() == pytest.approx([0.4, 0.8])
    assert len(TimeGrid.designated([0.05, 0.2], 0.25, 0.5)) == 1

    with pytest.raises(LabInvalidArgumentError):
        TimeGrid([])

    with pytest.raises(LabInvalidArgumentError):
        TimeGrid([0.5, 1.0])


def test_maximal_function():

    fhat = gaussian_spectrum()
    tg = TimeGrid.geometric(K=8)
    result = maximal_function(fhat, 0.5, 2.0, tg, threads=2)

    for t in tg:
        assert np.all(result.values >= propagate(fhat, EvolutionParams(0.5, 2.0, t)).modulus() - 1e-15)
    assert set(np.unique(result.argmax)) <= set(tg.samples)
    assert result.sup <= np.sum(np.abs(fhat.values)) * fhat.dxi + 1e-12

    zero = fhat.with_values(np.zeros(fhat.n))
    assert maximal_function(zero, 0.5, 2.0, tg).sup == 0.0

    norms = undamped_comparison(fhat, 0.5, 2.0, tg)
    assert norms['damped'] > 0 and norms['undamped'] > 0


def test_maximal_function_is_sublinear():

    f, g = gaussian_spectrum(), gaussian_spectrum(width=3.0)
    tg = TimeGrid.geometric(K=6)

    def star(h):
        return maximal_function(h, 0.5, 2.0, tg).values

    assert np.allclose(star(-3 * f), 3 * star(f), rtol=1e-12, atol=1e-15)
    assert np.allclose(star(1j * f), star(f), rtol=1e-12, atol=1e-15)
    assert np.all(star(f + g) <= star(f) + star(g) + 1e-12)


def test_hardy_littlewood():

    grid = GridSpec.symmetric(5.0, 101)
    constant = GridFunction.on(grid, np.ones(grid.n))
    assert np.allclose(hardy_littlewood(constant).values, 1.0)

    spike = np.zeros(grid.n)
    spike[50] = 1.0
    hl = hardy_littlewood(GridFunction.on(grid, spike)).values.real
    assert hl[50] == 1.0
    assert hl[60] == pytest.approx(1.0 / 21)
    assert np.all(hl >= spike)


def test_domination():

    fhat = gaussian_spectrum()
    for a in [0.5, 1.0, 2.0]:
        coarse = domination_check(fhat, a, 2.0 ** -np.arange(1, 11))
        fine = domination_check(fhat, a, 2.0 ** -(np.arange(2, 22) / 2))
        assert 0 < coarse < 2
        assert abs(fine - coarse) <= 0.1 * coarse

    kinds = [SemigroupKind.from_string(k) for k in SemigroupKind.all()]
    assert np.isfinite(domination_check(fhat, 1.0, [0.25], kinds=kinds))
    assert domination_check(fhat.with_values(np.zeros(fhat.n)), 1.0, [0.25]) == 0.0


def test_level_sets():

    grid = GridSpec(0.0, 0.5, 8)
    g = GridFunction.on(grid, [0, 1, 2, 3, 4, 5, 6, 7])
    assert level_set_measure(g, 3.5) == 2.0

    with pytest.raises(LabInvalidArgumentError):
        level_set_measure(g, 0)

    frame = weak_type_scan(gaussian_spectrum(), 0.5, 2.0, TimeGrid.geometric(K=4), [0.1, 1.0, 10.0])
    assert list(frame.columns) == ['lambda', 'measure', 'ratio']
    assert np.all(np.diff(frame['measure']) <= 0)
    assert frame['measure'].iloc[-1] == 0


def test_ratio_scans():

    family = {'wide': gaussian_spectrum(), 'narrow': gaussian_spectrum(NARROW_WINDOW, width=4.0)}
    tg = TimeGrid.geometric(K=10)

    local = strong_ratio_scan(family, 0.5, 2.0, 0.1, tg)
    full = strong_ratio_scan(family, 0.5, 2.0, 0.1, tg, domain=ScanDomain.from_string('global'))
    assert list(local.columns) == ['label', 'numerator', 'denominator', 'ratio']
    assert np.all(full['numerator'].values >= local['numerator'].values)

    lp = lp_ratio_scan(family, 0.5, 0.5, 1.5, tg)
    assert np.all(np.isfinite(lp['ratio']))
    assert np.all(lp['ratio'] > 0.5)

    with pytest.raises(LabInvalidArgumentError):
        strong_ratio_scan({}, 0.5, 2.0, 0.1, tg)


@pytest.mark.parametrize('a,gamma', [(0.5, 2.0), (1.0, 2.0), (0.5, 0.5)])
def test_convergence_profile(a, gamma):

    profile = convergence_profile(gaussian_spectrum(NARROW_WINDOW, width=4.0), a, gamma)
    errors = profile['sup_error'].values
    assert list(profile['k']) == list(range(1, 21))
    assert np.all(np.diff(errors) <= 1e-15)

    if gamma >= 1:
        assert errors[-1] < 1e-6
    else:
        assert errors[-1] <= 2.0 ** (-20 * gamma)


def test_strong_ratio_threshold_behaviour():

    threshold = convergence_threshold(A_SHARP, GAMMA_SHARP)

    above = designated_ratio_scan(NU_LIST, A_SHARP, GAMMA_SHARP, threshold + 0.05)
    below = designated_ratio_scan(NU_LIST, A_SHARP, GAMMA_SHARP, threshold - 0.03)

    assert list(below.columns) == ['label', 'nu', 'numerator', 'denominator', 'ratio', 'predicted']
    assert np.all(np.isfinite(above['ratio'])) and np.all(above['ratio'] > 0)

    # bounded above the threshold
    assert above['ratio'].max() <= 2 * above['ratio'].min()

    # NU_LIST decreases, so the last entry is the smallest scale
    ratio = below['ratio'].values
    assert ratio[-1] / ratio[0] > 1.2
    assert ratio[-1] > ratio[len(ratio) // 2] > ratio[0]
    assert np.allclose(ratio, below['predicted'].values, rtol=0.1)

    # the numerator is of order R_nu X_nu^(1/2), a constant
    numerator = below['numerator'].values
    assert numerator.max() <= 1.5 * numerator.min()


# sharpness

def test_sharpness_verdict():

    verdict, threshold = sharpness_verdict(0.5, 2, 0.03)
    assert verdict is SharpnessVerdict.below_threshold
    assert threshold == pytest.approx(0.0625)

    assert sharpness_verdict(0.5, 2, 0.0625)[0] is SharpnessVerdict.at_threshold
    assert sharpness_verdict(0.5, 2, 0.1)[0] is SharpnessVerdict.above_threshold
    assert sharpness_verdict(1, 2, 0.2) == (SharpnessVerdict.below_threshold, 0.25)
    assert SharpnessVerdict.from_string('above-threshold') is SharpnessVerdict.above_threshold

    for a, gamma in [(0.5, np.inf), (1.5, 2), (0.5, 1)]:
        with pytest.raises(LabInvalidArgumentError):
            sharpness_verdict(a, gamma, 0.1)

    assert convergence_threshold(2, 2) == pytest.approx(0.25)
    assert convergence_threshold(4, 2) == pytest.approx(0.25)
    assert convergence_threshold(0.5, 0.5) == 0.0


def test_f_nu_construction():

    nu = 2.0 ** -5
    fhat = build_f_nu(nu, A_SHARP, GAMMA_SHARP)
    R = bump_radius(nu, A_SHARP, GAMMA_SHARP)
    support = fhat.points[np.abs(fhat.values) > 0]

    assert np.max(np.abs(fhat.values)) == pytest.approx(nu)
    assert np.all(np.abs(support + nu ** -2) <= R / nu * (1 + 1e-9))
    assert fhat.values[0] == 0 and fhat.values[-1] == 0
    assert designated_length(nu, A_SHARP, GAMMA_SHARP) > fhat.natural_grid().dx

    with pytest.raises(LabInvalidArgumentError):
        build_f_nu(2.0 ** -12, A_SHARP, GAMMA_SHARP)

    with pytest.raises(LabInvalidArgumentError):
        build_f_nu(nu, 1.0, GAMMA_SHARP)


@pytest.mark.parametrize('s', [0.03, 0.1])
def test_hs_norm_scaling(s):

    norms = [hs_norm_of_counterexample(nu, A_SHARP, GAMMA_SHARP, s) for nu in NU_LIST]
    report = RegressionReport.fit_loglog(NU_LIST, norms, predicted=A_SHARP - 4 * s - A_SHARP / GAMMA_SHARP,
                                         tolerance=0.05)
    assert report.passed


def test_phase_control():

    for nu in [2.0 ** -4, 2.0 ** -8]:
        value = phase_control(nu, A_SHARP, GAMMA_SHARP)
        assert 0.05 < value < 1


def test_lower_bound_f_nu():

    report = lower_bound_scan_f_nu(NU_LIST, A_SHARP, GAMMA_SHARP)
    assert report.predicted == pytest.approx(-0.75)
    assert report.passed

    profile = designated_profile(2.0 ** -4, A_SHARP, GAMMA_SHARP)
    assert list(profile.columns) == ['x', 't', 'witness', 'value']
    assert np.allclose(profile['t'], designated_time(profile['x'], 2.0 ** -4, A_SHARP))
    assert np.all(profile['witness'] <= profile['value'])
    assert np.all(profile['x'] <= designated_length(2.0 ** -4, A_SHARP, GAMMA_SHARP))

    # the witness divided by R_nu has the same profile at every scale
    scaled = [designated_witness(nu, A_SHARP, GAMMA_SHARP)['witness'].min() / bump_radius(nu, A_SHARP, GAMMA_SHARP)
              for nu in NU_LIST]
    assert max(scaled) <= 1.5 * min(scaled)

    sup = lower_bound_scan_f_nu(NU_LIST[:3], A_SHARP, GAMMA_SHARP, maximal=True)
    assert np.isfinite(sup.slope)


def test_lower_bound_f_A():

    fhat = build_f_A(64)
    assert sobolev_norm(fhat, 0) ** 2 == pytest.approx(32.0)
    assert abs(synthesize(fhat, [0.0])[0]) == pytest.approx(32.0)

    x = 64 ** -0.5
    value = abs(evaluate_at(fhat, EvolutionParams(1.0, 2.0, x), [x])[0])
    assert value >= 32 * np.exp(-1)

    # large γ keeps the value close to N/2 deep inside the interval
    x = 64 ** (-1 / 50) / 4
    assert abs(evaluate_at(fhat, EvolutionParams(1.0, 50.0, x), [x])[0]) == pytest.approx(32.0, rel=1e-6)

    report = lower_bound_scan_f_A(N_LIST, 2.0)
    assert report.slope == pytest.approx(1.0, abs=0.05)
    assert report.passed


def test_weak_22_ratio():

    below = weak_22_ratio_scan(NU_LIST, A_SHARP, GAMMA_SHARP, 0.03)
    assert below.slope < 0
    assert below.deviation <= 0.15

    above = weak_22_ratio_scan(NU_LIST, A_SHARP, GAMMA_SHARP, 0.1)
    assert above.slope > 0


# dimension

def test_energy():

    d, s = 0.3, 0.5
    assert energy(DiscreteMeasure([0.0, d], [0.5, 0.5]), s) == pytest.approx(d ** -s / 2, rel=1e-12)
    assert np.isinf(energy(DiscreteMeasure([0.1, 0.1], [0.5, 0.5]), s))
    assert np.isinf(energy(DiscreteMeasure([0.1], [1.0]), s))
    assert np.isfinite(energy(DiscreteMeasure([0.1], [1.0]), s, cell_width=0.1))

    mu = DiscreteMeasure.uniform(64)
    assert energy(mu, 0.6) > energy(mu, 0.3)

    with pytest.raises(LabInvalidArgumentError):
        energy(mu, -1)

    with pytest.raises(LabInvalidArgumentError):
        energy(mu, 1.5, cell_width=0.1)


def test_uniform_energy_oracle():

    exact = 8.0 / 3.0
    coarse = energy(DiscreteMeasure.uniform(2048), 0.5, threads=2)
    fine = energy(DiscreteMeasure.uniform(4096), 0.5, threads=2)
    assert abs(fine - exact) < abs(coarse - exact)

    corrected = energy(DiscreteMeasure.uniform(4096), 0.5, cell_width=1.0 / 4096)
    assert corrected == pytest.approx(exact, rel=0.01)


def test_dimension_bounds():

    assert dim_bound_exponent(0.5, 2, 0.3) == pytest.approx(0.4)
    assert dim_bound_exponent(1, 3, 0.4) == pytest.approx(0.6)
    assert dim_bound_exponent(0.5, 2, 0.2) == pytest.approx(0.6 + 1 / 30)
    assert dim_bound_exponent(1.5, 2, 0.2) == pytest.approx(0.9)
    assert dim_bound_exponent(2, 0.5, 0.1) == pytest.approx(0.8)

    assert energy_exponent(0.5, 2, 0.3)[1] is DimensionRegime.regular
    assert energy_exponent(0.5, 2, 0.2)[1] is DimensionRegime.fractional_below
    assert energy_exponent(1.5, 2, 0.2)[1] is DimensionRegime.fractional_above
    assert energy_exponent(1, 3, 0.4)[1] is DimensionRegime.wave

    for a, gamma, s in [(0.5, 2, 0.05), (0.5, 2, 0.6), (1, 3, 0.3), (1.5, 4, 0.2)]:
        with pytest.raises(LabUnsupportedRegimeError):
            dim_bound_exponent(a, gamma, s)


def test_weighted_maximal_integral():

    fhat = gaussian_spectrum(GridSpec(-8.0, 1.0 / 16, 256))
    grid = fhat.natural_grid()
    tg = TimeGrid.geometric(K=6)
    atoms = grid.points[[grid.n // 2, grid.n // 2 + 1]]
    mu = DiscreteMeasure(atoms, [0.25, 0.75])

    report = weighted_maximal_integral(fhat, 0.5, 2.0, tg, mu)
    pointwise = np.max([np.abs(evaluate_at(fhat, EvolutionParams(0.5, 2.0, t), atoms)) for t in tg], axis=0)
    assert report.integral == pytest.approx(float(mu.weights @ pointwise), rel=1e-10)
    assert report.ratio is None

    doubled = weighted_maximal_integral(fhat, 0.5, 2.0, tg, mu.scaled(2.0))
    assert doubled.integral == pytest.approx(2 * report.integral)

    with_energy = weighted_maximal_integral(fhat, 0.5, 2.0, tg, mu, s=0.3)
    assert with_energy.sigma == pytest.approx(0.4)
    assert with_energy.regime is DimensionRegime.regular
    assert 0 < with_energy.ratio < np.inf

    zero = weighted_maximal_integral(fhat.with_values(np.zeros(fhat.n)), 0.5, 2.0, tg, mu, s=0.3)
    assert zero.integral == 0 and zero.ratio == 0

    with pytest.raises(LabInvalidArgumentError):
        weighted_maximal_integral(fhat, 0.5, 2.0, tg, DiscreteMeasure([1.5], [1.0]))


def test_divergence_probe():

    fhat = gaussian_spectrum()
    tiny = TimeGrid.geometric(K=4, t_max=2.0 ** -20)
    assert len(divergence_probe(fhat, 0.5, 2.0, 0.3, 1e-3, tiny)) == 0

    tg = TimeGrid.geometric(K=6)
    low = divergence_probe(fhat, 0.5, 2.0, 0.3, 0.05, tg)
    high = divergence_probe(fhat, 0.5, 2.0, 0.3, 0.5, tg)
    assert len(low) > 0
    assert set(high.points) <= set(low.points)
    assert low.bound == pytest.approx(0.4)

    assert divergence_probe(fhat, 0.5, 2.0, 0.05, 0.05, tg).bound is None

    with pytest.raises(LabInvalidArgumentError):
        divergence_probe(fhat, 0.5, 2.0, 0.3, 0.0, tg)


def test_divergence_set_of_counterexample():

    nu, s = 2.0 ** -4, 0.2
    assert energy_exponent(A_SHARP, GAMMA_SHARP, s)[1] is DimensionRegime.fractional_below

    fhat = build_f_nu(nu, A_SHARP, GAMMA_SHARP)
    peak = np.max(inverse_transform(fhat).modulus())
    divergent = divergence_probe(fhat, A_SHARP, GAMMA_SHARP, s, 0.5 * peak, TimeGrid.geometric(K=20, t_max=2.0 ** -4))
    assert len(divergent) > 0
    assert divergent.bound == pytest.approx(dim_bound_exponent(A_SHARP, GAMMA_SHARP, s))
    assert box_dimension(divergent.points, 2.0 ** -np.arange(1, 11)) <= divergent.bound + 0.15

    # the set stays around the packet and the start of the designated interval
    width = nu / bump_radius(nu, A_SHARP, GAMMA_SHARP)
    assert np.all(divergent.points >= -4 * width)
    assert np.all(divergent.points <= designated_length(nu, A_SHARP, GAMMA_SHARP) + 4 * width)


def test_box_dimension():

    dyadic = 2.0 ** -np.arange(1, 11)
    assert box_dimension(np.arange(4096) / 4096, dyadic) == pytest.approx(1.0, abs=0.05)
    assert box_dimension([0.3], dyadic) == pytest.approx(0.0, abs=0.05)

    lefts, _ = cantor_intervals(8)
    triadic = 3.0 ** -np.arange(1, 9)
    cantor = box_dimension(lefts, triadic)
    assert cantor == pytest.approx(np.log(2) / np.log(3), abs=0.03)

    union = np.concatenate((lefts, [0.45]))
    assert np.all(box_counts(union, triadic)['boxes'].values >= box_counts(lefts, triadic)['boxes'].values)

    assert np.isnan(box_dimension([], dyadic))
    with pytest.raises(LabInvalidArgumentError):
        box_dimension([0.1], [0.5])

    counts = box_counts(lefts, triadic)
    assert counts['boxes'].tolist() == [2 ** k for k in range(1, 9)]


def test_frostman_probe():

    bounded = frostman_probe([4, 5, 7, 8], 0.4)['energy'].values
    assert bounded[3] - bounded[2] < bounded[1] - bounded[0]

    growing = frostman_probe([5, 8], 0.9)['energy'].values
    assert growing[1] > 1.5 * growing[0]


# command line

def run(argv):
    return main([str(v) for v in argv])


@pytest.fixture
def gaussian_file(tmp_path):
    path = str(tmp_path / 'gaussian.json')
    gaussian_spectrum().save(path)
    return path


def test_cli_propagate(tmp_path, gaussian_file):

    out = str(tmp_path / 'u.csv')
    summary = str(tmp_path / 'summary.json')
    assert run(['propagate', '--a', 2, '--gamma', 1, '--t', 0.25, '--input', gaussian_file, '--out', out,
                '--json-summary', summary]) == 0

    frame = pd.read_csv(out)
    assert list(frame.columns) == ['x', 're', 'im', 'abs']
    frame = frame[np.abs(frame['x']) <= 10]
    values = frame['re'].values + 1j * frame['im'].values
    assert relative_error(values, gaussian_solution(frame['x'].values, 0.25)) < 1e-8

    with open(summary) as f:
        document = json.load(f)
    assert document['command'] == 'propagate'
    assert document['pass'] is True
    assert document['measured'] <= 1.0

    # identical runs give identical bytes
    again = str(tmp_path / 'again.csv')
    run(['propagate', '--a', 2, '--gamma', 1, '--t', 0.25, '--input', gaussian_file, '--out', again])
    with open(out, 'rb') as a, open(again, 'rb') as b:
        assert a.read() == b.read()


def test_cli_usage_errors(tmp_path, gaussian_file):

    out = str(tmp_path / 'u.csv')
    assert run(['propagate', '--a', 2, '--gamma', 1, '--t', 0.25, '--out', out]) == 2
    assert run(['propagate', '--a', 2, '--gamma', 1, '--t', 1.5, '--input', gaussian_file, '--out', out]) == 2
    assert run(['propagate', '--a', 'two']) == 2
    assert run(['kernel-check', '--which', 'gauss', '--out', out]) == 2
    assert run(['maximal-scan', '--mode', 'median']) == 2
    assert run(['unknown-command']) == 2


def test_cli_exit_codes(tmp_path):

    out = str(tmp_path / 'k.csv')
    assert run(['kernel-check', '--which', 'lambda', '--a', 1.5, '--gamma', 2, '--alpha', 0.2, '--t1', 0.5,
                '--t2', 0.25, '--out', out]) == 4

    summary = str(tmp_path / 'k.json')
    assert run(['kernel-check', '--which', 'poisson', '--a-values', '0.5,1', '--t-sweep', '0.01:1:10',
                '--x-sweep', '0,1,5,20', '--out', out, '--json-summary', summary]) == 0
    with open(summary) as f:
        document = json.load(f)
    assert document['finite'] is True
    assert isinstance(document['pass'], bool)
    assert document['refined_sup_ratio'] >= document['sup_ratio']
    assert document['measured'] == pytest.approx(document['refined_sup_ratio'] / document['sup_ratio'])


def test_cli_summaries_carry_a_verdict(tmp_path, gaussian_file):

    out = str(tmp_path / 'out.csv')

    def summary_of(argv):
        path = str(tmp_path / 'summary.json')
        assert run(argv + ['--out', out, '--json-summary', path]) == 0
        with open(path) as f:
            document = json.load(f)
        assert {'predicted', 'measured', 'tolerance', 'pass'} <= set(document)
        return document

    bessel = summary_of(['kernel-check', '--which', 'bessel', '--sigma', 0.5, '--x-sweep', '0.1,0.5,1'])
    assert bessel['pass'] is True
    assert bessel['measured'] <= 1e-6

    local = summary_of(['kernel-check', '--which', 'oscillatory-local', '--a', 0.5, '--gamma', 2, '--alpha', 0.3,
                        '--t1', 0.5, '--t2', 0.25, '--x-sweep', '0.2,0.8'])
    assert local['pass'] is True

    uniform = summary_of(['energy', '--uniform', 4096, '--s', 0.5])
    assert uniform['predicted'] == pytest.approx(8.0 / 3.0)
    assert uniform['pass'] is True

    frostman = summary_of(['energy', '--frostman', '6,7,8', '--s', 0.9])
    assert frostman['predicted'] == pytest.approx(3 ** 0.9 / 2)
    assert frostman['pass'] is True

    convergence = summary_of(['maximal-scan', '--mode', 'convergence', '--a', 2, '--gamma', 1, '--k', 20,
                              '--input', gaussian_file])
    assert convergence['predicted'] == 1.0
    assert convergence['monotone'] is True
    assert convergence['pass'] is True

    domination = summary_of(['maximal-scan', '--mode', 'domination', '--a', 1, '--gamma', 2, '--input', gaussian_file])
    assert domination['pass'] is True

    cantor = summary_of(['dimension-probe', '--cantor', 8])
    assert cantor['pass'] is True
    assert cantor['predicted'] == pytest.approx(np.log(2) / np.log(3))


def test_cli_config_values_are_coerced(tmp_path, gaussian_file):

    config = str(tmp_path / 'config.json')
    out = str(tmp_path / 'u.csv')

    with open(config, 'w') as f:
        json.dump({'a': '2', 'gamma': 1, 't': '0.25', 'input': gaussian_file}, f)
    assert run(['propagate', '--config', config, '--out', out]) == 0

    with open(config, 'w') as f:
        json.dump({'a': 'x', 'gamma': 1, 't': 0.25, 'input': gaussian_file}, f)
    assert run(['propagate', '--config', config, '--out', out]) == 2

    with open(config, 'w') as f:
        json.dump({'a': [2], 'gamma': 1, 't': 0.25, 'input': gaussian_file}, f)
    assert run(['propagate', '--config', config, '--out', out]) == 2


def test_cli_verbose_logs_debug(tmp_path, gaussian_file, monkeypatch):

    levels = []
    monkeypatch.setattr(logging, 'basicConfig', lambda **kwargs: levels.append(kwargs['level']))
    monkeypatch.setattr(logging, 'captureWarnings', lambda capture: None)

    argv = ['propagate', '--a', 2, '--gamma', 1, '--t', 0.25, '--input', gaussian_file,
            '--out', str(tmp_path / 'u.csv')]
    assert run(argv + ['--verbose']) == 0
    assert run(argv) == 0
    assert levels == [logging.DEBUG, logging.WARNING]


def test_cli_config_file(tmp_path, gaussian_file):

    config = str(tmp_path / 'config.json')
    with open(config, 'w') as f:
        json.dump({'a': 2, 'gamma': 1, 't': 0.9, 'input': gaussian_file}, f)

    out = str(tmp_path / 'u.csv')
    summary = str(tmp_path / 'summary.json')
    assert run(['propagate', '--config', config, '--t', 0.25, '--out', out, '--json-summary', summary]) == 0
    with open(summary) as f:
        assert 't=0.25' in json.load(f)['params']

    with open(config, 'w') as f:
        json.dump({'colour': 'red'}, f)
    assert run(['propagate', '--config', config, '--out', out]) == 2


def test_cli_energy_and_dimension(tmp_path):

    measure = str(tmp_path / 'mu.json')
    DiscreteMeasure([0.0, 0.3], [0.5, 0.5]).save(measure)
    summary = str(tmp_path / 'energy.json')
    assert run(['energy', '--input', measure, '--s', 0.5, '--out', str(tmp_path / 'e.csv'),
                '--json-summary', summary]) == 0
    with open(summary) as f:
        assert json.load(f)['energy'] == pytest.approx(0.3 ** -0.5 / 2, rel=1e-12)

    summary = str(tmp_path / 'dimension.json')
    assert run(['dimension-probe', '--cantor', 8, '--out', str(tmp_path / 'd.csv'), '--json-summary', summary]) == 0
    with open(summary) as f:
        assert json.load(f)['dimension'] == pytest.approx(0.631, abs=0.03)


def test_cli_sharpness(tmp_path):

    summary = str(tmp_path / 'sharpness.json')
    out = str(tmp_path / 's.csv')
    assert run(['sharpness', '--a', 0.5, '--gamma', 2, '--s', 0.03, '--out', out, '--json-summary', summary]) == 0

    with open(summary) as f:
        verdict = json.load(f)
    assert verdict['pass'] is True
    assert verdict['measured'] == pytest.approx(-0.75, rel=0.1)
    assert verdict['verdict'] == 'below-threshold'
    assert list(pd.read_csv(out).columns) == ['x', 'y', 'slope', 'intercept', 'r2']
