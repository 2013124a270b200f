"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line with the measured quantity next to its pinned tolerance.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines.
"""
import copy
import functools
import math
import time
from dataclasses import replace

import numpy as np

from afrelay.analysis import (
    analytical_snr,
    analytical_snr_upa,
    multi_relay_snr,
    sensitivities,
    single_relay_topology,
    upa_asymptotic_stats,
)
from afrelay.channel import frequency_response
from afrelay.harness import (
    PRESETS,
    PointAssignment,
    config_from_dict,
    run_point,
    run_sweep,
    write_csv,
)
from afrelay.ofdm import OfdmParams, draw_symbols, modulate
from afrelay.relay import BranchRealization, gain_factor, RelayGainConfig, simulate_direct, simulate_relay_branch
from afrelay.transforms import cfo_spectrum, dirichlet_gain
from conftest import cgauss, ici_reference

from test_analysis import BASE, random_stats


def criterion(label):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                detail = fn(*args, **kwargs)
            except BaseException as exc:
                print(f"\nFAIL {label}: {exc}", flush=True)
                raise
            print(f"\nPASS {label}: {detail}", flush=True)
        return wrapper
    return decorate


@criterion("criterion 1 (waveform pipeline matches closed-form spectra)")
def test_c1_pipeline_oracle():
    params = OfdmParams(n_subcarriers=64, cp_len=16)
    rng = np.random.default_rng(101)
    rho = 1.0
    worst = 0.0
    start = time.perf_counter()
    for _ in range(100):
        sym = draw_symbols(params, rng)
        tx = modulate(sym, params)
        h_direct = cgauss(rng, 4, var=1.0 / 4)
        h_hop1 = cgauss(rng, 4, var=1.0 / 4)
        h_hop2 = cgauss(rng, 4, var=4.0 / 4)
        eps1, eps2 = rng.uniform(-0.5, 0.5, 2)

        y_direct = simulate_direct(tx, h_direct, eps1, 0.0, rng)
        branch = BranchRealization(h_hop1, h_hop2, eps2, rho, 0.0, 0.0)
        y_relay = simulate_relay_branch(tx, branch, rng)

        ref_direct = ici_reference(sym, frequency_response(h_direct, 64), eps1)
        ref_relay = ici_reference(
            sym, frequency_response(h_hop1, 64) * frequency_response(h_hop2, 64),
            eps2, scale=rho,
        )
        for signal, reference in ((y_direct, ref_direct), (y_relay, ref_relay)):
            spectrum = np.fft.fft(signal.samples[16:])
            rel = np.abs(spectrum - reference) / np.abs(reference)
            worst = max(worst, float(rel.max()))
    elapsed = time.perf_counter() - start
    assert worst < 1e-9, f"worst per-bin relative error {worst:.3e} >= 1e-9"
    assert elapsed < 10.0, f"runtime {elapsed:.1f} s >= 10 s"
    return f"worst per-bin relative error {worst:.2e} (< 1e-9), {elapsed:.1f} s"


@criterion("criterion 2 (leakage energy identity)")
def test_c2_energy_identity():
    worst = 0.0
    for n in (16, 64, 256):
        for eps in np.linspace(-0.49, 0.49, 50):
            total = sum(abs(cfo_spectrum(eps, k, n)) ** 2 for k in range(n))
            worst = max(worst, abs(total - 1.0))
    assert worst < 1e-12, f"worst |sum - 1| = {worst:.3e} >= 1e-12"
    return f"worst |sum - 1| = {worst:.2e} over N in (16, 64, 256) (< 1e-12)"


@criterion("criterion 3 (Monte-Carlo matches the closed-form SNR)")
def test_c3_monte_carlo_vs_closed_form():
    grid = [0.0, 0.1, 0.2, 0.3, 0.4]
    start = time.perf_counter()
    worst_gap = 0.0
    worst_case = ""
    for preset in ("fig3_flat", "fig4_selective"):
        for axis in ("eps1", "eps2"):
            raw = copy.deepcopy(PRESETS[preset])
            raw["sweep"] = {"axis": axis, "grid": grid}
            raw["noise_scales"] = [1.0, 0.1]
            raw["trials"] = 2000
            rows = run_sweep(config_from_dict(raw))
            for row in rows:
                gap = abs(row.empirical_db - row.analytical_db)
                bound = max(0.3, 3.0 * row.stderr_db)
                if gap > worst_gap:
                    worst_gap = gap
                    worst_case = f"{preset}/{axis} eps=({row.eps1},{row.eps2})"
                assert gap < bound, (
                    f"{preset}/{axis} at ({row.eps1}, {row.eps2}): "
                    f"gap {gap:.3f} dB >= bound {bound:.3f} dB"
                )
    elapsed = time.perf_counter() - start
    assert elapsed < 180.0, f"runtime {elapsed:.0f} s >= 180 s"
    return (
        f"40 points x 2000 trials, worst gap {worst_gap:.3f} dB at {worst_case} "
        f"(bound max(0.3, 3*stderr)), {elapsed:.0f} s"
    )


@criterion("criterion 4 (SNR maximal at the origin, monotone, even)")
def test_c4_maximality_monotonicity_evenness():
    grid = np.arange(-10, 11) * 0.045  # 21 points, center exactly 0.0
    surface = np.array(
        [
            [
                analytical_snr(replace(BASE, cfo_direct=e1, cfo_relay=e2)).snr_linear
                for e2 in grid
            ]
            for e1 in grid
        ]
    )
    peak = np.unravel_index(np.argmax(surface), surface.shape)
    assert grid[peak[0]] == 0.0 and grid[peak[1]] == 0.0, "peak away from the origin"
    assert np.sum(surface == surface.max()) == 1, "maximum is not unique"

    axis = np.linspace(0.0, 0.45, 10)
    down1 = [analytical_snr(replace(BASE, cfo_direct=e)).snr_linear for e in axis]
    down2 = [analytical_snr(replace(BASE, cfo_relay=e)).snr_linear for e in axis]
    assert np.all(np.diff(down1) < 0) and np.all(np.diff(down2) < 0), "not strictly decreasing"

    for e1, e2 in ((0.23, 0.37), (0.05, 0.41)):
        ref = analytical_snr(replace(BASE, cfo_direct=e1, cfo_relay=e2)).snr_linear
        assert analytical_snr(replace(BASE, cfo_direct=-e1, cfo_relay=e2)).snr_linear == ref
        assert analytical_snr(replace(BASE, cfo_direct=e1, cfo_relay=-e2)).snr_linear == ref
    return "unique peak at (0,0) on a 21x21 grid, strictly decreasing on each axis, even (exact)"


@criterion("criterion 5 (sensitivities: finite differences and power ratio)")
def test_c5_sensitivities():
    rng = np.random.default_rng(505)
    worst = 0.0
    for _ in range(50):
        stats = random_stats(rng)
        pair = sensitivities(stats, "chain_rule")
        h = 1e-6
        for attr, lam in (("cfo_direct", pair.lambda1), ("cfo_relay", pair.lambda2)):
            base_val = getattr(stats, attr)
            up = analytical_snr(replace(stats, **{attr: base_val + h})).snr_linear
            down = analytical_snr(replace(stats, **{attr: base_val - h})).snr_linear
            fd = abs(up - down) / (2 * h)
            worst = max(worst, abs(lam - fd) / fd)
    assert worst < 1e-6, f"worst relative error vs finite differences {worst:.2e} >= 1e-6"

    stats = upa_asymptotic_stats(replace(BASE, cfo_direct=0.2, cfo_relay=0.2))
    for variant in ("chain_rule", "simplified"):
        pair = sensitivities(stats, variant)
        assert pair.lambda2 / pair.lambda1 == 4.0, f"{variant} ratio != 4 exactly"
    return (
        f"50 random stats, worst FD relative error {worst:.2e} (< 1e-6); "
        "relay/direct slope ratio exactly 4 under asymptotic UPA, both variants"
    )


@criterion("criterion 6 (degradation grows toward high SNR)")
def test_c6_high_snr_degradation_trend():
    scales = (1.0, 0.1, 0.01)
    analytic_gaps = []
    for t in scales:
        stats = replace(
            BASE, direct_noise_var=0.1 * t, relay_noise_var=0.1 * t, dest_noise_var=0.1 * t
        )
        at_zero = analytical_snr(stats).snr_db
        at_point = analytical_snr(replace(stats, cfo_direct=0.2, cfo_relay=0.2)).snr_db
        analytic_gaps.append(at_zero - at_point)
    assert analytic_gaps[0] <= analytic_gaps[1] <= analytic_gaps[2], (
        f"analytic gaps not non-decreasing: {analytic_gaps}"
    )

    raw = copy.deepcopy(PRESETS["fig3_flat"])
    raw["relays"][0]["gain"] = {"mode": "fixed", "rho": 1.0}
    raw["trials"] = 2000
    cfg = config_from_dict(raw)
    simulated = []
    for t in scales:
        emp_zero, _ = run_point(cfg, PointAssignment(0.0, (0.0,), t))
        emp_point, _ = run_point(cfg, PointAssignment(0.2, (0.2,), t))
        gap = emp_zero.snr_db - emp_point.snr_db
        spread = math.hypot(emp_zero.stderr_db, emp_point.stderr_db)
        simulated.append((gap, spread))
    for (g_lo, s_lo), (g_hi, s_hi) in zip(simulated, simulated[1:]):
        slack = 2.0 * math.hypot(s_lo, s_hi)
        assert g_hi >= g_lo - slack, (
            f"simulated gap decreased beyond 2*stderr: {g_hi:.3f} < {g_lo:.3f} - {slack:.3f}"
        )
    gaps = ", ".join(f"{g:.2f}" for g, _ in simulated)
    return (
        f"analytic gaps {analytic_gaps[0]:.2f} <= {analytic_gaps[1]:.2f} <= "
        f"{analytic_gaps[2]:.2f} dB; simulated gaps [{gaps}] dB non-decreasing within 2*stderr"
    )


@criterion("criterion 7 (multi-relay expression reduces correctly)")
def test_c7_multi_relay_reduction():
    rng = np.random.default_rng(707)
    worst = 0.0
    for _ in range(100):
        stats = random_stats(rng)
        lhs = multi_relay_snr(single_relay_topology(stats)).snr_linear
        rhs = analytical_snr(stats).snr_linear
        worst = max(worst, abs(lhs - rhs) / rhs)
    assert worst < 1e-12, f"worst M=1 reduction error {worst:.2e} >= 1e-12"

    from afrelay.analysis import DirectStats, TopologyStats

    topo = TopologyStats(DirectStats(2.0, 0.3, 0.4), (), symbol_power=1.5, n_subcarriers=64)
    f = dirichlet_gain(0.3, 64)
    expected = (f ** 2 * 2.0 * 1.5) / ((1 - f ** 2) * 2.0 * 1.5 + 0.4)
    got = multi_relay_snr(topo).snr_linear
    assert abs(got - expected) / expected < 1e-14, "M=0 does not reduce to point-to-point"
    return f"M=1 equals the single-relay form (worst {worst:.2e} < 1e-12); M=0 is point-to-point"


@criterion("criterion 8 (uniform-allocation gain limit and substitution)")
def test_c8_upa_limit_and_substitution():
    rho = gain_factor(RelayGainConfig(mode="upa", total_power=1e6), 2.0, 0.1)
    err = abs(rho - 1.0 / math.sqrt(2.0))
    assert err < 1e-6, f"|rho - limit| = {err:.2e} >= 1e-6 at total power 1e6"

    rng = np.random.default_rng(808)
    worst = 0.0
    for _ in range(100):
        stats = random_stats(rng)
        lhs = analytical_snr_upa(stats).snr_linear
        rhs = analytical_snr(upa_asymptotic_stats(stats)).snr_linear
        worst = max(worst, abs(lhs - rhs) / rhs)
    assert worst < 1e-12, f"worst substitution error {worst:.2e} >= 1e-12"
    return f"|rho - limit| = {err:.2e} (< 1e-6); substitution error {worst:.2e} (< 1e-12)"


@criterion("criterion 9 (bitwise-identical CSV across worker counts)")
def test_c9_worker_determinism(tmp_path):
    raw = copy.deepcopy(PRESETS["fig3_flat"])
    raw["sweep"] = {"axis": "eps2", "grid": [0.0, 0.2, 0.4]}
    raw["noise_scales"] = [1.0]
    raw["trials"] = 64
    outputs = {}
    for workers in (1, 8):
        cfg = config_from_dict({**raw, "workers": workers})
        rows = run_sweep(cfg)
        path = tmp_path / f"workers{workers}.csv"
        write_csv(rows, path)
        outputs[workers] = path.read_bytes()
    assert outputs[1] == outputs[8], "CSV bytes differ between 1 and 8 workers"
    return f"{len(outputs[1])} identical bytes from 1-worker and 8-worker runs"
