"""End-to-end acceptance checks.

Each test is one published guarantee of the package, asserted at its
stated tolerance, and prints a PASS line (visible with ``pytest -s``).
The final test bounds the wall-clock budget of the whole module.
"""

import math
import time

import numpy as np
import pytest

from cuberoute.cayley import (
    adjacency_matrix,
    build_path_graph,
    cartesian_product,
    check_columnar,
    dressed_hypercube,
)
from cuberoute.dynamics import (
    basis_state,
    evolve,
    evolve_dense_oracle,
    fidelity_series,
)
from cuberoute.routing import (
    UnroutableError,
    execute_route,
    extract_permutation,
    format_cycles,
    plan_route,
    predicted_permutation,
)
from cuberoute.spectral import (
    SignVector,
    build_spectral_table,
    eigenvalue_closed_form,
    rational_ratio_check,
)

_MODULE_START = time.perf_counter()


def test_01_closed_form_spectra_match_dense_diagonalization():
    for d in range(1, 7):
        for l in range(1, d + 1):
            closed = sorted(
                eigenvalue_closed_form(SignVector.from_index(u, d), d, l)
                for u in range(1 << d)
            )
            dense = np.sort(np.linalg.eigvalsh(adjacency_matrix(dressed_hypercube(d, l)).astype(float)))
            assert np.allclose(closed, dense, atol=1e-9), (d, l)
    print("PASS 1: closed-form spectra equal dense diagonalization (d<=6, all l, 1e-9)")


def test_02_quarter_period_permutations_d3():
    expected = {1: "(1,8)(2,7)(3,6)(4,5)", 2: "(1,2)(3,4)(5,6)(7,8)", 3: "identity"}
    for l, cycles_text in expected.items():
        spec = extract_permutation(dressed_hypercube(3, l), math.pi / 2, tolerance=1e-8)
        assert format_cycles(spec.cycles) == cycles_text, l
        assert spec.mask == predicted_permutation(3, l).mask
    print("PASS 2: quarter-period permutations for d=3 (leak per node < 1e-8)")


def test_03_six_panel_transfer_sweep():
    # 513 samples over [0, pi] land exactly on pi/2 (index 256) and pi (index 512).
    for l in range(1, 7):
        graph = dressed_hypercube(6, l)
        target = predicted_permutation(6, l).apply(0)
        series = fidelity_series(graph, 0, target, math.pi, 513)
        assert abs(series.p_target[256] - 1.0) < 1e-9, l
        assert abs(series.p_return[512] - 1.0) < 1e-9, l
        if l == 6:
            assert abs(series.p_return[256] - 1.0) < 1e-9
        else:
            assert series.p_return[256] < 1e-9, l
    print("PASS 3: d=6 sweep peaks at pi/2, revives at pi, returns home only at l=6 (1e-9)")


def test_04_universal_routing():
    for d in (3, 4, 5):
        n = 1 << d
        for source in range(n):
            for target in range(n):
                plan = plan_route(d, source, target)
                _, fidelity = execute_route(plan)
                assert fidelity >= 1 - 1e-9, (d, source, target)
                assert plan.total_duration in (0.0, math.pi / 2, math.pi)
                weight = bin(source ^ target).count("1")
                if weight == d - 1:
                    assert len(plan.steps) == 2, (d, source, target)
    for source, target in [(0, 1), (0, 2), (1, 3), (2, 3)]:
        with pytest.raises(UnroutableError):
            plan_route(2, source, target)
    print("PASS 4: every pair routed at fidelity >= 1-1e-9 for d=3,4,5; d=2 odd pairs unroutable")


def test_05_fast_path_agrees_with_dense_oracle():
    rng = np.random.default_rng(2026)
    for d in range(1, 7):
        for l in range(1, d + 1):
            graph = dressed_hypercube(d, l)
            table = build_spectral_table(d, l)
            a = adjacency_matrix(graph)
            for _ in range(20):
                psi = rng.normal(size=graph.num_nodes) + 1j * rng.normal(size=graph.num_nodes)
                psi /= np.linalg.norm(psi)
                tau = rng.uniform(0.0, 2 * math.pi)
                diff = evolve(psi, tau, table) - evolve_dense_oracle(psi, tau, a)
                assert np.max(np.abs(diff)) < 1e-10, (d, l)
    print("PASS 5: transform evolution within 1e-10 of dense oracle (d<=6, all l, 20 trials)")


def test_06_structural_claims():
    k2 = build_path_graph(2)
    power = k2
    for d in range(1, 9):
        if d > 1:
            power = cartesian_product(power, k2)
        assert np.array_equal(power, adjacency_matrix(dressed_hypercube(d, 1))), d
    for d in range(1, 7):
        report = check_columnar(dressed_hypercube(d, 1), 0)
        assert report.is_columnar, d
        assert [len(c) for c in report.columns] == [math.comb(d, j) for j in range(d + 1)]
        for l in range(2, d + 1):
            assert not check_columnar(dressed_hypercube(d, l), 0).is_columnar, (d, l)
    print("PASS 6: hypercubes columnar with binomial columns, dressed graphs never; products exact (d<=8)")


def test_07_homogeneous_chain_results():
    spectra = {n: np.linalg.eigvalsh(build_path_graph(n).astype(float)) for n in (2, 3, 4, 5)}
    assert rational_ratio_check(spectra[2])
    assert rational_ratio_check(spectra[3])
    assert not rational_ratio_check(spectra[4])
    assert not rational_ratio_check(spectra[5])

    out = evolve_dense_oracle(basis_state_n(3, 0), math.pi / math.sqrt(2), build_path_graph(3))
    assert abs(abs(out[2]) ** 2 - 1.0) < 1e-9
    print("PASS 7: chain ratio condition holds only for n=2,3; 3-chain transfers at pi/sqrt(2)")


def basis_state_n(n, node):
    psi = np.zeros(n, dtype=complex)
    psi[node] = 1.0
    return psi


def test_08_performance_budget():
    d = 14
    graph = dressed_hypercube(d, 5)
    table = build_spectral_table(d, 5)
    psi = basis_state(d, 0)
    evolve(psi, 0.3, table)  # warm up

    best = min(
        _timed(lambda: evolve(psi, 1.234, table))
        for _ in range(3)
    )
    assert best < 0.050, f"single evolution took {best * 1e3:.1f} ms"

    start = time.perf_counter()
    fidelity_series(graph, 0, predicted_permutation(d, 5).apply(0), math.pi, 512)
    series_elapsed = time.perf_counter() - start
    assert series_elapsed < 5.0, f"512-sample series took {series_elapsed:.2f} s"
    print(f"PASS 8: d=14 evolution {best * 1e3:.1f} ms (< 50 ms); 512-sample series {series_elapsed:.2f} s (< 5 s)")


def _timed(fn):
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def test_09_total_runtime_budget():
    elapsed = time.perf_counter() - _MODULE_START
    assert elapsed < 30.0, f"acceptance module took {elapsed:.1f} s"
    print(f"PASS: acceptance module finished in {elapsed:.1f} s (< 30 s)")
