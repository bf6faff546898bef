"""Spectral tests: closed form vs generator sums vs dense diagonalization."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuberoute.cayley import adjacency_matrix, build_generating_set, build_path_graph, dressed_hypercube
from cuberoute.spectral import (
    PARITY_EVEN,
    PARITY_ODD,
    NoValidOffsetError,
    SignVector,
    build_spectral_table,
    eigenvalue_by_summation,
    eigenvalue_closed_form,
    phase_offset,
    rational_ratio_check,
)

H2 = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)


def hadamard_basis_matrix(d):
    """Independent construction of the product eigenbasis, column per sign vector."""
    w = np.array([[1.0]])
    for _ in range(d):
        w = np.kron(w, H2)
    return w


def dense_spectrum(graph):
    return np.sort(np.linalg.eigvalsh(adjacency_matrix(graph).astype(float)))


# ---------------------------------------------------------------------------
# eigenvalues
# ---------------------------------------------------------------------------


def test_summation_examples():
    assert eigenvalue_by_summation(SignVector.from_string("+++"), build_generating_set(3, 1)) == 3
    assert eigenvalue_by_summation(SignVector.from_string("+++"), build_generating_set(3, 2)) == 4
    assert eigenvalue_by_summation(SignVector.from_string("+-+"), build_generating_set(3, 2)) == 0


def test_closed_form_examples():
    assert eigenvalue_closed_form(SignVector.from_string("++-"), 3, 2) == 2
    assert eigenvalue_closed_form(SignVector.from_string("-++"), 3, 2) == 0
    for d in range(1, 7):
        all_plus = SignVector((1,) * d)
        assert eigenvalue_closed_form(all_plus, d, d) == 2**d - 1


def test_closed_form_equals_summation_and_dense():
    for d in range(1, 7):
        for l in range(1, d + 1):
            gen = build_generating_set(d, l)
            values = []
            for u in range(1 << d):
                s = SignVector.from_index(u, d)
                closed = eigenvalue_closed_form(s, d, l)
                assert closed == eigenvalue_by_summation(s, gen)
                values.append(closed)
            assert np.allclose(np.sort(values), dense_spectrum(dressed_hypercube(d, l)), atol=1e-9)


def test_rotated_summation_diagonalizes_rotated_adjacency():
    rng = np.random.default_rng(11)
    for d in range(2, 6):
        for _ in range(4):
            perm = tuple(rng.permutation(d) + 1)
            l = int(rng.integers(1, d + 1))
            gen = build_generating_set(d, l)
            lam = np.array([
                eigenvalue_by_summation(SignVector.from_index(u, d), gen, perm)
                for u in range(1 << d)
            ])
            a = adjacency_matrix(dressed_hypercube(d, l, perm)).astype(float)
            w = hadamard_basis_matrix(d)
            assert np.allclose(w @ a @ w, np.diag(lam), atol=1e-9)


def test_sign_vectors_are_orthonormal():
    for d in range(1, 7):
        q = np.column_stack([SignVector.from_index(u, d).amplitudes() for u in range(1 << d)])
        assert np.allclose(q @ q.T, np.eye(1 << d), atol=1e-12)
        assert np.allclose(q, hadamard_basis_matrix(d), atol=1e-12)


def test_sign_vector_string_roundtrip():
    s = SignVector.from_string("+-+-")
    assert str(s) == "+-+-"
    assert s.index == 0b0101
    assert SignVector.from_index(s.index, 4) == s
    with pytest.raises(ValueError):
        SignVector((1, 0))


# ---------------------------------------------------------------------------
# tables, parity, offset
# ---------------------------------------------------------------------------


def test_table_spectra_match_known_ladders():
    assert build_spectral_table(3, 1).spectrum() == [3, 1, 1, 1, -1, -1, -1, -3]
    assert build_spectral_table(3, 2).spectrum() == [4, 2, 0, 0, 0, -2, -2, -2]
    assert build_spectral_table(2, 2).spectrum() == [3, -1, -1, -1]


def test_maximum_eigenvalue_is_degree():
    for d in range(1, 9):
        for l in range(1, d + 1):
            table = build_spectral_table(d, l)
            top = max(table.spectrum())
            assert top == 2**l + d - l - 1
            assert table.eigenvalue(SignVector((1,) * d)) == top


def test_spectrum_not_symmetric_once_dressed():
    for d in range(2, 9):
        for l in range(2, d):
            values = build_spectral_table(d, l).spectrum()
            assert min(values) != -max(values), (d, l)


def test_phase_offset_examples():
    assert build_spectral_table(3, 1).k == 3
    assert build_spectral_table(3, 2).k == 0
    assert build_spectral_table(1, 1).k == 1


def test_parity_and_congruence_exhaustive():
    for d in range(1, 9):
        for l in range(1, d + 1):
            table = build_spectral_table(d, l)
            for u in range(1 << d):
                lam = int(table.eigenvalues[u])
                if table.parity_even[u]:
                    assert (lam - table.k) % 4 == 0
                else:
                    assert (lam - table.k + 2) % 4 == 0


def test_parity_counts_minus_signs_on_flipped_coordinates():
    # l = 1 counts every coordinate; dressed levels only the undressed tail.
    table = build_spectral_table(3, 1)
    assert table.parity(SignVector.from_string("-++")) == PARITY_ODD
    assert table.parity(SignVector.from_string("--+")) == PARITY_EVEN

    table = build_spectral_table(3, 2)
    assert table.parity(SignVector.from_string("-++")) == PARITY_EVEN
    assert table.parity(SignVector.from_string("++-")) == PARITY_ODD


def test_phase_offset_rejects_broken_ladder():
    with pytest.raises(NoValidOffsetError):
        phase_offset(np.array([3, 2]), np.array([True, True]))


def test_table_arrays_are_immutable():
    table = build_spectral_table(4, 2)
    with pytest.raises(ValueError):
        table.eigenvalues[0] = 99


# ---------------------------------------------------------------------------
# rational-ratio condition
# ---------------------------------------------------------------------------


def path_spectrum(n):
    return np.linalg.eigvalsh(build_path_graph(n).astype(float))


def test_ratio_check_integer_spectrum():
    assert rational_ratio_check([3, 1, -1, -3])
    for d, l in [(3, 1), (3, 2), (4, 2), (6, 3)]:
        assert rational_ratio_check(build_spectral_table(d, l).spectrum())


def test_ratio_check_commensurate_irrationals():
    # {-sqrt(2), 0, sqrt(2)}: every difference ratio is rational.
    assert rational_ratio_check(path_spectrum(3))


def test_ratio_check_rejects_incommensurate_chains():
    assert not rational_ratio_check(path_spectrum(4))
    assert not rational_ratio_check(path_spectrum(5))


def test_ratio_check_vacuous_cases():
    assert rational_ratio_check([])
    assert rational_ratio_check([1.0, 2.0])        # two distinct values
    assert rational_ratio_check(path_spectrum(2))  # {-1, 1}
    assert rational_ratio_check([5.0, 5.0, 5.0])   # zero spread


@settings(max_examples=60, deadline=None)
@given(
    n=st.sampled_from([3, 4, 5]),
    a=st.floats(min_value=-50, max_value=50).filter(lambda x: abs(x) > 1e-2),
    b=st.floats(min_value=-50, max_value=50),
)
def test_ratio_check_is_affine_invariant(n, a, b):
    spectrum = path_spectrum(n)
    assert rational_ratio_check(a * spectrum + b) == rational_ratio_check(spectrum)
