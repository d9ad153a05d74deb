"""Hermitian operator basis for a three-level (spin-1) system.

C1..C3 are the spin-1 component matrices S1, S2, S3; C4..C8 complete the
traceless set with quadrupole-type combinations; C0 = sqrt(2/3) * identity.
All nine operators are mutually orthogonal with Tr(Ca Cb) = 2 delta_ab, so a
3x3 density matrix expands as

    rho = R_alpha C_alpha / sqrt(6),   R_alpha = sqrt(3/2) Tr(rho C_alpha),

with real coefficients and R_0 = 1 pinned by the unit trace.

The commutator/anticommutator algebra

    [Ca, Cb] = 2i e_abc Cc,     {Ca, Cb} = (4/3) E delta_ab + 2 g_abc Cc

is tabulated densely in ``E_TABLE`` (antisymmetric) and ``G_TABLE``
(symmetric), using 1-based operator indices (plane/row/column 0 is zero
padding).  Both tables are sourced twice -- a hand-coded nonzero list and a
direct evaluation of the defining traces -- and the module refuses to import
if the two disagree, which catches transcription slips in either source.
"""

import itertools

import numpy as np

_SQ2 = np.sqrt(2.0)
_SQ3 = np.sqrt(3.0)


def _build_basis():
    s1 = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex) / _SQ2
    s2 = np.array([[0, -1, 0], [1, 0, -1], [0, 1, 0]], dtype=complex) * (1j / _SQ2)
    s3 = np.diag([1.0, 0.0, -1.0]).astype(complex)
    c4 = np.array([[0, 0, -1], [0, 0, 0], [1, 0, 0]], dtype=complex) * 1j
    c5 = np.array([[0, -1, 0], [1, 0, 1], [0, -1, 0]], dtype=complex) * (1j / _SQ2)
    c6 = np.diag([1.0, -2.0, 1.0]).astype(complex) / _SQ3
    c7 = np.array([[0, 1, 0], [1, 0, -1], [0, -1, 0]], dtype=complex) / _SQ2
    c8 = np.array([[0, 0, 1], [0, 0, 0], [1, 0, 0]], dtype=complex)
    c0 = np.sqrt(2.0 / 3.0) * np.eye(3, dtype=complex)
    return np.stack([c0, s1, s2, s3, c4, c5, c6, c7, c8])


#: the nine basis matrices, indexed 0..8
C = _build_basis()
C.setflags(write=False)

S1, S2, S3 = C[1], C[2], C[3]
IDENTITY = np.eye(3, dtype=complex)

# hand-coded nonzero structure constants (one representative per orbit)
_E_NONZERO = [
    (1, 2, 3, 0.5),
    (1, 4, 7, 0.5),
    (1, 5, 8, 0.5),
    (2, 4, 5, -0.5),
    (2, 7, 8, 0.5),
    (3, 5, 7, -0.5),
    (1, 5, 6, _SQ3 / 2),
    (2, 6, 7, _SQ3 / 2),
    (3, 4, 8, -1.0),
]
_G_NONZERO = [
    (3, 3, 6, 1 / _SQ3),
    (4, 4, 6, 1 / _SQ3),
    (6, 6, 6, -1 / _SQ3),
    (6, 8, 8, 1 / _SQ3),
    (1, 1, 6, -1 / (2 * _SQ3)),
    (2, 2, 6, -1 / (2 * _SQ3)),
    (5, 5, 6, -1 / (2 * _SQ3)),
    (6, 7, 7, -1 / (2 * _SQ3)),
    (1, 1, 8, 0.5),
    (1, 2, 4, 0.5),
    (1, 3, 7, 0.5),
    (2, 2, 8, -0.5),
    (2, 3, 5, 0.5),
    (4, 5, 7, -0.5),
    (5, 5, 8, 0.5),
    (7, 7, 8, -0.5),
]

_PARITY = {
    (0, 1, 2): 1.0, (1, 2, 0): 1.0, (2, 0, 1): 1.0,
    (0, 2, 1): -1.0, (2, 1, 0): -1.0, (1, 0, 2): -1.0,
}


def _fill_tables():
    e = np.zeros((9, 9, 9))
    g = np.zeros((9, 9, 9))
    for a, b, c, v in _E_NONZERO:
        idx = (a, b, c)
        for perm in itertools.permutations(range(3)):
            e[tuple(idx[p] for p in perm)] = _PARITY[perm] * v
    for a, b, c, v in _G_NONZERO:
        idx = (a, b, c)
        for perm in itertools.permutations(range(3)):
            g[tuple(idx[p] for p in perm)] = v
    return e, g


#: antisymmetric structure constants, E_TABLE[a, b, c] = e_abc for a,b,c in 1..8
E_TABLE, G_TABLE = _fill_tables()


def _tables_from_traces():
    """Evaluate e_abc = Tr([Ca,Cb]Cc)/(4i) and g_abc = Tr({Ca,Cb}Cc)/4."""
    prod = np.einsum("aij,bjk->abik", C[1:], C[1:])
    comm = prod - prod.transpose(1, 0, 2, 3)
    anti = prod + prod.transpose(1, 0, 2, 3)
    e = np.einsum("abik,cki->abc", comm, C[1:]) / 4j
    g = np.einsum("abik,cki->abc", anti, C[1:]) / 4.0
    return e, g


def _selfcheck():
    e_calc, g_calc = _tables_from_traces()
    err_e = np.max(np.abs(E_TABLE[1:, 1:, 1:] - e_calc.real)) + np.max(np.abs(e_calc.imag))
    err_g = np.max(np.abs(G_TABLE[1:, 1:, 1:] - g_calc.real)) + np.max(np.abs(g_calc.imag))
    if err_e > 1e-13 or err_g > 1e-13:
        raise RuntimeError(
            f"structure-constant tables disagree with trace formulas "
            f"(e: {err_e:.2e}, g: {err_g:.2e})"
        )


_selfcheck()


def basis_matrix(index):
    """Return the basis matrix C_index (0..8) as a fresh 3x3 complex array."""
    if not 0 <= index <= 8:
        raise ValueError(f"basis index must be in 0..8, got {index}")
    return C[index].copy()


def _check_triple(a, b, c):
    for name, v in (("a", a), ("b", b), ("c", c)):
        if not 1 <= v <= 8:
            raise ValueError(f"structure-constant index {name} must be in 1..8, got {v}")


def structure_e(a, b, c):
    """Antisymmetric structure constant e_abc, indices in 1..8."""
    _check_triple(a, b, c)
    return E_TABLE[a, b, c]


def structure_g(a, b, c):
    """Symmetric structure constant g_abc, indices in 1..8."""
    _check_triple(a, b, c)
    return G_TABLE[a, b, c]


# Gell-Mann matrices lambda_1..lambda_8 in the standard ordering
_L = np.zeros((8, 3, 3), dtype=complex)
_L[0] = [[0, 1, 0], [1, 0, 0], [0, 0, 0]]
_L[1] = [[0, -1j, 0], [1j, 0, 0], [0, 0, 0]]
_L[2] = np.diag([1.0, -1.0, 0.0])
_L[3] = [[0, 0, 1], [0, 0, 0], [1, 0, 0]]
_L[4] = [[0, 0, -1j], [0, 0, 0], [1j, 0, 0]]
_L[5] = [[0, 0, 0], [0, 0, 1], [0, 1, 0]]
_L[6] = [[0, 0, 0], [0, 0, -1j], [0, 1j, 0]]
_L[7] = np.diag([1.0, 1.0, -2.0]) / _SQ3
GELLMANN = _L
GELLMANN.setflags(write=False)


def gellmann_decompose(index):
    """Coefficients x_a with C_index = sum_a x_a lambda_a over the Gell-Mann basis.

    Uses Tr(lambda_a lambda_b) = 2 delta_ab; the imaginary parts vanish for
    every basis matrix, which is asserted here.
    """
    if not 1 <= index <= 8:
        raise ValueError(f"decomposition defined for indices 1..8, got {index}")
    coeff = np.einsum("ij,aji->a", C[index], GELLMANN) / 2.0
    if np.max(np.abs(coeff.imag)) > 1e-14:
        raise RuntimeError("unexpected complex coefficient in Gell-Mann decomposition")
    return coeff.real


def verify_algebra():
    """Sweep every algebra identity and report the max residual per identity.

    Never raises; the returned dict maps identity name to worst-case absolute
    residual.  Consumed by the verification suites, which apply tolerances.
    """
    report = {}
    overlaps = np.einsum("aij,bji->ab", C, C)
    report["orthogonality"] = float(np.max(np.abs(overlaps - 2.0 * np.eye(9))))
    traces = np.einsum("aii->a", C[1:])
    report["tracelessness"] = float(np.max(np.abs(traces)))
    report["identity_trace"] = float(abs(np.trace(C[0]) - np.sqrt(6.0)))
    report["hermiticity"] = float(
        max(np.max(np.abs(c - c.conj().T)) for c in C)
    )

    e_calc, g_calc = _tables_from_traces()
    report["e_table"] = float(np.max(np.abs(E_TABLE[1:, 1:, 1:] - e_calc.real)))
    report["g_table"] = float(np.max(np.abs(G_TABLE[1:, 1:, 1:] - g_calc.real)))

    # product identity Ca Cb = (2/3) E delta_ab + (g_abc + i e_abc) Cc
    prod = np.einsum("aij,bjk->abik", C[1:], C[1:])
    recon = (2.0 / 3.0) * np.einsum("ab,ik->abik", np.eye(8), np.eye(3)) + np.einsum(
        "abc,cik->abik", G_TABLE[1:, 1:, 1:] + 1j * E_TABLE[1:, 1:, 1:], C[1:]
    )
    report["product_identity"] = float(np.max(np.abs(prod - recon)))

    # spin-1 commutation relations for C1..C3
    eps = np.zeros((3, 3, 3))
    eps[0, 1, 2] = eps[1, 2, 0] = eps[2, 0, 1] = 1.0
    eps[0, 2, 1] = eps[2, 1, 0] = eps[1, 0, 2] = -1.0
    worst = 0.0
    for i in range(3):
        for j in range(3):
            comm = C[1 + i] @ C[1 + j] - C[1 + j] @ C[1 + i]
            expect = 1j * sum(eps[i, j, k] * C[1 + k] for k in range(3))
            worst = max(worst, float(np.max(np.abs(comm - expect))))
    report["spin_commutation"] = worst

    report["gellmann_connection"] = float(
        max(
            np.max(np.abs(np.einsum("a,aij->ij", gellmann_decompose(i), GELLMANN) - C[i]))
            for i in range(1, 9)
        )
    )
    return report
