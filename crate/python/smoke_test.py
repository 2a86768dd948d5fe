"""Smoke test for the pyqudit extension.

Build and install first:  maturin build --release -m crates/py/Cargo.toml
then pip install the wheel, and run  python python/smoke_test.py
"""

import math

import numpy as np
import pyqudit


def close(a, b, tol):
    assert abs(a - b) <= tol, (a, b)


def main():
    e, pi = math.e, math.pi
    h = pyqudit.qubit_hamiltonian(1.0, math.sqrt(2.0), e, pi)
    norm = math.sqrt(2.0 + e * e + pi * pi)

    sols = pyqudit.solve_extremal(h, [0.0], seed=1)
    assert len(sols) == 2
    close(sols[0].energy, (1.0 - norm) / 2.0, 1e-8)
    close(sols[1].energy, (1.0 + norm) / 2.0, 1e-8)

    exact = pyqudit.qubit_closed_form(h, 0.1)
    numeric = pyqudit.solve_extremal(h, [0.1])
    for a, b in zip(exact, numeric):
        close(a.energy, b.energy, 1e-8)
        assert np.allclose(np.array(a.state), np.array(b.state), atol=1e-8)

    bec = pyqudit.bec_hamiltonian(0.3, 0.5, -1.0)
    mixed = pyqudit.solve_extremal(bec, [0.29, 0.02])
    assert len(mixed) == 6, mixed
    pure = pyqudit.solve_extremal(bec, [0.0, 0.0])
    assert np.allclose([s.energy for s in pure], np.linalg.eigvalsh(np.array(bec)), atol=1e-8)

    basis = [np.array(g) for g in pyqudit.build_basis(3)]
    assert len(basis) == 8
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            close(np.trace(a @ b).real, 2.0 if i == j else 0.0, 1e-12)
    h0, coeffs = pyqudit.expand(bec)
    rebuilt = h0 / 3 * np.eye(3) + 0.5 * sum(c * g for c, g in zip(coeffs, basis))
    assert np.allclose(rebuilt, np.array(bec), atol=1e-12)

    rho = np.diag([0.5, 0.4, 0.1]).astype(complex)
    c2, c3 = pyqudit.char_coeffs(rho.tolist())
    close(c2, 0.29, 1e-12)
    close(c3, 0.02, 1e-12)
    feasible, spectrum = pyqudit.is_feasible([0.29, 0.02])
    assert feasible and np.allclose(spectrum, [0.5, 0.4, 0.1], atol=1e-8)
    assert not pyqudit.is_feasible([0.4, 0.0])[0]

    gibbs = pyqudit.gibbs_like(bec)
    report = pyqudit.check_bounds(gibbs, bec)
    assert report.passes and abs(report.slack) <= 1e-9
    report = pyqudit.check_bounds(rho.tolist(), bec)
    assert report.passes and report.slack > 0
    close(math.log(pyqudit.partition(bec, -1.0)), report.bound, 1e-12)

    close(pyqudit.qubit_f_closed(2.0, 0.0), math.log(math.cosh(1.0)), 1e-15)

    try:
        pyqudit.solve_extremal([[1, 0], [0, 1]], [0.3])
    except ValueError:
        pass
    else:
        raise AssertionError("infeasible constants accepted")

    print("pyqudit smoke test passed")


if __name__ == "__main__":
    main()
