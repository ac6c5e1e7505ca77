"""Import-safe helpers shared by test modules.

Lives outside conftest.py so tests can import these by module name
regardless of which conftest pytest loaded last.
"""

import numpy as np

_CRITERION_LINES = []


def record_criterion(number: int, passed: bool, detail: str) -> None:
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}"
    _CRITERION_LINES.append((number, line))
    print(line, flush=True)


def prolate_oracle(kappa: float, L: float, n: int, count: int) -> np.ndarray:
    """Largest eigenvalues of the classical 1-D bandlimited kernel.

    Independent midpoint discretization of (W/pi)*sinc(W*(t - t')) on
    [0, L] with W = kappa, written against numpy's own sinc so it
    shares no code with the package kernel.  The 3-D sinc kernel of a
    segment has exactly these eigenvalues divided by beta.
    """
    t = (np.arange(n) + 0.5) * (L / n)
    x = kappa * (t[:, None] - t[None, :])
    matrix = (kappa / np.pi) * np.sinc(x / np.pi) * (L / n)
    values = np.linalg.eigvalsh(matrix)
    return np.sort(values)[::-1][:count]
