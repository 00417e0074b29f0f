import math

import pytest

# order grid shared by the invariant tests
NU_GRID = (-0.49, -0.25, 0.0, 0.5, 1.0, 2.0, 10.0)


def disk_points(n_radii=10, n_angles=10, max_radius=1.0):
    """Deterministic grid of n_radii*n_angles points in the closed disk."""
    pts = []
    for i in range(1, n_radii + 1):
        r = max_radius * i / n_radii
        for j in range(n_angles):
            th = 2.0 * math.pi * j / n_angles
            pts.append(complex(r * math.cos(th), r * math.sin(th)))
    return pts


@pytest.fixture(scope="session")
def unit_disk_points():
    return disk_points()
