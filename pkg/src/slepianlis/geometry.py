"""Quadrature discretizations of continuous antenna shapes.

A shape M (curve or surface in 3-space) is reduced to a
:class:`SampledManifold`: quadrature nodes lying on M together with
strictly positive weights integrating the curve/surface measure.  The
rule is midpoint/centroid everywhere, which keeps the discretized
concentration operator exactly symmetric under the weight transform.

Four parametric families are built in:

``linear``      segment r1 in [0, L] on the x-axis
``circular``    circle of radius L/2 in the z = 0 plane
``square``      plate [0, L] x [0, L] in the z = 0 plane
``paraboloid``  surface of revolution rho(z) = 0.5*sqrt(L*(L - z)),
                z in [0, L]

Arbitrary shapes are supplied as ``lismesh`` text files, see
:func:`load_custom_mesh`.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

__all__ = [
    "GeometryError",
    "GeometrySpec",
    "SampledManifold",
    "build_manifold",
    "load_custom_mesh",
    "paraboloid_area",
]

logger = logging.getLogger(__name__)

PARAMETRIC_KINDS = ("linear", "circular", "square", "paraboloid")
KINDS = PARAMETRIC_KINDS + ("custom",)


class GeometryError(ValueError):
    """Invalid geometry specification or mesh file."""


@dataclass(frozen=True)
class SampledManifold:
    """Nodes and quadrature weights sampling a shape M.

    Parameters
    ----------
    nodes : (n, 3) array_like
        Node positions in meters.
    weights : (n,) array_like
        Quadrature measure per node (m, m**2 or m**3 according to
        `dim`), all strictly positive.
    dim : int
        Intrinsic dimension of M: 1 curve, 2 surface, 3 volume.
    label : str, optional
        Free-form identifier.
    """

    nodes: np.ndarray
    weights: np.ndarray
    dim: int
    label: str = ""

    def __post_init__(self):
        nodes = np.atleast_2d(np.asarray(self.nodes, dtype=float))
        weights = np.asarray(self.weights, dtype=float).ravel()
        if nodes.ndim != 2 or nodes.shape[1] != 3:
            raise GeometryError("nodes must form an (n, 3) array")
        if nodes.shape[0] == 0:
            raise GeometryError("manifold needs at least one node")
        if weights.shape[0] != nodes.shape[0]:
            raise GeometryError("weights and nodes length mismatch")
        if not np.all(np.isfinite(nodes)):
            raise GeometryError("non-finite node coordinates")
        if not np.all(np.isfinite(weights)) or np.any(weights <= 0.0):
            raise GeometryError("weights must be finite and strictly positive")
        if self.dim not in (1, 2, 3):
            raise GeometryError("dim must be 1, 2 or 3")
        object.__setattr__(self, "nodes", np.ascontiguousarray(nodes))
        object.__setattr__(self, "weights", np.ascontiguousarray(weights))

    def __len__(self) -> int:
        return self.weights.shape[0]

    @property
    def measure(self) -> float:
        """Total quadrature measure, converging to |M|."""
        return float(self.weights.sum())


@dataclass(frozen=True)
class GeometrySpec:
    """Request for a built-in shape or a custom mesh.

    `aperture_L` is the equivalent aperture L in meters and
    `resolution` the target node/cell count.  `mesh_path` is read only
    when `kind` is ``custom``; the other fields are then ignored.
    """

    kind: str
    aperture_L: float = 1.0
    resolution: int = 512
    mesh_path: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise GeometryError(f"unsupported geometry kind {self.kind!r}")
        if not (float(self.aperture_L) > 0.0):
            raise GeometryError("aperture_L must be positive")
        if self.kind == "custom":
            if not self.mesh_path:
                raise GeometryError("custom geometry requires mesh_path")
            return
        if int(self.resolution) < 2:
            raise GeometryError("resolution must be at least 2")


def build_manifold(spec: GeometrySpec) -> SampledManifold:
    """Discretize the requested shape with a midpoint/centroid rule.

    Returns
    -------
    SampledManifold
        Nodes lie exactly on the parametric set; identical specs give
        bit-identical manifolds.
    """
    if spec.kind == "linear":
        return _build_linear(spec.aperture_L, spec.resolution)
    if spec.kind == "circular":
        return _build_circular(spec.aperture_L, spec.resolution)
    if spec.kind == "square":
        return _build_square(spec.aperture_L, spec.resolution)
    if spec.kind == "paraboloid":
        return _build_paraboloid(spec.aperture_L, spec.resolution)
    if spec.kind == "custom":
        return load_custom_mesh(spec.mesh_path)
    raise GeometryError(f"unsupported geometry kind {spec.kind!r}")


def _build_linear(L: float, n: int) -> SampledManifold:
    t = (np.arange(n) + 0.5) * (L / n)
    nodes = np.zeros((n, 3))
    nodes[:, 0] = t
    return SampledManifold(nodes, np.full(n, L / n), dim=1, label="linear")


def _build_circular(L: float, n: int) -> SampledManifold:
    theta = 2.0 * np.pi * (np.arange(n) + 0.5) / n
    r = 0.5 * L
    nodes = np.column_stack([r * np.cos(theta), r * np.sin(theta), np.zeros(n)])
    # arc length per node; total is the circumference pi*L
    return SampledManifold(nodes, np.full(n, np.pi * L / n), dim=1, label="circular")


def _build_square(L: float, n: int) -> SampledManifold:
    m = int(round(math.sqrt(n)))
    if m < 2:
        raise GeometryError(f"resolution {n} too small to mesh the square plate")
    c = (np.arange(m) + 0.5) * (L / m)
    x, y = np.meshgrid(c, c, indexing="ij")
    nodes = np.column_stack([x.ravel(), y.ravel(), np.zeros(m * m)])
    return SampledManifold(nodes, np.full(m * m, (L / m) ** 2), dim=2, label="square")


def paraboloid_area(L: float) -> float:
    """Closed-form lateral area of the paraboloid shape of aperture L."""
    return 2.0 * math.pi * math.sqrt(L) / 3.0 * ((L + L / 16.0) ** 1.5 - (L / 16.0) ** 1.5)


def _paraboloid_ring_area(L: float, z0: float, z1: float) -> float:
    # antiderivative of 2*pi*rho*sqrt(1 + rho'^2) in z is
    # -(2*pi*sqrt(L)/3) * (L - z + L/16)^(3/2)
    c = 2.0 * math.pi * math.sqrt(L) / 3.0
    return c * ((L - z0 + L / 16.0) ** 1.5 - (L - z1 + L / 16.0) ** 1.5)


def _meridian_antiderivative(v: float, L: float) -> float:
    # meridian speed integrated in the variable v = sqrt(L - z)
    return v * math.sqrt(v * v + L / 16.0) + (L / 16.0) * math.asinh(4.0 * v / math.sqrt(L))


def _meridian_arclength(z: float, L: float) -> float:
    """Arc length of the meridian curve between the rim z = 0 and z."""
    v = math.sqrt(max(L - z, 0.0))
    return _meridian_antiderivative(math.sqrt(L), L) - _meridian_antiderivative(v, L)


def _invert_meridian_arclength(s: float, L: float) -> float:
    return brentq(lambda z: _meridian_arclength(z, L) - s, 0.0, L)


def _build_paraboloid(L: float, n: int) -> SampledManifold:
    # Rings uniform in meridian arclength, not in z: uniform-z cells
    # degenerate near the apex where rho' diverges.  The ring/sector
    # split aims at unit cell aspect ratio.
    area = paraboloid_area(L)
    s_total = _meridian_arclength(L, L)
    n_z = int(round(math.sqrt(n * s_total * s_total / area)))
    n_z = max(n_z, 2)
    n_theta = max(int(round(n / n_z)), 3)

    s_edges = np.linspace(0.0, s_total, n_z + 1)
    z_edges = np.empty(n_z + 1)
    z_edges[0], z_edges[-1] = 0.0, L
    for k in range(1, n_z):
        z_edges[k] = _invert_meridian_arclength(s_edges[k], L)
    z_mid = np.array(
        [_invert_meridian_arclength(0.5 * (s_edges[k] + s_edges[k + 1]), L) for k in range(n_z)]
    )

    theta = 2.0 * np.pi * (np.arange(n_theta) + 0.5) / n_theta
    rho = 0.5 * np.sqrt(L * (L - z_mid))
    nodes = np.column_stack(
        [
            np.outer(rho, np.cos(theta)).ravel(),
            np.outer(rho, np.sin(theta)).ravel(),
            np.repeat(z_mid, n_theta),
        ]
    )
    ring_areas = np.array(
        [_paraboloid_ring_area(L, z_edges[k], z_edges[k + 1]) for k in range(n_z)]
    )
    weights = np.repeat(ring_areas / n_theta, n_theta)
    logger.debug("paraboloid mesh: %d rings x %d sectors = %d cells", n_z, n_theta, n_z * n_theta)
    return SampledManifold(nodes, weights, dim=2, label="paraboloid")


def load_custom_mesh(path) -> SampledManifold:
    """Read a ``lismesh`` text file and return its centroid quadrature.

    Format, version 1 (whitespace separated, ``#`` starts a comment)::

        lismesh v1 <dim>     header; dim is 1 (wire) or 2 (surface)
        v <x> <y> <z>        vertex line, repeated
        e <i> <j>            wire segment, 1-based vertex indices (dim 1)
        f <i> <j> <k>        triangle, 1-based vertex indices (dim 2)

    Nodes are element centroids; weights are segment lengths (dim 1)
    or triangle areas (dim 2).

    Raises
    ------
    GeometryError
        On parse failure, a degenerate (zero measure) element, an
        out-of-range index or a non-finite vertex.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.readlines()
    except OSError as exc:
        raise GeometryError(f"cannot read mesh file {path}: {exc}") from exc

    lines = []
    for lineno, line in enumerate(raw, start=1):
        body = line.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body.split()))
    if not lines:
        raise GeometryError(f"{path}: empty mesh file")

    lineno, header = lines[0]
    if len(header) != 3 or header[0] != "lismesh" or header[1] != "v1":
        raise GeometryError(f"{path}:{lineno}: expected header 'lismesh v1 <dim>'")
    try:
        dim = int(header[2])
    except ValueError as exc:
        raise GeometryError(f"{path}:{lineno}: bad dimension {header[2]!r}") from exc
    if dim not in (1, 2):
        raise GeometryError(f"{path}:{lineno}: dimension must be 1 or 2, got {dim}")

    element_tag = "e" if dim == 1 else "f"
    element_len = 2 if dim == 1 else 3
    vertices: list[list[float]] = []
    elements: list[list[int]] = []
    for lineno, tokens in lines[1:]:
        tag = tokens[0]
        if tag == "v":
            if len(tokens) != 4:
                raise GeometryError(f"{path}:{lineno}: vertex needs 3 coordinates")
            try:
                vertices.append([float(tok) for tok in tokens[1:]])
            except ValueError as exc:
                raise GeometryError(f"{path}:{lineno}: bad vertex coordinate") from exc
        elif tag == element_tag:
            if len(tokens) != element_len + 1:
                raise GeometryError(
                    f"{path}:{lineno}: '{element_tag}' element needs {element_len} indices"
                )
            try:
                elements.append([int(tok) for tok in tokens[1:]])
            except ValueError as exc:
                raise GeometryError(f"{path}:{lineno}: bad element index") from exc
        else:
            raise GeometryError(f"{path}:{lineno}: unexpected line tag {tag!r}")

    verts = np.asarray(vertices, dtype=float)
    if verts.size == 0:
        raise GeometryError(f"{path}: no vertices")
    if not np.all(np.isfinite(verts)):
        raise GeometryError(f"{path}: non-finite vertex coordinate")
    if not elements:
        raise GeometryError(f"{path}: no elements")
    idx = np.asarray(elements, dtype=int) - 1
    if idx.min() < 0 or idx.max() >= len(verts):
        raise GeometryError(f"{path}: element index out of range")

    corners = verts[idx]
    if dim == 1:
        measures = np.linalg.norm(corners[:, 1] - corners[:, 0], axis=1)
        nodes = corners.mean(axis=1)
    else:
        cross = np.cross(corners[:, 1] - corners[:, 0], corners[:, 2] - corners[:, 0])
        measures = 0.5 * np.linalg.norm(cross, axis=1)
        nodes = corners.mean(axis=1)
    if np.any(measures <= 0.0):
        bad = int(np.argmin(measures)) + 1
        raise GeometryError(f"{path}: degenerate element {bad} (zero measure)")
    logger.debug("loaded %s: %d vertices, %d elements, measure %.6g",
                 path, len(verts), len(idx), measures.sum())
    return SampledManifold(nodes, measures, dim=dim, label="custom")
