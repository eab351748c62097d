"""Eight-bisector Dirichlet boundary configuration for the deformation family.

The center ``p0`` is the common fixed point of the first two reflections; its
lift ``q0 = [-1, 0, 1]`` is parameter-independent, so the eight defining
isometries ``w_k`` give spinal spheres ``S_k = {|<p, q0>| = |<p, w_k q0>|}``
directly, with no eigenvector extraction anywhere.

Two index systems coexist.  The canonical one enumerates the defining words

    w_1, w_3, w_5, w_7 = g2^0 g1, g2^1 g1, g2^2 g1, g2^3 g1
    w_2, w_4, w_6, w_8 = g2^0 g3^-1, g2^1 g3^-1, g2^2 g3^-1, g2^3 g3^-1

so that the rotation g2 acts as k -> k + 2 (mod 8).  Figure labels used in
hand-drawn pictures instead number the g1-row 1..4 and the g3^-1-row 5..8;
``FIG_FROM_CANONICAL`` translates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from .core import (
    EPS_TANGENT,
    GeometryError,
    GroupElement,
    SIEGEL_FORM,
    hermitian_product,
    matrix_phase_distance,
    projective_distance,
)
from .triangle import GeneratorSet, build_generators

CANONICAL_INDICES = tuple(range(1, 9))

FIG_FROM_CANONICAL: Dict[int, int] = {1: 1, 3: 2, 5: 3, 7: 4, 2: 5, 4: 6, 6: 7, 8: 8}
CANONICAL_FROM_FIG: Dict[int, int] = {v: k for k, v in FIG_FROM_CANONICAL.items()}


def canonical_index(k: int) -> int:
    r = k % 8
    return 8 if r == 0 else r


def defining_word(k: int) -> str:
    """Word for the k-th sphere center image, canonical indexing."""
    k = canonical_index(k)
    if k % 2 == 1:
        power = (k - 1) // 2
        return " ".join(["g2"] * power + ["g1"])
    power = (k - 2) // 2
    return " ".join(["g2"] * power + ["g3^-1"])


def _row_form(u: np.ndarray) -> np.ndarray:
    """Row r with <p, u> = r @ p for the Siegel form."""
    return np.conj(u) @ SIEGEL_FORM.matrix


@dataclass(frozen=True)
class SpinalSphere:
    """Boundary sphere of the bisector between the lifts ``u`` and ``v``.

    The side function ``|<p,u>|^2 - |<p,v>|^2`` is negative on the ``u``
    side, positive strictly inside the sphere (the ``v`` side), zero on it.
    Both lifts must have equal self-products for this to be the true
    equidistance locus; the constructor enforces that.
    """

    index: int
    word: str
    u: np.ndarray
    v: np.ndarray
    _ru: np.ndarray = field(repr=False, default=None)
    _rv: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        nu = complex(hermitian_product(self.u, self.u, SIEGEL_FORM)).real
        nv = complex(hermitian_product(self.v, self.v, SIEGEL_FORM)).real
        if not (nu < 0 and nv < 0):
            raise GeometryError("bisector lifts must be negative type")
        if abs(nu - nv) > 1e-9 * abs(nu):
            raise GeometryError("bisector lifts must have equal self-products")
        object.__setattr__(self, "_ru", _row_form(self.u))
        object.__setattr__(self, "_rv", _row_form(self.v))

    def side_of_lifts(self, points: np.ndarray) -> np.ndarray:
        """Side values for an (n, 3) array of lift vectors."""
        pts = np.atleast_2d(np.asarray(points, dtype=complex))
        pu = pts @ self._ru
        pv = pts @ self._rv
        out = (pu * np.conj(pu) - pv * np.conj(pv)).real
        return out if out.size > 1 else out.reshape(-1)

    def vertical_quadratic(self, z: np.ndarray):
        """Coefficients (A, B, C) of the side function on vertical lines.

        Restricted to the line over ``z`` the side function of the standard
        lift ``[(-|z|^2 + i v)/2, z, 1]`` is the real quadratic
        ``A v^2 + B(z) v + C(z)``; ``A = (|u_3|^2 - |v_3|^2)/4`` is constant,
        and ``A = 0`` exactly when the sphere passes through infinity.
        """
        z = np.asarray(z, dtype=complex)
        au = self._ru[0] * (-(z.real**2 + z.imag**2)) / 2.0 + self._ru[1] * z + self._ru[2]
        av = self._rv[0] * (-(z.real**2 + z.imag**2)) / 2.0 + self._rv[1] * z + self._rv[2]
        A = (abs(self._ru[0]) ** 2 - abs(self._rv[0]) ** 2) / 4.0
        B = -(np.conj(au) * self._ru[0]).imag + (np.conj(av) * self._rv[0]).imag
        C = (au * np.conj(au) - av * np.conj(av)).real
        return A, B, C

    def side_at(self, z: complex, v: float) -> float:
        A, B, C = self.vertical_quadratic(np.asarray([z], dtype=complex))
        return float(A * v * v + B[0] * v + C[0])

    def spine_endpoints(self) -> Tuple[np.ndarray, np.ndarray]:
        """Null lifts of the sphere's two poles (ideal endpoints of the spine).

        These are the null combinations ``u + c v`` that are also
        equidistant, which forces ``|c| = 1`` and ``Re(c <v,u>) = 2``; they
        lie on the sphere itself, unlike the endpoints of the geodesic
        through the two defining points.
        """
        pairing = complex(hermitian_product(self.v, self.u, SIEGEL_FORM))
        rho = abs(pairing)
        if rho <= 2.0 + 1e-12:
            raise GeometryError("bisector points coincide or are too close")
        disc = math.sqrt(rho * rho - 4.0)
        cplus = (2.0 + 1j * disc) / pairing
        cminus = (2.0 - 1j * disc) / pairing
        return self.u + cplus * self.v, self.u + cminus * self.v

    def shadow_window(self, pad: float = 1.6, max_doublings: int = 12):
        """Axis-aligned (x, y) box containing the sphere's vertical shadow.

        Starts from the spine endpoints and doubles until the discriminant
        of the vertical quadratic is negative on the whole window frame.
        """
        pts = []
        for e in self.spine_endpoints():
            if abs(e[2]) < 1e-10 * np.max(np.abs(e)):
                raise GeometryError("sphere passes through infinity; no bounded shadow")
            w = e / e[2]
            pts.append(complex(w[1]))
        zs = np.array(pts)
        cx = float(zs.real.mean())
        cy = float(zs.imag.mean())
        half = max(float(np.max(np.abs(zs - complex(cx, cy)))), 0.25) * pad
        for _ in range(max_doublings):
            frame = _window_frame(cx, cy, half, 65)
            _, B, C = self.vertical_quadratic(frame)
            A = (abs(self._ru[0]) ** 2 - abs(self._rv[0]) ** 2) / 4.0
            disc = B * B - 4.0 * A * C
            if np.all(disc < 0.0):
                return cx, cy, half
            half *= 2.0
        raise GeometryError("could not bound the sphere's shadow")

    def sample_points(self, n: int = 48) -> np.ndarray:
        """Lift samples covering the sphere: both vertical roots per site."""
        cx, cy, half = self.shadow_window()
        xs = np.linspace(cx - half, cx + half, n)
        ys = np.linspace(cy - half, cy + half, n)
        X, Y = np.meshgrid(xs, ys)
        z = (X + 1j * Y).ravel()
        A, B, C = self.vertical_quadratic(z)
        disc = B * B - 4.0 * A * C
        keep = disc >= 0.0
        if not np.any(keep):
            raise GeometryError("no sphere points found in the shadow window")
        z = z[keep]
        B, C = B[keep], C[keep]
        root = np.sqrt(disc[keep])
        if abs(A) < 1e-14:
            vs = [-C / np.where(np.abs(B) < 1e-300, 1.0, B)]
        else:
            vs = [(-B - root) / (2 * A), (-B + root) / (2 * A)]
        blocks = []
        for v in vs:
            lifts = np.empty((z.size, 3), dtype=complex)
            lifts[:, 0] = (-(z.real**2 + z.imag**2) + 1j * v) / 2.0
            lifts[:, 1] = z
            lifts[:, 2] = 1.0
            blocks.append(lifts)
        return np.concatenate(blocks, axis=0)


def _window_frame(cx: float, cy: float, half: float, n: int) -> np.ndarray:
    ts = np.linspace(-half, half, n)
    top = (cx + ts) + 1j * (cy + half)
    bot = (cx + ts) + 1j * (cy - half)
    lef = (cx - half) + 1j * (cy + ts)
    rig = (cx + half) + 1j * (cy + ts)
    return np.concatenate([top, bot, lef, rig])


@dataclass(frozen=True)
class DirichletConfig:
    """The eight spheres at one parameter, plus everything they came from."""

    gens: GeneratorSet
    q0: np.ndarray
    words: Tuple[GroupElement, ...]
    spheres: Tuple[SpinalSphere, ...]

    @classmethod
    def build(cls, t: float, extended: bool = False) -> "DirichletConfig":
        gens = build_generators(t, extended=extended)
        q0 = np.asarray(gens.q0.data, dtype=complex) if not extended else gens.q0.data
        words = tuple(gens.evaluate_word(defining_word(k)) for k in CANONICAL_INDICES)
        spheres = []
        for k, w in zip(CANONICAL_INDICES, words):
            u = np.asarray(q0, dtype=complex)
            v = np.asarray(w.apply(q0), dtype=complex)
            spheres.append(SpinalSphere(k, defining_word(k), u, v))
        return cls(gens, np.asarray(q0, dtype=complex), words, tuple(spheres))

    def sphere(self, k: int) -> SpinalSphere:
        return self.spheres[canonical_index(k) - 1]

    def sphere_fig(self, j: int) -> SpinalSphere:
        return self.sphere(CANONICAL_FROM_FIG[j])

    def center_images(self) -> np.ndarray:
        return np.stack([s.v for s in self.spheres])

    def side_matrix(self, points: np.ndarray) -> np.ndarray:
        """(n, 8) side values of lift points against all spheres."""
        pts = np.atleast_2d(np.asarray(points, dtype=complex))
        return np.stack([s.side_of_lifts(pts) for s in self.spheres], axis=1)

    def in_boundary_domain(self, points: np.ndarray, tol: float = 0.0) -> np.ndarray:
        return np.max(self.side_matrix(points), axis=1) <= tol


def symmetry_certificate(config: DirichletConfig) -> float:
    """Worst projective residual of the order-4 rotation and flip symmetries.

    Checks, for all n and k, that ``g2^n u_k ~ u_{2n+k}`` and
    ``g2^n I2 u_k ~ u_{2n+3-k}`` where ``u_k = w_k q0``, plus that ``q0``
    itself is fixed by ``g2`` and flipped to itself by ``I2``.
    """
    g2 = config.gens.g2
    i2 = config.gens.i2
    us = {k: config.sphere(k).v for k in CANONICAL_INDICES}
    worst = 0.0
    worst = max(worst, projective_distance(g2.apply(config.q0), config.q0))
    worst = max(worst, projective_distance(i2.apply(config.q0), config.q0))
    for k in CANONICAL_INDICES:
        rotated = us[k]
        flipped = i2.apply(us[k])
        for n in range(4):
            if n > 0:
                rotated = g2.apply(rotated)
                flipped = g2.apply(flipped)
            worst = max(worst, projective_distance(rotated, us[canonical_index(2 * n + k)]))
            worst = max(worst, projective_distance(flipped, us[canonical_index(2 * n + 3 - k)]))
    return worst


def involution_certificate(config: DirichletConfig) -> float:
    """The word-level sphere involutions square to 1 and move q0 like w_k."""
    gens = config.gens
    worst = 0.0
    for k in CANONICAL_INDICES:
        a = gens.involution_a(k)
        worst = max(worst, matrix_phase_distance((a @ a).matrix, np.eye(3, dtype=complex)))
        worst = max(worst, projective_distance(a.apply(config.q0), config.sphere(k).v))
    return worst


def side_pairing_certificate(config: DirichletConfig) -> float:
    """Certify the four pairings g2^n g1 g2^-n : S_{4+2n} -> S_{1+2n}.

    Each pairing gamma satisfies gamma(q0) ~ u_target and
    gamma(u_source) ~ q0, so it carries the source bisector onto the target
    bisector with the two defining points swapped.  The word identity
    ``g1 g2 g3^-1 = g2`` underlies all four.
    """
    gens = config.gens
    g1, g2 = gens.g1, gens.g2
    worst = matrix_phase_distance((g1 @ g2 @ gens.g3.inverse()).matrix, g2.matrix)
    gamma = g1
    for n in range(4):
        if n > 0:
            gamma = g2 @ gamma @ g2.inverse()
        src = canonical_index(4 + 2 * n)
        tgt = canonical_index(1 + 2 * n)
        worst = max(worst, projective_distance(gamma.apply(config.q0), config.sphere(tgt).v))
        worst = max(worst, projective_distance(gamma.apply(config.sphere(src).v), config.q0))
    return worst


def giraud_order3_certificate(config: DirichletConfig) -> float:
    """(A_k A_{k+1})^3 = 1 up to phase for the eight adjacent pairs."""
    gens = config.gens
    worst = 0.0
    for k in CANONICAL_INDICES:
        a = gens.involution_a(k)
        b = gens.involution_a(canonical_index(k + 1))
        ab = a @ b
        worst = max(worst, matrix_phase_distance((ab @ ab @ ab).matrix, np.eye(3, dtype=complex)))
    return worst


@dataclass(frozen=True)
class PairRelation:
    """Outcome of probing sphere j with a sample cloud of sphere k."""

    j: int
    k: int
    separation: int  # circular index distance, 1..4
    meets: bool
    min_side: float
    max_side: float

    @property
    def margin(self) -> float:
        """Distance of the sampled side values from zero (disjoint case)."""
        if self.meets:
            return 0.0
        return min(abs(self.min_side), abs(self.max_side))


def pair_relation(config: DirichletConfig, j: int, k: int, n: int = 96,
                  tangent_tol: float = EPS_TANGENT) -> PairRelation:
    """Classify how spheres j and k sit relative to each other.

    Samples each sphere and reads off the sign of the other's side
    function; a sign change (or a value within ``tangent_tol`` of zero)
    in either direction means the spheres meet.  Running both directions
    makes the verdict independent of which window covers better.
    """
    j = canonical_index(j)
    k = canonical_index(k)
    lo = math.inf
    hi = -math.inf
    for a, b in ((j, k), (k, j)):
        pts = config.sphere(b).sample_points(n)
        vals = config.sphere(a).side_of_lifts(pts)
        lo = min(lo, float(np.min(vals)))
        hi = max(hi, float(np.max(vals)))
    meets = (lo <= tangent_tol and hi >= -tangent_tol)
    d = abs(j - k) % 8
    sep = min(d, 8 - d)
    return PairRelation(j, k, sep, meets, lo, hi)


def pairwise_relations(config: DirichletConfig, n: int = 48) -> List[PairRelation]:
    out = []
    for j in CANONICAL_INDICES:
        for k in CANONICAL_INDICES:
            if j < k:
                out.append(pair_relation(config, j, k, n))
    return out


def expected_to_meet(separation: int) -> bool:
    """Adjacent spheres (distance 1 or 2) share points; farther ones do not."""
    return separation <= 2


def fixed_point_lifts(config: DirichletConfig) -> Tuple[np.ndarray, np.ndarray]:
    """Closed-form null lifts of the boundary fixed points of g3.

    The first is the attracting one.  With these scales the side values
    against the eight spheres take rational-in-sqrt(8t-3) closed forms,
    reproduced by ``fixed_point_side_forms``.
    """
    t = config.gens.t
    c = config.gens.coeffs
    a, b = c.a, c.b
    mid = math.sqrt(8 * t - 3) / (2 * math.sqrt(3 * t - 1))
    p1 = np.array([complex(t + a, -b) / (2 * a), mid, complex(t - a, -b) / (2 * a)])
    p2 = p1.copy()
    p2[1] = -mid
    return p1, p2


def fixed_point_side_forms(t: float) -> Dict[str, float]:
    """The four closed-form side values at the repelling fixed point of g3.

    Keys are the canonical sphere indices whose side functions realize
    them; the attracting fixed point sees the same four values with the
    sphere pairs (1, 8) and (2, 7) exchanged.
    """
    s = math.sqrt(8 * t - 3)
    return {
        "S1": (8 * t - 3 - s) / (4 * t - 2),
        "S2": ((4 * t - 1) * s - 8 * t + 3) / (2 * (2 * t - 1) ** 2),
        "S7": ((1 - 4 * t) * s - 8 * t + 3) / (2 * (2 * t - 1) ** 2),
        "S8": (8 * t - 3 + s) / (4 * t - 2),
    }


def sphere_mesh(sphere: SpinalSphere, nx: int = 64, ny: int = 64):
    """Triangulated mesh of a spinal sphere for OBJ export.

    Builds both vertical sheets over the shadow and stitches the rim by
    bisecting the discriminant to its zero crossing.  Returns
    ``(vertices, faces)`` with vertices as (x, y, v) rows and 1-based
    triangular faces.
    """
    cx, cy, half = sphere.shadow_window()
    xs = np.linspace(cx - half, cx + half, nx)
    ys = np.linspace(cy - half, cy + half, ny)
    X, Y = np.meshgrid(xs, ys)
    z = (X + 1j * Y)
    A, B, C = sphere.vertical_quadratic(z.ravel())
    disc = (B * B - 4.0 * A * C).reshape(z.shape)
    Bm = B.reshape(z.shape)
    inside = disc >= 0.0
    if abs(A) < 1e-14:
        raise GeometryError("sphere through infinity is not meshable this way")

    verts: List[Tuple[float, float, float]] = []
    index_top = -np.ones(z.shape, dtype=int)
    index_bot = -np.ones(z.shape, dtype=int)
    root = np.sqrt(np.where(inside, disc, 0.0))
    vtop = (-Bm + root) / (2 * A)
    vbot = (-Bm - root) / (2 * A)
    for i in range(ny):
        for jj in range(nx):
            if inside[i, jj]:
                index_top[i, jj] = len(verts)
                verts.append((float(z[i, jj].real), float(z[i, jj].imag), float(vtop[i, jj])))
                index_bot[i, jj] = len(verts)
                verts.append((float(z[i, jj].real), float(z[i, jj].imag), float(vbot[i, jj])))

    faces: List[Tuple[int, int, int]] = []

    def quad(a, b, c, d):
        faces.append((a + 1, b + 1, c + 1))
        faces.append((a + 1, c + 1, d + 1))

    for i in range(ny - 1):
        for jj in range(nx - 1):
            ids = (index_top[i, jj], index_top[i, jj + 1], index_top[i + 1, jj + 1], index_top[i + 1, jj])
            if all(v >= 0 for v in ids):
                quad(*ids)
            ids = (index_bot[i, jj], index_bot[i + 1, jj], index_bot[i + 1, jj + 1], index_bot[i, jj + 1])
            if all(v >= 0 for v in ids):
                quad(*ids)

    def rim_point(zin: complex, zout: complex) -> Tuple[float, float, float]:
        lo, hi = zin, zout
        for _ in range(60):
            mid = (lo + hi) / 2.0
            _, Bmid, Cmid = sphere.vertical_quadratic(np.asarray([mid]))
            if Bmid[0] * Bmid[0] - 4.0 * A * Cmid[0] >= 0.0:
                lo = mid
            else:
                hi = mid
        _, Bl, _Cl = sphere.vertical_quadratic(np.asarray([lo]))
        return (float(lo.real), float(lo.imag), float(-Bl[0] / (2 * A)))

    # Stitch the two sheets along the rim: for every interior cell edge that
    # crosses the shadow boundary add a thin closing quad.
    for i in range(ny):
        for jj in range(nx):
            if not inside[i, jj]:
                continue
            for di, dj in ((0, 1), (1, 0)):
                ii, jk = i + di, jj + dj
                if ii >= ny or jk >= nx or inside[ii, jk]:
                    continue
                rp = rim_point(z[i, jj], z[ii, jk])
                ridx = len(verts)
                verts.append(rp)
                faces.append((index_top[i, jj] + 1, ridx + 1, index_bot[i, jj] + 1))
            for di, dj in ((0, -1), (-1, 0)):
                ii, jk = i + di, jj + dj
                if ii < 0 or jk < 0 or inside[ii, jk]:
                    continue
                rp = rim_point(z[i, jj], z[ii, jk])
                ridx = len(verts)
                verts.append(rp)
                faces.append((index_bot[i, jj] + 1, ridx + 1, index_top[i, jj] + 1))
    return np.asarray(verts, dtype=float), faces


def mesh_equivariance_residual(config: DirichletConfig, k: int = 1, n: int = 24) -> float:
    """Push sphere k's samples through g2 and test membership in sphere k+2."""
    g2 = config.gens.g2
    pts = config.sphere(k).sample_points(n)
    imgs = pts @ g2.matrix.T
    last = imgs[:, 2:3]
    if np.min(np.abs(last)) < 1e-12:
        imgs = imgs[np.abs(imgs[:, 2]) > 1e-12]
        last = imgs[:, 2:3]
    imgs = imgs / last
    vals = config.sphere(canonical_index(k + 2)).side_of_lifts(imgs)
    return float(np.max(np.abs(vals)))
