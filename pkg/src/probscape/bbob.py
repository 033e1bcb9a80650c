"""The 24 noiseless BBOB problem classes with COCO-compatible instances.

Instance parameters (optimum location, optimum value, rotation matrices,
scalings) follow the seeding scheme of the original BBOB/COCO reference
code, so values agree with the reference implementation for any
(class_id, instance_id, dim) triple.
"""

from __future__ import annotations

import math

import numpy as np

LOWER = -5.0
UPPER = 5.0
N_CLASSES = 24


# ---------------------------------------------------------------------------
# BBOB deterministic random helpers (lagged Fibonacci-style generator used by
# the reference code; must match it bit for bit).

def _unif(n: int, inseed: float) -> np.ndarray:
    """n uniform numbers in (0, 1), deterministic in inseed."""
    inseed = abs(inseed)
    if inseed < 1.0:
        inseed = 1.0

    rgrand = [0.0] * 32
    aktseed = inseed
    for i in range(39, -1, -1):
        tmp = math.floor(aktseed / 127773.0)
        aktseed = 16807.0 * (aktseed - tmp * 127773.0) - 2836.0 * tmp
        if aktseed < 0:
            aktseed += 2147483647.0
        if i < 32:
            rgrand[i] = aktseed
    aktrand = rgrand[0]

    r = np.empty(int(n))
    for i in range(int(n)):
        tmp = math.floor(aktseed / 127773.0)
        aktseed = 16807.0 * (aktseed - tmp * 127773.0) - 2836.0 * tmp
        if aktseed < 0:
            aktseed += 2147483647.0
        tmp = int(math.floor(aktrand / 67108865.0))
        aktrand = rgrand[tmp]
        rgrand[tmp] = aktseed
        r[i] = aktrand / 2.147483647e9
    r[r == 0.0] = 1e-99
    return r


def _gauss(n: int, seed: float) -> np.ndarray:
    """n standard normal numbers via Box-Muller on the _unif stream."""
    r = _unif(2 * n, seed)
    g = np.sqrt(-2.0 * np.log(r[:n])) * np.cos(2.0 * np.pi * r[n:2 * n])
    g[g == 0.0] = 1e-99
    return g


def _compute_xopt(rseed: float, dim: int) -> np.ndarray:
    """Optimum location in [-4, 4), rounded to four digits, never zero."""
    xopt = 8.0 * np.floor(1e4 * _unif(dim, rseed)) / 1e4 - 4.0
    xopt[xopt == 0.0] = -1e-5
    return xopt


def _compute_fopt(rseed: float) -> float:
    g0 = _gauss(1, rseed)[0]
    g1 = _gauss(1, rseed + 1)[0]
    return float(min(1000.0, max(-1000.0, np.round(1e4 * g0 / g1) / 100.0)))


def _compute_rotation(seed: float, dim: int) -> np.ndarray:
    """Orthonormal matrix from Gram-Schmidt on seeded normal draws."""
    b = _gauss(dim * dim, seed).reshape(dim, dim)
    for i in range(dim):
        for j in range(i):
            b[i] -= np.dot(b[i], b[j]) * b[j]
        b[i] /= np.sqrt(np.sum(b[i] ** 2))
    return b


def _tosc(x: np.ndarray) -> np.ndarray:
    """BBOB oscillation transform, applied elementwise."""
    g = np.asarray(x, dtype=float).copy()
    idx = g > 0
    h = np.log(g[idx]) / 0.1
    g[idx] = np.exp(h + 0.49 * (np.sin(h) + np.sin(0.79 * h))) ** 0.1
    idx = np.asarray(x) < 0
    h = np.log(-np.asarray(x, dtype=float)[idx]) / 0.1
    g[idx] = -np.exp(h + 0.49 * (np.sin(0.55 * h) + np.sin(0.31 * h))) ** 0.1
    return g


def _penalty(x: np.ndarray, fac: float) -> np.ndarray:
    """Quadratic penalty for leaving the [-5, 5] box."""
    out = np.maximum(0.0, np.abs(x) - 5.0)
    return fac * np.sum(out ** 2, axis=-1)


def _tasy(z: np.ndarray, beta: float) -> np.ndarray:
    """BBOB asymmetry transform; z is modified in place and returned."""
    dim = z.shape[-1]
    expo = beta * np.linspace(0, 1, dim)
    expo = np.broadcast_to(expo, z.shape)
    idx = z > 0
    z[idx] = z[idx] ** (1.0 + expo[idx] * np.sqrt(z[idx]))
    return z


# ---------------------------------------------------------------------------
# Problem classes.

class BbobProblem:
    """One BBOB class/instance/dim with deterministic evaluation.

    Subclasses set ``fid`` (1..24) and implement ``_setup`` (instance
    parameters) and ``_eval`` (raw value plus boundary penalty; the
    instance-dependent optimum value ``f_opt`` is added on top).
    Instances are immutable after construction and evaluation is pure.
    """

    fid: int = 0
    rseed_base: int | None = None  # differs from fid for a few classes

    def __init__(self, instance_id: int, dim: int):
        if dim < 2:
            raise ValueError(f"dim must be >= 2, got {dim}")
        if instance_id < 1:
            raise ValueError(f"instance_id must be >= 1, got {instance_id}")
        self.class_id = self.fid
        self.instance_id = int(instance_id)
        self.dim = int(dim)
        base = self.rseed_base if self.rseed_base is not None else self.fid
        self.rseed = float(base) + 1e4 * instance_id
        self.f_opt = _compute_fopt(self.rseed)
        self.x_opt: np.ndarray
        self._setup()
        self.x_opt.setflags(write=False)

    # -- interface ----------------------------------------------------------

    def evaluate(self, x) -> float:
        """Objective value at a single point."""
        x = np.asarray(x, dtype=float)
        if x.ndim != 1 or x.shape[0] != self.dim:
            raise ValueError(
                f"expected a vector of length {self.dim}, got shape {x.shape}")
        return float(self._eval(x[None, :])[0] + self.f_opt)

    def evaluate_many(self, xs) -> np.ndarray:
        """Objective values for an (n, dim) array of points."""
        xs = np.asarray(xs, dtype=float)
        if xs.ndim != 2 or xs.shape[1] != self.dim:
            raise ValueError(
                f"expected an (n, {self.dim}) array, got shape {xs.shape}")
        return self._eval(xs) + self.f_opt

    def optimum(self) -> tuple[np.ndarray, float]:
        return self.x_opt, self.f_opt

    def __repr__(self):
        return (f"{type(self).__name__}(class_id={self.class_id}, "
                f"instance_id={self.instance_id}, dim={self.dim})")

    # -- to be provided by subclasses ---------------------------------------

    def _setup(self) -> None:
        raise NotImplementedError

    def _eval(self, xs: np.ndarray) -> np.ndarray:
        raise NotImplementedError


class Sphere(BbobProblem):
    fid = 1

    def _setup(self):
        self.x_opt = _compute_xopt(self.rseed, self.dim)

    def _eval(self, xs):
        z = xs - self.x_opt
        return np.sum(z ** 2, axis=-1)


class EllipsoidSeparable(BbobProblem):
    fid = 2
    condition = 1e6

    def _setup(self):
        self.x_opt = _compute_xopt(self.rseed, self.dim)
        self.scales = self.condition ** np.linspace(0, 1, self.dim)

    def _eval(self, xs):
        z = _tosc(xs - self.x_opt)
        return z ** 2 @ self.scales


class RastriginSeparable(BbobProblem):
    fid = 3
    condition = 10.0

    def _setup(self):
        self.x_opt = _compute_xopt(self.rseed, self.dim)
        self.scales = (self.condition ** 0.5) ** np.linspace(0, 1, self.dim)

    def _eval(self, xs):
        z = _tosc(xs - self.x_opt)
        z = _tasy(z, 0.2)
        z = self.scales * z
        return (10.0 * (self.dim - np.sum(np.cos(2 * np.pi * z), axis=-1))
                + np.sum(z ** 2, axis=-1))


class BuecheRastrigin(BbobProblem):
    fid = 4
    rseed_base = 3
    condition = 10.0
    alpha = 100.0

    def _setup(self):
        xopt = _compute_xopt(self.rseed, self.dim)
        xopt[::2] = np.abs(xopt[::2])
        self.x_opt = xopt
        self.scales = (self.condition ** 0.5) ** np.linspace(0, 1, self.dim)

    def _eval(self, xs):
        pen = _penalty(xs, 100.0)
        z = _tosc(xs - self.x_opt)
        odd = z[:, ::2]
        odd[odd > 0] = self.alpha ** 0.5 * odd[odd > 0]
        z = self.scales * z
        return (10.0 * (self.dim - np.sum(np.cos(2 * np.pi * z), axis=-1))
                + np.sum(z ** 2, axis=-1) + pen)


class LinearSlope(BbobProblem):
    fid = 5
    alpha = 100.0

    def _setup(self):
        self.x_opt = 5.0 * np.sign(_compute_xopt(self.rseed, self.dim))
        self.scales = (-np.sign(self.x_opt)
                       * (self.alpha ** 0.5) ** np.linspace(0, 1, self.dim))
        self.shift = 5.0 * np.sum(np.abs(self.scales))

    def _eval(self, xs):
        z = xs.copy()
        # coordinates beyond the optimal face are mapped back onto it
        out = (z * self.x_opt) > 25.0
        z[out] = np.sign(z[out]) * 5.0
        return z @ self.scales + self.shift


class AttractiveSector(BbobProblem):
    fid = 6
    condition = 10.0
    alpha = 100.0

    def _setup(self):
        self.x_opt = _compute_xopt(self.rseed, self.dim)
        rot = _compute_rotation(self.rseed + 1e6, self.dim)
        scales = (self.condition ** 0.5) ** np.linspace(0, 1, self.dim)
        self.linear_tf = _compute_rotation(self.rseed, self.dim) @ np.diag(scales) @ rot

    def _eval(self, xs):
        z = (xs - self.x_opt) @ self.linear_tf
        idx = (z * self.x_opt) > 0
        z[idx] *= self.alpha
        return _tosc(np.sum(z ** 2, axis=-1)) ** 0.9


class StepEllipsoid(BbobProblem):
    fid = 7
    condition = 100.0
    alpha = 10.0

    def _setup(self):
        self.x_opt = _compute_xopt(self.rseed, self.dim)
        self.rotation = _compute_rotation(self.rseed + 1e6, self.dim)
        self.scales = self.condition ** np.linspace(0, 1, self.dim)
        self.linear_tf = (_compute_rotation(self.rseed, self.dim)
                          @ np.diag(((self.condition / 10.0) ** 0.5)
                                    ** np.linspace(0, 1, self.dim)))

    def _eval(self, xs):
        pen = _penalty(xs, 1.0)
        z = (xs - self.x_opt) @ self.linear_tf
        idx = np.abs(z) > 0.5
        z[idx] = np.round(z[idx])
        z[~idx] = np.round(self.alpha * z[~idx]) / self.alpha
        z1 = np.abs(z[:, 0]).copy()
        z = z @ self.rotation
        return 0.1 * np.maximum(1e-4 * z1, z ** 2 @ self.scales) + pen


class Rosenbrock(BbobProblem):
    fid = 8

    def _setup(self):
        self.x_opt = 0.75 * _compute_xopt(self.rseed, self.dim)
        self.scale = max(1.0, self.dim ** 0.5 / 8.0)

    def _eval(self, xs):
        z = self.scale * (xs - self.x_opt) + 1.0
        return (1e2 * np.sum((z[:, :-1] ** 2 - z[:, 1:]) ** 2, axis=-1)
                + np.sum((z[:, :-1] - 1.0) ** 2, axis=-1))


class RosenbrockRotated(BbobProblem):
    fid = 9

    def _setup(self):
        scale = max(1.0, self.dim ** 0.5 / 8.0)
        self.linear_tf = scale * _compute_rotation(self.rseed, self.dim)
        self.x_opt = (0.5 * np.ones(self.dim) @ self.linear_tf.T) / scale ** 2

    def _eval(self, xs):
        z = xs @ self.linear_tf + 0.5
        return (1e2 * np.sum((z[:, :-1] ** 2 - z[:, 1:]) ** 2, axis=-1)
                + np.sum((z[:, :-1] - 1.0) ** 2, axis=-1))


class Ellipsoid(BbobProblem):
    fid = 10
    rseed_base = 10
    condition = 1e6

    def _setup(self):
        self.x_opt = _compute_xopt(self.rseed, self.dim)
        self.rotation = _compute_rotation(self.rseed + 1e6, self.dim)
        self.scales = self.condition ** np.linspace(0, 1, self.dim)

    def _eval(self, xs):
        z = _tosc((xs - self.x_opt) @ self.rotation)
        return z ** 2 @ self.scales


class Discus(BbobProblem):
    fid = 11
    condition = 1e6

    def _setup(self):
        self.x_opt = _compute_xopt(self.rseed, self.dim)
        self.rotation = _compute_rotation(self.rseed + 1e6, self.dim)

    def _eval(self, xs):
        z = _tosc((xs - self.x_opt) @ self.rotation)
        return np.sum(z ** 2, axis=-1) + (self.condition - 1.0) * z[:, 0] ** 2


class BentCigar(BbobProblem):
    fid = 12
    condition = 1e6

    def _setup(self):
        self.x_opt = _compute_xopt(self.rseed + 1e6, self.dim)
        self.rotation = _compute_rotation(self.rseed + 1e6, self.dim)

    def _eval(self, xs):
        z = (xs - self.x_opt) @ self.rotation
        z = _tasy(z, 0.5)
        z = z @ self.rotation
        return (self.condition * np.sum(z ** 2, axis=-1)
                + (1.0 - self.condition) * z[:, 0] ** 2)


class SharpRidge(BbobProblem):
    fid = 13
    condition = 10.0
    alpha = 100.0

    def _setup(self):
        self.x_opt = _compute_xopt(self.rseed, self.dim)
        rot = _compute_rotation(self.rseed + 1e6, self.dim)
        scales = (self.condition ** 0.5) ** np.linspace(0, 1, self.dim)
        self.linear_tf = _compute_rotation(self.rseed, self.dim) @ np.diag(scales) @ rot

    def _eval(self, xs):
        z = (xs - self.x_opt) @ self.linear_tf
        return z[:, 0] ** 2 + self.alpha * np.sqrt(np.sum(z[:, 1:] ** 2, axis=-1))


class DifferentPowers(BbobProblem):
    fid = 14
    alpha = 4.0

    def _setup(self):
        self.x_opt = _compute_xopt(self.rseed, self.dim)
        self.rotation = _compute_rotation(self.rseed + 1e6, self.dim)
        self.expo = 2.0 + self.alpha * np.linspace(0, 1, self.dim)

    def _eval(self, xs):
        z = (xs - self.x_opt) @ self.rotation
        return np.sqrt(np.sum(np.abs(z) ** self.expo, axis=-1))


class Rastrigin(BbobProblem):
    fid = 15
    condition = 10.0

    def _setup(self):
        self.x_opt = _compute_xopt(self.rseed, self.dim)
        self.rotation = _compute_rotation(self.rseed + 1e6, self.dim)
        scales = (self.condition ** 0.5) ** np.linspace(0, 1, self.dim)
        self.linear_tf = (_compute_rotation(self.rseed, self.dim)
                          @ np.diag(scales) @ self.rotation)

    def _eval(self, xs):
        z = (xs - self.x_opt) @ self.rotation
        z = _tosc(z)
        z = _tasy(z, 0.2)
        z = z @ self.linear_tf
        return (10.0 * (self.dim - np.sum(np.cos(2 * np.pi * z), axis=-1))
                + np.sum(z ** 2, axis=-1))


class Weierstrass(BbobProblem):
    fid = 16
    condition = 100.0

    def _setup(self):
        self.x_opt = _compute_xopt(self.rseed, self.dim)
        self.rotation = _compute_rotation(self.rseed + 1e6, self.dim)
        scales = (1.0 / self.condition ** 0.5) ** np.linspace(0, 1, self.dim)
        self.linear_tf = (_compute_rotation(self.rseed, self.dim)
                          @ np.diag(scales) @ self.rotation)
        k = np.arange(12)
        self.ak = 0.5 ** k
        self.bk = 3.0 ** k
        self.f0 = np.sum(self.ak * np.cos(2 * np.pi * self.bk * 0.5))

    def _eval(self, xs):
        pen = (10.0 / self.dim) * np.sum(
            np.maximum(0.0, np.abs(xs) - 5.0) ** 2, axis=-1)
        z = (xs - self.x_opt) @ self.rotation
        z = _tosc(z)
        z = z @ self.linear_tf
        # sum over dimensions and the 12 Weierstrass terms
        w = np.cos(2 * np.pi * self.bk * (z[:, :, None] + 0.5)) @ self.ak
        ftrue = np.sum(w, axis=-1)
        return 10.0 * (ftrue / self.dim - self.f0) ** 3 + pen


class _SchaffersF7(BbobProblem):
    rseed_base = 17
    condition = 10.0

    def _setup(self):
        self.x_opt = _compute_xopt(self.rseed, self.dim)
        self.rotation = _compute_rotation(self.rseed + 1e6, self.dim)
        scales = (self.condition ** 0.5) ** np.linspace(0, 1, self.dim)
        self.linear_tf = _compute_rotation(self.rseed, self.dim) @ np.diag(scales)

    def _eval(self, xs):
        pen = _penalty(xs, 10.0)
        z = (xs - self.x_opt) @ self.rotation
        z = _tasy(z, 0.5)
        z = z @ self.linear_tf
        s = z[:, :-1] ** 2 + z[:, 1:] ** 2
        return np.mean(s ** 0.25 * (np.sin(50 * s ** 0.1) ** 2 + 1.0),
                       axis=-1) ** 2 + pen


class SchaffersF7(_SchaffersF7):
    fid = 17
    condition = 10.0


class SchaffersF7Ill(_SchaffersF7):
    fid = 18
    condition = 1000.0


class GriewankRosenbrock(BbobProblem):
    fid = 19

    def _setup(self):
        scale = max(1.0, self.dim ** 0.5 / 8.0)
        self.linear_tf = scale * _compute_rotation(self.rseed, self.dim)
        self.x_opt = self.linear_tf @ (0.5 * np.ones(self.dim)) / scale ** 2

    def _eval(self, xs):
        z = xs @ self.linear_tf + 0.5
        f2 = 100.0 * (z[:, :-1] ** 2 - z[:, 1:]) ** 2 + (1.0 - z[:, :-1]) ** 2
        return 10.0 + 10.0 * np.sum(f2 / 4000.0 - np.cos(f2),
                                    axis=-1) / (self.dim - 1.0)


class Schwefel(BbobProblem):
    fid = 20
    condition = 10.0

    def _setup(self):
        self.x_opt = 0.5 * np.sign(_unif(self.dim, self.rseed) - 0.5) * 4.2096874633
        self.scales = (self.condition ** 0.5) ** np.linspace(0, 1, self.dim)

    def _eval(self, xs):
        two_abs = 2.0 * np.abs(self.x_opt)
        z = 2.0 * np.sign(self.x_opt) * xs
        z[:, 1:] = z[:, 1:] + 0.25 * (z[:, :-1] - two_abs[:-1])
        z = 100.0 * (self.scales * (z - two_abs) + two_abs)
        out = np.maximum(0.0, np.abs(z) - 500.0)
        pen = 0.01 * np.sum(out ** 2, axis=-1)
        return 0.01 * (418.9828872724339
                       - np.mean(z * np.sin(np.sqrt(np.abs(z))), axis=-1)) + pen


class _Gallagher(BbobProblem):
    rseed_base = 21
    max_condition = 1000.0
    fit_values = (1.1, 9.1)
    n_peaks: int = 0
    peak_spread = 1.0  # shrink factor keeping optima away from the boundary
    high_peak_condition = 0.0

    def _setup(self):
        self.rotation = _compute_rotation(self.rseed, self.dim)
        conds = self.max_condition ** np.linspace(0, 1, self.n_peaks - 1)
        order = np.argsort(_unif(self.n_peaks - 1, self.rseed))
        conds = np.insert(conds[order], 0, self.high_peak_condition)
        scales = []
        for i, c in enumerate(conds):
            s = c ** np.linspace(-0.5, 0.5, self.dim)
            perm = np.argsort(_unif(self.dim, self.rseed + 1e3 * i))
            scales.append(s[perm])
        self.peak_scales = np.vstack(scales)  # inverse covariance diagonals
        self.peak_values = np.insert(
            np.linspace(self.fit_values[0], self.fit_values[1], self.n_peaks - 1),
            0, 10.0)
        raw = 10.0 * _unif(self.dim * self.n_peaks, self.rseed) - 5.0
        self.x_local = (self.peak_spread * raw.reshape(self.n_peaks, self.dim)
                        @ self.rotation)
        self.x_local[0] *= 0.8
        self.x_opt = self.x_local[0] @ self.rotation.T

    def _eval(self, xs):
        pen = _penalty(xs, 1.0)
        z = xs @ self.rotation
        fac = -0.5 / self.dim
        f = np.empty((xs.shape[0], self.n_peaks))
        for p in range(self.n_peaks):
            e = z - self.x_local[p]
            f[:, p] = self.peak_values[p] * np.exp(fac * (e ** 2 @ self.peak_scales[p]))
        return _tosc(10.0 - np.max(f, axis=-1)) ** 2 + pen


class Gallagher101(_Gallagher):
    fid = 21
    n_peaks = 101
    peak_spread = 1.0
    high_peak_condition = 1000.0 ** 0.5


class Gallagher21(_Gallagher):
    fid = 22
    rseed_base = 22
    n_peaks = 21
    peak_spread = 0.98
    high_peak_condition = 1000.0


class Katsuura(BbobProblem):
    fid = 23
    condition = 100.0

    def _setup(self):
        self.x_opt = _compute_xopt(self.rseed, self.dim)
        rot = _compute_rotation(self.rseed + 1e6, self.dim)
        scales = (self.condition ** 0.5) ** np.linspace(0, 1, self.dim)
        self.linear_tf = _compute_rotation(self.rseed, self.dim) @ np.diag(scales) @ rot
        self.two_k = 2.0 ** np.arange(1, 33)

    def _eval(self, xs):
        pen = _penalty(xs, 1.0)
        z = (xs - self.x_opt) @ self.linear_tf
        d = self.dim
        arr = z[:, :, None] * self.two_k  # (n, dim, 32)
        inner = np.abs(arr - np.round(arr)) @ (1.0 / self.two_k)  # (n, dim)
        prod = np.prod(1.0 + np.arange(1, d + 1) * inner, axis=-1)
        return -10.0 / d ** 2 + 10.0 / d ** 2 * prod ** (10.0 / d ** 1.2) + pen


class LunacekBiRastrigin(BbobProblem):
    fid = 24
    condition = 100.0
    mu1 = 2.5

    def _setup(self):
        self.x_opt = 0.5 * self.mu1 * np.sign(_gauss(self.dim, self.rseed))
        rot = _compute_rotation(self.rseed + 1e6, self.dim)
        scales = (self.condition ** 0.5) ** np.linspace(0, 1, self.dim)
        self.linear_tf = _compute_rotation(self.rseed, self.dim) @ np.diag(scales) @ rot

    def _eval(self, xs):
        pen = 1e4 * np.sum(np.maximum(0.0, np.abs(xs) - 5.0) ** 2, axis=-1)
        z = 2.0 * np.sign(self.x_opt) * xs
        d = self.dim
        s = 1.0 - 0.5 / ((d + 20) ** 0.5 - 4.1)
        mu2 = -((self.mu1 ** 2 - 1.0) / s) ** 0.5
        ftrue = np.minimum(np.sum((z - self.mu1) ** 2, axis=-1),
                           d + s * np.sum((z - mu2) ** 2, axis=-1))
        ftrue = ftrue + 10.0 * (d - np.sum(
            np.cos(2 * np.pi * ((z - self.mu1) @ self.linear_tf)), axis=-1))
        return ftrue + pen


_FUNCTION_CLASSES: dict[int, type[BbobProblem]] = {
    cls.fid: cls
    for cls in (Sphere, EllipsoidSeparable, RastriginSeparable, BuecheRastrigin,
                LinearSlope, AttractiveSector, StepEllipsoid, Rosenbrock,
                RosenbrockRotated, Ellipsoid, Discus, BentCigar, SharpRidge,
                DifferentPowers, Rastrigin, Weierstrass, SchaffersF7,
                SchaffersF7Ill, GriewankRosenbrock, Schwefel, Gallagher101,
                Gallagher21, Katsuura, LunacekBiRastrigin)
}


def make_problem(class_id: int, instance_id: int, dim: int) -> BbobProblem:
    """Construct the BBOB problem (class_id, instance_id, dim)."""
    if class_id not in _FUNCTION_CLASSES:
        raise ValueError(f"class_id must be in 1..{N_CLASSES}, got {class_id}")
    return _FUNCTION_CLASSES[class_id](instance_id, dim)


def optimum(problem: BbobProblem) -> tuple[np.ndarray, float]:
    """(x_opt, f_opt) of a problem; evaluate(x_opt) == f_opt."""
    return problem.optimum()


def evaluate(problem: BbobProblem, x) -> float:
    return problem.evaluate(x)
