"""Derivative-free minimizers driving the VQE loop.

Both methods record every objective evaluation (one evaluation is one VQE
iteration on hardware) and stop on a relative change below
``rel_tol * max(|E|, 1)``. For the linear-model trust-region method the
change is measured between incumbents at successive trust-radius stages;
for Nelder-Mead it is the spread of values across the simplex, checked once
the simplex is smaller than ``x_tol`` degrees.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class OptimizeResult:
    x: np.ndarray
    fun: float
    history: list = field(default_factory=list)  # (x, f) per evaluation
    accepted: list = field(default_factory=list)  # incumbent values checked by the stop rule
    converged: bool = False
    message: str = ""

    @property
    def nfev(self) -> int:
        return len(self.history)


class _Budget(Exception):
    pass


class _Objective:
    def __init__(self, fun, max_evals):
        self.fun = fun
        self.max_evals = max_evals
        self.history = []

        self.stderr = {}

    def __call__(self, x):
        if len(self.history) >= self.max_evals:
            raise _Budget
        x = np.array(x, dtype=float)
        out = self.fun(x)
        if isinstance(out, tuple):
            f, se = float(out[0]), float(out[1])
        else:
            f, se = float(out), 0.0
        self.history.append((x, f))
        self.stderr[x.tobytes()] = se
        return f

    def noise_at(self, x) -> float:
        return self.stderr.get(np.asarray(x, dtype=float).tobytes(), 0.0)


def small_change(prev: float, cur: float, rel_tol: float) -> bool:
    return abs(cur - prev) < rel_tol * max(abs(cur), 1.0)


def _best_of(history):
    k = int(np.argmin([f for _, f in history]))
    return history[k]


def linear_trust_region(
    fun,
    x0,
    rho_begin=15.0,
    rho_end=None,
    rel_tol=0.01,
    max_evals=200,
    shrink=0.5,
    patience=2,
    resample=True,
    noise_floor=8.0,
):
    """COBYLA-style minimizer without constraints.

    Keeps ``n + 1`` interpolation points, fits a linear model through them
    and steps to the trust-region boundary along the model's descent
    direction. Two radii are tracked: the trust radius ``delta`` follows the
    step quality (doubling after good steps, halving after poor ones) and
    never drops below the resolution ``rho``, which only decreases, down to
    ``rho_end``. A resolution stage ends when a poor step happens with
    ``delta == rho`` and a well-poised point set (no point farther than
    ``2.1 delta`` from the incumbent, none closer than ``0.25 delta`` to its
    opposite face).

    At every stage end the incumbent value is compared with the previous
    stage's; the run converges after ``patience`` consecutive stages whose
    change is below ``rel_tol * max(|E|, 1)`` while the linear model also
    predicts a change below that bound.

    ``resample`` re-evaluates the incumbent before ending a stage and keeps
    the running mean of its values, which counters the downward bias of a
    minimum taken over noisy evaluations.

    ``fun`` may return ``(value, stderr)``. The resolution then stops
    shrinking while ``rho * |g| < noise_floor * stderr`` at the incumbent:
    below that radius the simplex gradient is dominated by shot noise.
    """
    obj = _Objective(fun, max_evals)
    x0 = np.asarray(x0, dtype=float)
    n = x0.size
    rho = delta = float(rho_begin)
    delta_max = 2.0 * rho_begin
    rho_end = rho_begin * 1e-3 if rho_end is None else float(rho_end)
    res = OptimizeResult(x0, np.inf)
    repeats = {}

    def poised(pts, vals, radius):
        d = pts[1:] - pts[int(np.argmin(vals))]
        if abs(np.linalg.det(d)) == 0.0:
            return False
        face = 1.0 / np.linalg.norm(np.linalg.inv(d), axis=0)
        return np.linalg.norm(d, axis=1).max() <= 2.1 * radius and face.min() >= 0.25 * radius

    try:
        pts = np.vstack([x0] + [x0 + rho * e for e in np.eye(n)])
        vals = np.array([obj(p) for p in pts])
        stage_best = vals.min()
        res.accepted.append(stage_best)
        quiet = 0
        while True:
            k = int(np.argmin(vals))
            pts[[0, k]] = pts[[k, 0]]
            vals[[0, k]] = vals[[k, 0]]
            xb, fb = pts[0], vals[0]
            d = pts[1:] - xb
            inv = np.linalg.inv(d)
            g = inv @ (vals[1:] - fb)
            gn = np.linalg.norm(g)

            dist = np.linalg.norm(d, axis=1)
            face = 1.0 / np.linalg.norm(inv, axis=0)
            if dist.max() > 2.1 * delta or face.min() < 0.25 * delta:
                j = int(np.argmax(dist)) if dist.max() > 2.1 * delta else int(np.argmin(face))
                normal = inv[:, j] / np.linalg.norm(inv[:, j])
                sign = -1.0 if g @ normal > 0 else 1.0
                pts[j + 1] = xb + sign * max(0.5 * delta, rho) * normal
                vals[j + 1] = obj(pts[j + 1])
                continue

            ratio, ft = 0.0, fb
            if gn > 0.0:
                step = -delta * g / gn
                ft = obj(xb + step)
                ratio = (fb - ft) / (delta * gn)
                # replace the point whose swap keeps the simplex volume largest
                coef = np.abs(step @ inv)
                if ft < fb:
                    j = int(np.argmax(coef))
                else:
                    j = int(np.argmax(coef * (vals[1:] > ft)))
                    if not coef[j] or vals[j + 1] <= ft:
                        j = None
                if j is not None:
                    pts[j + 1], vals[j + 1] = xb + step, ft

            if ratio >= 0.7:
                delta = min(2.0 * delta, delta_max)
                continue
            if ratio >= 0.1:
                continue
            if delta > rho:
                delta = max(0.5 * delta, rho)
                continue
            if not poised(pts, vals, delta):
                continue
            if resample:
                b = int(np.argmin(vals))
                key = pts[b].tobytes()
                tot, cnt = repeats.get(key, (vals[b], 1))
                tot, cnt = tot + obj(pts[b]), cnt + 1
                repeats[key] = (tot, cnt)
                vals[b] = tot / cnt
                if int(np.argmin(vals)) != b:
                    continue

            nxt = max(rho * shrink, rho_end)
            # hold the resolution where the model's predicted decrease would sink
            # into shot noise, unless the failed step was clearly worse
            se = obj.noise_at(xb)
            if nxt * gn < noise_floor * se and ft - fb < 3.0 * se:
                nxt = rho
            rho = delta = nxt
            prev, stage_best = stage_best, vals.min()
            res.accepted.append(stage_best)
            flat = gn * rho < rel_tol * max(abs(stage_best), 1.0)
            quiet = quiet + 1 if flat and small_change(prev, stage_best, rel_tol) else 0
            if quiet >= patience:
                res.converged = True
                res.message = "relative change below tolerance"
                break
    except _Budget:
        res.message = "evaluation budget exhausted"
    res.history = obj.history
    res.x, res.fun = _best_of(obj.history)
    return res


def nelder_mead(fun, x0, step=15.0, rel_tol=0.01, max_evals=200, x_tol=1.0):
    """Nelder-Mead simplex (reflection 1, expansion 2, contraction and
    shrink 0.5).

    Converges once every vertex lies within ``x_tol`` of the best one and
    the vertex values agree to within ``rel_tol * max(|E_best|, 1)``.
    """
    obj = _Objective(fun, max_evals)
    x0 = np.asarray(x0, dtype=float)
    n = x0.size
    res = OptimizeResult(x0, np.inf)
    try:
        sim = np.vstack([x0] + [x0 + step * e for e in np.eye(n)])
        fs = np.array([obj(p) for p in sim])
        res.accepted.append(fs.min())
        while True:
            order = np.argsort(fs, kind="stable")
            sim, fs = sim[order], fs[order]
            size = np.abs(sim[1:] - sim[0]).max()
            if size < x_tol and small_change(fs[-1], fs[0], rel_tol):
                res.converged = True
                res.message = "relative change below tolerance"
                break
            centroid = sim[:-1].mean(axis=0)
            xr = centroid + (centroid - sim[-1])
            fr = obj(xr)
            if fr < fs[0]:
                xe = centroid + 2.0 * (centroid - sim[-1])
                fe = obj(xe)
                sim[-1], fs[-1] = (xe, fe) if fe < fr else (xr, fr)
            elif fr < fs[-2]:
                sim[-1], fs[-1] = xr, fr
            else:
                if fr < fs[-1]:
                    xc = centroid + 0.5 * (xr - centroid)
                else:
                    xc = centroid + 0.5 * (sim[-1] - centroid)
                fc = obj(xc)
                if fc < min(fr, fs[-1]):
                    sim[-1], fs[-1] = xc, fc
                else:
                    for i in range(1, n + 1):
                        sim[i] = sim[0] + 0.5 * (sim[i] - sim[0])
                        fs[i] = obj(sim[i])
            if fs.min() < res.accepted[-1]:
                res.accepted.append(fs.min())
    except _Budget:
        res.message = "evaluation budget exhausted"
    res.history = obj.history
    res.x, res.fun = _best_of(obj.history)
    return res
