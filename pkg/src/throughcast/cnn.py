"""Small 1-D convolutional forecaster with tanh-bounded multi-horizon heads.

The network is conv(valid, ReLU) -> conv(valid, ReLU) -> flatten -> dense
(ReLU) -> one tanh scalar per head. Gradients are written out by hand and
training uses Adam with a seeded per-epoch shuffle. Everything runs in
float64 so the finite-difference check is meaningful.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, asdict

import numpy as np

from .errors import DivergedLoss, HorizonExceedsHeads, SeriesTooShort, ShapeMismatch
from .series import TimeSeries

FORMAT_NAME = "throughcast-cnn"
FORMAT_VERSION = 1
PARAM_NAMES = ("conv1_w", "conv1_b", "conv2_w", "conv2_b", "dense_w", "dense_b", "head_w", "head_b")


@dataclass(frozen=True)
class CnnConfig:
    window: int = 14
    conv1_filters: int = 70
    conv2_filters: int = 30
    kernel_size: int = 3
    dense_units: int = 50
    n_heads: int = 6
    head_horizons: tuple = (1, 3, 6, 9, 12, 14)
    learning_rate: float = 0.001
    batch_size: int = 2
    epochs: int = 50
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "head_horizons", tuple(int(h) for h in self.head_horizons))
        if self.window <= 2 * self.kernel_size:
            raise ValueError(f"window {self.window} must exceed 2*kernel_size = {2 * self.kernel_size}")
        if self.kernel_size < 1:
            raise ValueError("kernel_size must be >= 1")
        if self.n_heads != len(self.head_horizons):
            raise ValueError(f"n_heads={self.n_heads} but {len(self.head_horizons)} horizons given")
        h = np.asarray(self.head_horizons)
        if h.size == 0 or h[0] < 1 or np.any(np.diff(h) <= 0):
            raise ValueError("head_horizons must be positive and strictly increasing")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")
        for name in ("conv1_filters", "conv2_filters", "dense_units"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if not self.learning_rate > 0:
            raise ValueError("learning_rate must be positive")

    @property
    def conv1_length(self):
        return self.window - self.kernel_size + 1

    @property
    def conv2_length(self):
        return self.window - 2 * (self.kernel_size - 1)

    @property
    def flatten_size(self):
        return self.conv2_filters * self.conv2_length

    @property
    def max_horizon(self):
        return self.head_horizons[-1]

    def shapes(self):
        k = self.kernel_size
        return {
            "conv1_w": (self.conv1_filters, k),
            "conv1_b": (self.conv1_filters,),
            "conv2_w": (self.conv2_filters, self.conv1_filters, k),
            "conv2_b": (self.conv2_filters,),
            "dense_w": (self.dense_units, self.flatten_size),
            "dense_b": (self.dense_units,),
            "head_w": (self.n_heads, self.dense_units),
            "head_b": (self.n_heads,),
        }

    def to_dict(self):
        d = asdict(self)
        d["head_horizons"] = list(self.head_horizons)
        return d

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


class CnnModel:
    """Weights plus Adam state.

    All parameters live in one flat float64 buffer ``theta``; ``params`` maps
    the names in PARAM_NAMES to reshaped views of it, so optimiser updates and
    finiteness checks are single vector operations.
    """

    def __init__(self, config, params, adam_m=None, adam_v=None, step=0):
        shapes = config.shapes()
        sizes = [int(np.prod(shapes[k])) for k in PARAM_NAMES]
        self.config = config
        self.theta = np.empty(sum(sizes))
        self.params = {}
        offset = 0
        for name, size in zip(PARAM_NAMES, sizes):
            arr = np.asarray(params[name], dtype=np.float64)
            if arr.shape != shapes[name]:
                raise ShapeMismatch(f"{name}: expected shape {shapes[name]}, got {arr.shape}")
            view = self.theta[offset:offset + size].reshape(shapes[name])
            view[...] = arr
            self.params[name] = view
            offset += size
        self.adam_m = np.zeros_like(self.theta) if adam_m is None else np.array(adam_m, dtype=np.float64)
        self.adam_v = np.zeros_like(self.theta) if adam_v is None else np.array(adam_v, dtype=np.float64)
        self.step = int(step)

    def __repr__(self):
        return f"CnnModel(n_parameters={self.theta.size}, step={self.step})"

    def copy(self):
        return CnnModel(self.config, self.params, self.adam_m, self.adam_v, self.step)

    def n_parameters(self):
        return int(self.theta.size)

    def flat(self):
        return self.theta.copy()

    def equals(self, other):
        return self.config == other.config and np.array_equal(self.theta, other.theta)


@dataclass(frozen=True)
class TrainReport:
    epoch_losses: tuple
    initial_loss: float
    validation_mse: float
    wall_seconds: float

    @property
    def final_loss(self):
        return self.epoch_losses[-1] if self.epoch_losses else self.initial_loss

    def to_dict(self):
        return {
            "epoch_losses": list(self.epoch_losses),
            "initial_loss": self.initial_loss,
            "validation_mse": self.validation_mse,
            "wall_seconds": self.wall_seconds,
        }


def init_model(config, seed=None):
    """Scaled-uniform initialisation: He for the ReLU layers, Xavier for the heads."""
    rng = np.random.default_rng(config.seed if seed is None else seed)
    k = config.kernel_size
    f1, f2, du, nh = config.conv1_filters, config.conv2_filters, config.dense_units, config.n_heads

    def he(shape, fan_in):
        lim = np.sqrt(6.0 / fan_in)
        return rng.uniform(-lim, lim, size=shape)

    params = {
        "conv1_w": he((f1, k), k),
        "conv1_b": np.zeros(f1),
        "conv2_w": he((f2, f1, k), f1 * k),
        "conv2_b": np.zeros(f2),
        "dense_w": he((du, config.flatten_size), config.flatten_size),
        "dense_b": np.zeros(du),
    }
    lim = np.sqrt(6.0 / (du + 1))
    params["head_w"] = rng.uniform(-lim, lim, size=(nh, du))
    params["head_b"] = np.zeros(nh)
    return CnnModel(config, params)


def zero_model(config):
    shapes = config.shapes()
    return CnnModel(config, {k: np.zeros(shapes[k]) for k in PARAM_NAMES})


def _values(series):
    if isinstance(series, TimeSeries):
        return series.values
    return np.asarray(series, dtype=np.float64)


def make_windows(series, config):
    """Sliding windows with stride 1 and per-head targets mapped to [-1, 1].

    Returns ``(X, Y)`` with shapes ``(n_windows, window)`` and
    ``(n_windows, n_heads)``. The window ending at index t has target
    ``2*v[t + h_k] - 1`` for head k.
    """
    v = _values(series)
    w, hmax = config.window, config.max_horizon
    if v.size < w + hmax:
        raise SeriesTooShort(f"need at least window + max horizon = {w + hmax} points, got {v.size}")
    n = v.size - w - hmax + 1
    X = np.lib.stride_tricks.sliding_window_view(v, w)[:n].copy()
    ends = np.arange(n) + w - 1
    Y = np.stack([v[ends + h] for h in config.head_horizons], axis=1)
    return X, 2.0 * Y - 1.0


def _patches(a, k):
    # a: (B, L, C) -> (B, L-k+1, k, C)
    win = np.lib.stride_tricks.sliding_window_view(a, k, axis=1)  # (B, L', C, k)
    return win.transpose(0, 1, 3, 2)


def _forward(params, X, k):
    B = X.shape[0]
    p1 = np.lib.stride_tricks.sliding_window_view(X, k, axis=1)  # (B, L1, k)
    z1 = p1 @ params["conv1_w"].T + params["conv1_b"]  # (B, L1, F1)
    a1 = np.maximum(z1, 0.0)
    p2 = _patches(a1, k)  # (B, L2, k, F1)
    L2 = p2.shape[1]
    w2 = params["conv2_w"].transpose(0, 2, 1).reshape(params["conv2_w"].shape[0], -1)  # (F2, k*F1)
    p2f = p2.reshape(B, L2, -1)
    z2 = p2f @ w2.T + params["conv2_b"]  # (B, L2, F2)
    a2 = np.maximum(z2, 0.0)
    flat = a2.transpose(0, 2, 1).reshape(B, -1)  # channel-major flatten
    z3 = flat @ params["dense_w"].T + params["dense_b"]
    a3 = np.maximum(z3, 0.0)
    out = np.tanh(a3 @ params["head_w"].T + params["head_b"])
    cache = (X, p1, z1, p2f, z2, flat, z3, a3, out, w2)
    return out, cache


def _backward(params, cache, Y, k):
    X, p1, z1, p2f, z2, flat, z3, a3, out, w2 = cache
    B, nh = out.shape
    g_out = 2.0 * (out - Y) / (B * nh)
    g_zh = g_out * (1.0 - out * out)
    grads = {"head_w": g_zh.T @ a3, "head_b": g_zh.sum(axis=0)}
    g_z3 = (g_zh @ params["head_w"]) * (z3 > 0)
    grads["dense_w"] = g_z3.T @ flat
    grads["dense_b"] = g_z3.sum(axis=0)
    g_flat = g_z3 @ params["dense_w"]
    F2 = params["conv2_w"].shape[0]
    L2 = z2.shape[1]
    g_z2 = g_flat.reshape(B, F2, L2).transpose(0, 2, 1) * (z2 > 0)  # (B, L2, F2)
    g_w2 = g_z2.reshape(-1, F2).T @ p2f.reshape(B * L2, -1)  # (F2, k*F1)
    F1 = params["conv1_w"].shape[0]
    grads["conv2_w"] = g_w2.reshape(F2, k, F1).transpose(0, 2, 1)
    grads["conv2_b"] = g_z2.sum(axis=(0, 1))
    g_p2 = (g_z2 @ w2).reshape(B, L2, k, F1)
    g_a1 = np.zeros(z1.shape)
    for j in range(k):
        g_a1[:, j:j + L2, :] += g_p2[:, :, j, :]
    g_z1 = g_a1 * (z1 > 0)
    grads["conv1_w"] = g_z1.reshape(-1, F1).T @ p1.reshape(-1, k)
    grads["conv1_b"] = g_z1.sum(axis=(0, 1))
    return grads


def _loss(out, Y):
    return float(np.mean((out - Y) ** 2))


def forward(model, x):
    """Head outputs in [-1, 1] for one input vector, or a batch of rows."""
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 1
    X = x[None, :] if single else x
    if X.ndim != 2 or X.shape[1] != model.config.window:
        raise ShapeMismatch(f"input must have length {model.config.window}, got shape {x.shape}")
    out, _ = _forward(model.params, X, model.config.kernel_size)
    return out[0] if single else out


def loss_and_grads(model, X, Y):
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    Y = np.atleast_2d(np.asarray(Y, dtype=np.float64))
    out, cache = _forward(model.params, X, model.config.kernel_size)
    return _loss(out, Y), _backward(model.params, cache, Y, model.config.kernel_size)


def _flat_grads(grads):
    return np.concatenate([grads[k].ravel() for k in PARAM_NAMES])


def _adam_step(model, g, lr, b1=0.9, b2=0.999, eps=1e-8):
    model.step += 1
    t = model.step
    m, v = model.adam_m, model.adam_v
    m *= b1
    m += (1 - b1) * g
    v *= b2
    v += (1 - b2) * g * g
    mhat = m / (1 - b1 ** t)
    vhat = v / (1 - b2 ** t)
    model.theta -= lr * mhat / (np.sqrt(vhat) + eps)


def _evaluate(model, X, Y):
    if X.shape[0] == 0:
        return float("nan")
    out, _ = _forward(model.params, X, model.config.kernel_size)
    return _loss(out, Y)


def train(series, config, validation=None, model=None):
    """Fit the network on a normalised series.

    Parameters
    ----------
    series : TimeSeries or array
        Values already scaled to [0, 1].
    config : CnnConfig
    validation : TimeSeries or array, optional
        Held-out normalised values; when absent the reported validation MSE
        is the post-training loss on the training windows.
    model : CnnModel, optional
        Starting weights; defaults to ``init_model(config)``.

    Returns
    -------
    (CnnModel, TrainReport)
    """
    t0 = time.perf_counter()
    X, Y = make_windows(series, config)
    model = init_model(config) if model is None else model.copy()
    rng = np.random.default_rng(config.seed)
    k = config.kernel_size
    initial = _evaluate(model, X, Y)
    losses = []
    n = X.shape[0]
    bs = config.batch_size
    lr = config.learning_rate
    for epoch in range(config.epochs):
        order = rng.permutation(n)
        total = 0.0
        for start in range(0, n, bs):
            idx = order[start:start + bs]
            out, cache = _forward(model.params, X[idx], k)
            batch_loss = _loss(out, Y[idx])
            g = _flat_grads(_backward(model.params, cache, Y[idx], k))
            if not (np.isfinite(batch_loss) and np.isfinite(g).all()):
                raise DivergedLoss(f"non-finite loss or gradient at epoch {epoch + 1}")
            _adam_step(model, g, lr)
            if not np.isfinite(model.theta).all():
                raise DivergedLoss(f"non-finite weights after step {model.step} (epoch {epoch + 1})")
            total += batch_loss * idx.size
        epoch_loss = total / n
        losses.append(epoch_loss)
        if _saturated(model, X):
            raise DivergedLoss(
                f"all head outputs saturated at +/-1 after epoch {epoch + 1}; "
                f"learning rate {lr:g} is too large")
    if validation is not None:
        Xv, Yv = make_windows(validation, config)
        val = _evaluate(model, Xv, Yv)
    else:
        val = _evaluate(model, X, Y)
    report = TrainReport(tuple(losses), initial, val, time.perf_counter() - t0)
    return model, report


def _saturated(model, X, tol=1e-12):
    # tanh pinned at +/-1 for every window is the bounded-output form of
    # divergence: gradients vanish and the loss can no longer move
    out, _ = _forward(model.params, X, model.config.kernel_size)
    return bool(np.all(1.0 - np.abs(out) < tol))


def head_for_step(config, h):
    """Index of the head with the smallest horizon >= h."""
    horizons = np.asarray(config.head_horizons)
    if h < 1:
        raise ValueError("step must be >= 1")
    if h > horizons[-1]:
        raise HorizonExceedsHeads(f"step {h} exceeds max head horizon {horizons[-1]}")
    return int(np.searchsorted(horizons, h, side="left"))


def predict_series(model, series, horizon):
    """Forecast ``horizon`` normalised values from the last window.

    Step h takes the output of the head with the smallest horizon >= h,
    mapped back through v -> (v + 1) / 2.
    """
    cfg = model.config
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if horizon > cfg.max_horizon:
        raise HorizonExceedsHeads(f"horizon {horizon} exceeds max head horizon {cfg.max_horizon}")
    v = _values(series)
    if v.size < cfg.window:
        raise SeriesTooShort(f"need at least {cfg.window} points, got {v.size}")
    out = forward(model, v[-cfg.window:])
    idx = [head_for_step(cfg, h) for h in range(1, horizon + 1)]
    return (out[idx] + 1.0) / 2.0


def grad_check(config, inputs, targets, epsilon=1e-5, model=None):
    """Largest relative discrepancy between analytic and central-difference gradients.

    Relative error per parameter is ``|a - f| / max(|a|, |f|, 1e-8)``.
    """
    model = init_model(config) if model is None else model.copy()
    X = np.atleast_2d(np.asarray(inputs, dtype=np.float64))
    Y = np.atleast_2d(np.asarray(targets, dtype=np.float64))
    _, grads = loss_and_grads(model, X, Y)
    worst = 0.0
    k = config.kernel_size
    for name in PARAM_NAMES:
        p = model.params[name]
        flat = p.reshape(-1)
        gflat = grads[name].reshape(-1)
        for i in range(flat.size):
            orig = flat[i]
            flat[i] = orig + epsilon
            lp = _loss(_forward(model.params, X, k)[0], Y)
            flat[i] = orig - epsilon
            lm = _loss(_forward(model.params, X, k)[0], Y)
            flat[i] = orig
            num = (lp - lm) / (2 * epsilon)
            a = gflat[i]
            rel = abs(a - num) / max(abs(a), abs(num), 1e-8)
            worst = max(worst, rel)
    return worst


def model_to_dict(model):
    shapes = model.config.shapes()
    return {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "config": model.config.to_dict(),
        "layers": [
            {"name": k, "shape": list(shapes[k]), "data": model.params[k].ravel().tolist()}
            for k in PARAM_NAMES
        ],
    }


def model_from_dict(d):
    if d.get("format") != FORMAT_NAME:
        raise ValueError(f"not a {FORMAT_NAME} file")
    if d.get("version") != FORMAT_VERSION:
        raise ValueError(f"unsupported version {d.get('version')}")
    config = CnnConfig.from_dict(d["config"])
    params = {}
    for layer in d["layers"]:
        params[layer["name"]] = np.asarray(layer["data"], dtype=np.float64).reshape(layer["shape"])
    return CnnModel(config, params)


def save_model(model, path):
    with open(path, "w") as fh:
        json.dump(model_to_dict(model), fh)


def load_model(path):
    with open(path) as fh:
        return model_from_dict(json.load(fh))
