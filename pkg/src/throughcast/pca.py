"""Principal component analysis via cyclic Jacobi rotations."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import BadK, DimensionMismatch, EmptyData, NonFiniteInput, ZeroVariance


def jacobi_eigh(C, tol=1e-12, max_sweeps=100):
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi sweeps.

    Sweeps until the off-diagonal Frobenius norm falls below ``tol * ||C||_F``.
    Returns ``(eigenvalues, Q)`` unsorted, columns of Q being eigenvectors.
    """
    A = np.array(C, dtype=np.float64)
    n = A.shape[0]
    Q = np.eye(n)
    scale = np.linalg.norm(A)
    if n == 1 or scale == 0.0:
        return np.diag(A).copy(), Q
    mask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        off = math.sqrt(np.sum(A[mask] ** 2))
        if off < tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                diff = A[q, q] - A[p, p]
                if abs(apq) < 1e-150 * abs(diff):
                    # rotation angle underflows; tan(phi) ~ apq/diff
                    t = apq / diff
                else:
                    theta = diff / (2.0 * apq)
                    if abs(theta) > 1e150:
                        t = 1.0 / (2.0 * theta)
                    else:
                        t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # rotate rows/columns p and q
                ap = A[:, p].copy()
                aq = A[:, q].copy()
                A[:, p] = c * ap - s * aq
                A[:, q] = s * ap + c * aq
                ap = A[p, :].copy()
                aq = A[q, :].copy()
                A[p, :] = c * ap - s * aq
                A[q, :] = s * ap + c * aq
                A[p, q] = A[q, p] = 0.0
                qp = Q[:, p].copy()
                qq = Q[:, q].copy()
                Q[:, p] = c * qp - s * qq
                Q[:, q] = s * qp + c * qq
    return np.diag(A).copy(), Q


@dataclass(frozen=True)
class PcaModel:
    mean_vector: np.ndarray
    components: np.ndarray
    eigenvalues: np.ndarray
    n_features: int
    n_samples: int

    def to_dict(self):
        return {
            "mean": self.mean_vector.tolist(),
            "eigenvalues": self.eigenvalues.tolist(),
            "components": self.components.ravel().tolist(),
            "n_features": self.n_features,
            "n_samples": self.n_samples,
        }

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d):
        n = int(d["n_features"])
        return cls(
            np.asarray(d["mean"], dtype=np.float64),
            np.asarray(d["components"], dtype=np.float64).reshape(n, n),
            np.asarray(d["eigenvalues"], dtype=np.float64),
            n,
            int(d["n_samples"]),
        )

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def fit_pca(data):
    """Centre the columns, form C = X'X/(l-1) and diagonalise it.

    Eigenpairs are sorted by eigenvalue, descending, and each eigenvector is
    signed so its largest-magnitude entry is positive.
    """
    X = np.asarray(data, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2 or X.shape[0] < 2 or X.shape[1] < 1:
        raise EmptyData(f"need at least 2 rows and 1 column, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise NonFiniteInput("data contains NaN or infinite values")
    l, n = X.shape
    mean = X.mean(axis=0)
    Xc = X - mean
    C = Xc.T @ Xc / (l - 1)
    C = 0.5 * (C + C.T)
    lam, Q = jacobi_eigh(C)
    order = np.argsort(-lam, kind="stable")
    lam = lam[order]
    Q = Q[:, order]
    # C is positive semi-definite; negatives are rounding on rank-deficient data
    lam = np.maximum(lam, 0.0)
    for j in range(n):
        i = int(np.argmax(np.abs(Q[:, j])))
        if Q[i, j] < 0:
            Q[:, j] = -Q[:, j]
    Q.flags.writeable = False
    lam.flags.writeable = False
    mean.flags.writeable = False
    return PcaModel(mean, Q, lam, n, l)


def _check_k(model, k):
    if not 1 <= k <= model.n_features:
        raise BadK(f"k must be in 1..{model.n_features}, got {k}")


def transform(model, x, k=None):
    """Project onto the first ``k`` components; rows of a 2-D ``x`` are points."""
    k = model.n_features if k is None else int(k)
    _check_k(model, k)
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != model.n_features:
        raise DimensionMismatch(f"expected {model.n_features} features, got {x.shape[-1]}")
    return (x - model.mean_vector) @ model.components[:, :k]


def inverse_transform(model, y):
    y = np.asarray(y, dtype=np.float64)
    k = y.shape[-1]
    if not 1 <= k <= model.n_features:
        raise DimensionMismatch(f"expected 1..{model.n_features} components, got {k}")
    return y @ model.components[:, :k].T + model.mean_vector


def explained_variance(model):
    total = float(np.sum(model.eigenvalues))
    if not total > 0:
        raise ZeroVariance("total variance is zero")
    return model.eigenvalues / total


def ordinal_encode(values):
    """Stable integer codes by order of first appearance. Returns ``(codes, mapping)``."""
    mapping = {}
    codes = np.empty(len(values), dtype=np.float64)
    for i, v in enumerate(values):
        if v not in mapping:
            mapping[v] = len(mapping)
        codes[i] = mapping[v]
    return codes, mapping


def frame_matrix(frame, columns=None):
    """Numeric matrix from a TabularFrame; text columns are ordinal-encoded.

    Returns ``(matrix, column_names, encodings)`` where ``encodings`` maps each
    encoded column to its value->code dict.
    """
    names = list(frame.column_names) if columns is None else list(columns)
    cols = []
    encodings = {}
    for name in names:
        raw = frame.column(name)
        try:
            cols.append(np.asarray([float(v) for v in raw], dtype=np.float64))
        except (TypeError, ValueError):
            codes, mapping = ordinal_encode([str(v) for v in raw])
            cols.append(codes)
            encodings[name] = mapping
    return np.column_stack(cols), names, encodings
