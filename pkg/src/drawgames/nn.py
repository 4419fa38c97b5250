"""Small dense networks with hand-written reverse-mode gradients.

Parameters live in one flat vector; layer weights are views into it.
Hidden layers use tanh. The head is ``"linear"`` or ``"softmax"``.
:func:`backward` takes the gradient with respect to the final pre-head
activations (the logits), which is what the loss helpers return.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .canvas import ConfigurationError


class ShapeError(ConfigurationError):
    pass


class DenseNet:
    def __init__(self, layer_sizes, head="linear", params=None):
        self.layer_sizes = tuple(int(n) for n in layer_sizes)
        if len(self.layer_sizes) < 2:
            raise ConfigurationError("need at least input and output sizes")
        if head not in ("linear", "softmax"):
            raise ConfigurationError(f"unknown head {head!r}")
        self.head = head
        n = self.param_count(self.layer_sizes)
        self.params = np.zeros(n) if params is None else np.asarray(params, dtype=np.float64)
        if self.params.shape != (n,):
            raise ShapeError(f"expected {n} parameters, got {self.params.shape}")
        self.weights, self.biases = [], []
        k = 0
        for a, b in zip(self.layer_sizes[:-1], self.layer_sizes[1:]):
            self.weights.append(self.params[k : k + a * b].reshape(b, a))
            k += a * b
            self.biases.append(self.params[k : k + b])
            k += b

    @staticmethod
    def param_count(layer_sizes):
        return sum(a * b + b for a, b in zip(layer_sizes[:-1], layer_sizes[1:]))

    @classmethod
    def init(cls, layer_sizes, rng, head="linear", zero_last=False):
        """Scaled-normal weights (std 1/sqrt(fan_in)), zero biases."""
        net = cls(layer_sizes, head)
        for i, w in enumerate(net.weights):
            if zero_last and i == len(net.weights) - 1:
                continue
            w[:] = rng.normal(0.0, 1.0 / np.sqrt(w.shape[1]), w.shape)
        return net

    def with_params(self, params):
        return DenseNet(self.layer_sizes, self.head, params)

    def copy(self):
        return self.with_params(self.params.copy())

    @property
    def n_params(self):
        return self.params.size

    def __call__(self, x):
        return forward(self, x)[-1]


def forward(net, x):
    """Activations [input, hidden..., logits, head output], batch-first."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != net.layer_sizes[0]:
        raise ShapeError(f"input has length {x.shape[-1]}, network expects {net.layer_sizes[0]}")
    acts = [x]
    a = x
    last = len(net.weights) - 1
    for i, (w, b) in enumerate(zip(net.weights, net.biases)):
        z = a @ w.T + b
        a = z if i == last else np.tanh(z)
        acts.append(a)
    acts.append(softmax(a) if net.head == "softmax" else a)
    return acts


def backward(net, acts, grad_logits):
    """Parameter gradient (flat) given dLoss/dlogits for the activations of
    one forward pass."""
    grad = np.zeros(net.n_params)
    delta = np.asarray(grad_logits, dtype=np.float64)
    batched = delta.ndim == 2
    k = net.n_params
    for i in range(len(net.weights) - 1, -1, -1):
        w = net.weights[i]
        a_prev = acts[i]
        nb = w.shape[0]
        k -= nb
        gb = delta.sum(axis=0) if batched else delta
        grad[k : k + nb] = gb
        k -= w.size
        gw = delta.T @ a_prev if batched else np.outer(delta, a_prev)
        grad[k : k + w.size] = gw.ravel()
        if i > 0:
            delta = (delta @ w) * (1.0 - a_prev * a_prev)
    return grad


def softmax(z):
    z = z - z.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


def log_softmax(z):
    z = z - z.max(axis=-1, keepdims=True)
    return z - np.log(np.exp(z).sum(axis=-1, keepdims=True))


def mse_loss(pred, target):
    """Per-sample mean squared error, averaged over the batch.

    Returns (loss, per_sample, grad_pred)."""
    pred = np.atleast_2d(pred)
    diff = pred - np.atleast_2d(target)
    per = (diff * diff).mean(axis=1)
    grad = 2.0 * diff / diff.size
    return float(per.mean()), per, grad


def cross_entropy_loss(logits, labels):
    """Softmax cross-entropy. Returns (loss, per_sample, grad_logits)."""
    logits = np.atleast_2d(logits)
    labels = np.asarray(labels, dtype=np.int64).ravel()
    logp = log_softmax(logits)
    per = -logp[np.arange(len(labels)), labels]
    grad = np.exp(logp)
    grad[np.arange(len(labels)), labels] -= 1.0
    return float(per.mean()), per, grad / len(labels)


def sgd_step(net, grads, lr):
    grads = np.asarray(grads)
    if grads.shape != net.params.shape:
        raise ShapeError("gradient length does not match parameter count")
    return net.with_params(net.params - lr * grads)


@dataclass
class AdamState:
    m: np.ndarray
    v: np.ndarray
    t: int = 0

    @classmethod
    def zeros(cls, n):
        return cls(np.zeros(n), np.zeros(n), 0)


def adam_step(net, grads, state, lr, beta1=0.9, beta2=0.999, eps=1e-8):
    grads = np.asarray(grads)
    if grads.shape != net.params.shape:
        raise ShapeError("gradient length does not match parameter count")
    t = state.t + 1
    m = beta1 * state.m + (1 - beta1) * grads
    v = beta2 * state.v + (1 - beta2) * grads * grads
    m_hat = m / (1 - beta1**t)
    v_hat = v / (1 - beta2**t)
    params = net.params - lr * m_hat / (np.sqrt(v_hat) + eps)
    return net.with_params(params), AdamState(m, v, t)


def param_hash(net):
    import hashlib

    return hashlib.sha256(np.ascontiguousarray(net.params).tobytes()).hexdigest()
