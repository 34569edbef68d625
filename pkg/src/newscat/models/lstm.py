"""Single-layer LSTM text classifier over frozen word embeddings.

Standard input/forget/output/cell gates; the final hidden state feeds a
dense softmax head. Trained with mini-batch gradient descent and
truncated/padded sequences; padded positions are masked out of the
recurrence (state carries through them), so an all-padding input predicts
the softmax of the head bias alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from newscat.errors import ConfigurationError, FeatureContractError
from newscat.models.base import softmax


@dataclass(frozen=True)
class LstmConfig:
    hidden_dim: int = 64
    epochs: int = 30
    learning_rate: float = 0.05
    clip_norm: float = 5.0
    max_seq_len: int = 200
    batch_size: int = 32
    seed: int = 0

    def __post_init__(self):
        if min(self.hidden_dim, self.epochs, self.max_seq_len, self.batch_size) < 1:
            raise ConfigurationError("lstm config values must be >= 1")
        if self.learning_rate <= 0 or self.clip_norm <= 0:
            raise ConfigurationError("learning_rate and clip_norm must be > 0")


def init_lstm_params(emb_dim, hidden_dim, n_classes, rng):
    scale = 0.08
    H = hidden_dim
    return {
        "Wx": rng.uniform(-scale, scale, (emb_dim, 4 * H)),
        "Wh": rng.uniform(-scale, scale, (H, 4 * H)),
        "b": np.zeros(4 * H),
        "Wout": rng.uniform(-scale, scale, (H, n_classes)),
        "bout": np.zeros(n_classes),
    }


def _sigmoid(x):
    return 1.0 / (1.0 + np.exp(-np.clip(x, -500, 500)))


def lstm_forward(params, X_emb, mask):
    """Run the recurrence; returns (final_hidden, caches for backprop).

    X_emb: (B, T, E) frozen embedding inputs; mask: (B, T) 1 for real
    tokens, 0 for padding (state carries unchanged through padding).
    """
    B, T, _ = X_emb.shape
    H = params["Wh"].shape[0]
    h = np.zeros((B, H))
    c = np.zeros((B, H))
    caches = []
    for t in range(T):
        x_t = X_emb[:, t, :]
        m = mask[:, t][:, None]
        a = x_t @ params["Wx"] + h @ params["Wh"] + params["b"]
        i = _sigmoid(a[:, :H])
        f = _sigmoid(a[:, H : 2 * H])
        o = _sigmoid(a[:, 2 * H : 3 * H])
        g = np.tanh(a[:, 3 * H :])
        c_new = f * c + i * g
        h_new = o * np.tanh(c_new)
        caches.append((x_t, h, c, i, f, o, g, c_new, m))
        h = m * h_new + (1.0 - m) * h
        c = m * c_new + (1.0 - m) * c
    return h, caches


def lstm_loss_and_grads(params, X_emb, mask, y):
    """Mean cross-entropy loss and analytic gradients for every parameter.

    Shared by the training loop and the finite-difference gradient test.
    """
    B = len(X_emb)
    n_classes = params["Wout"].shape[1]
    h_final, caches = lstm_forward(params, X_emb, mask)
    logits = h_final @ params["Wout"] + params["bout"]
    probs = softmax(logits)
    Y = np.eye(n_classes)[np.asarray(y, dtype=np.int64)]
    loss = float(-np.sum(Y * np.log(probs + 1e-300)) / B)

    grads = {k: np.zeros_like(v) for k, v in params.items()}
    residual = (probs - Y) / B
    grads["Wout"] = h_final.T @ residual
    grads["bout"] = residual.sum(axis=0)
    H = params["Wh"].shape[0]
    dh = residual @ params["Wout"].T
    dc = np.zeros((B, H))
    for t in reversed(range(len(caches))):
        x_t, h_prev, c_prev, i, f, o, g, c_new, m = caches[t]
        dh_new = dh * m
        dc_new = dc * m
        tanh_c = np.tanh(c_new)
        do = dh_new * tanh_c
        dc_new = dc_new + dh_new * o * (1.0 - tanh_c**2)
        di = dc_new * g
        df = dc_new * c_prev
        dg = dc_new * i
        da = np.concatenate(
            [
                di * i * (1.0 - i),
                df * f * (1.0 - f),
                do * o * (1.0 - o),
                dg * (1.0 - g**2),
            ],
            axis=1,
        )
        grads["Wx"] += x_t.T @ da
        grads["Wh"] += h_prev.T @ da
        grads["b"] += da.sum(axis=0)
        dh = dh * (1.0 - m) + da @ params["Wh"].T
        dc = dc * (1.0 - m) + dc_new * f
    return loss, grads


def _clip_global_norm(grads, clip_norm):
    total = np.sqrt(sum(np.sum(g**2) for g in grads.values()))
    if total > clip_norm:
        scale = clip_norm / total
        return {k: g * scale for k, g in grads.items()}
    return grads


class LstmClassifier:
    kind = "lstm"
    feature_contract = "sequence"

    def __init__(self, label_names, table, config: LstmConfig = LstmConfig()):
        self.label_names = tuple(label_names)
        self.table = table  # frozen EmbeddingTable; may be attached post-load
        self.config = config
        self.params = None
        self.loss_trace: list[float] = []

    def _embed(self, sequences):
        """Pad/truncate token-id sequences into (B, T, E) plus mask."""
        if self.table is None:
            raise FeatureContractError("no embedding table attached")
        T = max(
            1, min(self.config.max_seq_len, max((len(s) for s in sequences), default=1))
        )
        B = len(sequences)
        X = np.zeros((B, T, self.table.dim))
        mask = np.zeros((B, T))
        for b, seq in enumerate(sequences):
            seq = list(seq)[: self.config.max_seq_len]
            for t, row in enumerate(seq):
                X[b, t] = self.table.vectors[row]
                mask[b, t] = 1.0
        return X, mask

    def fit(self, sequences, y):
        if not sequences:
            raise FeatureContractError("empty sequence set")
        y = np.asarray(y, dtype=np.int64)
        rng = np.random.default_rng(self.config.seed)
        self.params = init_lstm_params(
            self.table.dim, self.config.hidden_dim, len(self.label_names), rng
        )
        X, mask = self._embed(sequences)
        n = len(sequences)
        self.loss_trace = []
        for _epoch in range(self.config.epochs):
            order = rng.permutation(n)
            epoch_loss = 0.0
            for start in range(0, n, self.config.batch_size):
                batch = order[start : start + self.config.batch_size]
                loss, grads = lstm_loss_and_grads(
                    self.params, X[batch], mask[batch], y[batch]
                )
                grads = _clip_global_norm(grads, self.config.clip_norm)
                for k in self.params:
                    self.params[k] -= self.config.learning_rate * grads[k]
                epoch_loss += loss * len(batch)
            self.loss_trace.append(epoch_loss / n)
        return self

    def predict_proba(self, sequences) -> np.ndarray:
        X, mask = self._embed(sequences)
        h_final, _ = lstm_forward(self.params, X, mask)
        return softmax(h_final @ self.params["Wout"] + self.params["bout"])

    def to_params(self) -> dict:
        return {
            "hidden_dim": self.config.hidden_dim,
            "max_seq_len": self.config.max_seq_len,
            "weights": {k: v.tolist() for k, v in self.params.items()},
        }

    @classmethod
    def from_params(cls, label_names, params) -> "LstmClassifier":
        model = cls(
            label_names,
            table=None,
            config=LstmConfig(
                hidden_dim=params["hidden_dim"],
                max_seq_len=params["max_seq_len"],
            ),
        )
        model.params = {k: np.array(v) for k, v in params["weights"].items()}
        return model
