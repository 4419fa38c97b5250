"""Desk-scale drawing games: communication, reconstruction, autoencoder,
equivariance and mixed-loss.

A drawer network A looks at a scene (one bright disc on a G x G grid) and
places T small discs on its own G x G drawing. Viewer networks score the
drawing and A is trained by advantage actor-critic on the negative log of
their losses. All games share one runner; each component (viewer B,
reconstructor R, frozen autoencoder AE, mapper M) draws from its own named
random stream, so switching components off never perturbs the others.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from ._rng import substream
from .canvas import ConfigurationError, encode_ppm
from .nn import (
    AdamState,
    DenseNet,
    adam_step,
    backward,
    cross_entropy_loss,
    forward,
    log_softmax,
    mse_loss,
    param_hash,
)

REWARD_EPS = 1e-6
GAMES = ("communication", "reconstruction", "autoencoder", "equivariance", "mixed")


class UnsupportedGameError(ConfigurationError):
    pass


def reward_from_loss(loss, mode="neg_log"):
    """-ln(loss + 1e-6); ``mode="neg_loss"`` gives plain -loss instead."""
    if mode == "neg_loss":
        return -np.asarray(loss, dtype=np.float64)
    return -np.log(np.asarray(loss, dtype=np.float64) + REWARD_EPS)


# --- scenes ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Scene:
    grid: np.ndarray  # (G, G) in [0, 1]
    position_index: int


SCENE_RADIUS = 2


def lattice_centres(K, G):
    n = math.isqrt(K)
    if n * n != K:
        raise ConfigurationError(f"K must be a perfect square, got {K}")
    margin = SCENE_RADIUS + 1
    spacing = (G - 2 * margin) // max(n - 1, 1) if n > 1 else 0
    centres = [int(math.floor(G / 2 + (i - (n - 1) / 2) * spacing + 0.5)) for i in range(n)]
    if centres[0] - SCENE_RADIUS < 0 or centres[-1] + SCENE_RADIUS > G - 1:
        raise ConfigurationError(f"a {n}x{n} lattice does not fit in a {G}x{G} grid")
    return centres


def disc_grid(cx, cy, radius, G):
    ys, xs = np.mgrid[:G, :G]
    return ((xs - cx) ** 2 + (ys - cy) ** 2 <= math.floor(radius * radius)).astype(np.float64)


def make_scene(position_index, K, G=16):
    if not 0 <= position_index < K:
        raise ConfigurationError(f"position index {position_index} outside [0, {K})")
    centres = lattice_centres(K, G)
    n = len(centres)
    row, col = divmod(position_index, n)
    return Scene(disc_grid(centres[col], centres[row], SCENE_RADIUS, G), position_index)


def all_scenes(K, G):
    return np.stack([make_scene(i, K, G).grid.ravel() for i in range(K)])


def shift_index(K):
    """Cyclic +1 horizontal translation on the scene lattice."""
    n = math.isqrt(K)
    return np.array([(i // n) * n + ((i % n) + 1) % n for i in range(K)])


# --- drawings --------------------------------------------------------------


def mark_stamps(G, radius=1):
    """(G*G, G*G) boolean: stamp[c] is the disc drawn by placing a mark at cell c."""
    stamps = np.zeros((G * G, G * G), dtype=bool)
    for c in range(G * G):
        y, x = divmod(c, G)
        stamps[c] = disc_grid(x, y, radius, G).ravel() > 0
    return stamps


def render_drawings(actions, stamps):
    """Paint (B, T) action indices onto blank drawings; later marks overwrite.

    Action a places a mark at cell ``a % G**2`` with intensity ``a // G**2``.
    """
    actions = np.atleast_2d(actions)
    n_cells = stamps.shape[0]
    out = np.zeros((actions.shape[0], n_cells))
    for t in range(actions.shape[1]):
        a = actions[:, t]
        mask = stamps[a % n_cells]
        out = np.where(mask, (a // n_cells)[:, None].astype(np.float64), out)
    return out


def drawer_states(scenes, T):
    """(B, T, G*G + T): scene concatenated with a one-hot step index."""
    B = scenes.shape[0]
    eye = np.eye(T)
    return np.concatenate(
        [np.repeat(scenes[:, None, :], T, axis=1), np.broadcast_to(eye, (B, T, T))], axis=2
    )


def sample_categorical(probs, rng):
    u = rng.random(probs.shape[0])
    idx = (np.cumsum(probs, axis=1) < u[:, None]).sum(axis=1)
    return np.minimum(idx, probs.shape[1] - 1)


class Drawer:
    """Policy network plus separate value network (the critic)."""

    def __init__(self, n_inputs, n_actions, hidden, rng, value_hidden=32):
        self.policy = DenseNet.init((n_inputs, hidden, n_actions), rng, head="softmax", zero_last=True)
        self.value = DenseNet.init((n_inputs, value_hidden, 1), rng, zero_last=True)
        self.policy_opt = AdamState.zeros(self.policy.n_params)
        self.value_opt = AdamState.zeros(self.value.n_params)

    def probs(self, states):
        return forward(self.policy, states)[-1]

    def sample(self, states, rng):
        return sample_categorical(self.probs(states), rng)

    def greedy(self, states):
        return np.argmax(forward(self.policy, states)[-2], axis=1)


def actor_critic_loss(policy, value, states, actions, returns, entropy_beta=0.01, advantages=None):
    """Advantage actor-critic objective and its gradients.

    loss = -mean(log pi(a|s) * A) + mean((R - V(s))**2) - entropy_beta * mean(H)

    with A = R - V(s) held constant (no gradient through the baseline) unless
    ``advantages`` is given. Returns (loss, policy_grad, value_grad, stats).
    """
    states = np.atleast_2d(states)
    actions = np.asarray(actions, dtype=np.int64).ravel()
    returns = np.asarray(returns, dtype=np.float64).ravel()
    n = len(actions)
    acts_p = forward(policy, states)
    logits, probs = acts_p[-2], acts_p[-1]
    acts_v = forward(value, states)
    v = acts_v[-1][:, 0]
    adv = returns - v if advantages is None else np.asarray(advantages, dtype=np.float64).ravel()
    logp = log_softmax(logits)
    lp_a = logp[np.arange(n), actions]
    ent = -(probs * logp).sum(axis=1)
    policy_loss = -np.mean(lp_a * adv)
    value_loss = np.mean((returns - v) ** 2)
    loss = policy_loss + value_loss - entropy_beta * ent.mean()
    onehot = np.zeros_like(probs)
    onehot[np.arange(n), actions] = 1.0
    g_logits = -(onehot - probs) * adv[:, None] / n
    g_logits += entropy_beta * probs * (logp + ent[:, None]) / n
    g_policy = backward(policy, acts_p, g_logits)
    g_value = backward(value, acts_v, (-2.0 * (returns - v) / n)[:, None])
    stats = {
        "policy_loss": float(policy_loss),
        "value_loss": float(value_loss),
        "entropy": float(ent.mean()),
        "advantage_mean": float(adv.mean()),
    }
    return float(loss), g_policy, g_value, stats


def actor_critic_update(drawer, states, actions, returns, lr=3e-3, entropy_beta=0.01, normalize=False):
    """One Adam step on the actor-critic objective; updates ``drawer`` in place
    and returns the stats. ``normalize`` rescales the advantages of the batch
    to unit standard deviation before the policy step."""
    adv = None
    if normalize:
        adv = np.asarray(returns, dtype=np.float64).ravel() - drawer.value(np.atleast_2d(states))[:, 0]
        adv = adv / (adv.std() + 1e-8)
    _, gp, gv, stats = actor_critic_loss(drawer.policy, drawer.value, states, actions, returns, entropy_beta, adv)
    drawer.policy, drawer.policy_opt = adam_step(drawer.policy, gp, drawer.policy_opt, lr)
    drawer.value, drawer.value_opt = adam_step(drawer.value, gv, drawer.value_opt, lr)
    return stats


# --- critics ---------------------------------------------------------------


class Learner:
    """A network with its Adam state."""

    def __init__(self, net, lr):
        self.net = net
        self.lr = lr
        self.opt = AdamState.zeros(net.n_params)

    def step(self, acts, grad_logits):
        g = backward(self.net, acts, grad_logits)
        self.net, self.opt = adam_step(self.net, g, self.opt, self.lr)


def pretrain_autoencoder(scenes, epochs=3000, seed=0, lr=1e-2, bottleneck=16):
    """Dense autoencoder G^2 -> bottleneck -> G^2 fitted on scenes only."""
    scenes = np.atleast_2d(scenes)
    d = scenes.shape[1]
    net = DenseNet.init((d, bottleneck, d), substream(seed, "AE"))
    opt = AdamState.zeros(net.n_params)
    for _ in range(int(epochs)):
        acts = forward(net, scenes)
        _, _, g = mse_loss(acts[-1], scenes)
        net, opt = adam_step(net, backward(net, acts, g), opt, lr)
    return net


def autoencoder_mse(ae, scenes):
    return mse_loss(ae(np.atleast_2d(scenes)), scenes)[0]


# --- configuration and report ---------------------------------------------


@dataclass
class GameConfig:
    game: str = "communication"
    K: int = 4
    G: int = 16
    T: int = 4
    episodes: int = 20000
    batch_size: int = 32
    seed: int = 0
    hidden: int = 64
    lr_drawer: float = 3e-3
    lr_viewer: float = 3e-3
    entropy_beta: float = 0.01
    normalize_advantages: bool = False
    w_B: float = 1.0
    w_R: float = 1.0
    w_AE: float = 1.0
    w_E: float = 1.0
    reward_mode: str = "neg_log"
    drawer_mode: str = "learn"  # learn | uniform | constant
    mark_radius: int = 1
    ae_epochs: int = 3000
    ae_lr: float = 1e-2
    eval_pairs: int = 1000
    log_every: int = 1

    def validate(self):
        if self.game not in GAMES:
            raise UnsupportedGameError(f"unsupported game {self.game!r}; choose from {', '.join(GAMES)}")
        if self.drawer_mode not in ("learn", "uniform", "constant"):
            raise ConfigurationError(f"unknown drawer_mode {self.drawer_mode!r}")
        if self.reward_mode not in ("neg_log", "neg_loss"):
            raise ConfigurationError(f"unknown reward_mode {self.reward_mode!r}")
        if self.K < 2 or self.T < 0 or self.episodes < 0 or self.batch_size < 1:
            raise ConfigurationError("K >= 2, T >= 0, episodes >= 0 and batch_size >= 1 required")
        lattice_centres(self.K, self.G)
        return self


def _fmt(x):
    return repr(float(x))


@dataclass
class TrainingReport:
    game: str
    config: dict
    metrics: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    images: dict = field(default_factory=dict)  # name -> (K, G*G) grids

    def metrics_csv(self):
        if not self.metrics:
            return ""
        cols = list(self.metrics[0])
        lines = [",".join(cols)]
        for row in self.metrics:
            lines.append(",".join(str(row[c]) if isinstance(row[c], int) else _fmt(row[c]) for c in cols))
        return "\n".join(lines) + "\n"

    def montage(self, name="drawings", scale=4):
        return montage(self.images[name], self.config["G"], scale)


def montage(grids, G, scale=4, gap=2):
    """Tile (K, G*G) luminance grids into an RGB image, one tile per position."""
    grids = np.asarray(grids)
    K = grids.shape[0]
    n = math.isqrt(K - 1) + 1
    tile = G * scale
    size = n * tile + (n + 1) * gap
    out = np.full((size, size, 3), 96, dtype=np.uint8)
    for k in range(K):
        r, c = divmod(k, n)
        g = np.clip(grids[k].reshape(G, G), 0, 1)
        img = np.kron(g, np.ones((scale, scale)))
        y, x = gap + r * (tile + gap), gap + c * (tile + gap)
        out[y : y + tile, x : x + tile] = np.rint(img * 255).astype(np.uint8)[:, :, None]
    return out


def montage_ppm(grids, G, scale=4):
    return encode_ppm(montage(grids, G, scale))


# --- runner ----------------------------------------------------------------


class GameRunner:
    def __init__(self, config, autoencoder=None):
        self.cfg = cfg = config.validate()
        seed = cfg.seed
        self.scenes = all_scenes(cfg.K, cfg.G)
        self.shift = shift_index(cfg.K)
        self.stamps = mark_stamps(cfg.G, cfg.mark_radius)
        d = cfg.G * cfg.G
        self.n_actions = 2 * d
        self.drawer = Drawer(d + cfg.T, self.n_actions, cfg.hidden, substream(seed, "init", "A"))
        game = cfg.game
        self.use_B = game in ("communication", "mixed")
        self.use_R = game in ("reconstruction", "equivariance", "mixed")
        self.use_AE = game in ("autoencoder", "mixed")
        self.use_M = game in ("equivariance", "mixed")
        self.B = self.R = self.M = None
        if self.use_B:
            self.B = Learner(DenseNet.init((2 * d, cfg.hidden, 2), substream(seed, "init", "B"), head="softmax"), cfg.lr_viewer)
        if self.use_R:
            self.R = Learner(DenseNet.init((d, cfg.hidden, d), substream(seed, "init", "R")), cfg.lr_viewer)
        if self.use_M:
            self.M = Learner(DenseNet.init((d, cfg.hidden, d), substream(seed, "init", "M")), cfg.lr_viewer)
        self.AE = None
        if self.use_AE:
            self.AE = autoencoder if autoencoder is not None else pretrain_autoencoder(
                self.scenes, cfg.ae_epochs, seed, cfg.ae_lr
            )
        self.rng_scenes = substream(seed, "scenes")
        self.rng_draw = substream(seed, "drawer")
        self.rng_draw2 = substream(seed, "drawer", "transformed")
        self.rng_pairs = substream(seed, "pairs")
        self.constant_actions = substream(seed, "constant").integers(d, 2 * d, cfg.T)
        self.episodes_done = 0

    # drawing -------------------------------------------------------------

    def _act(self, scene_idx, rng, greedy=False):
        cfg = self.cfg
        B = len(scene_idx)
        if cfg.T == 0:
            return np.zeros((B, 0), dtype=np.int64), np.zeros((0, cfg.G * cfg.G + cfg.T))
        states = drawer_states(self.scenes[scene_idx], cfg.T).reshape(B * cfg.T, -1)
        if cfg.drawer_mode == "constant":
            actions = np.tile(self.constant_actions, (B, 1))
        elif greedy:
            actions = self.drawer.greedy(states).reshape(B, cfg.T)
        else:
            actions = self.drawer.sample(states, rng).reshape(B, cfg.T)
        return actions, states

    def draw(self, scene_idx, rng=None, greedy=False):
        actions, _ = self._act(np.asarray(scene_idx), rng, greedy)
        return render_drawings(actions, self.stamps) if actions.shape[1] else np.zeros((len(scene_idx), self.cfg.G**2))

    def greedy_drawings(self):
        return self.draw(np.arange(self.cfg.K), greedy=True)

    # one batch -----------------------------------------------------------

    def _rewards(self, x):
        return reward_from_loss(x, self.cfg.reward_mode)

    def ae_rewards(self, drawings):
        """Per-scene AE reward when drawing k is shown for scene k."""
        per = ((self.AE(drawings) - self.scenes) ** 2).mean(axis=1)
        return self._rewards(per)

    def train_batch(self):
        cfg = self.cfg
        nb = cfg.batch_size
        d = cfg.G * cfg.G
        idx = self.rng_scenes.integers(0, cfg.K, nb)
        actions, states = self._act(idx, self.rng_draw)
        D = render_drawings(actions, self.stamps) if cfg.T else np.zeros((nb, d))
        target = self.scenes[idx]
        row = {"episode": 0}
        comps = {}
        need_D2 = self.use_M
        if need_D2:
            idx2 = self.shift[idx]
            actions2, states2 = self._act(idx2, self.rng_draw2)
            D2 = render_drawings(actions2, self.stamps) if cfg.T else np.zeros((nb, d))
            target2 = self.scenes[idx2]

        if self.use_B:
            same = self.rng_pairs.random(nb) < 0.5
            other = (idx + 1 + self.rng_pairs.integers(0, cfg.K - 1, nb)) % cfg.K
            idx_b = np.where(same, idx, other)
            acts = forward(self.B.net, np.concatenate([D, self.scenes[idx_b]], axis=1))
            labels = same.astype(np.int64)
            loss, per, g = cross_entropy_loss(acts[-2], labels)
            comps["r_B"] = self._rewards(per)
            row["accuracy"] = float(np.mean(np.argmax(acts[-2], axis=1) == labels))
            row["ce_B"] = loss
            self.B.step(acts, g)

        if self.use_R:
            if cfg.game == "equivariance":
                inp = np.concatenate([D, D2])
                tgt = np.concatenate([target, target2])
            else:
                inp, tgt = D, target
            acts = forward(self.R.net, inp)
            loss, per, g = mse_loss(acts[-1], tgt)
            if cfg.game == "equivariance":
                comps["r_R1"] = self._rewards(per[:nb])
                comps["r_R2"] = self._rewards(per[nb:])
            else:
                comps["r_R"] = self._rewards(per)
            row["mse_R"] = loss
            self.R.step(acts, g)

        if self.use_AE:
            _, per, _ = mse_loss(self.AE(D), target)
            comps["r_AE"] = self._rewards(per)
            row["mse_AE"] = float(per.mean())

        if self.use_M:
            acts = forward(self.M.net, D)
            loss, per, g = mse_loss(acts[-1], D2)
            comps["r_E"] = self._rewards(per)
            row["mse_M"] = loss
            self.M.step(acts, g)

        total = self.combine(comps)
        for k, v in comps.items():
            row[k] = float(v.mean())
        row["reward"] = float(total.mean())

        if cfg.drawer_mode == "learn" and cfg.T > 0:
            st, ac, ret = [states], [actions.ravel()], [np.repeat(total, cfg.T)]
            if need_D2 and (cfg.game == "equivariance" or cfg.w_E != 0):
                st.append(states2)
                ac.append(actions2.ravel())
                ret.append(np.repeat(total, cfg.T))
            stats = actor_critic_update(
                self.drawer, np.concatenate(st), np.concatenate(ac), np.concatenate(ret),
                cfg.lr_drawer, cfg.entropy_beta, cfg.normalize_advantages,
            )
            row["entropy"] = stats["entropy"]
        self.episodes_done += nb
        row["episode"] = self.episodes_done
        return row, comps, total

    def combine(self, comps):
        cfg = self.cfg
        game = cfg.game
        if game == "communication":
            return comps["r_B"]
        if game == "reconstruction":
            return comps["r_R"]
        if game == "autoencoder":
            return comps["r_AE"]
        if game == "equivariance":
            return cfg.w_R * (comps["r_R1"] + comps["r_R2"]) + cfg.w_E * comps["r_E"]
        return cfg.w_B * comps["r_B"] + cfg.w_R * comps["r_R"] + cfg.w_AE * comps["r_AE"] + cfg.w_E * comps["r_E"]

    # evaluation ----------------------------------------------------------

    def evaluate(self):
        """Held-out scores using each position's greedy drawing."""
        cfg = self.cfg
        drawings = self.greedy_drawings()
        out = {}
        if self.use_B:
            out["accuracy"] = self.viewer_accuracy(drawings)
        if self.use_R:
            pred = self.R.net(drawings)
            out["mse_R"] = float(((pred - self.scenes) ** 2).mean())
            out["mse_mean_predictor"] = mean_predictor_mse(self.scenes)
            out["r_R"] = float(self._rewards(((pred - self.scenes) ** 2).mean(axis=1)).mean())
        if self.use_AE:
            per = ((self.AE(drawings) - self.scenes) ** 2).mean(axis=1)
            out["r_AE"] = float(self._rewards(per).mean())
            out["mse_AE"] = float(per.mean())
        if self.use_M:
            d2 = drawings[self.shift]
            per_m = ((self.M.net(drawings) - d2) ** 2).mean(axis=1)
            out["r_E"] = float(self._rewards(per_m).mean())
            out["mse_M"] = float(per_m.mean())
        if cfg.game == "equivariance":
            pred1 = self.R.net(drawings)
            pred2 = self.R.net(drawings[self.shift])
            r1 = self._rewards(((pred1 - self.scenes) ** 2).mean(axis=1))
            r2 = self._rewards(((pred2 - self.scenes[self.shift]) ** 2).mean(axis=1))
            r_e = self._rewards(per_m)
            out["reward"] = float((cfg.w_R * (r1 + r2) + cfg.w_E * r_e).mean())
        elif cfg.game == "autoencoder":
            out["reward"] = out["r_AE"]
        elif cfg.game == "reconstruction":
            out["reward"] = out["r_R"]
        out["distinct_drawings"] = int(len({d.tobytes() for d in drawings}))
        return out

    def viewer_accuracy(self, drawings=None, n_pairs=None, rng=None):
        cfg = self.cfg
        drawings = self.greedy_drawings() if drawings is None else drawings
        n = n_pairs or cfg.eval_pairs
        rng = rng or substream(cfg.seed, "eval", "pairs")
        idx = rng.integers(0, cfg.K, n)
        same = np.arange(n) < n // 2  # exactly balanced
        other = (idx + 1 + rng.integers(0, cfg.K - 1, n)) % cfg.K
        idx_b = np.where(same, idx, other)
        logits = forward(self.B.net, np.concatenate([drawings[idx], self.scenes[idx_b]], axis=1))[-2]
        return float(np.mean(np.argmax(logits, axis=1) == same.astype(np.int64)))

    def run(self):
        cfg = self.cfg
        report = TrainingReport(cfg.game, asdict(cfg))
        report.summary["initial"] = self.evaluate()
        if self.AE is not None:
            report.summary["ae_pretrain_mse"] = autoencoder_mse(self.AE, self.scenes)
            report.summary["ae_hash_before"] = param_hash(self.AE)
        n_batches = cfg.episodes // cfg.batch_size
        for b in range(n_batches):
            row, _, _ = self.train_batch()
            if (b + 1) % cfg.log_every == 0 or b == n_batches - 1:
                report.metrics.append(row)
        report.summary["final"] = self.evaluate()
        if self.AE is not None:
            report.summary["ae_hash_after"] = param_hash(self.AE)
        report.summary["episodes"] = self.episodes_done
        drawings = self.greedy_drawings()
        report.images["scenes"] = self.scenes
        report.images["drawings"] = drawings
        if self.R is not None:
            report.images["reconstructions"] = self.R.net(drawings)
        if self.AE is not None:
            report.images["ae_reconstructions"] = self.AE(drawings)
            report.summary["constant_drawing_baseline"] = self.ae_constant_baseline(drawings)
        return report

    def ae_constant_baseline(self, drawings):
        """Best AE reward obtainable by showing one drawing for every scene
        (candidates: blank and each of the agent's final drawings)."""
        cands = np.concatenate([np.zeros((1, drawings.shape[1])), drawings])
        best = -math.inf
        for c in cands:
            per = ((self.AE(np.repeat(c[None], self.cfg.K, axis=0)) - self.scenes) ** 2).mean(axis=1)
            best = max(best, float(self._rewards(per).mean()))
        return best


def mean_predictor_mse(scenes):
    """MSE of always predicting the mean scene (uniform over positions)."""
    return float(((scenes - scenes.mean(axis=0)) ** 2).mean())


def play(config, autoencoder=None):
    return GameRunner(config, autoencoder).run()


def play_communication_game(config):
    return play(_as(config, "communication"))


def play_reconstruction_game(config):
    return play(_as(config, "reconstruction"))


def play_ae_game(config, autoencoder=None):
    return play(_as(config, "autoencoder"), autoencoder)


def play_equivariance_game(config):
    return play(_as(config, "equivariance"))


def play_mixed_game(config, autoencoder=None):
    return play(_as(config, "mixed"), autoencoder)


def _as(config, game):
    return replace(config, game=game)


# Settings that train reliably at desk scale; GameConfig fields not listed
# keep their defaults.
GAME_PRESETS = {
    "communication": {"K": 4, "episodes": 50000, "lr_drawer": 1e-2},
    "reconstruction": {"K": 9, "episodes": 20000, "lr_drawer": 1e-2},
    "autoencoder": {"K": 9, "episodes": 20000, "lr_drawer": 1e-2},
    "equivariance": {
        "K": 4,
        "episodes": 20000,
        "lr_drawer": 1e-2,
        "lr_viewer": 3e-2,
        "entropy_beta": 0.05,
        "normalize_advantages": True,
    },
    # r_E saturates for any constant drawing, so at weight 1 it swamps the
    # other terms and the drawer collapses; a small weight keeps it a tie-breaker
    "mixed": {"K": 25, "episodes": 60000, "lr_drawer": 1e-2, "w_E": 0.01},
}


def game_config(game, **overrides):
    """GameConfig for ``game`` with its preset applied, then ``overrides``."""
    if game not in GAMES:
        raise UnsupportedGameError(f"unsupported game {game!r}; choose from {', '.join(GAMES)}")
    fields = {**GAME_PRESETS[game], **overrides, "game": game}
    return GameConfig(**fields).validate()


def constant_drawing_run(config, autoencoder=None):
    """The same protocol with A replaced by a fixed drawing for every scene."""
    return play(replace(config, drawer_mode="constant"), autoencoder)
