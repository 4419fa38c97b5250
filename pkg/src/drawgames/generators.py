"""Parameterized drawing modules and the genomes that drive them.

Each module is a pure function of its parameters, a seed and the canvas size,
returning a list of marks. :class:`Genome` wraps a module id with a flat
parameter vector so the search engines can mutate and serialize it.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field

import numpy as np

from ._rng import fresh_seed, substream
from .canvas import BLACK, WHITE, Bezier, ConfigurationError, Segment, draw, new_canvas, paint

TURTLE_VIEW = 5
TURTLE_INPUTS = TURTLE_VIEW * TURTLE_VIEW + 4


def _sigmoid(x):
    return 0.5 * (1.0 + np.tanh(0.5 * x))


def _softplus(x):
    return np.logaddexp(0.0, x)


class RecurrentController:
    """Gated recurrent cell (LSTM wiring) with a linear readout.

    Flat weight layout, in order:
      W  (4H, I+H)  gate rows ordered input, forget, output, candidate;
                    columns are [input, previous hidden]
      b  (4H,)
      V  (O, H)     readout
      c  (O,)
    """

    def __init__(self, input_size, hidden_size, output_size, weights=None):
        self.input_size = int(input_size)
        self.hidden_size = int(hidden_size)
        self.output_size = int(output_size)
        n = self.weight_count(input_size, hidden_size, output_size)
        if weights is None:
            weights = np.zeros(n)
        weights = np.asarray(weights, dtype=np.float64)
        if weights.shape != (n,):
            raise ConfigurationError(f"controller expects {n} weights, got {weights.shape}")
        self.weights = weights
        i, h, o = self.input_size, self.hidden_size, self.output_size
        k = 4 * h * (i + h)
        self.W = weights[:k].reshape(4 * h, i + h)
        self.b = weights[k : k + 4 * h]
        k += 4 * h
        self.V = weights[k : k + o * h].reshape(o, h)
        self.c = weights[k + o * h :]

    @staticmethod
    def weight_count(input_size, hidden_size, output_size):
        i, h, o = input_size, hidden_size, output_size
        return 4 * h * (i + h) + 4 * h + o * h + o

    @classmethod
    def random(cls, input_size, hidden_size, output_size, rng, scale=1.0):
        n = cls.weight_count(input_size, hidden_size, output_size)
        return cls(input_size, hidden_size, output_size, rng.normal(0.0, scale, n))

    def initial_state(self):
        return np.zeros(self.hidden_size), np.zeros(self.hidden_size)

    def step(self, x, state):
        h, c = state
        z = self.W @ np.concatenate([x, h]) + self.b
        n = self.hidden_size
        i = _sigmoid(z[:n])
        f = _sigmoid(z[n : 2 * n])
        o = _sigmoid(z[2 * n : 3 * n])
        g = np.tanh(z[3 * n :])
        c = f * c + i * g
        h = o * np.tanh(c)
        return self.V @ h + self.c, (h, c)


# --- line field -----------------------------------------------------------


def line_field(params, seed, canvas_size, color=BLACK):
    """Random segments.

    params: (count, length_mean, length_spread, angle_mean, angle_concentration[, thickness]).
    Angles follow a von Mises law; an infinite concentration pins every
    segment to ``angle_mean``.
    """
    n = int(round(params[0]))
    if n <= 0:
        return []
    mean, spread, mu, kappa = (float(p) for p in params[1:5])
    thickness = max(1, int(round(params[5]))) if len(params) > 5 else 1
    w, h = canvas_size
    rng = substream(seed, "line_field")
    xs = rng.uniform(0, w - 1, n)
    ys = rng.uniform(0, h - 1, n)
    lengths = np.abs(rng.normal(mean, max(spread, 0.0), n))
    if math.isinf(kappa):
        angles = np.full(n, mu)
    else:
        angles = rng.vonmises(mu, max(kappa, 0.0), n)
    dx = 0.5 * lengths * np.cos(angles)
    dy = 0.5 * lengths * np.sin(angles)
    return [
        Segment(xs[i] - dx[i], ys[i] - dy[i], xs[i] + dx[i], ys[i] + dy[i], color, thickness)
        for i in range(n)
    ]


# --- averaging lines -------------------------------------------------------


def circular_mean(a, b):
    sx, sy = math.cos(a) + math.cos(b), math.sin(a) + math.sin(b)
    if sx == 0 and sy == 0:
        return a
    return math.atan2(sy, sx)


def _first_hit(seg, committed, skip):
    """(index, t) of the committed segment first crossed by ``seg``, or None.

    ``t`` is the crossing's position along ``seg``; indices in ``skip`` are
    ignored."""
    if len(committed) == 0:
        return None
    arr = committed
    ax0, ay0, ax1, ay1 = seg
    rx, ry = ax1 - ax0, ay1 - ay0
    sx, sy = arr[:, 2] - arr[:, 0], arr[:, 3] - arr[:, 1]
    qx, qy = arr[:, 0] - ax0, arr[:, 1] - ay0
    denom = rx * sy - ry * sx
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (qx * sy - qy * sx) / denom
        u = (qx * ry - qy * rx) / denom
    # crossings at the start point are behind us: the line already stands there
    hit = (denom != 0) & (t > 1e-12) & (t <= 1) & (u >= 0) & (u <= 1)
    for k in skip:
        if k is not None:
            hit[k] = False
    if not hit.any():
        return None
    idx = np.flatnonzero(hit)
    j = int(idx[np.argmin(t[idx])])
    return j, float(t[j])


def averaging_lines(params, seed, canvas_size, starts=None, color=BLACK):
    """Lines that steer towards the mean angle of any line they run into.

    params: (line_count, step_length, max_steps[, thickness]). ``starts``
    optionally fixes (x, y, angle) for each line instead of drawing it from
    the seed. A line that meets a committed segment stops at the crossing
    point and carries on from there at the circular mean of the two angles.
    """
    n_lines = int(round(params[0]))
    step = float(params[1])
    max_steps = int(round(params[2]))
    thickness = max(1, int(round(params[3]))) if len(params) > 3 else 1
    w, h = canvas_size
    rng = substream(seed, "averaging_lines")
    buf = np.empty((64, 5))  # rows: x0, y0, x1, y1, angle
    used = 0
    marks = []
    if starts is not None:
        n_lines = len(starts)
    for li in range(max(n_lines, 0)):
        if starts is not None:
            x, y, theta = (float(v) for v in starts[li])
        else:
            x, y = rng.uniform(0, w - 1), rng.uniform(0, h - 1)
            theta = rng.uniform(-math.pi, math.pi)
        prev = crossed = None
        for _ in range(max_steps):
            nx, ny = x + step * math.cos(theta), y + step * math.sin(theta)
            hit = _first_hit((x, y, nx, ny), buf[:used, :4], (prev, crossed))
            if hit is not None:
                # grow up to the crossing, then continue from it at the mean angle
                j, t = hit
                nx, ny = x + t * (nx - x), y + t * (ny - y)
                crossed = j
                new_theta = circular_mean(theta, buf[j, 4])
            elif not (0 <= nx <= w - 1 and 0 <= ny <= h - 1):
                break
            else:
                crossed, new_theta = None, theta
            if math.hypot(nx - x, ny - y) > 1e-9:
                if used == len(buf):
                    buf = np.concatenate([buf, np.empty_like(buf)])
                buf[used] = (x, y, nx, ny, theta)
                prev = used
                used += 1
                marks.append(Segment(x, y, nx, ny, color, thickness))
            x, y, theta = nx, ny, new_theta
    return marks


# --- turtles ---------------------------------------------------------------


def _local_view(pix, x, y):
    h, w = pix.shape[:2]
    r = TURTLE_VIEW // 2
    xi, yi = int(math.floor(x + 0.5)), int(math.floor(y + 0.5))
    view = np.ones((TURTLE_VIEW, TURTLE_VIEW))
    ya, yb = max(0, yi - r), min(h, yi + r + 1)
    xa, xb = max(0, xi - r), min(w, xi + r + 1)
    if ya < yb and xa < xb:
        view[ya - (yi - r) : yb - (yi - r), xa - (xi - r) : xb - (xi - r)] = grayscale_buffer(pix[ya:yb, xa:xb])
    return view.ravel()


def turtle_pen(controller, steps, canvas, max_step=6.0, thickness=1, color=BLACK):
    """Pen steered by ``controller`` from an axis-aligned 5x5 view of the canvas.

    Inputs: 25 luminance values (off-canvas reads as white), sin and cos of
    the heading, and the pen position scaled to [0, 1]. Outputs: turn
    (pi * tanh), step length (max_step * sigmoid) and a pen-down logit
    (down when >= 0).
    """
    if controller.input_size != TURTLE_INPUTS or controller.output_size != 3:
        raise ConfigurationError(
            f"turtle controller must map {TURTLE_INPUTS} inputs to 3 outputs, "
            f"got {controller.input_size}->{controller.output_size}"
        )
    w, h = canvas.size
    pix = canvas.pixels.copy()
    x, y, heading = w / 2.0, h / 2.0, 0.0
    state = controller.initial_state()
    marks = []
    for _ in range(int(steps)):
        inp = np.concatenate(
            [_local_view(pix, x, y), [math.sin(heading), math.cos(heading), x / (w - 1), y / (h - 1)]]
        )
        out, state = controller.step(inp, state)
        heading += math.pi * math.tanh(out[0])
        length = max_step * float(_sigmoid(out[1]))
        nx = min(max(x + length * math.cos(heading), 0.0), w - 1.0)
        ny = min(max(y + length * math.sin(heading), 0.0), h - 1.0)
        if out[2] >= 0 and (nx, ny) != (x, y):
            mark = Segment(x, y, nx, ny, color, thickness)
            paint(pix, mark)
            marks.append(mark)
        x, y = nx, ny
    return marks


def grayscale_buffer(pix):
    p = pix.astype(np.float64)
    return (0.299 * p[..., 0] + 0.587 * p[..., 1] + 0.114 * p[..., 2]) / 255.0


# --- bezier objects --------------------------------------------------------


def bezier_objects(params, seed, canvas_size, color=BLACK):
    """Chains of C1-continuous cubic Beziers.

    params: (object_count, control_spread, closed_flag, curves_per_object[, thickness]);
    closed_flag > 0.5 joins the last curve back to the first anchor.
    """
    count = int(round(params[0]))
    if count <= 0:
        return []
    spread = float(params[1])
    closed = float(params[2]) > 0.5
    n_curves = max(1, int(round(params[3])))
    thickness = max(1, int(round(params[4]))) if len(params) > 4 else 1
    w, h = canvas_size
    rng = substream(seed, "bezier_objects")
    marks = []
    for _ in range(count):
        center = np.array([rng.uniform(0, w - 1), rng.uniform(0, h - 1)])
        n_anchor = n_curves if closed else n_curves + 1
        angles = np.sort(rng.uniform(0, 2 * math.pi, n_anchor))
        radii = spread * rng.uniform(0.5, 1.0, n_anchor)
        anchors = center + np.stack([radii * np.cos(angles), radii * np.sin(angles)], axis=1)
        t_dir = rng.uniform(0, 2 * math.pi, n_anchor)
        t_len = spread * rng.uniform(0.2, 0.5, n_anchor)
        tangents = np.stack([t_len * np.cos(t_dir), t_len * np.sin(t_dir)], axis=1)
        for i in range(n_curves):
            j = (i + 1) % n_anchor
            a, b = anchors[i], anchors[j]
            marks.append(
                Bezier(
                    tuple(a), tuple(a + tangents[i]), tuple(b - tangents[j]), tuple(b), color, thickness
                )
            )
    return marks


# --- CPPN line grids -------------------------------------------------------

CPPN_ACTIVATIONS = (np.sin, np.tanh, lambda z: np.exp(-z * z), lambda z: z)


def cppn_weight_count(hidden=8):
    return 4 * hidden + (hidden + 1) * 2


def cppn_eval(network_params, x, y, hidden=8):
    """CPPN over inputs (x, y, r). Hidden unit i uses activation i mod 4 of
    (sin, tanh, gaussian, identity). Returns (length_units, angle)."""
    p = np.asarray(network_params, dtype=np.float64)
    if p.shape != (cppn_weight_count(hidden),):
        raise ConfigurationError(f"cppn expects {cppn_weight_count(hidden)} params, got {p.shape}")
    w1 = p[: 3 * hidden].reshape(hidden, 3)
    b1 = p[3 * hidden : 4 * hidden]
    w2 = p[4 * hidden : 4 * hidden + 2 * hidden].reshape(2, hidden)
    b2 = p[6 * hidden :]
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    inp = np.stack([x, y, np.sqrt(x * x + y * y)], axis=-1)
    z = inp @ w1.T + b1
    act = np.empty_like(z)
    for i in range(hidden):
        act[..., i] = CPPN_ACTIVATIONS[i % 4](z[..., i])
    out = act @ w2.T + b2
    return out[..., 0], out[..., 1]


def cppn_line_grid(network_params, grid_n, canvas_size, hidden=8, thickness=1, color=BLACK):
    """One centred segment per node of an n x n grid; length is |out0| grid
    spacings, angle is out1 radians."""
    w, h = canvas_size
    n = int(grid_n)
    centres = (np.arange(n) + 0.5) / n
    gx, gy = np.meshgrid(centres, centres)
    length, angle = cppn_eval(network_params, 2 * gx - 1, 2 * gy - 1, hidden)
    spacing = min(w, h) / n
    half = 0.5 * np.abs(length) * spacing
    cx, cy = gx * w, gy * h
    dx, dy = half * np.cos(angle), half * np.sin(angle)
    marks = []
    for j in range(n):
        for i in range(n):
            marks.append(
                Segment(
                    cx[j, i] - dx[j, i], cy[j, i] - dy[j, i], cx[j, i] + dx[j, i], cy[j, i] + dy[j, i],
                    color, thickness,
                )
            )
    return marks


# --- oscillatory arm -------------------------------------------------------


def arm_positions(params, times, anchor):
    """Pen positions of a 2-link arm with sinusoidal joint angles.

    params: (L1, L2, A1, w1, phi1, A2, w2, phi2); the second angle is
    relative to the first link.
    """
    l1, l2, a1, w1, p1, a2, w2, p2 = (float(v) for v in params[:8])
    t = np.asarray(times, dtype=np.float64)
    th1 = a1 * np.sin(w1 * t + p1)
    th2 = th1 + a2 * np.sin(w2 * t + p2)
    x = anchor[0] + l1 * np.cos(th1) + l2 * np.cos(th2)
    y = anchor[1] + l1 * np.sin(th1) + l2 * np.sin(th2)
    return np.stack([x, y], axis=-1)


def oscillatory_arm(params, steps, canvas_size, dt=0.05, thickness=1, color=BLACK):
    w, h = canvas_size
    pts = arm_positions(params, np.arange(int(steps) + 1) * dt, (w / 2.0, h / 2.0))
    marks = []
    for (xa, ya), (xb, yb) in zip(pts[:-1], pts[1:]):
        if math.hypot(xb - xa, yb - ya) > 1e-9:
            marks.append(Segment(xa, ya, xb, yb, color, thickness))
    return marks


# --- recurrent sketch agents -----------------------------------------------


def gmm_components(output_size):
    k, rem = divmod(output_size - 2, 5)
    if k < 1 or rem:
        raise ConfigurationError("GMM readout size must be 5K + 2")
    return k


def recurrent_agent_draw(
    controller, steps, canvas_size, gmm=False, seed=0, step_scale=4.0, var_floor=1e-4, thickness=1, color=BLACK
):
    """Pen offsets produced by a recurrent controller, integrated from the centre.

    Plain mode reads (dx, dy, pen logit) from the readout, offsets scaled by
    ``step_scale * tanh``. GMM mode reads K mixture logits, K 2-D means, K
    diagonal variances (softplus + ``var_floor``) and 2 pen logits (down, up),
    and samples from them with the seeded stream. The controller sees the
    previous (dx, dy, pen) with offsets divided by ``step_scale``.
    """
    if controller.input_size != 3:
        raise ConfigurationError("recurrent agents take (dx, dy, pen) as input")
    if gmm:
        k = gmm_components(controller.output_size)
    elif controller.output_size != 3:
        raise ConfigurationError("plain recurrent agents output (dx, dy, pen)")
    rng = substream(seed, "recurrent_agent")
    w, h = canvas_size
    x, y = w / 2.0, h / 2.0
    state = controller.initial_state()
    prev = np.zeros(3)
    marks = []
    for _ in range(int(steps)):
        out, state = controller.step(prev, state)
        if gmm:
            logits = out[:k]
            pi = np.exp(logits - logits.max())
            pi /= pi.sum()
            comp = int(rng.choice(k, p=pi))
            mean = out[k + 2 * comp : k + 2 * comp + 2]
            var = _softplus(out[3 * k + 2 * comp : 3 * k + 2 * comp + 2]) + var_floor
            d = rng.normal(mean, np.sqrt(var))
            dx, dy = step_scale * d[0], step_scale * d[1]
            pen_logits = out[5 * k : 5 * k + 2]
            p_down = float(_sigmoid(pen_logits[0] - pen_logits[1]))
            down = rng.random() < p_down
        else:
            dx, dy = step_scale * math.tanh(out[0]), step_scale * math.tanh(out[1])
            down = out[2] >= 0
        nx = min(max(x + dx, 0.0), w - 1.0)
        ny = min(max(y + dy, 0.0), h - 1.0)
        if down and math.hypot(nx - x, ny - y) > 1e-9:
            marks.append(Segment(x, y, nx, ny, color, thickness))
        prev = np.array([dx / step_scale, dy / step_scale, 1.0 if down else 0.0])
        x, y = nx, ny
    return marks


# --- genomes ---------------------------------------------------------------


class ModuleId(str, enum.Enum):
    LineField = "line_field"
    AveragingLines = "averaging_lines"
    TurtlePen = "turtle_pen"
    BezierObjects = "bezier_objects"
    CppnLineGrid = "cppn_line_grid"
    OscillatoryArm = "oscillatory_arm"
    RecurrentAgent = "recurrent_agent"
    RecurrentGmmAgent = "recurrent_gmm_agent"

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("-", "_")
        for m in cls:
            if m.value == key or m.name.lower() == key:
                return m
        raise KeyError(f"unknown module {name!r}")


@dataclass(frozen=True)
class ModuleSpec:
    """How a genome of one module decodes and renders.

    ``ranges`` maps unit-interval genes linearly onto physical parameters
    (genes are clipped to [0, 1]); modules with ``ranges=None`` use raw genes
    as network weights.
    """

    n_params: int
    ranges: tuple | None = None
    init_scale: float = 1.0
    options: dict = field(default_factory=dict)


TURTLE_HIDDEN = 6
AGENT_HIDDEN = 8
GMM_K = 3
CPPN_HIDDEN = 8

MODULES = {
    ModuleId.LineField: ModuleSpec(
        6, ((0, 120), (2, 96), (0, 48), (0, math.pi), (0, 20), (1, 4))
    ),
    ModuleId.AveragingLines: ModuleSpec(4, ((1, 40), (1, 8), (5, 60), (1, 3))),
    ModuleId.TurtlePen: ModuleSpec(
        RecurrentController.weight_count(TURTLE_INPUTS, TURTLE_HIDDEN, 3),
        init_scale=0.5,
        options={"steps": 120, "max_step": 6.0, "thickness": 2},
    ),
    ModuleId.BezierObjects: ModuleSpec(5, ((0, 8), (4, 80), (0, 1), (1, 6), (1, 4))),
    ModuleId.CppnLineGrid: ModuleSpec(
        cppn_weight_count(CPPN_HIDDEN), init_scale=1.0, options={"grid_n": 12, "thickness": 1}
    ),
    ModuleId.OscillatoryArm: ModuleSpec(
        8,
        ((0, 0.25), (0, 0.25), (0, math.pi), (0.1, 3), (0, 2 * math.pi), (0, math.pi), (0.1, 3), (0, 2 * math.pi)),
        options={"steps": 300, "dt": 0.05, "thickness": 2},
    ),
    ModuleId.RecurrentAgent: ModuleSpec(
        RecurrentController.weight_count(3, AGENT_HIDDEN, 3),
        init_scale=1.0,
        options={"steps": 64, "step_scale": 4.0, "thickness": 6},
    ),
    ModuleId.RecurrentGmmAgent: ModuleSpec(
        RecurrentController.weight_count(3, AGENT_HIDDEN, 5 * GMM_K + 2),
        init_scale=1.0,
        options={"steps": 64, "step_scale": 4.0, "thickness": 4},
    ),
}


@dataclass(frozen=True, eq=False)
class Genome:
    module_id: ModuleId
    params: np.ndarray
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "module_id", ModuleId.parse(self.module_id))
        p = np.array(self.params, dtype=np.float64)
        expected = MODULES[self.module_id].n_params
        if p.shape != (expected,):
            raise ConfigurationError(f"{self.module_id.value} genome needs {expected} params, got {p.shape}")
        p.setflags(write=False)
        object.__setattr__(self, "params", p)
        object.__setattr__(self, "seed", int(self.seed))

    def __eq__(self, other):
        return (
            isinstance(other, Genome)
            and self.module_id == other.module_id
            and self.seed == other.seed
            and np.array_equal(self.params, other.params)
        )

    def to_dict(self):
        return {"module_id": self.module_id.value, "seed": self.seed, "params": [float(v) for v in self.params]}

    def to_json(self):
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d):
        return cls(d["module_id"], d["params"], d["seed"])

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def random_genome(module_id, rng):
    module_id = ModuleId.parse(module_id)
    spec = MODULES[module_id]
    if spec.ranges is None:
        params = rng.normal(0.0, spec.init_scale, spec.n_params)
    else:
        params = rng.uniform(0.0, 1.0, spec.n_params)
    return Genome(module_id, params, fresh_seed(rng))


def mutate(genome, sigma, rng):
    if sigma <= 0:
        raise ConfigurationError("mutation sigma must be > 0")
    params = genome.params + rng.normal(0.0, sigma, genome.params.shape)
    return Genome(genome.module_id, params, fresh_seed(rng))


def decode(genome, canvas_size):
    """Physical parameter vector for range-mapped modules."""
    spec = MODULES[genome.module_id]
    if spec.ranges is None:
        return genome.params
    u = np.clip(genome.params, 0.0, 1.0)
    lo = np.array([r[0] for r in spec.ranges], dtype=np.float64)
    hi = np.array([r[1] for r in spec.ranges], dtype=np.float64)
    phys = lo + u * (hi - lo)
    scale = min(canvas_size) / 256.0
    if genome.module_id is ModuleId.LineField:
        phys[1:3] *= scale
    elif genome.module_id is ModuleId.BezierObjects:
        phys[1] *= scale
    elif genome.module_id is ModuleId.AveragingLines:
        phys[1] *= max(scale, 0.25)
    elif genome.module_id is ModuleId.OscillatoryArm:
        phys[:2] *= min(canvas_size)
    return phys


def expand(genome, canvas_size):
    """Marks produced by ``genome`` on a canvas of ``canvas_size`` = (w, h)."""
    m = genome.module_id
    spec = MODULES[m]
    opt = spec.options
    p = decode(genome, canvas_size)
    if m is ModuleId.LineField:
        return line_field(p, genome.seed, canvas_size)
    if m is ModuleId.AveragingLines:
        return averaging_lines(p, genome.seed, canvas_size)
    if m is ModuleId.BezierObjects:
        return bezier_objects(p, genome.seed, canvas_size)
    if m is ModuleId.OscillatoryArm:
        return oscillatory_arm(p, opt["steps"], canvas_size, dt=opt["dt"], thickness=opt["thickness"])
    if m is ModuleId.CppnLineGrid:
        return cppn_line_grid(p, opt["grid_n"], canvas_size, hidden=CPPN_HIDDEN, thickness=opt["thickness"])
    if m is ModuleId.TurtlePen:
        ctrl = RecurrentController(TURTLE_INPUTS, TURTLE_HIDDEN, 3, p)
        blank = new_canvas(*canvas_size, background=WHITE)
        return turtle_pen(ctrl, opt["steps"], blank, max_step=opt["max_step"], thickness=opt["thickness"])
    if m is ModuleId.RecurrentAgent:
        ctrl = RecurrentController(3, AGENT_HIDDEN, 3, p)
        return recurrent_agent_draw(
            ctrl, opt["steps"], canvas_size, seed=genome.seed, step_scale=opt["step_scale"], thickness=opt["thickness"]
        )
    if m is ModuleId.RecurrentGmmAgent:
        ctrl = RecurrentController(3, AGENT_HIDDEN, 5 * GMM_K + 2, p)
        return recurrent_agent_draw(
            ctrl, opt["steps"], canvas_size, gmm=True, seed=genome.seed,
            step_scale=opt["step_scale"], thickness=opt["thickness"],
        )
    raise ConfigurationError(f"unknown module {m}")


def render(genome, canvas_size=(256, 256), background=WHITE):
    return draw(new_canvas(*canvas_size, background=background), expand(genome, canvas_size))
