"""Optimizers over drawings: MAP-Elites archive, UCT planning over drawing
modules, and a generational GA."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from ._rng import substream
from .aesthetics import DEFAULT_CONFIG, MeasureId, evaluate, evaluate_many
from .canvas import BLACK, WHITE, Canvas, ConfigurationError, draw, new_canvas
from .generators import Genome, ModuleId, expand, mutate, random_genome, render

# (lo, hi, log-scaled)
DESCRIPTOR_BOUNDS = {
    MeasureId.FillCentralCircle: (0.0, 1.0, False),
    MeasureId.BilateralEntropy: (0.0, 8.0, False),
    MeasureId.NegativeEntropy: (-8.0, 0.0, False),
    MeasureId.PhogSelfSimilarity: (0.0, 1.0, False),
    MeasureId.PhogComplexity: (0.0, 0.5, False),
    MeasureId.RegionEntropy: (0.0, 8.0, False),
    MeasureId.RegionCount: (1.0, 256.0, True),
    MeasureId.FelzenszwalbSegments: (1.0, 256.0, True),
    MeasureId.PowerSpectrumDistance: (0.0, 4.0, False),
    MeasureId.FractalDimensionDistance: (0.0, 2.0, False),
    MeasureId.ExternalClassifierEntropy: (0.0, 10.0, False),
}


def _fmt(x):
    return repr(float(x))


@dataclass
class Elite:
    genome: Genome
    fitness: float
    descriptors: tuple


class Archive:
    """MAP-Elites grid over two behaviour descriptors."""

    def __init__(self, descriptor_ids, resolution=16, bounds=None):
        self.descriptor_ids = tuple(MeasureId.parse(d) for d in descriptor_ids)
        if len(self.descriptor_ids) != 2:
            raise ConfigurationError("archive needs exactly two descriptors")
        if isinstance(resolution, int):
            resolution = (resolution, resolution)
        self.resolution = tuple(int(r) for r in resolution)
        self.bounds = tuple(
            tuple(bounds[i]) if bounds is not None else DESCRIPTOR_BOUNDS[d]
            for i, d in enumerate(self.descriptor_ids)
        )
        self.cells = {}
        self.history = []  # (evaluations, coverage, best fitness)

    def clamp(self, descriptors):
        return tuple(float(min(max(d, b[0]), b[1])) for d, b in zip(descriptors, self.bounds))

    def cell_of(self, descriptors):
        idx = []
        for d, (lo, hi, log), n in zip(self.clamp(descriptors), self.bounds, self.resolution):
            if log:
                u = (math.log(d) - math.log(lo)) / (math.log(hi) - math.log(lo))
            else:
                u = (d - lo) / (hi - lo)
            idx.append(min(int(math.floor(u * n)), n - 1))
        return tuple(idx)

    def insert(self, genome, fitness, descriptors):
        desc = self.clamp(descriptors)
        cell = self.cell_of(desc)
        incumbent = self.cells.get(cell)
        if incumbent is not None and not fitness > incumbent.fitness:
            return False
        self.cells[cell] = Elite(genome, float(fitness), desc)
        return True

    def __len__(self):
        return len(self.cells)

    @property
    def coverage(self):
        return len(self.cells)

    def best(self):
        if not self.cells:
            return None
        return max(self.cells.values(), key=lambda e: e.fitness)

    def occupied(self):
        return sorted(self.cells)

    def columns(self):
        names = [d.value for d in self.descriptor_ids]
        return ["cell_0", "cell_1", names[0], names[1], "fitness", "genome"]

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns())
        for cell in self.occupied():
            e = self.cells[cell]
            writer.writerow([cell[0], cell[1], _fmt(e.descriptors[0]), _fmt(e.descriptors[1]), _fmt(e.fitness), e.genome.to_json()])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text, resolution=16, bounds=None):
        rows = list(csv.reader(io.StringIO(text)))
        header = rows[0]
        archive = cls((header[2], header[3]), resolution, bounds)
        for row in rows[1:]:
            cell = (int(row[0]), int(row[1]))
            archive.cells[cell] = Elite(Genome.from_json(row[5]), float(row[4]), (float(row[2]), float(row[3])))
        return archive


def archive_export(archive):
    return archive.to_csv()


@dataclass
class MapElitesConfig:
    module_id: ModuleId = ModuleId.BezierObjects
    initial_population: int = 100
    sigma: float = 0.1
    resolution: int = 16
    canvas_size: tuple = (64, 64)
    seed: int = 0
    measure_config: object = DEFAULT_CONFIG


def map_elites_run(eval_fn, fitness_id, descriptor_ids, budget_evals, config=None, observer=None):
    """Standard MAP-Elites: random seeding, then mutate uniformly chosen elites.

    ``eval_fn(genome) -> Canvas``; None renders the genome at
    ``config.canvas_size``. ``observer(eval_index, archive, inserted)`` is
    called after every insertion attempt.
    """
    config = config or MapElitesConfig()
    if budget_evals < config.initial_population:
        raise ConfigurationError("budget must cover the initial random population")
    if eval_fn is None:
        size = tuple(config.canvas_size)
        eval_fn = lambda g: render(g, size)  # noqa: E731
    ids = [MeasureId.parse(fitness_id)] + [MeasureId.parse(d) for d in descriptor_ids]
    archive = Archive(ids[1:], config.resolution)
    init_rng = substream(config.seed, "mapelites", "init")
    var_rng = substream(config.seed, "mapelites", "variation")
    best = -math.inf
    for i in range(int(budget_evals)):
        if i < config.initial_population:
            genome = random_genome(config.module_id, init_rng)
        else:
            cells = archive.occupied()
            parent = archive.cells[cells[int(var_rng.integers(len(cells)))]].genome
            genome = mutate(parent, config.sigma, var_rng)
        fit, d0, d1 = evaluate_many(eval_fn(genome), ids, config.measure_config)
        inserted = archive.insert(genome, fit, (d0, d1))
        best = max(best, archive.best().fitness)
        archive.history.append((i + 1, archive.coverage, best))
        if observer is not None:
            observer(i, archive, inserted)
    return archive


def coverage_csv(archive):
    lines = ["evaluations,coverage,best_fitness"]
    lines += [f"{n},{c},{_fmt(b)}" for n, c, b in archive.history]
    return "\n".join(lines) + "\n"


# --- MCTS ------------------------------------------------------------------


@dataclass
class Action:
    """A fixed drawing-module invocation, precomputed as an overwrite layer."""

    name: str
    marks: list
    _stamps: dict = field(default_factory=dict, repr=False)

    def stamp(self, width, height):
        key = (width, height)
        if key not in self._stamps:
            on_white = draw(new_canvas(width, height, WHITE), self.marks).pixels
            on_black = draw(new_canvas(width, height, BLACK), self.marks).pixels
            touched = ~((on_white == 255).all(axis=2) & (on_black == 0).all(axis=2))
            self._stamps[key] = (touched[:, :, None], np.ascontiguousarray(on_white))
        return self._stamps[key]

    def apply(self, pix):
        mask, layer = self.stamp(pix.shape[1], pix.shape[0])
        np.copyto(pix, layer, where=mask)


def action_from_genome(genome, canvas_size, name=None):
    return Action(name or f"{genome.module_id.value}:{genome.seed}", expand(genome, canvas_size))


def default_action_set(canvas_size=(64, 64), seed=0, per_module=4, modules=None):
    """``per_module`` frozen random invocations of each drawing module."""
    actions = []
    for m in modules or list(ModuleId):
        m = ModuleId.parse(m)
        rng = substream(seed, "actions", m.value)
        for i in range(per_module):
            actions.append(action_from_genome(random_genome(m, rng), canvas_size, f"{m.value}#{i}"))
    return actions


@dataclass
class PlanState:
    canvas: Canvas
    marks_used: int
    budget: int

    def __post_init__(self):
        if not 0 <= self.marks_used <= self.budget:
            raise ConfigurationError("need 0 <= marks_used <= budget")


@dataclass
class MctsConfig:
    action_set: list
    depth: int = 5
    iterations: int = 500
    exploration_c: float = math.sqrt(2)
    seed: int = 0
    measure_config: object = DEFAULT_CONFIG

    def __post_init__(self):
        if not self.action_set:
            raise ConfigurationError("MCTS needs a non-empty action set")
        if self.depth < 1 or self.iterations < 1:
            raise ConfigurationError("depth and iterations must be >= 1")


class _Node:
    __slots__ = ("pix", "used", "visits", "value", "children")

    def __init__(self, pix, used, n_actions):
        self.pix = pix
        self.used = used
        self.visits = np.zeros(n_actions, dtype=np.int64)
        self.value = np.zeros(n_actions)
        self.children = {}


@dataclass
class MctsResult:
    action: int
    visits: np.ndarray
    mean_values: np.ndarray  # min-max normalized to [0, 1]


def _pix_luminance(pix):
    p = pix.astype(np.float64)
    return (0.299 * p[..., 0] + 0.587 * p[..., 1] + 0.114 * p[..., 2]) / 255.0


def mcts_search(state, fitness_id, config, rng=None):
    """UCT over action sequences; returns root statistics and the chosen action."""
    if state.marks_used >= state.budget:
        raise ConfigurationError("no marks left to plan")
    fitness_id = MeasureId.parse(fitness_id)
    actions = config.action_set
    n = len(actions)
    rng = rng if rng is not None else substream(config.seed, "mcts")
    root = _Node(np.array(state.canvas.pixels), state.marks_used, n)
    vmin, vmax = math.inf, -math.inf

    def score(pix):
        return evaluate(_pix_luminance(pix), fitness_id, config.measure_config)

    for _ in range(config.iterations):
        node = root
        path = []
        while node.used < state.budget:
            unvisited = np.flatnonzero(node.visits == 0)
            if len(unvisited):
                a = int(unvisited[0])
                pix = node.pix.copy()
                actions[a].apply(pix)
                child = _Node(pix, node.used + 1, n)
                node.children[a] = child
                path.append((node, a))
                node = child
                break
            means = node.value / node.visits
            span = vmax - vmin
            norm = (means - vmin) / span if span > 0 else np.zeros(n)
            ucb = norm + config.exploration_c * np.sqrt(math.log(node.visits.sum()) / node.visits)
            a = int(np.argmax(ucb))
            path.append((node, a))
            node = node.children[a]
        steps = min(config.depth, state.budget - node.used)
        if steps > 0:
            pix = node.pix.copy()
            for a in rng.integers(0, n, steps):
                actions[int(a)].apply(pix)
        else:
            pix = node.pix
        value = score(pix)
        vmin, vmax = min(vmin, value), max(vmax, value)
        for parent, a in path:
            parent.visits[a] += 1
            parent.value[a] += value
    with np.errstate(invalid="ignore", divide="ignore"):
        means = np.where(root.visits > 0, root.value / np.maximum(root.visits, 1), vmin)
    span = vmax - vmin
    norm = (means - vmin) / span if span > 0 else np.zeros(n)
    best = int(np.flatnonzero(root.visits == root.visits.max())[0])
    return MctsResult(best, root.visits.copy(), norm)


def mcts_plan(state, fitness_id, config, rng=None):
    return mcts_search(state, fitness_id, config, rng).action


def mcts_draw(canvas, budget, fitness_id, config):
    """Plan one mark at a time until the budget is spent.

    Returns (final canvas, chosen action indices).
    """
    pix = np.array(canvas.pixels)
    chosen = []
    for step in range(budget):
        state = PlanState(Canvas.from_array(pix), step, budget)
        a = mcts_plan(state, fitness_id, config, substream(config.seed, "mcts", step))
        config.action_set[a].apply(pix)
        chosen.append(a)
    return Canvas.from_array(pix), chosen


def random_draw(canvas, budget, action_set, seed):
    """Uniform-random policy over the same action set (baseline)."""
    rng = substream(seed, "random_policy")
    pix = np.array(canvas.pixels)
    chosen = [int(a) for a in rng.integers(0, len(action_set), budget)]
    for a in chosen:
        action_set[a].apply(pix)
    return Canvas.from_array(pix), chosen


# --- GA --------------------------------------------------------------------


@dataclass
class GAConfig:
    sigma: float = 0.2
    tournament_size: int = 2
    elitism: int = 1
    seed: int = 0


@dataclass
class GAResult:
    best: Genome
    best_fitness: float
    history: list  # best-so-far after each fitness evaluation


def ga_evolve(fitness_fn, genome_template, pop_size, generations, config=None):
    """Generational GA with tournament selection, Gaussian mutation and
    elitism; ``fitness_fn(genome) -> float``."""
    config = config or GAConfig()
    if pop_size < 4:
        raise ConfigurationError("pop_size must be >= 4")
    init_rng = substream(config.seed, "ga", "init")
    rng = substream(config.seed, "ga", "variation")
    module = genome_template.module_id
    history = []
    best_genome, best_fit = None, -math.inf

    def record(genome, fit):
        nonlocal best_genome, best_fit
        if fit > best_fit:
            best_genome, best_fit = genome, fit
        history.append(best_fit)

    pop = [random_genome(module, init_rng) for _ in range(pop_size)]
    fits = []
    for g in pop:
        f = float(fitness_fn(g))
        fits.append(f)
        record(g, f)
    for _ in range(int(generations)):
        order = sorted(range(pop_size), key=lambda i: -fits[i])
        elites = order[: config.elitism]
        new_pop = [pop[i] for i in elites]
        new_fits = [fits[i] for i in elites]
        while len(new_pop) < pop_size:
            contenders = rng.choice(pop_size, size=config.tournament_size, replace=False)
            winner = max(contenders, key=lambda i: (fits[i], -i))
            parent = pop[int(winner)]
            if config.sigma > 0:
                child = mutate(parent, config.sigma, rng)
            else:
                child = parent
            f = float(fitness_fn(child))
            record(child, f)
            new_pop.append(child)
            new_fits.append(f)
        pop, fits = new_pop, new_fits
    return GAResult(best_genome, best_fit, history)


def history_csv(history):
    lines = ["eval_index,best_so_far"] + [f"{i},{_fmt(v)}" for i, v in enumerate(history)]
    return "\n".join(lines) + "\n"


def genome_fitness(fitness_id, canvas_size=(64, 64), measure_config=DEFAULT_CONFIG):
    """Fitness function rendering a genome and scoring one measure."""
    fitness_id = MeasureId.parse(fitness_id)

    def fn(genome):
        return evaluate(render(genome, canvas_size), fitness_id, measure_config)

    return fn
