"""Command-line runner: ``drawgames {game,mapelites,mcts-draw,ga,measure,replay}``.

Every run writes into one directory, starting with ``manifest.json``: the
command name plus the fully resolved configuration. ``drawgames replay
manifest.json --out DIR`` (or ``--config manifest.json``) reruns it, and the
CSV and PPM outputs come out byte-identical.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .aesthetics import MeasureConfig, MeasureId, UnsupportedMeasureError, evaluate
from .canvas import WHITE, ConfigurationError, PPMError, export_ppm, new_canvas, read_ppm
from .games import GAMES, UnsupportedGameError, game_config, montage_ppm, play
from .generators import MODULES, Genome, ModuleId, render
from .search import (
    GAConfig,
    MapElitesConfig,
    MctsConfig,
    archive_export,
    coverage_csv,
    default_action_set,
    genome_fitness,
    ga_evolve,
    history_csv,
    map_elites_run,
    mcts_draw,
)

EXIT_OK, EXIT_FAILURE, EXIT_CONFIG = 0, 1, 2

# Command defaults; JSON config files and then explicit flags override them.
DEFAULTS = {
    "game": {"type": "communication", "seed": 0},
    "mapelites": {
        "fitness": "fill_circle",
        "descriptors": ["entropy", "region_count"],
        "budget": 5000,
        "module": "line_field",
        "initial_population": 100,
        "sigma": 0.1,
        "resolution": 16,
        "canvas": 64,
        "seed": 0,
    },
    "mcts-draw": {
        "fitness": "fill_circle",
        "budget": 10,
        "depth": 5,
        "iterations": 500,
        "canvas": 64,
        "per_module": 4,
        "exploration_c": 2**0.5,
        "seed": 0,
    },
    "ga": {
        "fitness": "fill_circle",
        "module": "recurrent_agent",
        "pop": 32,
        "generations": 50,
        "sigma": 0.2,
        "canvas": 64,
        "seed": 0,
    },
}
GAME_KEYS = ("K", "G", "T", "episodes", "batch_size", "lr_drawer", "lr_viewer", "entropy_beta",
             "w_B", "w_R", "w_AE", "w_E", "reward_mode", "drawer_mode", "normalize_advantages")


def _write(path, data):
    path.parent.mkdir(parents=True, exist_ok=True)
    mode = "wb" if isinstance(data, bytes) else "w"
    with open(path, mode) as f:
        f.write(data)


def _json(obj):
    return json.dumps(obj, indent=2, default=_jsonable) + "\n"


def _jsonable(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    return str(o)


def write_manifest(out, command, config):
    _write(out / "manifest.json", _json({"command": command, "version": __version__, "config": config}))


# --- commands ---------------------------------------------------------------


def cmd_game(cfg, out):
    overrides = {k: cfg[k] for k in GAME_KEYS if cfg.get(k) is not None}
    gc = game_config(cfg["type"], seed=int(cfg["seed"]), **overrides)
    resolved = {"type": gc.game, "seed": gc.seed, **{k: getattr(gc, k) for k in GAME_KEYS}}
    write_manifest(out, "game", resolved)
    report = play(gc)
    _write(out / "metrics.csv", report.metrics_csv())
    summary = {k: v for k, v in report.summary.items()}
    _write(out / "summary.json", _json(summary))
    G = gc.G
    for name, grids in report.images.items():
        _write(out / "drawings" / f"{name}.ppm", montage_ppm(grids, G))
    for k, grid in enumerate(report.images["drawings"]):
        _write(out / "drawings" / f"position_{k:02d}.ppm", montage_ppm(grid[None], G))
    print(_json(summary["final"]), end="")
    return EXIT_OK


def cmd_mapelites(cfg, out):
    size = int(cfg["canvas"])
    mc = MapElitesConfig(
        module_id=ModuleId.parse(cfg["module"]),
        initial_population=int(cfg["initial_population"]),
        sigma=float(cfg["sigma"]),
        resolution=int(cfg["resolution"]),
        canvas_size=(size, size),
        seed=int(cfg["seed"]),
    )
    descriptors = _list(cfg["descriptors"])
    if len(descriptors) != 2:
        raise ConfigurationError("MAP-Elites needs exactly two descriptors")
    write_manifest(out, "mapelites", {**cfg, "descriptors": descriptors})
    archive = map_elites_run(None, cfg["fitness"], descriptors, int(cfg["budget"]), mc)
    _write(out / "archive.csv", archive_export(archive))
    _write(out / "coverage.csv", coverage_csv(archive))
    for cell in archive.occupied():
        elite = archive.cells[cell]
        name = f"elite_{cell[0]:02d}_{cell[1]:02d}.ppm"
        _write(out / "elites" / name, export_ppm(render(elite.genome, mc.canvas_size)))
    best = archive.best()
    print(f"coverage {archive.coverage} best {best.fitness!r}")
    return EXIT_OK


def cmd_mcts(cfg, out):
    size = int(cfg["canvas"])
    actions = default_action_set((size, size), int(cfg["seed"]), int(cfg["per_module"]))
    mc = MctsConfig(actions, int(cfg["depth"]), int(cfg["iterations"]), float(cfg["exploration_c"]), int(cfg["seed"]))
    fitness = MeasureId.parse(cfg["fitness"])
    write_manifest(out, "mcts-draw", cfg)
    canvas, chosen = mcts_draw(new_canvas(size, size, WHITE), int(cfg["budget"]), fitness, mc)
    lines = ["step,action_index,action"] + [f"{i},{a},{actions[a].name}" for i, a in enumerate(chosen)]
    _write(out / "actions.csv", "\n".join(lines) + "\n")
    _write(out / "final.ppm", export_ppm(canvas))
    score = evaluate(canvas, fitness)
    _write(out / "fitness.txt", f"{score!r}\n")
    print(repr(score))
    return EXIT_OK


def cmd_ga(cfg, out):
    size = int(cfg["canvas"])
    module = ModuleId.parse(cfg["module"])
    write_manifest(out, "ga", cfg)
    fn = genome_fitness(cfg["fitness"], (size, size))
    template = Genome(module, np.zeros(MODULES[module].n_params))
    result = ga_evolve(fn, template, int(cfg["pop"]), int(cfg["generations"]),
                       GAConfig(sigma=float(cfg["sigma"]), seed=int(cfg["seed"])))
    _write(out / "fitness_history.csv", history_csv(result.history))
    _write(out / "best_genome.json", result.best.to_json() + "\n")
    _write(out / "best.ppm", export_ppm(render(result.best, (size, size))))
    print(repr(result.best_fitness))
    return EXIT_OK


COUNT_MEASURES = (MeasureId.RegionCount, MeasureId.FelzenszwalbSegments)


def cmd_measure(args):
    canvas = read_ppm(args.image)
    measure = MeasureId.parse(args.measure)
    score = evaluate(canvas, measure, MeasureConfig())
    # counts print as integers, everything else round-trips through repr
    print(int(score) if measure in COUNT_MEASURES else repr(float(score)))
    return EXIT_OK


RUNNERS = {"game": cmd_game, "mapelites": cmd_mapelites, "mcts-draw": cmd_mcts, "ga": cmd_ga}


# --- argument handling --------------------------------------------------------


def _list(v):
    return [s.strip() for s in v.split(",") if s.strip()] if isinstance(v, str) else list(v)


def build_parser():
    p = argparse.ArgumentParser(prog="drawgames", description="Drawing games, search and aesthetic measures.")
    p.add_argument("--version", action="version", version=f"drawgames {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="JSON file of parameters (a manifest.json also works)")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--out", help="run directory (default runs/<command>-seed<seed>)")

    g = sub.add_parser("game", help="train one of the drawing games")
    common(g)
    g.add_argument("--type", help=f"one of {', '.join(GAMES)}")
    g.add_argument("--k", dest="K", type=int, help="number of scene positions")
    g.add_argument("--g", dest="G", type=int, help="grid size")
    g.add_argument("--t", dest="T", type=int, help="marks per drawing")
    g.add_argument("--episodes", type=int)
    g.add_argument("--batch-size", dest="batch_size", type=int)
    g.add_argument("--lr-drawer", dest="lr_drawer", type=float)
    g.add_argument("--lr-viewer", dest="lr_viewer", type=float)
    g.add_argument("--entropy-beta", dest="entropy_beta", type=float)
    for w in ("B", "R", "AE", "E"):
        g.add_argument(f"--w-{w.lower()}", dest=f"w_{w}", type=float)
    g.add_argument("--reward-mode", dest="reward_mode", choices=["neg_log", "neg_loss"])
    g.add_argument("--drawer-mode", dest="drawer_mode", choices=["learn", "uniform", "constant"])

    m = sub.add_parser("mapelites", help="MAP-Elites over one drawing module")
    common(m)
    m.add_argument("--fitness")
    m.add_argument("--descriptors", help="two comma-separated measure ids")
    m.add_argument("--budget", type=int)
    m.add_argument("--module")
    m.add_argument("--initial-population", dest="initial_population", type=int)
    m.add_argument("--sigma", type=float)
    m.add_argument("--resolution", type=int)
    m.add_argument("--canvas", type=int)

    c = sub.add_parser("mcts-draw", help="plan a drawing mark by mark with MCTS")
    common(c)
    c.add_argument("--fitness")
    c.add_argument("--budget", type=int, help="marks to place")
    c.add_argument("--depth", type=int)
    c.add_argument("--iterations", type=int)
    c.add_argument("--canvas", type=int)
    c.add_argument("--per-module", dest="per_module", type=int)

    a = sub.add_parser("ga", help="evolve a drawing module with a GA")
    common(a)
    a.add_argument("--fitness")
    a.add_argument("--module")
    a.add_argument("--pop", type=int)
    a.add_argument("--generations", type=int)
    a.add_argument("--sigma", type=float)
    a.add_argument("--canvas", type=int)

    s = sub.add_parser("measure", help="score a PPM image with one measure")
    s.add_argument("image")
    s.add_argument("measure")

    r = sub.add_parser("replay", help="rerun a persisted manifest")
    r.add_argument("manifest")
    r.add_argument("--out")
    return p


def resolve(command, args):
    cfg = dict(DEFAULTS[command])
    if getattr(args, "config", None):
        loaded = json.loads(Path(args.config).read_text())
        if "config" in loaded and "command" in loaded:
            loaded = loaded["config"]
        cfg.update(loaded)
    skip = {"command", "config", "out", "manifest"}
    cfg.update({k: v for k, v in vars(args).items() if k not in skip and v is not None})
    return cfg


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if args.command == "measure":
            return cmd_measure(args)
        command = args.command
        if command == "replay":
            manifest = json.loads(Path(args.manifest).read_text())
            command = manifest["command"]
            cfg = dict(DEFAULTS[command], **manifest["config"])
        else:
            cfg = resolve(command, args)
        if command == "game" and cfg.get("type") not in GAMES:
            raise UnsupportedGameError(f"unsupported game {cfg.get('type')!r}")
        out = Path(args.out or f"runs/{command}-seed{cfg.get('seed', 0)}")
        out.mkdir(parents=True, exist_ok=True)
        return RUNNERS[command](cfg, out)
    except UnsupportedGameError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConfigurationError, UnsupportedMeasureError, PPMError, KeyError, TypeError, json.JSONDecodeError) as e:
        print(f"error: invalid configuration: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
