import numpy as np
import pytest

from drawgames import search as S
from drawgames._rng import substream
from drawgames.aesthetics import MeasureId, evaluate
from drawgames.canvas import ConfigurationError, Disc, Segment, new_canvas
from drawgames.generators import MODULES, Genome, ModuleId, random_genome


def genome(i=0):
    return random_genome(ModuleId.LineField, substream(i, "g"))


# --- archive ------------------------------------------------------------------


def test_archive_insert_rules():
    a = S.Archive(["negative_entropy", "region_count"])
    assert a.insert(genome(0), 0.5, (-1.0, 3))
    assert not a.insert(genome(1), 0.4, (-1.0, 3))
    assert not a.insert(genome(2), 0.5, (-1.0, 3))
    assert a.cells[a.cell_of((-1.0, 3))].genome == genome(0)
    assert a.insert(genome(3), 0.6, (-1.0, 3))


def test_archive_clamps_and_bounds():
    a = S.Archive(["negative_entropy", "region_count"], resolution=16)
    assert a.cell_of((-100.0, 1e9)) == (0, 15)
    assert a.cell_of((5.0, 0.1)) == (15, 0)
    a.insert(genome(), 1.0, (-100.0, 1e9))
    (e,) = a.cells.values()
    lo0, hi0, _ = a.bounds[0]
    lo1, hi1, _ = a.bounds[1]
    assert lo0 <= e.descriptors[0] <= hi0 and lo1 <= e.descriptors[1] <= hi1


def test_archive_log_scale():
    a = S.Archive(["region_count", "felzenszwalb_segments"], resolution=8)
    # 1..256 log-spaced over 8 cells: factor 2 per cell
    assert [a.cell_of((v, 1))[0] for v in (1, 2, 3, 4, 100, 256)] == [0, 1, 1, 2, 6, 7]


def test_archive_export_roundtrip():
    a = S.Archive(["negative_entropy", "region_count"])
    assert a.to_csv().count("\n") == 1
    a.insert(genome(0), 0.25, (-2.5, 10))
    text = a.to_csv()
    assert len(text.splitlines()) == 2
    for i in range(1, 6):
        a.insert(genome(i), 0.1 * i, (-0.7 * i, 3 * i))
    text = a.to_csv()
    assert S.Archive.from_csv(text).to_csv() == text


def test_map_elites_seed_only_and_monotone():
    cfg = S.MapElitesConfig(module_id=ModuleId.LineField, canvas_size=(32, 32), seed=1, initial_population=20)
    seeds_only = S.map_elites_run(None, "fill_circle", ["entropy", "region_count"], 20, cfg)
    assert seeds_only.history[-1][0] == 20

    snapshots = {}

    def observe(i, archive, inserted):
        for cell, e in archive.cells.items():
            assert e.fitness >= snapshots.get(cell, -np.inf)
            snapshots[cell] = e.fitness

    arch = S.map_elites_run(None, "fill_circle", ["entropy", "region_count"], 200, cfg, observe)
    cov = [c for _, c, _ in arch.history]
    best = [b for _, _, b in arch.history]
    assert cov == sorted(cov) and best == sorted(best)
    assert arch.coverage >= seeds_only.coverage
    again = S.map_elites_run(None, "fill_circle", ["entropy", "region_count"], 200, cfg)
    assert again.to_csv() == arch.to_csv()


def test_map_elites_budget_check():
    with pytest.raises(ConfigurationError):
        S.map_elites_run(None, "fill_circle", ["entropy", "region_count"], 10, S.MapElitesConfig())


# --- MCTS -----------------------------------------------------------------------


def small_actions(size=32):
    marks = [
        [Segment(0, 2, 31, 2)],
        [Disc(size // 2, size // 2, 0.35 * size)],  # fills the target circle
        [Disc(3, 28, 2)],
        [Segment(28, 0, 28, 31, thickness=2)],
    ]
    return [S.Action(f"a{i}", m) for i, m in enumerate(marks)]


def test_mcts_finds_dominant_action():
    acts = small_actions()
    cfg = S.MctsConfig(acts, depth=1, iterations=10 * len(acts), seed=0)
    state = S.PlanState(new_canvas(32, 32), 0, 1)
    assert S.mcts_plan(state, MeasureId.FillCentralCircle, cfg) == 1


def test_mcts_single_iteration_returns_first():
    acts = small_actions()
    cfg = S.MctsConfig(acts, depth=3, iterations=1)
    assert S.mcts_plan(S.PlanState(new_canvas(32, 32), 0, 5), "fill_circle", cfg) == 0


def test_mcts_root_statistics():
    acts = small_actions()
    cfg = S.MctsConfig(acts, depth=3, iterations=60, seed=2)
    res = S.mcts_search(S.PlanState(new_canvas(32, 32), 0, 4), "fill_circle", cfg)
    assert res.visits.sum() == 60
    assert np.all((res.mean_values >= 0) & (res.mean_values <= 1))


def test_mcts_config_and_state_validation():
    with pytest.raises(ConfigurationError):
        S.MctsConfig([])
    with pytest.raises(ConfigurationError):
        S.PlanState(new_canvas(16, 16), 3, 2)
    with pytest.raises(ConfigurationError):
        S.mcts_plan(S.PlanState(new_canvas(32, 32), 2, 2), "fill_circle", S.MctsConfig(small_actions()))


def test_action_stamp_matches_direct_draw():
    act = S.default_action_set((32, 32), seed=3, per_module=1)
    assert len(act) == len(ModuleId)
    from drawgames.canvas import draw

    base = draw(new_canvas(32, 32), [Disc(10, 10, 6, (200, 0, 0))])
    for a in act:
        pix = np.array(base.pixels)
        a.apply(pix)
        assert np.array_equal(pix, draw(base, a.marks).pixels)


def test_mcts_draw_deterministic():
    acts = small_actions()
    cfg = S.MctsConfig(acts, depth=2, iterations=30, seed=4)
    c1, ch1 = S.mcts_draw(new_canvas(32, 32), 3, "fill_circle", cfg)
    c2, ch2 = S.mcts_draw(new_canvas(32, 32), 3, "fill_circle", cfg)
    assert ch1 == ch2 and c1 == c2
    assert evaluate(c1, "fill_circle") >= evaluate(S.random_draw(new_canvas(32, 32), 3, acts, 4)[0], "fill_circle")


# --- GA ----------------------------------------------------------------------------


def sum_fitness(g):
    return float(-np.sum((g.params - 0.5) ** 2))


def template():
    return Genome(ModuleId.LineField, np.zeros(MODULES[ModuleId.LineField].n_params))


def test_ga_generation_zero_is_best_of_population():
    res = S.ga_evolve(sum_fitness, template(), 8, 0, S.GAConfig(seed=3))
    assert len(res.history) == 8
    assert res.best_fitness == max(res.history)


def test_ga_history_monotone_and_improves():
    res = S.ga_evolve(sum_fitness, template(), 16, 30, S.GAConfig(sigma=0.05, seed=1))
    h = res.history
    assert all(a <= b for a, b in zip(h, h[1:]))
    assert h[-1] > h[15]
    assert res.best_fitness == sum_fitness(res.best)


def test_ga_sigma_zero_keeps_incumbent():
    res0 = S.ga_evolve(sum_fitness, template(), 8, 0, S.GAConfig(seed=5))
    res = S.ga_evolve(sum_fitness, template(), 8, 10, S.GAConfig(sigma=0.0, seed=5))
    assert res.best == res0.best and res.best_fitness == res0.best_fitness


def test_ga_deterministic_and_validates():
    a = S.ga_evolve(sum_fitness, template(), 8, 5, S.GAConfig(seed=2))
    b = S.ga_evolve(sum_fitness, template(), 8, 5, S.GAConfig(seed=2))
    assert a.history == b.history and a.best == b.best
    assert S.history_csv(a.history).splitlines()[0] == "eval_index,best_so_far"
    with pytest.raises(ConfigurationError):
        S.ga_evolve(sum_fitness, template(), 3, 1)
