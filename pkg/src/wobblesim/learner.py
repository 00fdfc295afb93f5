"""Trial-and-error learning loop.

Per epoch: build the epoch's morphology from the schedule, evaluate all
20 behaviors on it, keep the 5 best (ties broken toward the lower member
index), and refill the population with 3 mutants of each kept parent.
Kept elites carry over bit-identical but are re-evaluated on the next
epoch's morphology, which is what lets a morphology change reshuffle the
ranking.

Randomness is fully determined by the master seed: the initial
population uses stream (seed, 0) and the mutation step after epoch e
uses stream (seed, e+1), so logs are reproducible regardless of how
trials are scheduled.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, asdict
from typing import Callable, Optional

import numpy as np

from .controller import (Genome, MotorConfig, MutationConfig, mutate,
                         random_genome)
from .morphology import StarfishSpec, adult_body_length, build_starfish
from .physics import SimConfig, SimulationDiverged, simulate_behavior
from .wobble import MorphologyScales, WobbleSchedule, scale_at

log = logging.getLogger(__name__)

POPULATION_SIZE = 20
KEEP = 5

ParentId = Optional[tuple[int, int]]  # (epoch, member) or None for initial

INIT_MODES = ("independent", "single_seed")


class LearnerError(ValueError):
    pass


@dataclass
class Population:
    """Epoch-start population: genomes plus where each one came from."""

    members: list[Genome]
    provenance: list[ParentId]

    def __post_init__(self):
        if len(self.members) != len(self.provenance):
            raise LearnerError("provenance must match members 1:1")


@dataclass
class EpochRecord:
    """Everything evaluated in one epoch, in member order."""

    epoch: int
    scales: MorphologyScales
    genomes: list[Genome]
    fitnesses: np.ndarray
    displacements: np.ndarray  # signed, in adult body lengths
    parents: list[ParentId]
    diverged: list[bool]
    kept_ids: list[int]  # best first

    @property
    def best_member(self) -> int:
        return self.kept_ids[0]

    @property
    def best_fitness(self) -> float:
        return float(self.fitnesses[self.best_member])


@dataclass
class RunLog:
    """One seeded learning run: a config-echo header plus its epochs."""

    header: dict
    records: list[EpochRecord] = field(default_factory=list)

    @property
    def n_epochs(self) -> int:
        return len(self.records)


def init_population(rng: np.random.Generator, mode: str = "independent",
                    mcfg: MutationConfig = MutationConfig(),
                    size: int = POPULATION_SIZE) -> Population:
    """Default: independent random genomes.  single_seed: one random root
    plus mutants of it, so every member's ancestry reaches one behavior."""
    if mode not in INIT_MODES:
        raise LearnerError(f"init mode must be one of {INIT_MODES}, got {mode!r}")
    if mode == "independent":
        return Population([random_genome(rng) for _ in range(size)],
                          [None] * size)
    root = random_genome(rng)
    members = [root] + [mutate(root, rng, mcfg) for _ in range(size - 1)]
    return Population(members, [None] + [(0, 0)] * (size - 1))


def rank_members(fitnesses: np.ndarray, keep: int = KEEP) -> list[int]:
    """Top ``keep`` member indices, best first, ties to the lower index."""
    order = sorted(range(len(fitnesses)), key=lambda i: (-fitnesses[i], i))
    return order[:keep]


def evaluate_epoch(pop: Population, scales: MorphologyScales,
                   spec: StarfishSpec, sim: SimConfig,
                   motor: MotorConfig = MotorConfig(), *,
                   epoch: int = 0, keep: int = KEEP,
                   env: Optional[dict] = None) -> EpochRecord:
    """Build the epoch's morphology once and score all behaviors on it.

    Fitness is |x displacement of the center of mass| / adult body
    length; a diverged trial scores 0 and is flagged rather than aborting
    the run.
    """
    body = build_starfish(spec, scales, **(env or {}))
    length = adult_body_length(spec)
    n = len(pop.members)
    fitnesses = np.zeros(n)
    displacements = np.zeros(n)
    diverged = [False] * n
    for i, genome in enumerate(pop.members):
        try:
            summary = simulate_behavior(body, genome, sim, motor,
                                        context=f"epoch {epoch} member {i}")
            dx = summary.displacement_x / length
            displacements[i] = dx
            fitnesses[i] = abs(dx)
        except SimulationDiverged as exc:
            diverged[i] = True
            log.warning("trial diverged, fitness 0: %s", exc)
    return EpochRecord(epoch=epoch, scales=scales, genomes=list(pop.members),
                       fitnesses=fitnesses, displacements=displacements,
                       parents=list(pop.provenance), diverged=diverged,
                       kept_ids=rank_members(fitnesses, keep))


def select_and_mutate(record: EpochRecord, rng: np.random.Generator,
                      mcfg: MutationConfig = MutationConfig(),
                      size: int = POPULATION_SIZE) -> Population:
    """Next population: the kept elites bit-identical, then mutants,
    3 per parent in round-robin over the kept list."""
    kept = record.kept_ids
    members = [record.genomes[i] for i in kept]
    provenance: list[ParentId] = [(record.epoch, i) for i in kept]
    for j in range(size - len(kept)):
        parent = kept[j % len(kept)]
        members.append(mutate(record.genomes[parent], rng, mcfg))
        provenance.append((record.epoch, parent))
    return Population(members, provenance)


def make_header(seed: int, schedule: WobbleSchedule, spec: StarfishSpec,
                sim: SimConfig, motor: MotorConfig, mcfg: MutationConfig,
                epochs: int, init_mode: str, condition: str = "",
                env: Optional[dict] = None) -> dict:
    """Full config echo: everything needed to reproduce the run."""
    return {
        "format": "wobblesim-runlog-1",
        "condition": condition,
        "seed": int(seed),
        "epochs": int(epochs),
        "init_mode": init_mode,
        "population": {"size": POPULATION_SIZE, "keep": KEEP},
        "schedule": asdict(schedule),
        "robot": asdict(spec),
        "sim": asdict(sim),
        "motor": asdict(motor),
        "mutation": asdict(mcfg),
        "world": dict(env or {}),
        "adult_body_length": adult_body_length(spec),
    }


def run_learning(seed: int, schedule: WobbleSchedule, spec: StarfishSpec,
                 sim: SimConfig, motor: MotorConfig = MotorConfig(),
                 mcfg: MutationConfig = MutationConfig(), *,
                 epochs: Optional[int] = None, init_mode: str = "independent",
                 condition: str = "", env: Optional[dict] = None,
                 record_sink: Optional[Callable[[EpochRecord], None]] = None,
                 progress: Optional[Callable[[int, float, MorphologyScales], None]] = None,
                 ) -> RunLog:
    """Run the full learning loop; deterministic in (seed, configuration).

    Each EpochRecord is handed to ``record_sink`` as soon as its epoch
    completes, so partially written logs are always valid prefixes.
    """
    n_epochs = schedule.total_epochs if epochs is None else int(epochs)
    if not 0 < n_epochs <= schedule.total_epochs:
        raise LearnerError(
            f"epochs must be in (0, {schedule.total_epochs}], got {n_epochs}")
    header = make_header(seed, schedule, spec, sim, motor, mcfg, n_epochs,
                         init_mode, condition, env)
    runlog = RunLog(header=header)
    rng_init = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(0,)))
    pop = init_population(rng_init, init_mode, mcfg)
    for e in range(n_epochs):
        scales = scale_at(schedule, e)
        record = evaluate_epoch(pop, scales, spec, sim, motor,
                                epoch=e, env=env)
        runlog.records.append(record)
        if record_sink is not None:
            record_sink(record)
        if progress is not None:
            progress(e, record.best_fitness, scales)
        if e + 1 < n_epochs:
            rng_e = np.random.default_rng(
                np.random.SeedSequence(entropy=seed, spawn_key=(e + 1,)))
            pop = select_and_mutate(record, rng_e, mcfg)
    return runlog
