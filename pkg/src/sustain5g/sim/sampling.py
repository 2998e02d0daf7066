"""Seeded Monte Carlo sampling of the Poisson and attachment assumptions.

Trials are cut into fixed-size blocks ("lanes"). Every lane owns a generator
seeded from ``(seed, stream, lane index)``, so results depend on the seed and
the trial count only, never on how many threads process the lanes.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Tuple, TypeVar

import numpy as np

from sustain5g.config import get_settings
from sustain5g.errors import DomainError
from sustain5g.models.network_models import NetworkConfig
from sustain5g.models.sim_models import PoissonHistogram, ProbabilityEstimate, SimConfig

logger = logging.getLogger(__name__)

STREAM_POISSON = 0
STREAM_ATTACHMENT = 1
STREAM_ARRIVALS = 2
STREAM_UPDATES = 3
STREAM_CONTEXT = 4
STREAM_POISSON_ARRIVALS = 5
STREAM_KEYS = 6

T = TypeVar("T")


def lane_generator(seed: int, stream: int, lane: int = 0) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(stream, lane)))


def _lanes(trials: int, block_size: int) -> List[Tuple[int, int]]:
    full, rest = divmod(trials, block_size)
    lanes = [(lane, block_size) for lane in range(full)]
    if rest:
        lanes.append((full, rest))
    return lanes


def run_lanes(trials: int, work: Callable[[int, int], T]) -> List[T]:
    """Apply ``work(lane, size)`` to every lane; results come back in lane order."""
    settings = get_settings()
    lanes = _lanes(trials, settings.mc_block_size)
    if settings.threads > 1 and len(lanes) > 1:
        with ThreadPoolExecutor(max_workers=settings.threads) as pool:
            return list(pool.map(lambda lane: work(*lane), lanes))
    return [work(lane, size) for lane, size in lanes]


def sample_poisson_counts(
    rate: float, window: float, sim: SimConfig, stream: int = STREAM_POISSON
) -> PoissonHistogram:
    """Count exponential inter-arrivals falling inside ``window``, once per trial."""
    if not rate > 0:
        raise DomainError(f"rate must be positive, got {rate!r}")
    if not window > 0:
        raise DomainError(f"window must be positive, got {window!r}")
    lam = rate * window
    columns = max(8, int(lam + 6 * math.sqrt(lam) + 10))

    def lane_counts(lane: int, size: int) -> np.ndarray:
        rng = lane_generator(sim.seed, stream, lane)
        elapsed = np.zeros(size)
        counts = np.zeros(size, dtype=np.int64)
        open_rows = np.arange(size)
        while open_rows.size:
            gaps = rng.exponential(1.0 / rate, size=(open_rows.size, columns))
            arrivals = elapsed[open_rows, None] + np.cumsum(gaps, axis=1)
            inside = arrivals <= window
            counts[open_rows] += inside.sum(axis=1)
            elapsed[open_rows] = arrivals[:, -1]
            open_rows = open_rows[inside[:, -1]]
        return np.bincount(counts)

    histograms = run_lanes(sim.trials, lane_counts)
    length = max(h.size for h in histograms)
    merged = np.zeros(length, dtype=np.int64)
    for histogram in histograms:
        merged[: histogram.size] += histogram
    logger.debug("poisson sample λ=%g over %d trials: mean %.6g", lam, sim.trials,
                 float(np.dot(np.arange(length), merged)) / sim.trials)
    return PoissonHistogram(rate=rate, window=window, trials=sim.trials, counts=merged.tolist())


def estimate_connectivity_loss(cfg: NetworkConfig, sim: SimConfig) -> ProbabilityEstimate:
    """Each of N devices attaches uniformly to one of E entities; a trial is a
    loss when none of them lands on the n⁻¹ reachable ones."""
    devices, entities, reachable = cfg.n_devices, cfg.n_entities, cfg.reachable_hops_inv

    def lane_losses(lane: int, size: int) -> int:
        rng = lane_generator(sim.seed, STREAM_ATTACHMENT, lane)
        draws = rng.integers(0, entities, size=(size, devices))
        return int(np.count_nonzero((draws >= reachable).all(axis=1)))

    losses = sum(run_lanes(sim.trials, lane_losses))
    return ProbabilityEstimate.from_counts(losses, sim.trials)
