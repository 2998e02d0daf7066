import logging
import math
from typing import Dict, List, Optional

import numpy as np
import simpy
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr

from sustain5g.analysis.failsafe import failsafe_point
from sustain5g.keychain.hierarchy import KeyHierarchy, issue_session_key
from sustain5g.keychain.refresh import RefreshPolicy
from sustain5g.keychain.session import advance_session, complete_handshake, new_session
from sustain5g.models.key_models import SessionEvent, SessionMode, SessionState, VehicleContext
from sustain5g.models.network_models import FailSafeCriterion, NetworkConfig
from sustain5g.models.sim_models import ProbabilityEstimate, SimConfig, SimStats, TraceBucket
from sustain5g.sim.sampling import (
    STREAM_ARRIVALS,
    STREAM_CONTEXT,
    STREAM_POISSON,
    STREAM_POISSON_ARRIVALS,
    STREAM_UPDATES,
    estimate_connectivity_loss,
    lane_generator,
    sample_poisson_counts,
)

logger = logging.getLogger(__name__)

LATERAL_SPREAD = 50.0  # meters either side of the road axis
MAX_SHARED_SESSIONS = 5


def default_fs_window(cfg: NetworkConfig) -> float:
    """Key lifetime for the refresh policy: F_S when a sustainability threshold is
    configured (t1 if it fails immediately), otherwise t2."""
    if cfg.s_n_threshold is None:
        return cfg.t2
    report = failsafe_point(cfg, FailSafeCriterion.SUSTAINABILITY_RATE)
    return report.fail_safe_time if report.fail_safe_time is not None else cfg.t1


class VehicleTrack(BaseModel):
    vehicle_id: str
    arrival: float
    speed: float
    lateral: float
    context: VehicleContext
    session: SessionState
    key_issued_at: float
    zone_at_issue: int = 0
    refreshes: int = 0


class AuthenticationSimulator(BaseModel):
    """Event-driven run of arrivals, Q-pass authentications and policy-driven refreshes.

    Arrivals, key updates, attachments and vehicle attributes come from
    separate seeded streams, so variants of a configuration that only change
    Q see exactly the same event sequence.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    cfg: NetworkConfig
    sim: SimConfig
    hierarchy: KeyHierarchy
    policy: RefreshPolicy = Field(default_factory=RefreshPolicy)
    fs_window: float = Field(gt=0)

    _stats: Optional[SimStats] = PrivateAttr(None)
    _active: Dict[str, VehicleTrack] = PrivateAttr(default_factory=dict)

    def _empty_traces(self) -> List[TraceBucket]:
        width = self.sim.unit_window
        count = max(1, math.ceil(self.sim.horizon / width))
        return [
            TraceBucket(start=i * width, end=min((i + 1) * width, self.sim.horizon))
            for i in range(count)
        ]

    def _bucket(self, now: float) -> TraceBucket:
        traces = self._stats.traces
        return traces[min(int(now // self.sim.unit_window), len(traces) - 1)]

    def _arrivals(self, env: simpy.Environment, arrival_rng: np.random.Generator,
                  context_rng: np.random.Generator):
        index = 0
        while True:
            yield env.timeout(arrival_rng.exponential(1.0 / self.cfg.arrival_rate))
            index += 1
            dwell = arrival_rng.exponential(self.sim.mean_dwell)
            entity = int(arrival_rng.integers(0, self.cfg.n_entities))
            speed = context_rng.uniform(0.0, self.sim.max_speed)
            lateral = context_rng.uniform(-LATERAL_SPREAD, LATERAL_SPREAD)
            shared = int(context_rng.integers(0, MAX_SHARED_SESSIONS + 1))
            env.process(self._vehicle(env, f"veh-{index}", dwell, entity, speed, lateral, shared))

    def _vehicle(self, env: simpy.Environment, vehicle_id: str, dwell: float, entity: int,
                 speed: float, lateral: float, shared: int):
        stats = self._stats
        bucket = self._bucket(env.now)
        stats.arrival_count += 1
        bucket.arrivals += 1
        if entity >= self.cfg.reachable_hops_inv:
            stats.lost_count += 1
            bucket.lost += 1
            return

        context = VehicleContext(
            vehicle_id=vehicle_id,
            speed=speed,
            location=(0.0, lateral),
            shared_sessions=shared,
            last_decision_location=(0.0, lateral),
        )
        self.hierarchy.track(context)
        issue_session_key(self.hierarchy, SessionMode.SHORT_RANGE, vehicle_id)
        session = complete_handshake(new_session(self.cfg.passes, SessionMode.SHORT_RANGE))

        stats.auth_count += 1
        stats.session_messages += session.messages_sent
        stats.initial_auth_messages += self.cfg.o_b
        bucket.authentications += 1
        bucket.messages += session.messages_sent + self.cfg.o_b

        self._active[vehicle_id] = VehicleTrack(
            vehicle_id=vehicle_id,
            arrival=env.now,
            speed=speed,
            lateral=lateral,
            context=context,
            session=session,
            key_issued_at=env.now,
        )
        yield env.timeout(dwell)
        track = self._active.pop(vehicle_id)
        track.session = advance_session(track.session, SessionEvent.EXPIRE)
        self.hierarchy.untrack(vehicle_id)

    def _key_updates(self, env: simpy.Environment, update_rng: np.random.Generator):
        while True:
            yield env.timeout(update_rng.exponential(1.0 / self.cfg.update_rate))
            self._stats.key_update_count += 1
            self._bucket(env.now).key_updates += 1
            for track in list(self._active.values()):
                self._review(env.now, track)

    def _review(self, now: float, track: VehicleTrack) -> None:
        zone_length = self.sim.zone_length
        travelled = track.speed * (now - track.arrival)
        zone = int(travelled // zone_length)
        elapsed = now - track.arrival

        ctx = track.context
        ctx.location = (travelled, track.lateral)
        ctx.last_update = now - track.key_issued_at
        ctx.zone_traversals = zone - track.zone_at_issue
        ctx.associativity = 1.0 - (travelled % zone_length) / zone_length
        ctx.refresh_rate = track.refreshes / elapsed if elapsed > 0 else 0.0

        decision = self.policy.evaluate(ctx, self.fs_window)
        self._stats.policy_evaluations += 1
        if decision.regenerate:
            before = track.session.messages_sent
            track.session = complete_handshake(track.session)
            sent = track.session.messages_sent - before
            issue_session_key(self.hierarchy, SessionMode.SHORT_RANGE, track.vehicle_id)

            self._stats.refresh_count += 1
            self._stats.session_messages += sent
            bucket = self._bucket(now)
            bucket.refreshes += 1
            bucket.messages += sent

            track.key_issued_at = now
            track.zone_at_issue = zone
            track.refreshes += 1
            ctx.zone_traversals = 0
            ctx.last_update = 0.0
        ctx.mark_decided()

    def _empirical_probabilities(self) -> Dict[str, ProbabilityEstimate]:
        cfg, sim = self.cfg, self.sim
        stats = self._stats
        probabilities = {
            "connectivity_loss": estimate_connectivity_loss(cfg, sim),
            "exactly_two_updates": sample_poisson_counts(
                cfg.update_rate, sim.unit_window, sim, STREAM_POISSON
            ).estimate(2),
            "exactly_one_arrival": sample_poisson_counts(
                cfg.arrival_rate, sim.unit_window, sim, STREAM_POISSON_ARRIVALS
            ).estimate(1),
        }
        if stats.arrival_count:
            probabilities["vehicle_miss"] = ProbabilityEstimate.from_counts(
                stats.lost_count, stats.arrival_count
            )
        return probabilities

    def run(self) -> SimStats:
        seed = self.sim.seed
        self._active = {}
        self._stats = SimStats(
            seed=seed,
            passes=self.cfg.passes,
            horizon=self.sim.horizon,
            unit_window=self.sim.unit_window,
            traces=self._empty_traces(),
        )
        env = simpy.Environment()
        env.process(self._arrivals(
            env, lane_generator(seed, STREAM_ARRIVALS), lane_generator(seed, STREAM_CONTEXT)
        ))
        env.process(self._key_updates(env, lane_generator(seed, STREAM_UPDATES)))
        env.run(until=self.sim.horizon)

        stats = self._stats
        stats.message_total = stats.session_messages + stats.initial_auth_messages
        stats.empirical_probabilities = self._empirical_probabilities()
        logger.info(
            "simulated %d arrivals, %d authentications, %d refreshes, %.6g messages",
            stats.arrival_count, stats.auth_count, stats.refresh_count, stats.message_total,
        )
        return stats


def run_sim(
    cfg: NetworkConfig,
    sim: SimConfig,
    hierarchy: KeyHierarchy,
    policy: Optional[RefreshPolicy] = None,
    fs_window: Optional[float] = None,
) -> SimStats:
    simulator = AuthenticationSimulator(
        cfg=cfg,
        sim=sim,
        hierarchy=hierarchy,
        policy=policy or RefreshPolicy(),
        fs_window=fs_window if fs_window is not None else default_fs_window(cfg),
    )
    return simulator.run()
