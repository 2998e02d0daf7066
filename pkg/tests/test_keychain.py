import os

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sustain5g.errors import DuplicateLabelError, IllegalTransitionError, KeyCollisionError
from sustain5g.keychain import (
    HUB_PATH,
    TERMINAL_PATH,
    KeyHierarchy,
    KeyNode,
    RefreshPolicy,
    advance_session,
    build_hierarchy,
    complete_handshake,
    derive_key,
    evaluate_refresh_policy,
    issue_session_key,
    new_session,
    session_key_path,
)
from sustain5g.keychain.refresh import (
    REASON_FAILSAFE_EXPIRY,
    REASON_WEIGHTED_SCORE,
    REASON_ZONE_HANDOVER,
)
from sustain5g.models import (
    KEY_SIZE,
    KeyMaterial,
    PolicyWeights,
    RefreshAction,
    RefreshDecision,
    SessionEvent,
    SessionMode,
    SessionPhase,
    SessionState,
    VehicleContext,
)

SEED = bytes(range(32))
OTHER_SEED = bytes(range(1, 33))


@pytest.fixture
def root() -> KeyMaterial:
    return KeyMaterial(key_bytes=bytes(KEY_SIZE), label="root")


class TestDeriveKey:
    def test_deterministic(self, root):
        assert derive_key(root, "TM-F") == derive_key(root, "TM-F")

    def test_labels_separate_keys(self, root):
        assert derive_key(root, "TM-F").key_bytes != derive_key(root, "HM-F").key_bytes

    def test_generation_increments(self, root):
        child = derive_key(root, "TM-F")
        assert child.generation == 1
        assert derive_key(child, "x").generation == 2
        assert len(child.key_bytes) == KEY_SIZE

    def test_parents_separate_keys(self):
        rng = np.random.default_rng(2024)
        keys = {
            derive_key(KeyMaterial(key_bytes=rng.bytes(KEY_SIZE), label="p"), "TM-F").key_bytes
            for _ in range(10_000)
        }
        assert len(keys) == 10_000

    def test_empty_label_rejected(self, root):
        with pytest.raises(ValueError):
            derive_key(root, "")

    def test_key_material_must_be_32_bytes(self):
        with pytest.raises(ValueError):
            KeyMaterial(key_bytes=b"short", label="x")

    def test_avalanche(self):
        rng = np.random.default_rng(99)
        differences = []
        for _ in range(1000):
            parent = KeyMaterial(key_bytes=rng.bytes(KEY_SIZE), label="p")
            label = "veh-" + "".join(chr(int(c)) for c in rng.integers(97, 123, size=8))
            position = int(rng.integers(0, len(label)))
            flipped = chr(ord(label[position]) ^ (1 << int(rng.integers(0, 5))))
            other = label[:position] + flipped + label[position + 1:]
            a = int.from_bytes(derive_key(parent, label).key_bytes, "big")
            b = int.from_bytes(derive_key(parent, other).key_bytes, "big")
            assert a != b
            differences.append(bin(a ^ b).count("1"))
        assert 96 <= sum(differences) / len(differences) <= 160


class TestHierarchy:
    def test_skeleton(self):
        h = build_hierarchy(SEED)
        assert h.paths() == sorted(["K_AMF", "K_AMF/K_OTK", TERMINAL_PATH, HUB_PATH])
        assert len(h) == 4
        assert h.get("K_AMF/K_OTK").generation == 1
        assert h.get(TERMINAL_PATH).generation == 2

    def test_same_seed_same_tree(self):
        assert build_hierarchy(SEED).dump() == build_hierarchy(SEED).dump()

    def test_different_seeds_share_no_key(self):
        a, b = build_hierarchy(SEED), build_hierarchy(OTHER_SEED)
        keys_a = {a.get(p).key_bytes for p in a.paths()}
        keys_b = {b.get(p).key_bytes for p in b.paths()}
        assert len(keys_a) == 4 and len(keys_b) == 4
        assert not keys_a & keys_b

    def test_seed_length_checked(self):
        with pytest.raises(ValueError):
            build_hierarchy(b"\x00" * 16)

    def test_duplicate_sibling_rejected(self):
        h = build_hierarchy(SEED)
        with pytest.raises(DuplicateLabelError):
            h.insert("K_AMF/K_OTK", "TM-F")

    def test_collision_detected(self):
        material = KeyMaterial(key_bytes=os.urandom(KEY_SIZE), label="K_AMF")
        twin = material.model_copy(update={"label": "twin"})
        with pytest.raises(KeyCollisionError):
            KeyHierarchy(root=KeyNode(material=material, children={"twin": KeyNode(material=twin)}))

    def test_unknown_path(self):
        h = build_hierarchy(SEED)
        assert "K_AMF/nope" not in h
        assert TERMINAL_PATH in h
        with pytest.raises(KeyError):
            h.get("other-root")

    def test_dump_format(self):
        dump = build_hierarchy(SEED).dump()
        lines = dump.splitlines()
        assert dump.endswith("\n")
        assert [line.split(" ")[0] for line in lines] == sorted(line.split(" ")[0] for line in lines)
        assert all(len(line.split(" ")[1]) == 2 * KEY_SIZE for line in lines)


class TestIssueSessionKey:
    def test_short_range_goes_under_terminal_function(self):
        h = build_hierarchy(SEED)
        key = issue_session_key(h, SessionMode.SHORT_RANGE, "veh-7")
        assert f"{TERMINAL_PATH}/veh-7#1" in h
        assert h.get(session_key_path(SessionMode.SHORT_RANGE, "veh-7", 1)) == key

    def test_counter_separates_reissues(self):
        h = build_hierarchy(SEED)
        first = issue_session_key(h, SessionMode.SHORT_RANGE, "veh-7")
        second = issue_session_key(h, SessionMode.SHORT_RANGE, "veh-7")
        assert first.key_bytes != second.key_bytes
        assert second.label == "veh-7#2"

    def test_long_range_goes_under_hub_function(self):
        h = build_hierarchy(SEED)
        issue_session_key(h, SessionMode.LONG_RANGE, "hub-1")
        assert f"{HUB_PATH}/hub-1#1" in h

    def test_tracked_context_counts_keys(self):
        h = build_hierarchy(SEED)
        ctx = VehicleContext(vehicle_id="veh-7")
        h.track(ctx)
        issue_session_key(h, SessionMode.SHORT_RANGE, "veh-7")
        issue_session_key(h, SessionMode.SHORT_RANGE, "veh-7")
        issue_session_key(h, SessionMode.SHORT_RANGE, "veh-8")
        assert ctx.total_keys == 2

    def test_ten_thousand_keys_are_distinct(self):
        h = build_hierarchy(SEED)
        keys = {
            issue_session_key(h, SessionMode.SHORT_RANGE, f"veh-{i % 100}").key_bytes
            for i in range(10_000)
        }
        assert len(keys) == 10_000
        assert len(h) == 10_004

    def test_hierarchy_is_function_of_seed_and_sequence(self):
        def build():
            h = build_hierarchy(SEED)
            for peer in ["veh-1", "veh-2", "veh-1", "hub-1"]:
                mode = SessionMode.LONG_RANGE if peer.startswith("hub") else SessionMode.SHORT_RANGE
                issue_session_key(h, mode, peer)
            return h.dump()

        assert build() == build()


class TestSessionStateMachine:
    def test_three_pass_handshake(self):
        state = advance_session(new_session(3), SessionEvent.START)
        assert state.phase is SessionPhase.AUTHENTICATING and state.pass_index == 1
        for _ in range(3):
            state = advance_session(state, SessionEvent.PASS_COMPLETED)
        assert state.phase is SessionPhase.ACTIVE
        assert state.messages_sent == 3
        assert state.pass_index is None

    def test_single_pass(self):
        state = advance_session(advance_session(new_session(1), SessionEvent.START), SessionEvent.PASS_COMPLETED)
        assert state.phase is SessionPhase.ACTIVE

    def test_pass_while_idle_is_illegal(self):
        with pytest.raises(IllegalTransitionError):
            advance_session(new_session(2), SessionEvent.PASS_COMPLETED)

    def test_refresh_cycle(self):
        state = complete_handshake(new_session(2))
        state = advance_session(state, SessionEvent.REFRESH_REQUESTED)
        assert state.phase is SessionPhase.REFRESHING
        state = complete_handshake(state)
        assert state.phase is SessionPhase.ACTIVE
        assert state.messages_sent == 4

    def test_expire_from_any_phase(self):
        for state in (new_session(2), advance_session(new_session(2), SessionEvent.START), complete_handshake(new_session(2))):
            assert advance_session(state, SessionEvent.EXPIRE).phase is SessionPhase.EXPIRED

    def test_expired_is_terminal(self):
        expired = advance_session(new_session(1), SessionEvent.EXPIRE)
        for event in (SessionEvent.START, SessionEvent.PASS_COMPLETED, SessionEvent.REFRESH_REQUESTED):
            with pytest.raises(IllegalTransitionError):
                advance_session(expired, event)
        with pytest.raises(IllegalTransitionError):
            complete_handshake(expired)

    def test_pass_index_bounds_enforced(self):
        with pytest.raises(ValueError):
            SessionState(phase=SessionPhase.AUTHENTICATING, pass_index=4, passes_required=3)
        with pytest.raises(ValueError):
            SessionState(phase=SessionPhase.ACTIVE, pass_index=1, passes_required=3)

    @pytest.mark.parametrize("passes", [1, 2, 3, 4])
    def test_active_needs_full_handshake(self, passes):
        """Every legal event sequence up to length 2Q + 2; illegal prefixes are pruned."""
        max_length = 2 * passes + 2
        stack = [(new_session(passes), 0, 0)]
        visited = 0
        while stack:
            state, depth, handshake_passes = stack.pop()
            visited += 1
            if depth == max_length:
                continue
            for event in SessionEvent:
                try:
                    following = advance_session(state, event)
                except IllegalTransitionError:
                    continue
                passes_so_far = handshake_passes + (event is SessionEvent.PASS_COMPLETED)
                if following.phase is SessionPhase.ACTIVE and state.phase is not SessionPhase.ACTIVE:
                    assert passes_so_far == passes
                    assert following.messages_sent >= passes
                    passes_so_far = 0
                if event is SessionEvent.REFRESH_REQUESTED:
                    passes_so_far = 0
                stack.append((following, depth + 1, passes_so_far))
        assert visited > max_length


def _context(**overrides) -> VehicleContext:
    return VehicleContext(vehicle_id="veh-1", **overrides)


def _saturated_context() -> VehicleContext:
    return _context(
        speed=1e3,
        location=(1e4, 0.0),
        last_decision_location=(0.0, 0.0),
        last_update=60.0,
        shared_sessions=100,
        refresh_rate=10.0,
        total_keys=100,
        zone_traversals=100,
        last_decision_zone_traversals=100,
        associativity=0.0,
    )


class TestRefreshPolicy:
    def test_fail_safe_expiry(self):
        decision = evaluate_refresh_policy(_context(last_update=61.0), 60.0, PolicyWeights(), 0.5)
        assert decision.action is RefreshAction.REGENERATE
        assert REASON_FAILSAFE_EXPIRY in decision.reasons

    def test_zone_handover(self):
        ctx = _context(zone_traversals=1)
        decision = evaluate_refresh_policy(ctx, 60.0, PolicyWeights(), 0.5)
        assert decision.reasons == [REASON_ZONE_HANDOVER]
        ctx.mark_decided()
        assert not ctx.zone_changed

    def test_all_zero_factors_keep(self):
        decision = evaluate_refresh_policy(_context(), 60.0, PolicyWeights(), 0.5)
        assert decision.action is RefreshAction.KEEP
        assert decision.score == 0.0
        assert decision.reasons == []

    def test_saturated_factors_score_eight_w(self):
        w = 0.1
        decision = evaluate_refresh_policy(_saturated_context(), 60.0, PolicyWeights.uniform(w), 0.5)
        assert decision.score == pytest.approx(8 * w)
        assert decision.reasons == [REASON_WEIGHTED_SCORE]

    def test_score_at_threshold_keeps(self):
        decision = evaluate_refresh_policy(_saturated_context(), 60.0, PolicyWeights.uniform(0.0625), 0.5)
        assert decision.score == pytest.approx(0.5)
        assert decision.action is RefreshAction.KEEP

    def test_displacement_since_last_decision(self):
        ctx = _context(location=(30.0, 40.0), last_decision_location=(0.0, 0.0))
        assert ctx.displacement == 50.0
        ctx.mark_decided()
        assert ctx.displacement == 0.0

    def test_rejects_nonpositive_window(self):
        with pytest.raises(ValueError):
            RefreshPolicy().evaluate(_context(), 0.0)

    def test_weights_must_be_nonnegative(self):
        with pytest.raises(ValueError):
            PolicyWeights(speed=-1.0)

    def test_regenerate_needs_a_reason(self):
        with pytest.raises(ValueError):
            RefreshDecision(action=RefreshAction.REGENERATE, score=1.0)

    def test_normalized_factors_are_clipped(self):
        factors = RefreshPolicy().normalized_factors(_saturated_context(), 60.0)
        assert set(factors) == set(PolicyWeights.model_fields)
        assert all(0.0 <= v <= 1.0 for v in factors.values())

    @given(
        base=st.fixed_dictionaries({
            "speed": st.floats(0, 80),
            "last_update": st.floats(0, 60),
            "shared_sessions": st.integers(0, 20),
            "refresh_rate": st.floats(0, 2),
            "total_keys": st.integers(0, 20),
            "associativity": st.floats(0, 1),
        }),
        factor=st.sampled_from(["speed", "last_update", "shared_sessions", "refresh_rate", "total_keys"]),
        bump=st.floats(0, 50),
        threshold=st.floats(0, 1),
    )
    def test_raising_a_factor_never_flips_regenerate_to_keep(self, base, factor, bump, threshold):
        policy = RefreshPolicy(threshold=threshold)
        before = policy.evaluate(_context(**base), 60.0)
        raised = dict(base)
        raised[factor] = base[factor] + (int(bump) if isinstance(base[factor], int) else bump)
        after = policy.evaluate(_context(**raised), 60.0)
        assert after.score >= before.score
        if before.regenerate:
            assert after.regenerate

    @given(
        associativity=st.floats(0, 1),
        drop=st.floats(0, 1),
    )
    def test_losing_association_never_flips_regenerate_to_keep(self, associativity, drop):
        policy = RefreshPolicy(threshold=0.05)
        before = policy.evaluate(_context(associativity=associativity), 60.0)
        after = policy.evaluate(_context(associativity=max(0.0, associativity - drop)), 60.0)
        if before.regenerate:
            assert after.regenerate
