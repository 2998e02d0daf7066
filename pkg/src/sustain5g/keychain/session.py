"""Pass counting for long- and short-range authentication sessions.

Only the lifecycle is modelled: each pass is one message, Q passes
authenticate. No wire protocol is implemented.
"""

from sustain5g.errors import IllegalTransitionError
from sustain5g.models.key_models import SessionEvent, SessionMode, SessionPhase, SessionState

_HANDSHAKE_PHASES = (SessionPhase.AUTHENTICATING, SessionPhase.REFRESHING)


def new_session(passes: int, mode: SessionMode = SessionMode.SHORT_RANGE) -> SessionState:
    return SessionState(mode=mode, passes_required=passes)


def _with(state: SessionState, **changes) -> SessionState:
    return SessionState.model_validate({**state.model_dump(), **changes})


def advance_session(state: SessionState, event: SessionEvent) -> SessionState:
    phase = state.phase

    if event is SessionEvent.EXPIRE:
        return _with(state, phase=SessionPhase.EXPIRED, pass_index=None)

    if event is SessionEvent.START and phase is SessionPhase.IDLE:
        return _with(state, phase=SessionPhase.AUTHENTICATING, pass_index=1)

    if event is SessionEvent.REFRESH_REQUESTED and phase is SessionPhase.ACTIVE:
        return _with(state, phase=SessionPhase.REFRESHING, pass_index=1)

    if event is SessionEvent.PASS_COMPLETED and phase in _HANDSHAKE_PHASES:
        sent = state.messages_sent + 1
        if state.pass_index == state.passes_required:
            return _with(state, phase=SessionPhase.ACTIVE, pass_index=None, messages_sent=sent)
        return _with(state, pass_index=state.pass_index + 1, messages_sent=sent)

    raise IllegalTransitionError(f"{event.value} is not allowed while {phase.value}")


def complete_handshake(state: SessionState) -> SessionState:
    """Drive a fresh or active session through a full Q-pass handshake."""
    if state.phase is SessionPhase.IDLE:
        state = advance_session(state, SessionEvent.START)
    elif state.phase is SessionPhase.ACTIVE:
        state = advance_session(state, SessionEvent.REFRESH_REQUESTED)
    while state.phase in _HANDSHAKE_PHASES:
        state = advance_session(state, SessionEvent.PASS_COMPLETED)
    if state.phase is not SessionPhase.ACTIVE:
        raise IllegalTransitionError(f"cannot complete a handshake from {state.phase.value}")
    return state
