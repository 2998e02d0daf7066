from .hierarchy import (
    HUB_PATH,
    TERMINAL_PATH,
    KeyHierarchy,
    KeyNode,
    build_hierarchy,
    derive_key,
    issue_session_key,
    session_key_path,
)
from .refresh import RefreshPolicy, evaluate_refresh_policy
from .session import advance_session, complete_handshake, new_session

__all__ = [
    "HUB_PATH",
    "TERMINAL_PATH",
    "KeyHierarchy",
    "KeyNode",
    "build_hierarchy",
    "derive_key",
    "issue_session_key",
    "session_key_path",
    "RefreshPolicy",
    "evaluate_refresh_policy",
    "advance_session",
    "complete_handshake",
    "new_session",
]
