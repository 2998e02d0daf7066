"""K_AMF → K_OTK → {TM-F, HM-F} derivation tree and session-key issuance.

A hierarchy is single-writer: issuing keys mutates it and must be serialised
by the caller. Lookups and dumps are safe against a quiescent hierarchy.
"""

import logging
from typing import Dict, Iterator, List, Optional, Tuple

from cryptography.hazmat.primitives import hashes
from cryptography.hazmat.primitives.kdf.hkdf import HKDF
from pydantic import BaseModel, Field, PrivateAttr

from sustain5g.errors import DuplicateLabelError, KeyCollisionError
from sustain5g.models.key_models import KEY_SIZE, KeyMaterial, SessionMode, VehicleContext

logger = logging.getLogger(__name__)

ROOT_LABEL = "K_AMF"
ONE_TIME_LABEL = "K_OTK"
TERMINAL_LABEL = "TM-F"
HUB_LABEL = "HM-F"
PATH_SEPARATOR = "/"

TERMINAL_PATH = PATH_SEPARATOR.join((ROOT_LABEL, ONE_TIME_LABEL, TERMINAL_LABEL))
HUB_PATH = PATH_SEPARATOR.join((ROOT_LABEL, ONE_TIME_LABEL, HUB_LABEL))

SESSION_PARENTS: Dict[SessionMode, str] = {
    SessionMode.SHORT_RANGE: TERMINAL_PATH,
    SessionMode.LONG_RANGE: HUB_PATH,
}


def _hkdf(secret: bytes, label: str) -> bytes:
    """HKDF-SHA256 extract-and-expand of ``secret`` with the label as context."""
    return HKDF(
        algorithm=hashes.SHA256(),
        length=KEY_SIZE,
        salt=None,
        info=label.encode("utf-8"),
    ).derive(secret)


def derive_key(parent: KeyMaterial, label: str) -> KeyMaterial:
    if not label:
        raise ValueError("derivation label must be non-empty")
    return KeyMaterial(
        key_bytes=_hkdf(parent.key_bytes, label),
        label=label,
        generation=parent.generation + 1,
    )


class KeyNode(BaseModel):
    material: KeyMaterial
    children: Dict[str, "KeyNode"] = Field(default_factory=dict)


class KeyHierarchy(BaseModel):
    root: KeyNode
    contexts: Dict[str, VehicleContext] = Field(default_factory=dict)
    issue_counters: Dict[str, int] = Field(default_factory=dict)

    _paths_by_key: Dict[bytes, str] = PrivateAttr(default_factory=dict)

    def model_post_init(self, __context) -> None:
        for path, node in self._walk():
            self._register(path, node.material)

    def _walk(self) -> Iterator[Tuple[str, KeyNode]]:
        stack: List[Tuple[str, KeyNode]] = [(self.root.material.label, self.root)]
        while stack:
            path, node = stack.pop()
            yield path, node
            for label, child in node.children.items():
                stack.append((f"{path}{PATH_SEPARATOR}{label}", child))

    def _register(self, path: str, material: KeyMaterial) -> None:
        existing = self._paths_by_key.get(material.key_bytes)
        if existing is not None and existing != path:
            raise KeyCollisionError(f"{path} derived the same bytes as {existing}")
        self._paths_by_key[material.key_bytes] = path

    def node(self, path: str) -> KeyNode:
        labels = path.split(PATH_SEPARATOR)
        if labels[0] != self.root.material.label:
            raise KeyError(path)
        node = self.root
        for label in labels[1:]:
            node = node.children[label]
        return node

    def get(self, path: str) -> KeyMaterial:
        return self.node(path).material

    def __contains__(self, path: str) -> bool:
        try:
            self.node(path)
        except KeyError:
            return False
        return True

    def paths(self) -> List[str]:
        return sorted(path for path, _ in self._walk())

    def __len__(self) -> int:
        return len(self._paths_by_key)

    def insert(self, parent_path: str, label: str) -> KeyMaterial:
        """Derive ``label`` under ``parent_path`` and record it."""
        parent = self.node(parent_path)
        if label in parent.children:
            raise DuplicateLabelError(f"{parent_path} already has a child labelled {label!r}")
        material = derive_key(parent.material, label)
        path = f"{parent_path}{PATH_SEPARATOR}{label}"
        self._register(path, material)
        parent.children[label] = KeyNode(material=material)
        return material

    def track(self, context: VehicleContext) -> None:
        """Follow a peer so that issuance updates its total key count."""
        self.contexts[context.vehicle_id] = context

    def untrack(self, vehicle_id: str) -> None:
        self.contexts.pop(vehicle_id, None)

    def dump(self) -> str:
        """``<label path> <hex key>`` per line, sorted by path."""
        lines = [f"{path} {node.material.hex}" for path, node in sorted(self._walk())]
        return "\n".join(lines) + "\n"


def build_hierarchy(root_seed: bytes) -> KeyHierarchy:
    if len(root_seed) != KEY_SIZE:
        raise ValueError(f"root seed must be {KEY_SIZE} bytes, got {len(root_seed)}")
    root = KeyMaterial(key_bytes=_hkdf(root_seed, ROOT_LABEL), label=ROOT_LABEL, generation=0)
    hierarchy = KeyHierarchy(root=KeyNode(material=root))
    hierarchy.insert(ROOT_LABEL, ONE_TIME_LABEL)
    one_time_path = f"{ROOT_LABEL}{PATH_SEPARATOR}{ONE_TIME_LABEL}"
    hierarchy.insert(one_time_path, TERMINAL_LABEL)
    hierarchy.insert(one_time_path, HUB_LABEL)
    return hierarchy


def issue_session_key(hierarchy: KeyHierarchy, mode: SessionMode, peer_id: str) -> KeyMaterial:
    """Short range keys hang under TM-F, long range keys under HM-F, labelled ``peer#n``."""
    if not peer_id:
        raise ValueError("peer_id must be non-empty")
    parent_path = SESSION_PARENTS[mode]
    counter_key = f"{parent_path}{PATH_SEPARATOR}{peer_id}"
    issued = hierarchy.issue_counters.get(counter_key, 0) + 1
    material = hierarchy.insert(parent_path, f"{peer_id}#{issued}")
    hierarchy.issue_counters[counter_key] = issued

    context: Optional[VehicleContext] = hierarchy.contexts.get(peer_id)
    if context is not None:
        context.total_keys += 1
    logger.debug("issued %s key %s#%d", mode.value, peer_id, issued)
    return material


def session_key_path(mode: SessionMode, peer_id: str, issued: int) -> str:
    return f"{SESSION_PARENTS[mode]}{PATH_SEPARATOR}{peer_id}#{issued}"
