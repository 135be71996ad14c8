"""JSON-compatible schedule and sweep-config documents.

One document format serves both the schedule files consumed by ``pdm build``
and the sweep configs consumed by ``pdm sweep`` / ``pdm transition``.
Floats need not round-trip bit-exactly, but parse -> emit -> parse must be
value-identical, so every parser returns a canonical dict.
"""

from __future__ import annotations

import json

import numpy as np

from .channels import (
    DensityState,
    KrausChannel,
    NoiseModel,
    channel_at_time,
    identity_channel,
    make_channel,
    state_from_bloch,
    unitary_channel,
)
from .errors import UsageError
from .schedule import Event, Schedule

_CHANNEL_KINDS = ("dephasing", "depolarizing", "amplitude_damping")


def _matrix_to_pairs(M: np.ndarray) -> list:
    return [[[float(v.real), float(v.imag)] for v in row] for row in np.asarray(M, dtype=complex)]


def _matrix_from_pairs(rows) -> np.ndarray:
    try:
        M = np.array([[complex(re, im) for re, im in row] for row in rows])
    except (TypeError, ValueError) as exc:
        raise UsageError(f"malformed matrix entry: {exc}") from None
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise UsageError(f"matrix must be square, got shape {M.shape}")
    return M


def _require(doc: dict, key: str, where: str):
    if not isinstance(doc, dict) or key not in doc:
        raise UsageError(f"{where} is missing required field {key!r}")
    return doc[key]


def parse_initial_state(doc, qubits: int) -> tuple[DensityState, dict]:
    """Parse an initial-state descriptor; returns the state and its canonical form."""
    if isinstance(doc, dict) and "bloch" in doc:
        r = [float(x) for x in doc["bloch"]]
        if len(r) != 3:
            raise UsageError("bloch vector must have 3 components")
        if qubits != 1:
            raise UsageError("a bloch-vector initial state requires a 1-qubit system")
        return state_from_bloch(r), {"bloch": r}
    if isinstance(doc, dict) and "matrix" in doc:
        M = _matrix_from_pairs(doc["matrix"])
        if M.shape[0] != 2**qubits:
            raise UsageError(f"initial state dim {M.shape[0]} does not match {qubits} qubits")
        return DensityState(M, qubits), {"matrix": _matrix_to_pairs(M)}
    raise UsageError("initial_state must carry either 'bloch' or 'matrix'")


def parse_channel_descriptor(doc, qubits: int) -> tuple[KrausChannel | None, dict | None]:
    """Parse one inter-slice channel descriptor into a channel on the full system."""
    if doc is None or (isinstance(doc, dict) and doc.get("kind") == "identity"):
        return None, None if doc is None else {"kind": "identity"}
    kind = _require(doc, "kind", "channel descriptor")
    if kind in _CHANNEL_KINDS:
        if qubits != 1:
            raise UsageError(f"{kind} gap channel requires a 1-qubit schedule")
        if "param" in doc:
            param = float(doc["param"])
            return make_channel(kind, param), {"kind": kind, "param": param}
        tau = float(_require(doc, "tau", f"{kind} descriptor"))
        t = float(_require(doc, "t", f"{kind} descriptor"))
        model = NoiseModel(kind, tau=tau)
        return channel_at_time(model, t), {"kind": kind, "tau": tau, "t": t}
    if kind == "unitary":
        U = _matrix_from_pairs(_require(doc, "matrix", "unitary descriptor"))
        if U.shape[0] != 2**qubits:
            raise UsageError("unitary dimension does not match the system")
        return unitary_channel(U), {"kind": "unitary", "matrix": _matrix_to_pairs(U)}
    raise UsageError(f"unknown channel kind {kind!r}")


def schedule_from_dict(doc: dict) -> Schedule:
    return _parse_schedule(doc)[0]


def normalize_schedule_doc(doc: dict) -> dict:
    return _parse_schedule(doc)[1]


def _parse_schedule(doc: dict) -> tuple[Schedule, dict]:
    qubits = int(_require(doc, "qubits", "schedule"))
    if qubits < 1:
        raise UsageError("qubits must be >= 1")
    state, state_doc = parse_initial_state(_require(doc, "initial_state", "schedule"), qubits)
    slices = _require(doc, "slices", "schedule")
    if not isinstance(slices, list) or not slices:
        raise UsageError("slices must be a nonempty list of event lists")
    events = []
    canon_slices = []
    for si, sl in enumerate(slices):
        if not isinstance(sl, list) or not sl:
            raise UsageError(f"slice {si} must be a nonempty event list")
        canon = []
        for ev in sl:
            eid = int(_require(ev, "id", "event"))
            q = int(_require(ev, "qubit", "event"))
            events.append(Event(eid, q, si))
            canon.append({"id": eid, "qubit": q})
        canon_slices.append(canon)
    raw_channels = doc.get("channels", [None] * (len(slices) - 1))
    if len(raw_channels) != len(slices) - 1:
        raise UsageError(
            f"expected {len(slices) - 1} gap channels, got {len(raw_channels)}"
        )
    channels, canon_channels = [], []
    for ch_doc in raw_channels:
        ch, canon = parse_channel_descriptor(ch_doc, qubits)
        channels.append(ch)
        canon_channels.append(canon)
    schedule = Schedule(qubits, state, tuple(events), tuple(channels))
    return schedule, {
        "qubits": qubits,
        "initial_state": state_doc,
        "slices": canon_slices,
        "channels": canon_channels,
    }


def noise_model_from_dict(doc: dict) -> tuple[NoiseModel, dict]:
    kind = _require(doc, "kind", "noise descriptor")
    if kind in _CHANNEL_KINDS:
        tau = float(_require(doc, "tau", f"{kind} noise descriptor"))
        return NoiseModel(kind, tau=tau), {"kind": kind, "tau": tau}
    if kind == "unitary":
        U = _matrix_from_pairs(_require(doc, "matrix", "unitary noise descriptor"))
        return NoiseModel("unitary", unitary=U), {"kind": "unitary", "matrix": _matrix_to_pairs(U)}
    if kind == "composite":
        members = _require(doc, "members", "composite noise descriptor")
        if not isinstance(members, list) or not members:
            raise UsageError("composite noise requires a nonempty member list")
        parsed = [noise_model_from_dict(m) for m in members]
        return (
            NoiseModel("composite", members=tuple(m for m, _ in parsed)),
            {"kind": "composite", "members": [c for _, c in parsed]},
        )
    raise UsageError(f"unknown noise kind {kind!r}")


def load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise UsageError(f"{path} must contain a JSON object")
    return doc


def dumps_doc(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)
