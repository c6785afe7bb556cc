"""Deterministic synchronous LOCAL-model engine.

A :class:`NodeProgram` is a pair of pure handlers.  ``init`` builds the
state of one node from what it knows at start (its id, ``n``, the global
parameters, its degree and its local input).  ``on_round`` is then called
once per step with the messages that arrived on each port and returns the
new state, the messages to send and, optionally, :class:`Halt`.

Step 0 runs with an empty inbox; a message sent at step ``t`` is read at
step ``t + 1``.  A run that ends after step ``t`` used ``t`` communication
rounds, so a program halting everywhere at step 0 costs zero rounds.
Port ``p`` of vertex ``v`` leads to ``G.adj[v][p]``.
"""

from __future__ import annotations

import pickle
from dataclasses import dataclass, field
from typing import Any

from .errors import DivergenceError
from .graph import Graph

__all__ = [
    "Halt",
    "NodeProgram",
    "RoundTranscript",
    "run_program",
    "run_phases",
    "default_round_cap",
    "BallView",
    "GatherBall",
    "to_all",
]


@dataclass(frozen=True)
class Halt:
    output: Any = None


class NodeProgram:
    """Base class; subclasses override :meth:`init` and :meth:`on_round`."""

    def init(self, uid, n, params, degree, local_input):
        return None

    def on_round(self, state, inbox):
        raise NotImplementedError


def to_all(degree: int, msg) -> dict:
    """Outbox sending ``msg`` on every port."""
    return {p: msg for p in range(degree)}


@dataclass
class RoundTranscript:
    """Labeled round counters; ``rounds_executed`` is their sum."""

    phases: dict = field(default_factory=dict)
    max_message_size: int = 0

    @property
    def rounds_executed(self) -> int:
        return sum(self.phases.values())

    def record(self, label: str, rounds: int) -> None:
        self.phases[label] = self.phases.get(label, 0) + rounds

    def absorb(self, other: "RoundTranscript") -> None:
        for label, r in other.phases.items():
            self.record(label, r)
        self.max_message_size = max(self.max_message_size, other.max_message_size)

    def to_dict(self) -> dict:
        return {"rounds_executed": self.rounds_executed, "phases": dict(self.phases),
                "max_message_size": self.max_message_size}


def default_round_cap(radius: int, d: int) -> int:
    return 10 * radius ** 2 * (d + 1) ** 4 + 10 ** 4


def _reverse_ports(G: Graph):
    # rev[v][p] = port of v at the neighbour reached through port p
    pos = [{u: i for i, u in enumerate(nb)} for nb in G.adj]
    return [tuple(pos[u][v] for u in G.adj[v]) for v in range(G.n)]


def run_program(G: Graph, program: NodeProgram, params=None, inputs=None, *, n=None,
                round_cap: int = 10 ** 6, label: str = "program",
                measure_messages: bool = False):
    """Run ``program`` on every vertex of ``G`` until all halt.

    Returns ``(outputs, transcript)`` with ``outputs[v]`` the value the
    vertex halted with.  Node ids are ``G.ids``; ``n`` defaults to the
    largest id so programs on induced subgraphs still see the global size.

    Raises
    ------
    DivergenceError
        When some vertex is still running after ``round_cap`` rounds.
    """
    params = {} if params is None else params
    n_known = max(G.ids, default=0) if n is None else n
    rev = _reverse_ports(G)
    adj = G.adj
    states = [program.init(G.ids[v], n_known, params, len(adj[v]),
                           None if inputs is None else inputs[v]) for v in range(G.n)]
    outputs = [None] * G.n
    running = [True] * G.n
    inboxes = [{} for _ in range(G.n)]
    biggest = 0
    step = 0
    live = G.n
    while live:
        if step > round_cap:
            raise DivergenceError(round_cap, [G.ids[v] for v in range(G.n) if running[v]])
        nxt = [{} for _ in range(G.n)]
        for v in range(G.n):
            if not running[v]:
                continue
            state, outbox, halt = program.on_round(states[v], inboxes[v])
            states[v] = state
            if outbox:
                for p, msg in outbox.items():
                    u = adj[v][p]
                    if running[u]:
                        nxt[u][rev[v][p]] = msg
                    if measure_messages:
                        biggest = max(biggest, len(pickle.dumps(msg)))
            if halt is not None:
                running[v] = False
                outputs[v] = halt.output
                live -= 1
        inboxes = nxt
        if live:
            step += 1
    transcript = RoundTranscript(max_message_size=biggest)
    transcript.record(label, step)
    return outputs, transcript


def run_phases(G: Graph, phases, inputs=None, **kwargs):
    """Run programs back to back, feeding each phase the previous outputs.

    ``phases`` is a sequence of ``(label, program, params)``; the combined
    transcript has one counter per phase.
    """
    transcript = RoundTranscript()
    outputs = inputs
    for label, program, params in phases:
        outputs, t = run_program(G, program, params, outputs, label=label, **kwargs)
        transcript.absorb(t)
    return outputs, transcript


@dataclass
class BallView:
    """What a node knows after gathering.

    ``adjacency`` maps the id of every vertex within distance ``r - 1`` to
    its neighbour ids; ``inputs`` and ``distance`` cover all vertices within
    distance ``r``.
    """

    center: int
    radius: int
    adjacency: dict
    inputs: dict
    distance: dict

    def induced(self, radius: int | None = None):
        """Vertex ids within ``radius`` and the edges among them.

        Only radii up to ``self.radius - 1`` are fully known.
        """
        radius = self.radius - 1 if radius is None else radius
        if radius > self.radius - 1:
            raise ValueError(f"edges of the radius-{radius} ball are not known after {self.radius} rounds")
        verts = {x for x, dx in self.distance.items() if dx <= radius}
        edges = {(a, b) for a in verts for b in self.adjacency[a] if b in verts and a < b}
        return verts, edges


class GatherBall(NodeProgram):
    """Flood labeled topology for ``radius`` rounds, then halt.

    The output is a :class:`BallView`, or ``then(view)`` when a callback is
    given, so a LOCAL algorithm of radius ``r`` is ``GatherBall(r, f)``.
    """

    def __init__(self, radius: int, then=None):
        self.radius = radius
        self.then = then

    def init(self, uid, n, params, degree, local_input):
        return {"uid": uid, "deg": degree, "step": 0, "adj": {}, "inputs": {uid: local_input},
                "dist": {uid: 0}, "nbr": [None] * degree}

    def _finish(self, state):
        view = BallView(state["uid"], self.radius, state["adj"], state["inputs"], state["dist"])
        return Halt(view if self.then is None else self.then(view))

    def on_round(self, state, inbox):
        step = state["step"]
        for port, (records, known_inputs, dist) in inbox.items():
            for x, nbrs in records.items():
                state["adj"].setdefault(x, nbrs)
            for x, val in known_inputs.items():
                state["inputs"].setdefault(x, val)
            for x, dx in dist.items():
                if dx + 1 < state["dist"].get(x, step + 1):
                    state["dist"][x] = dx + 1
            sender = min(dist, key=dist.get)
            state["nbr"][port] = sender
        if step >= 1 and state["uid"] not in state["adj"]:
            state["adj"][state["uid"]] = tuple(sorted(state["nbr"]))
        if step == self.radius:
            return state, None, self._finish(state)
        state["step"] = step + 1
        msg = (dict(state["adj"]), dict(state["inputs"]), dict(state["dist"]))
        return state, to_all(state["deg"], msg), None
