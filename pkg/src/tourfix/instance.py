"""Instances: tournaments, probability matrices, and the JSON file format."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import InstanceError

__all__ = [
    "Digraph",
    "TournamentDigraph",
    "ProbabilityInstance",
    "StfInstance",
    "InstanceParameters",
    "parse_rational",
    "format_rational",
    "parse_instance",
    "serialize_instance",
    "load_instance",
    "certainty_digraph",
    "degree_of_uncertainty",
    "shared_structure",
    "ptf_parameters",
    "is_power_of_two",
]

_RATIO_RE = re.compile(r"^\s*[+-]?\d+\s*/\s*\d+\s*$")
_DECIMAL_RE = re.compile(r"^\s*[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?\s*$")


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def parse_rational(value) -> Fraction:
    """Exact rational from ``"a/b"``, a finite decimal string, or an int."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InstanceError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise InstanceError(f"rationals must be strings, got {value!r}")
    if _RATIO_RE.match(value):
        num, den = value.split("/")
        if int(den) == 0:
            raise InstanceError(f"zero denominator in {value!r}")
        return Fraction(int(num), int(den))
    if _DECIMAL_RE.match(value):
        return Fraction(value.strip())
    raise InstanceError(f"not a rational: {value!r}")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Digraph:
    """Digraph over indexed players; ``(u, v)`` in ``arcs`` means u beats v."""

    players: tuple[str, ...]
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "players", tuple(self.players))
        object.__setattr__(self, "arcs", frozenset((int(u), int(v)) for u, v in self.arcs))
        n = len(self.players)
        if len(set(self.players)) != n:
            raise InstanceError("duplicate player identifiers")
        for u, v in self.arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise InstanceError(f"arc ({u}, {v}) out of range")
            if u == v:
                raise InstanceError(f"self-arc on {self.players[u]!r}")
            if (v, u) in self.arcs:
                raise InstanceError(
                    f"both orientations of {{{self.players[u]}, {self.players[v]}}} present"
                )

    @property
    def n(self) -> int:
        return len(self.players)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def out_masks(self) -> np.ndarray:
        masks = np.zeros(self.n, dtype=np.int64)
        for u, v in self.arcs:
            masks[u] |= 1 << v
        return masks

    def is_acyclic(self) -> bool:
        indeg = [0] * self.n
        succ: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            succ[u].append(v)
            indeg[v] += 1
        stack = [v for v in range(self.n) if indeg[v] == 0]
        seen = 0
        while stack:
            u = stack.pop()
            seen += 1
            for v in succ[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    stack.append(v)
        return seen == self.n

    def reversed_arcs(self, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        flip = set(arcs)
        new = {(v, u) if (u, v) in flip else (u, v) for u, v in self.arcs}
        return Digraph(self.players, frozenset(new))


@dataclass(frozen=True)
class TournamentDigraph(Digraph):
    """Digraph with exactly one arc between every pair of players."""

    def __post_init__(self):
        super().__post_init__()
        n = self.n
        if len(self.arcs) != n * (n - 1) // 2:
            for u, v in combinations(range(n), 2):
                if (u, v) not in self.arcs and (v, u) not in self.arcs:
                    raise InstanceError(
                        f"no arc between {self.players[u]!r} and {self.players[v]!r}"
                    )

    @classmethod
    def from_order(cls, players: Sequence[str], order: Sequence[int]) -> "TournamentDigraph":
        """Transitive tournament where earlier players in ``order`` win."""
        arcs = {(order[i], order[j]) for i in range(len(order)) for j in range(i + 1, len(order))}
        return cls(tuple(players), frozenset(arcs))

    @classmethod
    def from_matrix(cls, players: Sequence[str], beats) -> "TournamentDigraph":
        beats = np.asarray(beats, dtype=bool)
        n = len(players)
        arcs = {(u, v) for u in range(n) for v in range(n) if u != v and beats[u, v]}
        return cls(tuple(players), frozenset(arcs))

    @cached_property
    def beats(self) -> np.ndarray:
        """Boolean ``(n, n)`` matrix; ``beats[u, v]`` iff ``u`` beats ``v``."""
        mat = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.arcs:
            mat[u, v] = True
        mat.setflags(write=False)
        return mat

    def winner(self, u: int, v: int) -> int:
        return u if (u, v) in self.arcs else v


@dataclass(frozen=True)
class ProbabilityInstance:
    """PTF instance: exact pairwise win matrix, target ``p*``, favorite."""

    players: tuple[str, ...]
    matrix: tuple[tuple[Fraction, ...], ...]
    target: Fraction
    favorite: str

    def __post_init__(self):
        players = tuple(self.players)
        n = len(players)
        if not is_power_of_two(n):
            raise InstanceError(f"n = {n} is not a power of 2")
        if len(set(players)) != n:
            raise InstanceError("duplicate player identifiers")
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise InstanceError(f"matrix must be {n}x{n}")
        mat = tuple(
            tuple(Fraction(0) if i == j else parse_rational(x) for j, x in enumerate(row))
            for i, row in enumerate(self.matrix)
        )
        for i in range(n):
            for j in range(n):
                if i != j and not 0 <= mat[i][j] <= 1:
                    raise InstanceError(f"P[{players[i]}][{players[j]}] = {mat[i][j]} outside [0, 1]")
        for i, j in combinations(range(n), 2):
            if mat[i][j] + mat[j][i] != 1:
                raise InstanceError(
                    f"asymmetric matrix: P[{players[i]}][{players[j]}] + "
                    f"P[{players[j]}][{players[i]}] = {mat[i][j] + mat[j][i]}"
                )
        target = parse_rational(self.target)
        if not 0 <= target <= 1:
            raise InstanceError(f"target {target} outside [0, 1]")
        if self.favorite not in players:
            raise InstanceError(f"favorite {self.favorite!r} is not a player")
        object.__setattr__(self, "players", players)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "target", target)

    @property
    def n(self) -> int:
        return len(self.players)

    @property
    def favorite_index(self) -> int:
        return self.players.index(self.favorite)

    def with_target(self, target) -> "ProbabilityInstance":
        return ProbabilityInstance(self.players, self.matrix, parse_rational(target), self.favorite)

    def fractional_pairs(self) -> list[tuple[int, int]]:
        n = self.n
        return [(i, j) for i, j in combinations(range(n), 2) if 0 < self.matrix[i][j] < 1]


@dataclass(frozen=True)
class StfInstance:
    """Simultaneous tournament fixing: ``m`` tournaments and a favorite.

    Duplicate tournaments are dropped (first occurrence kept).
    """

    tournaments: tuple[TournamentDigraph, ...]
    favorite: str

    def __post_init__(self):
        if not self.tournaments:
            raise InstanceError("at least one tournament is required")
        uniq: list[TournamentDigraph] = []
        seen = set()
        players = self.tournaments[0].players
        for t in self.tournaments:
            if t.players != players:
                raise InstanceError("all tournaments must share the same player list")
            if t.arcs not in seen:
                seen.add(t.arcs)
                uniq.append(t)
        if not is_power_of_two(len(players)):
            raise InstanceError(f"n = {len(players)} is not a power of 2")
        if self.favorite not in players:
            raise InstanceError(f"favorite {self.favorite!r} is not a player")
        object.__setattr__(self, "tournaments", tuple(uniq))

    @property
    def players(self) -> tuple[str, ...]:
        return self.tournaments[0].players

    @property
    def n(self) -> int:
        return len(self.players)

    @property
    def m(self) -> int:
        return len(self.tournaments)

    @property
    def favorite_index(self) -> int:
        return self.players.index(self.favorite)

    @cached_property
    def beats(self) -> np.ndarray:
        """Stacked ``(m, n, n)`` win matrices."""
        arr = np.stack([t.beats for t in self.tournaments])
        arr.setflags(write=False)
        return arr


@dataclass(frozen=True)
class InstanceParameters:
    shared_arcs: Digraph
    private_arc_count: int
    shared_fas_size: int
    degree_of_uncertainty: int
    certainty_fas_size: int
    fas_ordering: tuple[int, ...] = field(default=(), compare=False)

    @property
    def k(self) -> int:
        return self.shared_fas_size + self.private_arc_count


# ---------------------------------------------------------------- parsing


def _need(obj: dict, key: str):
    if key not in obj:
        raise InstanceError(f"missing field {key!r}")
    return obj[key]


def parse_instance(text: str, kind: str | None = None):
    """Parse the JSON instance format into a validated instance.

    ``kind`` (``tf``/``stf``/``ptf``) must agree with the file's ``kind`` when
    both are present. TF and STF files yield :class:`StfInstance`.
    """
    try:
        data = json.loads(text, parse_float=str, parse_int=str)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"malformed JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InstanceError("top level must be an object")
    file_kind = data.get("kind")
    if kind is None:
        kind = file_kind
    elif file_kind is not None and file_kind != kind:
        raise InstanceError(f"file kind {file_kind!r} does not match requested {kind!r}")
    if kind not in ("tf", "stf", "ptf"):
        raise InstanceError(f"unknown kind {kind!r}")
    players = _need(data, "players")
    if not isinstance(players, list) or not all(isinstance(p, str) for p in players):
        raise InstanceError("players must be a list of strings")
    favorite = _need(data, "favorite")
    if not isinstance(favorite, str):
        raise InstanceError("favorite must be a string")
    n = len(players)
    if not is_power_of_two(n):
        raise InstanceError(f"n = {n} is not a power of 2")
    if len(set(players)) != n:
        raise InstanceError("duplicate player identifiers")

    if kind == "ptf":
        matrix = _need(data, "matrix")
        if not isinstance(matrix, list) or len(matrix) != n:
            raise InstanceError(f"matrix must have {n} rows")
        rows = []
        for i, row in enumerate(matrix):
            if not isinstance(row, list) or len(row) != n:
                raise InstanceError(f"matrix row {i} must have {n} entries")
            rows.append(tuple(Fraction(0) if i == j else parse_rational(x) for j, x in enumerate(row)))
        return ProbabilityInstance(tuple(players), tuple(rows), parse_rational(_need(data, "target")), favorite)

    index = {p: i for i, p in enumerate(players)}
    raw = _need(data, "tournaments")
    if not isinstance(raw, list) or not raw:
        raise InstanceError("tournaments must be a non-empty list")
    if kind == "tf" and len(raw) != 1:
        raise InstanceError("a tf instance has exactly one tournament")
    tournaments = []
    for t, arcs in enumerate(raw):
        if not isinstance(arcs, list):
            raise InstanceError(f"tournament {t} must be a list of arcs")
        pairs = set()
        for arc in arcs:
            if not (isinstance(arc, list) and len(arc) == 2 and all(isinstance(x, str) for x in arc)):
                raise InstanceError(f"bad arc {arc!r} in tournament {t}")
            try:
                pair = (index[arc[0]], index[arc[1]])
            except KeyError as exc:
                raise InstanceError(f"unknown player {exc.args[0]!r} in tournament {t}") from None
            if pair in pairs:
                raise InstanceError(f"duplicate arc {arc!r} in tournament {t}")
            pairs.add(pair)
        if len(pairs) != n * (n - 1) // 2:
            TournamentDigraph(tuple(players), frozenset(pairs))  # raises with the missing pair
            raise InstanceError(f"tournament {t} has {len(pairs)} arcs, expected {n * (n - 1) // 2}")
        tournaments.append(TournamentDigraph(tuple(players), frozenset(pairs)))
    return StfInstance(tuple(tournaments), favorite)


def load_instance(path: str, kind: str | None = None):
    if path == "-":
        import sys

        return parse_instance(sys.stdin.read(), kind)
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read(), kind)


def serialize_instance(inst, kind: str | None = None) -> str:
    if isinstance(inst, ProbabilityInstance):
        payload = {
            "kind": "ptf",
            "players": list(inst.players),
            "favorite": inst.favorite,
            "target": format_rational(inst.target),
            "matrix": [
                [format_rational(inst.matrix[i][j]) for j in range(inst.n)] for i in range(inst.n)
            ],
        }
    elif isinstance(inst, StfInstance):
        if kind is None:
            kind = "stf"
        if kind == "tf" and inst.m != 1:
            raise InstanceError("a tf instance has exactly one tournament")
        payload = {
            "kind": kind,
            "players": list(inst.players),
            "favorite": inst.favorite,
            "tournaments": [
                [[inst.players[u], inst.players[v]] for u, v in sorted(t.arcs)] for t in inst.tournaments
            ],
        }
    else:
        raise TypeError(f"cannot serialize {type(inst).__name__}")
    return json.dumps(payload, indent=1)


# -------------------------------------------------------- derived structure


def certainty_digraph(inst: ProbabilityInstance) -> Digraph:
    """Arcs ``uv`` with ``P[u][v] == 1``."""
    n = inst.n
    arcs = {(u, v) for u in range(n) for v in range(n) if u != v and inst.matrix[u][v] == 1}
    return Digraph(inst.players, frozenset(arcs))


def degree_of_uncertainty(inst: ProbabilityInstance) -> int:
    return len(inst.fractional_pairs())


def shared_structure(stf: StfInstance, n_cap: int | None = None) -> InstanceParameters:
    """Shared arcs (intersection over scenarios), private count, shared FAS."""
    from .fas import min_fas

    shared = frozenset.intersection(*(t.arcs for t in stf.tournaments))
    digraph = Digraph(stf.players, shared)
    n = stf.n
    private = n * (n - 1) // 2 - len(shared)
    ofas = min_fas(digraph) if n_cap is None else min_fas(digraph, n_cap=n_cap)
    return InstanceParameters(
        shared_arcs=digraph,
        private_arc_count=private,
        shared_fas_size=ofas.size,
        degree_of_uncertainty=private,
        certainty_fas_size=ofas.size,
        fas_ordering=ofas.ordering,
    )


def ptf_parameters(inst: ProbabilityInstance, n_cap: int | None = None) -> InstanceParameters:
    from .fas import min_fas

    c = certainty_digraph(inst)
    ofas = min_fas(c) if n_cap is None else min_fas(c, n_cap=n_cap)
    k = degree_of_uncertainty(inst)
    return InstanceParameters(
        shared_arcs=c,
        private_arc_count=k,
        shared_fas_size=ofas.size,
        degree_of_uncertainty=k,
        certainty_fas_size=ofas.size,
        fas_ordering=ofas.ordering,
    )
