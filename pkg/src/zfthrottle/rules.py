"""Colour change rules.

A rule maps a forcing state (blue set plus the set of vertices that have
already forced) to the forces it admits at that instant. The floor rules
admit everything their base rule does plus hops.
"""

from __future__ import annotations

import enum
from typing import NamedTuple

from .graph import Graph, bits, component_masks, from_mask, to_mask


class RuleId(enum.Enum):
    Z = "Z"
    ZPLUS = "Z+"
    ZLOOP = "Zl"
    FLOOR_Z = "floorZ"
    FLOOR_ZPLUS = "floorZ+"
    FLOOR_ZLOOP = "floorZl"

    @property
    def base(self) -> RuleId:
        return _BASE[self]

    @property
    def is_floor(self) -> bool:
        return self in (RuleId.FLOOR_Z, RuleId.FLOOR_ZPLUS, RuleId.FLOOR_ZLOOP)

    @property
    def floor(self) -> RuleId:
        return _FLOOR[self.base]

    @classmethod
    def parse(cls, text: str) -> RuleId:
        aliases = {
            "z": cls.Z, "z+": cls.ZPLUS, "zplus": cls.ZPLUS, "zl": cls.ZLOOP, "zloop": cls.ZLOOP,
            "floorz": cls.FLOOR_Z, "floorz+": cls.FLOOR_ZPLUS, "floorzplus": cls.FLOOR_ZPLUS,
            "floorzl": cls.FLOOR_ZLOOP, "floorzloop": cls.FLOOR_ZLOOP,
        }
        try:
            return aliases[text.strip().lower()]
        except KeyError:
            raise ValueError(f"unknown rule {text!r}; expected one of Z, Z+, Zl, floorZ, floorZ+, floorZl") from None


_BASE = {
    RuleId.Z: RuleId.Z, RuleId.FLOOR_Z: RuleId.Z,
    RuleId.ZPLUS: RuleId.ZPLUS, RuleId.FLOOR_ZPLUS: RuleId.ZPLUS,
    RuleId.ZLOOP: RuleId.ZLOOP, RuleId.FLOOR_ZLOOP: RuleId.ZLOOP,
}
_FLOOR = {RuleId.Z: RuleId.FLOOR_Z, RuleId.ZPLUS: RuleId.FLOOR_ZPLUS, RuleId.ZLOOP: RuleId.FLOOR_ZLOOP}


class ForceKind(enum.Enum):
    STANDARD = "standard"
    HOP = "hop"
    SELF = "self"


class Force(NamedTuple):
    source: int
    target: int
    kind: ForceKind = ForceKind.STANDARD

    def to_json(self, step: int | None = None) -> dict:
        out = {"src": self.source, "dst": self.target, "kind": self.kind.value}
        if step is not None:
            out["step"] = step
        return out

    @classmethod
    def from_json(cls, d: dict) -> Force:
        return cls(int(d["src"]), int(d["dst"]), ForceKind(d.get("kind", "standard")))


class ForcingState(NamedTuple):
    """Blue vertices and the vertices that have performed a force (bitmasks)."""

    blue: int
    spent: int = 0

    @classmethod
    def of(cls, blue, spent=()) -> ForcingState:
        b, s = to_mask(blue), to_mask(spent)
        if s & ~b:
            raise ValueError("spent vertices must be blue")
        return cls(b, s)

    @property
    def blue_set(self) -> frozenset[int]:
        return from_mask(self.blue)

    @property
    def spent_set(self) -> frozenset[int]:
        return from_mask(self.spent)


def base_forces(rule: RuleId, g: Graph, state: ForcingState) -> list[Force]:
    """Forces of the base (non-hopping) part of ``rule``."""
    base = rule.base
    blue, spent = state.blue, state.spent
    white = g.full & ~blue
    adj = g.adj
    out: list[Force] = []
    if base is RuleId.ZPLUS:
        for comp in component_masks(g, white):
            for u in bits(blue):
                inside = adj[u] & comp
                if inside and not inside & (inside - 1):
                    out.append(Force(u, inside.bit_length() - 1))
        return out
    # spent only matters for the standard rule and its floor: a vertex forces once
    gate = spent if base is RuleId.Z else 0
    for u in bits(blue & ~gate):
        w = adj[u] & white
        if w and not w & (w - 1):
            out.append(Force(u, w.bit_length() - 1))
    if base is RuleId.ZLOOP:
        for w in bits(white):
            if not adj[w] & white:
                out.append(Force(w, w, ForceKind.SELF))
    return out


def hop_sources(g: Graph, state: ForcingState) -> int:
    """Active blue vertices whose whole neighbourhood is blue (bitmask)."""
    blue = state.blue
    srcs = 0
    for v in bits(blue & ~state.spent):
        if not g.adj[v] & ~blue:
            srcs |= 1 << v
    return srcs


def admissible_forces(rule: RuleId, g: Graph, state: ForcingState) -> set[Force]:
    forces = set(base_forces(rule, g, state))
    if rule.is_floor:
        white = g.full & ~state.blue
        if white:
            for v in bits(hop_sources(g, state)):
                forces.update(Force(v, w, ForceKind.HOP) for w in bits(white))
    return forces


def is_admissible(rule: RuleId, g: Graph, state: ForcingState, f: Force) -> bool:
    blue, spent = state.blue, state.spent
    u, w = f.source, f.target
    if not (0 <= u < g.n and 0 <= w < g.n) or blue >> w & 1:
        return False
    white = g.full & ~blue
    if f.kind is ForceKind.SELF:
        return rule.base is RuleId.ZLOOP and u == w and not g.adj[w] & white
    if u == w or not blue >> u & 1:
        return False
    if f.kind is ForceKind.HOP:
        return rule.is_floor and not spent >> u & 1 and not g.adj[u] & white
    if rule.base is RuleId.ZPLUS:
        comp = next(c for c in component_masks(g, white) if c >> w & 1)
        return g.adj[u] & comp == 1 << w
    if rule.base is RuleId.Z and spent >> u & 1:
        return False
    return g.adj[u] & white == 1 << w


def apply_force(state: ForcingState, f: Force, rule: RuleId | None = None, g: Graph | None = None) -> ForcingState:
    """Execute one force. With ``rule`` and ``g`` the force is fully checked;
    without them only state-level consistency is checked."""
    if rule is not None and g is not None:
        if not is_admissible(rule, g, state, f):
            raise ValueError(f"{f} is not admissible")
    else:
        if state.blue >> f.target & 1:
            raise ValueError(f"target {f.target} is already blue")
        if f.kind is ForceKind.SELF:
            if f.source != f.target:
                raise ValueError("a self force needs source == target")
        elif not state.blue >> f.source & 1:
            raise ValueError(f"source {f.source} is not blue")
        elif f.kind is ForceKind.HOP and state.spent >> f.source & 1:
            raise ValueError(f"source {f.source} has already forced")
    # a self-forcing vertex has performed a force, so it is no longer active
    return ForcingState(state.blue | 1 << f.target, state.spent | 1 << f.source)
