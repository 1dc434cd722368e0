"""Exact-coordinate unit-square gadgets and the monotone-tiling reduction.

All coordinates are Fractions: the horizontal pitch gamma = 0.1/N is not
binary-representable, and the constructions depend on squares touching
exactly at shared boundaries.  Closed-set semantics: two unit squares touch
iff both coordinate gaps are at most 1.

Conventions: omega is odd with omega = 3 mod 8 (default 11), h = 8*omega+11,
delta = 0.01.  Block members are pairs (a, b) with a a bit and b a 0-based
value in range(N); a block square sits at (gamma*b, a*delta) relative to the
block origin.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class UnitSquare:
    x: Fraction  # lower-left corner
    y: Fraction
    is_terminal: bool = False
    tag: str = ""

    def shifted(self, dx, dy):
        return UnitSquare(self.x + dx, self.y + dy, self.is_terminal, self.tag)


def squares_touch(s: UnitSquare, t: UnitSquare) -> bool:
    return abs(s.x - t.x) <= 1 and abs(s.y - t.y) <= 1


@dataclass(frozen=True)
class GadgetParams:
    N: int
    omega: int = 11

    def __post_init__(self):
        if self.omega % 8 != 3 or self.omega < 3:
            raise ValueError("omega must be congruent to 3 mod 8")
        if self.N < 1:
            raise ValueError("N must be positive")
        if self.gamma * self.N >= 1:
            raise ValueError("gamma * N must stay below 1")

    @property
    def h(self):
        return 8 * self.omega + 11

    @property
    def gamma(self):
        return Fraction(1, 10) / self.N

    @property
    def delta(self):
        return Fraction(1, 100)


def _frac(v):
    return v if isinstance(v, Fraction) else Fraction(v)


# ---------------------------------------------------------------------------
# block and wire


def block(params: GadgetParams, S, offset=(0, 0), tag="block", terminal=False):
    """One square per (a, b) in S at (gamma*b, a*delta) plus the offset.

    Returns the position map sigma: (a, b) -> UnitSquare.
    """
    if not S:
        raise ValueError("block member set must be nonempty")
    ox, oy = _frac(offset[0]), _frac(offset[1])
    g, d = params.gamma, params.delta
    sigma = {}
    for a, b in sorted(S):
        if a not in (0, 1) or not 0 <= b < params.N:
            raise ValueError(f"bad block member {(a, b)}")
        sigma[(a, b)] = UnitSquare(ox + g * b, oy + d * a, terminal, tag)
    return sigma


@dataclass
class WireGadget:
    params: GadgetParams
    S: frozenset
    offset: tuple
    blocks: list = field(default_factory=list)  # index 1..omega of sigma maps

    @property
    def squares(self):
        return [sq for blk in self.blocks for sq in blk.values()]

    @property
    def interface(self):
        return list(self.blocks[0].values()) + list(self.blocks[-1].values())

    def tau(self, a, b):
        """The contiguous chain of omega squares selecting (a, b)."""
        if (a, b) not in self.S:
            raise ValueError(f"{(a, b)} not available in this wire")
        chain = [self.blocks[0][(a, b)]]
        for blk in self.blocks[1:-1]:
            chain.append(blk[(0, b)])
        chain.append(self.blocks[-1][(1 - a, b)])
        return chain


def wire_gadget(params: GadgetParams, S, offset=(0, 0), tag="wire") -> WireGadget:
    """A row of omega blocks: the ends carry S and its bit-flipped copy, the
    middle blocks carry a half-step vertical offset so they only touch their
    horizontal neighbours."""
    S = frozenset(S)
    if not S:
        raise ValueError("wire member set must be nonempty")
    ox, oy = _frac(offset[0]), _frac(offset[1])
    d = params.delta
    w = WireGadget(params, S, (ox, oy))
    full = frozenset((0, b) for b in range(params.N))
    flipped = frozenset((1 - a, b) for a, b in S)
    for i in range(1, params.omega + 1):
        if i == 1:
            w.blocks.append(block(params, S, (ox, oy), tag))
        elif i == params.omega:
            w.blocks.append(block(params, flipped, (ox + params.omega - 1, oy), tag))
        else:
            w.blocks.append(block(params, full, (ox + i - 1, oy + d / 2), tag))
    return w


# ---------------------------------------------------------------------------
# crossing gadget


@dataclass
class CrossingGadget:
    params: GadgetParams
    offset: tuple
    omegas: dict = field(default_factory=dict)  # 1..8 -> list of squares
    terminals: dict = field(default_factory=dict)  # 'N','S','W','E'
    interfaces: dict = field(default_factory=dict)  # 'SW','SE','NW','NE'

    @property
    def squares(self):
        out = [sq for i in range(1, 9) for sq in self.omegas[i]]
        out += list(self.terminals.values()) + list(self.interfaces.values())
        return out

    @property
    def delta1(self):
        """Left-bottom plus right-top halves with the SW/NE interfaces."""
        return (
            self.omegas[1] + self.omegas[5] + self.omegas[4] + self.omegas[8]
            + [self.interfaces["SW"], self.interfaces["NE"]]
        )

    @property
    def delta2(self):
        """Left-top plus right-bottom halves with the NW/SE interfaces."""
        return (
            self.omegas[2] + self.omegas[7] + self.omegas[3] + self.omegas[6]
            + [self.interfaces["NW"], self.interfaces["SE"]]
        )


def crossing_gadget(params: GadgetParams, offset=(0, 0), tag="crossing") -> CrossingGadget:
    """Bit-copy gadget: transmits one bit vertically while the cheapest
    connection patterns never join its north and south interfaces."""
    om, h = params.omega, params.h
    g, d = params.gamma, params.delta
    ox, oy = _frac(offset[0]), _frac(offset[1])
    c = CrossingGadget(params, (ox, oy))

    def sq(x, y):
        return UnitSquare(ox + x, oy + y, False, tag)

    half = (h - 3) // 2
    i_down = range(1, half + 1)
    i_up = [v + (h - 1) // 2 for v in i_down]

    c.omegas[1] = [sq(g / 2, i) for i in range(1, half + 1)]
    c.omegas[2] = [sq(g / 2, i) for i in range((h + 1) // 2, h - 1)]
    c.omegas[3] = [sq(om - 1 - g / 2, i) for i in range(1, half + 1)]
    c.omegas[4] = [sq(om - 1 - g / 2, i) for i in range((h + 1) // 2, h - 1)]

    def beta_down(i):
        r = i % 4
        if r == 1:
            return [1]
        if r == 3:
            return [half]
        return list(i_down)

    def beta_up(i):
        r = i % 4
        if r == 1:
            return [h - 2]
        if r == 3:
            return [(h + 1) // 2]
        return list(i_up)

    c.omegas[5] = [sq(i, j + d) for i in range(1, (om - 3) // 2 + 1) for j in beta_down(i)]
    c.omegas[6] = [sq(i, j + d) for i in range((om + 1) // 2, om - 1) for j in beta_down(i)]
    c.omegas[7] = [sq(i, j - d) for i in range(1, (om - 3) // 2 + 1) for j in beta_up(i)]
    c.omegas[8] = [sq(i, j - d) for i in range((om + 1) // 2, om - 1) for j in beta_up(i)]

    mid = Fraction(om - 1, 2)
    c.terminals["N"] = UnitSquare(ox + mid, oy + h - 2 - d, True, tag)
    c.terminals["S"] = UnitSquare(ox + mid, oy + 1 + d, True, tag)
    c.terminals["W"] = UnitSquare(ox + g / 2, oy + Fraction(h - 1, 2), True, tag)
    c.terminals["E"] = UnitSquare(ox + om - 1 - g / 2, oy + Fraction(h - 1, 2), True, tag)

    c.interfaces["SW"] = sq(g / 2, 0)
    c.interfaces["SE"] = sq(om - 1 - g / 2, 0)
    c.interfaces["NW"] = sq(g / 2, h - 1)
    c.interfaces["NE"] = sq(om - 1 - g / 2, h - 1)
    return c


# ---------------------------------------------------------------------------
# top / bottom / stem


@dataclass
class BorderGadget:
    squares: list
    kappa1: list
    kappa2: list
    terminal: UnitSquare
    interfaces: tuple


def _border_gadget(params, offset, tag, flipped: bool) -> BorderGadget:
    """Shared body of the top and bottom gadgets; `flipped` mirrors across
    the x-axis so the interfaces sit above instead of below the arm row."""
    om, g = params.omega, params.gamma
    ox, oy = _frac(offset[0]), _frac(offset[1])
    arm_y, if_y = (1, 0) if not flipped else (0, 1)
    u1 = [UnitSquare(ox + i, oy + arm_y, False, tag) for i in range(1, (om - 3) // 2 + 1)]
    u2 = [UnitSquare(ox + i, oy + arm_y, False, tag) for i in range((om + 1) // 2, om - 1)]
    u = UnitSquare(ox + g / 2, oy + if_y, False, tag)
    v = UnitSquare(ox + om - 1 - g / 2, oy + if_y, False, tag)
    x = UnitSquare(ox + Fraction(om - 1, 2), oy + arm_y, True, tag)
    return BorderGadget(u1 + u2 + [u, v, x], u1 + [u], u2 + [v], x, (u, v))


def top_gadget(params: GadgetParams, offset=(0, 0), tag="top") -> BorderGadget:
    return _border_gadget(params, offset, tag, flipped=False)


def bottom_gadget(params: GadgetParams, offset=(0, 0), tag="bottom") -> BorderGadget:
    return _border_gadget(params, offset, tag, flipped=True)


def stem_gadget(params: GadgetParams, x_rows: int, offset=(0, 0), tag="stem"):
    """A terminal backbone: a column of contiguous squares plus one side
    square per row, all terminals."""
    if x_rows < 1:
        raise ValueError("need at least one row")
    h, d = params.h, params.delta
    ox, oy = _frac(offset[0]), _frac(offset[1])
    squares = [
        UnitSquare(ox, oy + i, True, tag) for i in range((x_rows - 1) * (h + 1) + 1)
    ]
    squares += [
        UnitSquare(ox + 1, oy + (i - 1) * (h + 1 + d), True, tag) for i in range(1, x_rows + 1)
    ]
    return squares


# ---------------------------------------------------------------------------
# whole-instance assembly


@dataclass
class SquareSteinerInstance:
    params: GadgetParams
    mngt: object  # the source monotone GridTilingInstance
    squares: tuple = ()
    k: int = 0
    wires: dict = field(default_factory=dict)  # (i, placed_j) -> WireGadget
    crossings: dict = field(default_factory=dict)  # (i, placed_j) -> CrossingGadget
    tops: dict = field(default_factory=dict)  # placed_j -> BorderGadget
    bottoms: dict = field(default_factory=dict)
    stem: list = field(default_factory=list)
    row_ends: list = field(default_factory=list)  # R_i terminal squares
    index: dict = field(default_factory=dict)  # UnitSquare -> position

    @property
    def terminals(self):
        return tuple(i for i, s in enumerate(self.squares) if s.is_terminal)

    def placed_column(self, j):
        """Placed wire column for source column j (order is mirrored)."""
        return self.mngt.y + 1 - j

    def touching_pairs(self):
        """Touching index pairs via a unit-cell spatial hash."""
        cells = {}
        for i, s in enumerate(self.squares):
            cells.setdefault((s.x.__floor__(), s.y.__floor__()), []).append(i)
        pairs = set()
        for (cx, cy), members in cells.items():
            for dx in (-2, -1, 0, 1, 2):
                for dy in (-2, -1, 0, 1, 2):
                    for i in members:
                        for j in cells.get((cx + dx, cy + dy), ()):
                            if i < j and squares_touch(self.squares[i], self.squares[j]):
                                pairs.add((i, j))
        return sorted(pairs)

    def adjacency(self):
        adj = [set() for _ in self.squares]
        for i, j in self.touching_pairs():
            adj[i].add(j)
            adj[j].add(i)
        return adj


def build_instance(mngt) -> SquareSteinerInstance:
    """Assemble the unit-square instance for a monotone narrow tiling.

    Placed wire columns run mirrored (placed column jp carries source column
    y+1-jp) so that non-decreasing source rows become non-increasing
    horizontal offsets, which is the direction in which consecutive selected
    squares can touch.  The budget k counts the placed gadgets: omega per
    wire, (omega+1)/4*(h-1) per crossing, (omega-1)/2 per top/bottom.
    """
    if mngt.variant != "monotone":
        raise ValueError("expected a monotone tiling instance")
    if mngt.x % 2 or mngt.y % 2:
        raise ValueError("row and column counts must be even")
    params = GadgetParams(N=mngt.N)
    om, h, g, d = params.omega, params.h, params.gamma, params.delta
    inst = SquareSteinerInstance(params, mngt)
    x, y = mngt.x, mngt.y
    row_pitch = h + 1 + d

    inst.stem = stem_gadget(params, x, (g * (mngt.N - 1), 2 + d / 2))
    for i in range(1, x + 1):
        for jp in range(1, y + 1):
            S = mngt.sets[(i, mngt.y + 1 - jp)]
            inst.wires[(i, jp)] = wire_gadget(
                params, S, (2 + (jp - 1) * om, 2 + (i - 1) * row_pitch), f"wire[{i},{jp}]"
            )
    for i in range(1, x):
        for jp in range(1, y + 1):
            inst.crossings[(i, jp)] = crossing_gadget(
                params, (2 + (jp - 1) * om, 3 + d + (i - 1) * row_pitch), f"cross[{i},{jp}]"
            )
    for jp in range(1, y + 1):
        inst.bottoms[jp] = bottom_gadget(params, (2 + (jp - 1) * om, 0), f"bottom[{jp}]")
        inst.tops[jp] = top_gadget(
            params, (2 + (jp - 1) * om, 3 + d + (x - 1) * row_pitch), f"top[{jp}]"
        )
    inst.row_ends = [
        UnitSquare(2 + y * om, 2 + d / 2 + (i - 1) * row_pitch, True, f"rowend[{i}]")
        for i in range(1, x + 1)
    ]

    squares = list(inst.stem)
    for w in inst.wires.values():
        squares += w.squares
    for c in inst.crossings.values():
        squares += c.squares
    for bset in (inst.bottoms, inst.tops):
        for b in bset.values():
            squares += b.squares
    squares += inst.row_ends
    inst.squares = tuple(squares)
    inst.index = {s: i for i, s in enumerate(squares)}
    if len(inst.index) != len(squares):
        raise AssertionError("duplicate square placed")

    n_wire = x * y
    n_cross = (x - 1) * y
    n_border = 2 * y
    inst.k = (
        om * n_wire
        + (om + 1) * (h - 1) // 4 * n_cross
        + (om - 1) // 2 * n_border
    )
    return inst


def witness_from_tiling(inst: SquareSteinerInstance, witness):
    """Select squares realizing a consistent tiling: the tau chain per wire,
    one crossing half per bit, and the matching border arms.  Exactly k
    squares, and the selection plus terminals is touching-connected."""
    from . import gridtiling

    if not gridtiling.is_consistent(inst.mngt, witness):
        raise ValueError("witness is not consistent with the tiling instance")
    x, y = inst.mngt.x, inst.mngt.y
    chosen = []
    bit = {}
    for i in range(1, x + 1):
        for jp in range(1, y + 1):
            a, b = witness.choice[(i, inst.mngt.y + 1 - jp)]
            bit[(i, jp)] = a
            chosen += inst.wires[(i, jp)].tau(a, b)
    for i in range(1, x):
        for jp in range(1, y + 1):
            c = inst.crossings[(i, jp)]
            chosen += c.delta1 if bit[(i, jp)] == 1 else c.delta2
    for jp in range(1, y + 1):
        first, last = bit[(1, jp)], bit[(x, jp)]
        b = inst.bottoms[jp]
        chosen += b.kappa1 if first == 0 else b.kappa2
        t = inst.tops[jp]
        chosen += t.kappa1 if last == 1 else t.kappa2
    return sorted(inst.index[s] for s in chosen)


def extract_tiling(inst: SquareSteinerInstance, chosen):
    """Read a tiling witness off a canonical solution.

    Requires exactly one selected square per block of every wire; the pair
    (a, b) is read from each wire's first block and mapped back through the
    column mirroring.
    """
    from . import gridtiling

    chosen_set = set(chosen)
    choice = {}
    for (i, jp), w in sorted(inst.wires.items()):
        picks = None
        for bi, blk in enumerate(w.blocks, start=1):
            sel = [key for key, sq in blk.items() if inst.index[sq] in chosen_set]
            if len(sel) != 1:
                raise ValueError(
                    f"solution is not canonical: wire ({i},{jp}) block {bi} "
                    f"has {len(sel)} selected squares"
                )
            if bi == 1:
                picks = sel[0]
        choice[(i, inst.mngt.y + 1 - jp)] = picks
    w = gridtiling.TilingWitness(choice)
    if not gridtiling.is_consistent(inst.mngt, w):
        raise ValueError("extracted witness is not consistent")
    return w


# ---------------------------------------------------------------------------
# structural checks


def _components(squares):
    n = len(squares)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            if squares_touch(squares[i], squares[j]):
                ra, rb = find(i), find(j)
                if ra != rb:
                    parent[ra] = rb
    comps = {}
    for i in range(n):
        comps.setdefault(find(i), []).append(i)
    return list(comps.values())


def connected(squares) -> bool:
    return len(_components(squares)) <= 1


def delta_component_structure(c: CrossingGadget, which: int):
    """Component count and per-component terminal/interface tallies for a
    crossing half together with the gadget's terminals."""
    half = c.delta1 if which == 1 else c.delta2
    squares = half + list(c.terminals.values())
    comps = _components(squares)
    summary = []
    for comp in comps:
        terms = sum(1 for i in comp if squares[i].is_terminal)
        ifaces = sum(1 for i in comp if squares[i] in set(c.interfaces.values()))
        summary.append((len(comp), terms, ifaces))
    return sorted(summary)


def well_separated_report(inst: SquareSteinerInstance):
    """Check that each gadget's interface squares cut its interior from the
    rest of the instance in the touching graph."""
    adj = inst.adjacency()
    failures = []

    def check(name, gadget_squares, interface_squares):
        gset = {inst.index[s] for s in gadget_squares}
        iface = {inst.index[s] for s in interface_squares}
        interior = gset - iface
        for u in interior:
            for v in adj[u]:
                if v not in gset:
                    failures.append((name, u, v))

    for key, w in inst.wires.items():
        check(f"wire{key}", w.squares, w.interface)
    for key, c in inst.crossings.items():
        check(f"crossing{key}", c.squares, c.interfaces.values())
    for key, b in inst.bottoms.items():
        check(f"bottom[{key}]", b.squares, b.interfaces)
    for key, t in inst.tops.items():
        check(f"top[{key}]", t.squares, t.interfaces)
    return failures
