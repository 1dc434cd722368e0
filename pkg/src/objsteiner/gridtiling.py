"""Narrow grid tiling problems, solvers, and the SAT / monotone reductions.

Cells are indexed 1-based as (i, j) for i in [x] rows and j in [y] columns;
cell values are pairs (a, b) with a a bit and b an integer in range(N)
(0-based, so the bitwise complement of b is (N-1) ^ b when N is a power of
two).  In the exact variant a propagates down columns and b is constant
along rows; the monotone variant relaxes the row constraint to b <= b'.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .solvers import CapExceeded


@dataclass(frozen=True)
class GridTilingInstance:
    x: int
    y: int
    N: int
    sets: dict  # (i, j) -> frozenset of (a, b)
    variant: str = "exact"  # or "monotone"

    def __post_init__(self):
        if self.variant not in ("exact", "monotone"):
            raise ValueError("variant must be 'exact' or 'monotone'")
        if self.x < 1 or self.y < 1 or self.N < 1:
            raise ValueError("dimensions must be positive")
        for i in range(1, self.x + 1):
            for j in range(1, self.y + 1):
                s = self.sets.get((i, j))
                if not s:
                    raise ValueError(f"set S[{i},{j}] is missing or empty")
                for a, b in s:
                    if a not in (0, 1) or not 0 <= b < self.N:
                        raise ValueError(f"bad pair {(a, b)} in S[{i},{j}]")

    def cells(self):
        return [(i, j) for i in range(1, self.x + 1) for j in range(1, self.y + 1)]


@dataclass(frozen=True)
class TilingWitness:
    choice: dict  # (i, j) -> (a, b)


def is_consistent(inst: GridTilingInstance, witness: TilingWitness) -> bool:
    """Membership plus the column-bit and row-value constraint families."""
    for cell in inst.cells():
        if cell not in witness.choice:
            raise ValueError(f"witness missing cell {cell}")
    ch = witness.choice
    for i, j in inst.cells():
        if ch[(i, j)] not in inst.sets[(i, j)]:
            return False
    for j in range(1, inst.y + 1):
        for i in range(1, inst.x):
            if ch[(i, j)][0] != ch[(i + 1, j)][0]:
                return False
    for i in range(1, inst.x + 1):
        for j in range(1, inst.y):
            b, b2 = ch[(i, j)][1], ch[(i, j + 1)][1]
            if inst.variant == "exact":
                if b != b2:
                    return False
            else:
                if not b <= b2:
                    return False
    return True


def brute_force_tiling(inst: GridTilingInstance, cap: int = 2_000_000):
    """First consistent witness in lexicographic cell/value order, or None."""
    cells = inst.cells()
    total = 1
    for c in cells:
        total *= len(inst.sets[c])
        if total > cap:
            raise CapExceeded(f"search space exceeds cap {cap}")
    for combo in itertools.product(*(sorted(inst.sets[c]) for c in cells)):
        w = TilingWitness(dict(zip(cells, combo)))
        if is_consistent(inst, w):
            return w
    return None


def dp_solve(inst: GridTilingInstance, y_cap: int = 24):
    """Guess the y column bits, then treat rows independently.

    With the bits fixed, an exact row needs one b value shared by all its
    cells; a monotone row is a left-to-right scan keeping the smallest
    feasible b.  Returns a witness or None.
    """
    if inst.y > y_cap:
        raise CapExceeded(f"y = {inst.y} exceeds dp cap {y_cap}")
    for bits in itertools.product((0, 1), repeat=inst.y):
        rows = []
        ok = True
        for i in range(1, inst.x + 1):
            allowed = [
                sorted(b for a, b in inst.sets[(i, j)] if a == bits[j - 1])
                for j in range(1, inst.y + 1)
            ]
            if any(not col for col in allowed):
                ok = False
                break
            if inst.variant == "exact":
                common = set(allowed[0])
                for col in allowed[1:]:
                    common &= set(col)
                if not common:
                    ok = False
                    break
                b = min(common)
                rows.append([b] * inst.y)
            else:
                row = []
                prev = 0
                for col in allowed:
                    nxt = [b for b in col if b >= prev]
                    if not nxt:
                        row = None
                        break
                    prev = min(nxt)
                    row.append(prev)
                if row is None:
                    ok = False
                    break
                rows.append(row)
        if ok:
            choice = {}
            for i in range(1, inst.x + 1):
                for j in range(1, inst.y + 1):
                    choice[(i, j)] = (bits[j - 1], rows[i - 1][j - 1])
            w = TilingWitness(choice)
            assert is_consistent(inst, w)
            return w
    return None


# ---------------------------------------------------------------------------
# 3-SAT -> Narrow Grid Tiling


def _tautology_clause():
    return (1, -1, 1)


def sat_to_ngt(clauses, n_vars: int, g: int):
    """Encode a 3-CNF formula as an exact narrow-tiling instance.

    Clauses are grouped into g groups; each group's satisfying assignments
    become row values, and column j carries the bit of variable j whenever
    the variable occurs in the group.  Dimensions: x = g, y = n_vars,
    N = 2**(3m/g) for m the (padded) clause count.  Returns None when some
    group is unsatisfiable, which makes the formula an immediate NO.
    """
    if g < 1:
        raise ValueError("g must be positive")
    clauses = [tuple(c) for c in clauses]
    for c in clauses:
        if len(c) != 3 or any(v == 0 or abs(v) > n_vars for v in c):
            raise ValueError(f"bad 3-CNF clause {c}")
    while len(clauses) % g != 0:
        clauses.append(_tautology_clause())
    m = len(clauses)
    x, y = g, n_vars
    N = 2 ** (3 * m // g)
    groups = [clauses[i * (m // g) : (i + 1) * (m // g)] for i in range(g)]
    sets = {}
    for i, group in enumerate(groups, start=1):
        vs = sorted({abs(l) for c in group for l in c})
        sat_assignments = []
        for bits in itertools.product((0, 1), repeat=len(vs)):
            asg = dict(zip(vs, bits))
            if all(any((l > 0) == bool(asg[abs(l)]) for l in c) for c in group):
                sat_assignments.append(asg)
        if not sat_assignments:
            return None
        for j in range(1, y + 1):
            cell = set()
            for asg in sat_assignments:
                code = sum(bit << p for p, bit in enumerate(asg[v] for v in vs))
                if j in asg:
                    cell.add((asg[j], code))
                else:
                    cell.add((0, code))
                    cell.add((1, code))
            sets[(i, j)] = frozenset(cell)
    return GridTilingInstance(x, y, N, sets, "exact")


def sat_brute_force(clauses, n_vars: int) -> bool:
    """Oracle: exhaustive satisfiability of a CNF formula."""
    for bits in itertools.product((0, 1), repeat=n_vars):
        if all(any((l > 0) == bool(bits[abs(l) - 1]) for l in c) for c in clauses):
            return True
    return False


# ---------------------------------------------------------------------------
# exact -> monotone


def _bit(s: int, i: int) -> int:
    """i-th least significant bit (1-indexed) of a 0-based row value."""
    return (s >> (i - 1)) & 1


def bit_extraction_sets(N: int):
    """The per-bit set pairs used by the monotone reduction.

    A_i pairs each value with its i-th bit, B_i with the complemented bit.
    """
    ell = N.bit_length() - 1
    A = {i: frozenset((_bit(s, i), s) for s in range(N)) for i in range(1, ell + 1)}
    B = {i: frozenset((1 - _bit(s, i), s) for s in range(N)) for i in range(1, ell + 1)}
    return A, B


def check_complement_chain(ell: int, chains) -> bool:
    """Verify the bit-chain argument: memberships plus monotonicity force
    the first row values to be bitwise complements at width ell."""
    if len(chains) != ell:
        raise ValueError(f"need {ell} chain entries, got {len(chains)}")
    N = 2**ell
    A, B = bit_extraction_sets(N)
    prev_a = prev_b = None
    for i, (xi, ai, bi) in enumerate(chains, start=1):
        if (xi, ai) not in A[i]:
            raise ValueError(f"({xi},{ai}) not in A_{i}")
        if (xi, bi) not in B[i]:
            raise ValueError(f"({xi},{bi}) not in B_{i}")
        if prev_a is not None and (ai > prev_a or bi > prev_b):
            raise ValueError("chains must be non-increasing")
        prev_a, prev_b = ai, bi
    a1, b1 = chains[0][1], chains[0][2]
    return a1 == ((N - 1) ^ b1)


def _mod1(j: int, ell: int) -> int:
    return ((j - 1) % ell) + 1


def ngt_to_mngt(inst: GridTilingInstance) -> GridTilingInstance:
    """Exact narrow tiling -> monotone narrow tiling.

    Rows are doubled (original plus a copy with complemented row values);
    flanking column blocks carry the bit-extraction sets that pin each
    row's value at both ends, which together with the complement row
    forces the value to stay constant across the middle block.  The
    column order is mirrored at the end so that a non-decreasing witness
    reads each bit-extraction block from its anchor bit outward, matching
    the non-increasing orientation of the bit-chain argument.  Requires N
    to be a power of two.
    """
    if inst.variant != "exact":
        raise ValueError("input must be the exact variant")
    N = inst.N
    if N < 2 or N & (N - 1):
        raise ValueError("N must be a power of two")
    ell = N.bit_length() - 1
    x, y = inst.x, inst.y
    x2, y2 = 2 * x, y + 2 * x * ell
    A, B = bit_extraction_sets(N)
    full = frozenset((a, b) for a in (0, 1) for b in range(N))

    def L(e):
        return range((e - 1) * ell + 1, e * ell + 1)

    def R(e):
        return range((e - 1 + x) * ell + y + 1, (e + x) * ell + y + 1)

    layout = {}
    for i2 in range(1, x2 + 1):
        i1, odd = (i2 + 1) // 2, i2 % 2 == 1
        for j2 in range(1, y2 + 1):
            if x * ell + 1 <= j2 <= x * ell + y:
                base = inst.sets[(i1, j2 - x * ell)]
                if odd:
                    layout[(i2, j2)] = base
                else:
                    layout[(i2, j2)] = frozenset((a, (N - 1) ^ b) for a, b in base)
            elif j2 in L(i1):
                # the left flank presents bits anchor-first toward the middle:
                # its middle-adjacent column must carry the tight sum bound,
                # so the block order is reversed relative to the right flank
                pos = ell + 1 - _mod1(j2, ell)
                layout[(i2, j2)] = A[pos] if odd else B[pos]
            elif j2 in R(i1):
                pos = _mod1(j2 - y, ell)
                layout[(i2, j2)] = A[pos] if odd else B[pos]
            else:
                layout[(i2, j2)] = full
    mirrored = {(i2, j2): layout[(i2, y2 + 1 - j2)] for i2, j2 in layout}
    return GridTilingInstance(x2, y2, N, mirrored, "monotone")


def random_instance(rng, x, y, N, variant="exact", density=0.5) -> GridTilingInstance:
    """Seeded random instance with nonempty cells."""
    pairs = [(a, b) for a in (0, 1) for b in range(N)]
    sets = {}
    for i in range(1, x + 1):
        for j in range(1, y + 1):
            cell = frozenset(p for p in pairs if rng.random() < density)
            if not cell:
                cell = frozenset([pairs[rng.randrange(len(pairs))]])
            sets[(i, j)] = cell
    return GridTilingInstance(x, y, N, sets, variant)
