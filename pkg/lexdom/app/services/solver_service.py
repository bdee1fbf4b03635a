"""Exact oracle for the seven domination-type invariants.

Set-valued kinds share one branch-and-bound core: every vertex v carries a
demand (1 or 2) that must be met by chosen vertices from its contributor mask
(closed or open neighbourhood). Nodes branch on the most deficient vertex;
branch i takes its i-th available contributor and excludes the earlier ones,
so the branches partition the completions and every minimum witness is
reached exactly once.

Function-valued kinds (total Roman and total Roman {2}) run the same scheme
over vertex states: positive (value fixed), zero (fixed) or undecided (value 0
so far, with a cap of 1 or 2).
"""

import logging
from itertools import combinations, product
from typing import Iterator, List, Optional, Tuple, Union

from app.models.graph import Graph, VertexSet
from app.models.invariants import InvariantKind, WeightFn
from app.utils.bitset import bit, iter_bits, mask_of, popcount
from app.utils.validators import CapExceededError, InfeasibleError

logger = logging.getLogger(__name__)

NAIVE_CAP = 8

Witness = Union[VertexSet, WeightFn]



def witness_order(w: Witness) -> tuple:
    """Sort key: sorted labels for sets, sorted (vertex, value) pairs for weight functions"""
    if isinstance(w, WeightFn):
        return tuple((v, value) for v, value in enumerate(w.values) if value)
    return tuple(sorted(w))

# (demand, closed neighbourhood?)
SET_RULES = {
    InvariantKind.DOM: (1, True),
    InvariantKind.TOTAL: (1, False),
    InvariantKind.DOUBLE: (2, True),
    InvariantKind.DOUBLE_TOTAL: (2, False),
}


class _CoverSearch:
    def __init__(self, graph: Graph, kind: InvariantKind):
        self.n = graph.n
        self.all = graph.all_mask
        self.demand, closed = SET_RULES[kind]
        self.contrib = [graph.closed(v) if closed else graph.adj[v] for v in range(graph.n)]

    def residuals(self, chosen: int) -> List[int]:
        return [max(0, self.demand - popcount(c & chosen)) for c in self.contrib]

    def lower_bound(self) -> int:
        widest = max((popcount(c) for c in self.contrib), default=1) or 1
        return max(self.demand, -(-self.demand * self.n // widest))

    def greedy(self) -> int:
        """A valid cover picked by largest residual gain, lowest label on ties"""
        chosen = 0
        while True:
            res = self.residuals(chosen)
            deficient = mask_of(v for v, r in enumerate(res) if r)
            if not deficient:
                return chosen
            best, best_gain = -1, 0
            for u in iter_bits(self.all & ~chosen):
                gain = popcount(self.contrib[u] & deficient)
                if gain > best_gain:
                    best, best_gain = u, gain
            chosen |= bit(best)

    def extend(self, chosen: int, excluded: int, budget: int) -> Iterator[int]:
        res = self.residuals(chosen)
        deficient = 0
        total = 0
        for v, r in enumerate(res):
            if r:
                deficient |= bit(v)
                total += r
        if not deficient:
            yield chosen
            return
        if budget == 0:
            return
        available = self.all & ~chosen & ~excluded

        pivot_key = None
        pivot_cands = 0
        for v in iter_bits(deficient):
            cands = self.contrib[v] & available
            count = popcount(cands)
            if count < res[v]:
                return
            key = (-res[v], count, v)
            if pivot_key is None or key < pivot_key:
                pivot_key, pivot_cands = key, cands

        gains = sorted((popcount(self.contrib[u] & deficient) for u in iter_bits(available)), reverse=True)
        if sum(gains[:budget]) < total:
            return

        for c in iter_bits(pivot_cands):
            yield from self.extend(chosen | bit(c), excluded, budget - 1)
            excluded |= bit(c)


class _RomanSearch:
    """Branching over weight functions for the total Roman kinds"""

    def __init__(self, graph: Graph, kind: InvariantKind):
        self.graph = graph
        self.n = graph.n
        self.all = graph.all_mask
        self.adj = graph.adj
        self.two_sum = kind == InvariantKind.TOTAL_ROMAN_2

    def lower_bound(self) -> int:
        widest = max((popcount(row) for row in self.adj), default=1) or 1
        return max(2, -(-self.n // widest))

    def upper_bound(self) -> int:
        return 2 * popcount(_CoverSearch(self.graph, InvariantKind.TOTAL).greedy())

    def extend(self, values: List[int], positive: int, zero: int, cap1: int, budget: int) -> Iterator[Tuple[int, ...]]:
        undecided = self.all & ~positive & ~zero
        moves: Optional[list] = None
        untouched = 0
        roman_def = 0
        for v in range(self.n):
            row = self.adj[v]
            if not row & positive:
                free = row & undecided
                if not free:
                    return
                untouched |= bit(v)
                opts = self._positive_moves(free, cap1, 0)
                if moves is None or len(opts) < len(moves):
                    moves = opts
            if values[v]:
                continue
            opts = None
            if self.two_sum:
                got = sum(values[u] for u in iter_bits(row & positive))
                if got < 2:
                    free = row & undecided
                    room = sum(1 if cap1 >> u & 1 else 2 for u in iter_bits(free))
                    if not undecided >> v & 1 and got + room < 2:
                        return
                    roman_def += 2 - got
                    opts = self._positive_moves(free, cap1, bit(v) if undecided >> v & 1 else 0)
            else:
                if not any(values[u] == 2 for u in iter_bits(row & positive)):
                    free = row & undecided & ~cap1
                    if not undecided >> v & 1 and not free:
                        return
                    roman_def += 1
                    opts = self._two_moves(free, bit(v) if undecided >> v & 1 else 0)
            if opts is not None:
                if undecided >> v & 1:
                    own = [(((v, 1),), 0, 0)]
                    if not cap1 >> v & 1:
                        own.append((((v, 2),), 0, 0))
                    opts = own + opts
                if moves is None or len(opts) < len(moves):
                    moves = opts

        if moves is None:
            yield tuple(values)
            return
        if budget <= 0:
            return
        if untouched:
            gains = sorted((popcount(self.adj[u] & untouched) for u in iter_bits(undecided)), reverse=True)
            needed, covered = 0, 0
            for g in gains:
                if covered >= popcount(untouched):
                    break
                covered += g
                needed += 1
            if covered < popcount(untouched) or needed > budget:
                return
        if roman_def:
            per_unit = max((popcount(self.adj[u]) + 2 for u in iter_bits(undecided)), default=0)
            if per_unit == 0 or -(-roman_def // per_unit) > budget:
                return

        for assign, zeros, caps in moves:
            cost = sum(value for _, value in assign)
            if cost > budget:
                continue
            new_values = list(values)
            new_positive = positive
            for u, value in assign:
                new_values[u] = value
                new_positive |= bit(u)
            yield from self.extend(new_values, new_positive, zero | zeros, cap1 | caps, budget - cost)

    def _positive_moves(self, free: int, cap1: int, fixed_zero: int) -> list:
        """Smallest newly positive vertex of ``free`` with its value; earlier ones become zero"""
        moves = []
        before = fixed_zero
        for u in iter_bits(free):
            moves.append((((u, 1),), before, 0))
            if not cap1 >> u & 1:
                moves.append((((u, 2),), before, 0))
            before |= bit(u)
        return moves

    def _two_moves(self, free: int, fixed_zero: int) -> list:
        """Smallest vertex of ``free`` taking value 2; earlier ones are capped at 1"""
        moves = []
        capped = 0
        for u in iter_bits(free):
            moves.append((((u, 2),), fixed_zero, capped))
            capped |= bit(u)
        return moves


def _max_cliques(compat: List[int], n: int, size: Optional[int] = None) -> Iterator[int]:
    """Cliques of the compatibility graph in ascending-label DFS order.

    With ``size`` None, yields each strict improvement (the last one is a maximum
    clique, and the first clique reaching the maximum is lexicographically
    smallest). With a fixed ``size``, yields every clique of exactly that size.
    """
    best = [0]

    def expand(clique: int, count: int, cand: int) -> Iterator[int]:
        if size is None:
            if count > best[0]:
                best[0] = count
                yield clique
            if count + popcount(cand) <= best[0]:
                return
        else:
            if count == size:
                yield clique
                return
            if count + popcount(cand) < size:
                return
        for v in iter_bits(cand):
            higher = cand & ~((bit(v) << 1) - 1)
            yield from expand(clique | bit(v), count + 1, higher & compat[v])

    yield from expand(0, 0, (1 << n) - 1)


class SolverService:
    def check_feasible(self, graph: Graph, kind: InvariantKind) -> None:
        if graph.n == 0:
            raise InfeasibleError(kind.symbol, "a nonempty graph")
        if kind in (InvariantKind.DOM, InvariantKind.TWO_PACKING):
            return
        if kind == InvariantKind.DOUBLE_TOTAL:
            if min(popcount(row) for row in graph.adj) < 2:
                raise InfeasibleError(kind.symbol, "minimum degree at least 2")
            return
        if any(row == 0 for row in graph.adj):
            raise InfeasibleError(kind.symbol, "no isolated vertex")

    def is_feasible(self, graph: Graph, kind: InvariantKind) -> bool:
        try:
            self.check_feasible(graph, kind)
        except InfeasibleError:
            return False
        return True

    def validate(self, graph: Graph, kind: InvariantKind, w: Witness) -> bool:
        if kind.is_function:
            return self._validate_function(graph, kind, w)
        if isinstance(w, WeightFn):
            return False
        try:
            members = set(w)
        except TypeError:
            return False
        if any(not isinstance(v, int) or v < 0 or v >= graph.n for v in members):
            return False
        chosen = mask_of(members)
        if kind == InvariantKind.TWO_PACKING:
            return all(popcount(graph.closed(x) & chosen) <= 1 for x in range(graph.n))
        demand, closed = SET_RULES[kind]
        return all(
            popcount((graph.closed(v) if closed else graph.adj[v]) & chosen) >= demand
            for v in range(graph.n)
        )

    def _validate_function(self, graph: Graph, kind: InvariantKind, w: Witness) -> bool:
        if not isinstance(w, WeightFn) or len(w.values) != graph.n:
            return False
        positive = w.positive_mask()
        for v in range(graph.n):
            row = graph.adj[v]
            if not row & positive:
                return False
            if w.values[v]:
                continue
            if kind == InvariantKind.TOTAL_ROMAN_2:
                if sum(w.values[u] for u in iter_bits(row)) < 2:
                    return False
            elif not any(w.values[u] == 2 for u in iter_bits(row)):
                return False
        return True

    def exact_invariant(self, graph: Graph, kind: InvariantKind) -> int:
        self.check_feasible(graph, kind)
        if kind == InvariantKind.TWO_PACKING:
            return len(self.min_witness(graph, kind))
        if kind.is_function:
            return self._first_function(graph, kind)[1]
        return self._first_cover(graph, kind)[1]

    def min_witness(self, graph: Graph, kind: InvariantKind) -> Witness:
        self.check_feasible(graph, kind)
        if kind == InvariantKind.TWO_PACKING:
            last = 0
            for clique in _max_cliques(self._compatibility(graph), graph.n):
                last = clique
            return frozenset(iter_bits(last))
        # lexicographically smallest among the minimum witnesses
        return min(self.enumerate_minimum_sets(graph, kind), key=witness_order)

    def enumerate_minimum_sets(self, graph: Graph, kind: InvariantKind) -> Iterator[Witness]:
        self.check_feasible(graph, kind)
        if kind == InvariantKind.TWO_PACKING:
            size = self.exact_invariant(graph, kind)
            for clique in _max_cliques(self._compatibility(graph), graph.n, size):
                yield frozenset(iter_bits(clique))
            return
        if kind.is_function:
            _, weight = self._first_function(graph, kind)
            search = _RomanSearch(graph, kind)
            for values in search.extend([0] * graph.n, 0, 0, 0, weight):
                yield WeightFn(values=values)
            return
        _, size = self._first_cover(graph, kind)
        search = _CoverSearch(graph, kind)
        for chosen in search.extend(0, 0, size):
            yield frozenset(iter_bits(chosen))

    def _first_cover(self, graph: Graph, kind: InvariantKind) -> Tuple[int, int]:
        search = _CoverSearch(graph, kind)
        upper = popcount(search.greedy())
        for budget in range(search.lower_bound(), upper + 1):
            logger.debug(f"{kind.symbol} search on n={graph.n}: budget {budget}")
            found = next(search.extend(0, 0, budget), None)
            if found is not None:
                return found, popcount(found)
        raise RuntimeError(f"{kind.symbol} search exhausted its greedy bound {upper}")

    def _first_function(self, graph: Graph, kind: InvariantKind) -> Tuple[Tuple[int, ...], int]:
        search = _RomanSearch(graph, kind)
        upper = search.upper_bound()
        for budget in range(search.lower_bound(), upper + 1):
            logger.debug(f"{kind.symbol} search on n={graph.n}: weight {budget}")
            found = next(search.extend([0] * graph.n, 0, 0, 0, budget), None)
            if found is not None:
                return found, sum(found)
        raise RuntimeError(f"{kind.symbol} search exhausted its upper bound {upper}")

    def _compatibility(self, graph: Graph) -> List[int]:
        """u ~ v iff their closed neighbourhoods are disjoint"""
        closed = [graph.closed(v) for v in range(graph.n)]
        compat = []
        for v in range(graph.n):
            row = 0
            for u in range(graph.n):
                if u != v and not closed[u] & closed[v]:
                    row |= bit(u)
            compat.append(row)
        return compat

    def greedy_upper_bound(self, graph: Graph, kind: InvariantKind) -> int:
        self.check_feasible(graph, kind)
        if kind == InvariantKind.TWO_PACKING:
            return graph.n
        if kind.is_function:
            return _RomanSearch(graph, kind).upper_bound()
        return popcount(_CoverSearch(graph, kind).greedy())

    def invariant_or_none(self, graph: Graph, kind: InvariantKind) -> Optional[int]:
        """Exact value, or None when the invariant is undefined on graph"""
        if not self.is_feasible(graph, kind):
            return None
        return self.exact_invariant(graph, kind)

    def naive_invariant(self, graph: Graph, kind: InvariantKind) -> int:
        """Exhaustive scan, used to cross-check the pruned search"""
        self.check_feasible(graph, kind)
        if graph.n > NAIVE_CAP:
            raise CapExceededError(f"naive scan order {graph.n} exceeds cap {NAIVE_CAP}")
        if kind.is_function:
            best = None
            for values in product((0, 1, 2), repeat=graph.n):
                weight = sum(values)
                if best is not None and weight >= best:
                    continue
                if self.validate(graph, kind, WeightFn(values=values)):
                    best = weight
            return best
        if kind == InvariantKind.TWO_PACKING:
            for k in range(graph.n, 0, -1):
                if any(self.validate(graph, kind, frozenset(c)) for c in combinations(range(graph.n), k)):
                    return k
            return 0
        for k in range(graph.n + 1):
            if any(self.validate(graph, kind, frozenset(c)) for c in combinations(range(graph.n), k)):
                return k
        raise InfeasibleError(kind.symbol, "a feasible witness")


solver_service = SolverService()
