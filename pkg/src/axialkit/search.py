"""Search for multiplicative bijections and derivations on small algebras over F_p.

Maps are built one element at a time in canonical index order.  Whenever
all arguments of a defining identity are assigned, the value at the word
they form is forced (or checked, if already assigned).  With candidates
tried in increasing order, the first complete table found is the
lexicographically least one.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import product as cartesian

from .core.algebra import Algebra
from .core.finite import IndexedAlgebra
from .core.linalg import Matrix, rank
from .fusion import FusionError, FusionLaw, decompose
from .maps import TableMap, LinearMap, residual
from .martindale import MartindaleError, check_conditions

NODE_BOUND = 10**7
DERIVATION_LIMIT = 25
TARGETS = ("nonadditive-iso", "nonadditive-derivation")


class SearchError(ValueError):
    pass


@dataclass
class SearchSpec:
    algebra: Algebra
    target: str = "nonadditive-iso"
    n: int = 2
    mode: str = "backtracking"  # or "exhaustive"
    budget: int = 10**5
    seed: int | None = None
    node_bound: int = NODE_BOUND
    axes: list = dc_field(default_factory=list)
    law: FusionLaw | None = None

    def __post_init__(self):
        if self.target not in TARGETS:
            raise SearchError(f"unknown target {self.target!r}; expected one of {', '.join(TARGETS)}")
        if self.mode not in ("backtracking", "exhaustive"):
            raise SearchError(f"unknown mode {self.mode!r}")
        if self.n < 2:
            raise SearchError("arity n must be at least 2")


@dataclass
class SearchOutcome:
    status: str  # witness-found | exhausted-none | budget-exhausted
    witness: TableMap | None = None
    witness_pair: tuple | None = None
    witness_residual: int | None = None
    counts: tuple | None = None  # (multiplicative, additive), exhaustive runs only
    nodes: int = 0
    martindale: list = dc_field(default_factory=list)


class _Backtracker:
    def __init__(self, ia: IndexedAlgebra, kind: str, n: int, seed: int | None):
        self.ia = ia
        self.kind = kind
        self.n = n
        self.size = ia.size
        self.val = [-1] * ia.size
        self.used = [False] * ia.size
        self.assigned: list[int] = []
        self.rng = random.Random(seed) if seed is not None else None

    def _set(self, i: int, v: int, queue: list) -> bool:
        if self.kind == "iso":
            if self.used[v]:
                return False
            self.used[v] = True
        self.val[i] = v
        self.assigned.append(i)
        queue.append(i)
        return True

    def undo(self, mark: int):
        while len(self.assigned) > mark:
            i = self.assigned.pop()
            if self.kind == "iso":
                self.used[self.val[i]] = False
            self.val[i] = -1

    def _word(self, ts, x):
        mul = self.ia.mul
        for t in reversed(ts):
            x = mul(t, x)
        return x

    def _image(self, ts, x) -> int:
        """Value the identity forces at ``word(ts, x)``."""
        val, ia = self.val, self.ia
        if self.kind == "iso":
            return self._word([val[t] for t in ts], val[x])
        out = self._word(ts, val[x])
        for k in range(len(ts)):
            out = ia.add(out, self._word(ts[:k] + [val[ts[k]]] + ts[k + 1:], x))
        return out

    def assign(self, i: int, v: int) -> bool:
        queue: list[int] = []
        if not self._set(i, v, queue):
            return False
        val = self.val
        while queue:
            u = queue.pop()
            snapshot = list(self.assigned)
            if self.n == 2:
                tuples = (([t], u) for t in snapshot)
            else:
                tuples = ((list(tup[:-1]), tup[-1]) for tup in cartesian(snapshot, repeat=self.n)
                          if u in tup)
            for ts, x in tuples:
                p = self._word(ts, x)
                q = self._image(ts, x)
                if val[p] == -1:
                    if not self._set(p, q, queue):
                        return False
                elif val[p] != q:
                    return False
        return True

    def candidates(self, i: int) -> list:
        vals = [v for v in range(self.size) if not (self.kind == "iso" and self.used[v])]
        if self.rng is not None:
            self.rng.shuffle(vals)
        return vals

    def next_free(self) -> int | None:
        for i, v in enumerate(self.val):
            if v == -1:
                return i
        return None

    def additivity_failure(self):
        ia, val = self.ia, self.val
        for x in range(self.size):
            for y in range(x, self.size):
                if val[ia.add(x, y)] != ia.add(val[x], val[y]):
                    return (x, y)
        return None

    def run(self, budget: int, stop_at_witness: bool):
        """Depth-first enumeration; yields events, returns ``(exhausted, nodes)``.

        ``budget`` counts decision nodes (value choices for free elements).
        """
        nodes = 0
        complete, additive, first = 0, 0, None
        # fixing 0 first: 0 * 0 = 0 forces it for bijections when n >= 2
        if not self.assign(0, 0):
            return True, nodes, (0, 0), None
        stack = []
        i = self.next_free()
        if i is None:
            stack = []
        else:
            stack.append((i, iter(self.candidates(i)), len(self.assigned)))
        if i is None:
            complete = 1
            bad = self.additivity_failure()
            additive += bad is None
            if bad is not None:
                first = (list(self.val), bad)
            return True, nodes, (complete, additive), first
        while stack:
            i, it, mark = stack[-1]
            self.undo(mark)
            v = next(it, None)
            if v is None:
                stack.pop()
                continue
            nodes += 1
            if nodes > budget:
                return False, nodes - 1, (complete, additive), first
            if not self.assign(i, v):
                continue
            j = self.next_free()
            if j is not None:
                stack.append((j, iter(self.candidates(j)), len(self.assigned)))
                continue
            complete += 1
            bad = self.additivity_failure()
            if bad is None:
                additive += 1
            elif first is None:
                first = (list(self.val), bad)
                if stop_at_witness:
                    return False, nodes, (complete, additive), first
        return True, nodes, (complete, additive), first


def _martindale_context(spec: SearchSpec) -> list:
    if spec.law is None or spec.law.kind is None:
        return []
    out = []
    for a in spec.axes:
        try:
            d = decompose(spec.algebra, a, spec.law)
            out.append(check_conditions(spec.algebra, d))
        except (FusionError, MartindaleError) as exc:
            out.append(str(exc))
    return out


def run_search(spec: SearchSpec) -> SearchOutcome:
    """Look for a non-additive multiplicative bijection (or derivation).

    Exhaustive mode walks the whole tree (raising if it needs more than
    ``node_bound`` nodes) and reports exact counts.  Backtracking mode stops at
    the first witness or after ``budget`` nodes.
    """
    alg = spec.algebra
    if alg.field.is_rational:
        raise SearchError("search needs an algebra over a finite field")
    ia = IndexedAlgebra(alg)
    kind = "iso" if spec.target == "nonadditive-iso" else "der"
    bt = _Backtracker(ia, kind, spec.n, spec.seed)
    exhaustive = spec.mode == "exhaustive"
    budget = spec.node_bound if exhaustive else spec.budget
    done, nodes, counts, first = bt.run(budget, stop_at_witness=not exhaustive)
    if exhaustive and not done:
        raise SearchError(f"exhaustive search needs more than {spec.node_bound} nodes")
    out = SearchOutcome("exhausted-none", nodes=nodes, martindale=_martindale_context(spec))
    if done:
        out.counts = counts
    if first is not None:
        table, pair = first
        out.status = "witness-found"
        out.witness = TableMap(ia, table)
        out.witness_pair = pair
        out.witness_residual = residual(kind, out.witness, pair)
    elif not done:
        out.status = "budget-exhausted"
    return out


def count_derivations(alg: Algebra, n: int = 2, limit: int = DERIVATION_LIMIT,
                      node_bound: int = NODE_BOUND) -> tuple[int, int]:
    """``(multiplicative derivations, additive ones)`` by full enumeration."""
    if alg.field.is_rational:
        raise SearchError("derivation counting needs a finite field")
    size = alg.field.modulus ** alg.dim
    if size > limit:
        raise SearchError(f"algebra has {size} elements, over the enumeration limit {limit}")
    res = run_search(SearchSpec(alg, "nonadditive-derivation", n, "exhaustive", node_bound=node_bound))
    return res.counts


def linear_automorphisms(alg: Algebra) -> list[LinearMap]:
    """All invertible linear maps ``phi`` with ``phi(xy) = phi(x) phi(y)``.

    Backtracks on the images of basis vectors; a product ``b_i b_j`` is
    checked once every basis vector in its support has an image.
    """
    if alg.field.is_rational:
        raise SearchError("automorphism enumeration needs a finite field")
    ia = IndexedAlgebra(alg)
    n, f = alg.dim, alg.field
    support = {(i, j): [k for k, c in enumerate(alg.table[i][j]) if c] for i in range(n) for j in range(i, n)}
    consts = {(i, j): [(k, int(c)) for k, c in enumerate(alg.table[i][j]) if c] for (i, j) in support}
    out = []
    img = [0] * n

    def ok_upto(k):
        for (i, j), sup in support.items():
            if max(i, j) > k or any(s > k for s in sup):
                continue
            if k not in (i, j) and (not sup or max(sup) != k):
                continue  # checked at an earlier depth
            lhs = ia.mul(img[i], img[j])
            rhs = 0
            for s, c in consts[i, j]:
                rhs = ia.add(rhs, ia.scale(c, img[s]))
            if lhs != rhs:
                return False
        return True

    def rec(k):
        if k == n:
            cols = [ia.vector(img[c]) for c in range(n)]
            M = Matrix.from_columns(f, cols, n)
            if rank(M) == n:
                out.append(LinearMap(alg, M))
            return
        for v in range(1, ia.size):
            img[k] = v
            if ok_upto(k):
                rec(k + 1)

    rec(0)
    return out
