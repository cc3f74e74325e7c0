"""Exhaustive enumeration of multiplicative maps between finite monoids.

The enumerator scans domain elements in ascending index order; every
element not forced as a product of earlier assignments becomes a search
variable, and after each assignment all forced images propagate through
the precomputed derivation stages.  Branches die as soon as a decided
pair violates multiplicativity or an active filter, so the emitted stream
is exactly the brute-force-filtered set, in lexicographic order of the
full image arrays.

Top-level branches are partitioned into a fixed number of tasks (a
function of the codomain size only), so results merge in the same order
no matter how many worker processes execute them.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._closure import greedy_closure
from .errors import MatsemiError, SizeCapExceeded, SizeMismatch
from .maps import MapTable, corner_relation_holds, is_additive
from .rings import RingTable, monoid_closure, parse_ring_spec

BRUTE_FORCE_LIMIT = 2**20

KNOWN_FILTERS = ("unital", "star", "corner", "i_relation")

_FILTER_ALIASES = {
    "unital": "unital",
    "star": "star",
    "corner": "corner",
    "corner_relation": "corner",
    "i_relation": "i_relation",
    "i-relation": "i_relation",
    "multiplicative": None,  # always on
}


def canonical_filters(filters) -> tuple[str, ...]:
    out = []
    for f in filters:
        if f not in _FILTER_ALIASES:
            raise ValueError(f"unknown filter {f!r}; known: {KNOWN_FILTERS}")
        c = _FILTER_ALIASES[f]
        if c is not None and c not in out:
            out.append(c)
    return tuple(out)


# ---------------------------------------------------------------------------
# Generating sets


@dataclass
class GeneratorSet:
    """A generating set of a ring's multiplicative monoid, with one product
    expression (word over the generators) per element.  The identity has
    the empty word."""

    monoid: str
    gens: list[int]
    words: list[tuple[int, ...]]

    def to_json(self) -> dict:
        return {"monoid": self.monoid, "gens": list(self.gens),
                "words": [list(w) for w in self.words]}


def monoid_generators(ring: RingTable) -> GeneratorSet:
    """Greedy generating set of ``(ring, *, 1)``: repeatedly adjoin the
    smallest element outside the current closure and re-saturate."""
    cl = monoid_closure(ring)
    return GeneratorSet(monoid=ring.label, gens=list(cl.gens), words=cl.words())


# ---------------------------------------------------------------------------
# Enumeration queries


@dataclass
class EnumerationQuery:
    dom: str
    cod: str
    filters: tuple[str, ...] = ()
    limit: int | None = None

    def __post_init__(self):
        if self.limit is not None and self.limit < 1:
            raise ValueError("limit must be >= 1")
        self.filters = canonical_filters(self.filters)

    def to_json(self) -> dict:
        return {"dom": self.dom, "cod": self.cod,
                "filters": list(self.filters), "limit": self.limit}

    @classmethod
    def from_json(cls, obj) -> "EnumerationQuery":
        return cls(dom=obj["dom"], cod=obj["cod"],
                   filters=tuple(obj.get("filters", ())),
                   limit=obj.get("limit"))


@dataclass
class EnumerationResult:
    maps: list[MapTable]
    nodes: int
    exhaustive: bool
    filters: tuple[str, ...] = ()

    def summary(self) -> dict:
        return {"count": len(self.maps), "nodes": self.nodes,
                "exhaustive": self.exhaustive, "filters": list(self.filters)}


# ---------------------------------------------------------------------------
# Search plan: variables, forced-image stages, filter checkpoints

# Candidate prefilters probe at most this many decided pairs per side; the
# full stage checks still cover everything, the probes only thin the
# candidate values cheaply.
_PREFILTER_PROBES = 64


class _Plan:
    def __init__(self, dom: RingTable, filters: tuple[str, ...]):
        cl = greedy_closure(dom.mul, seed=None)
        self.vars = cl.gens
        self.rounds = cl.stage_rounds
        self.dx = cl.deriv_x
        self.dy = cl.deriv_y

        stage_of = np.empty(dom.size, dtype=np.int64)
        for i, rounds in enumerate(self.rounds):
            for rnd in rounds:
                stage_of[rnd] = i
        self.new_elems = [np.concatenate(r) for r in self.rounds]
        self.prev_elems = []
        acc: list[np.ndarray] = []
        for ne in self.new_elems:
            self.prev_elems.append(
                np.concatenate(acc) if acc else np.empty(0, dtype=np.int64))
            acc.append(ne)

        nstages = len(self.vars)

        # Per stage: decided pairs involving the variable whose product is
        # already decided (or the variable itself).  Sound constraints on
        # the candidate value, evaluated vectorized over all candidates.
        self.pf_left: list[tuple[np.ndarray, np.ndarray]] = []
        self.pf_right: list[tuple[np.ndarray, np.ndarray]] = []
        self.pf_self: list[int] = []
        for p, v in enumerate(self.vars):
            prev = self.prev_elems[p]
            in_prev = np.zeros(dom.size, dtype=bool)
            in_prev[prev] = True
            t = dom.mul[v, prev]
            keep = in_prev[t] | (t == v)
            xs = prev[keep][:_PREFILTER_PROBES]
            self.pf_left.append((xs, dom.mul[v, xs].astype(np.int64)))
            t = dom.mul[prev, v]
            keep = in_prev[t] | (t == v)
            xs = prev[keep][:_PREFILTER_PROBES]
            self.pf_right.append((xs, dom.mul[xs, v].astype(np.int64)))
            tvv = int(dom.mul[v, v])
            self.pf_self.append(tvv if (in_prev[tvv] or tvv == v) else -1)

        self.pf_star: list[int] = [-2] * nstages  # -2: no constraint
        if "star" in filters:
            star = dom.star
            for p, v in enumerate(self.vars):
                sv = int(star[v])
                if sv == v:
                    self.pf_star[p] = -1  # candidate must be star-fixed
                elif stage_of[sv] < p:
                    self.pf_star[p] = sv
        self.star_checks: list[np.ndarray] | None = None
        if "star" in filters:
            star = dom.require_star()
            ready = np.maximum(stage_of, stage_of[star])
            self.star_checks = [
                np.flatnonzero(ready == i) for i in range(nstages)]

        self.checkpoints: list[list[str]] = [[] for _ in range(nstages)]
        self.relation_elems: dict[str, tuple[int, ...]] = {}
        if "unital" in filters:
            self.checkpoints[int(stage_of[dom.one])].append("unital")
        view = dom.matrix_view
        if "corner" in filters or "i_relation" in filters:
            if view is None or view.k != 2:
                from .errors import NotAMatrixRing
                raise NotAMatrixRing(
                    "corner/i_relation filters need a 2x2 matrix ring domain")
            e11 = view.matrix_unit(0, 0)
            e22 = view.matrix_unit(1, 1)
            if "corner" in filters:
                stage = int(max(stage_of[dom.one], stage_of[e11], stage_of[e22]))
                self.checkpoints[stage].append("corner")
                self.relation_elems["corner"] = (dom.one, e11, e22)
            if "i_relation" in filters:
                i_dom = dom.require_i()
                stage = int(max(stage_of[i_dom], stage_of[e11], stage_of[e22]))
                self.checkpoints[stage].append("i_relation")
                self.relation_elems["i_relation"] = (i_dom, e11, e22)


class _StopSearch(Exception):
    pass


def _search_range(dom: RingTable, cod: RingTable, plan: _Plan,
                  injective: bool, limit: int | None,
                  node_budget: int | None, lo: int, hi: int):
    """Depth-first search with the first variable restricted to [lo, hi)."""
    img = np.full(dom.size, -1, dtype=np.int64)
    used = np.zeros(cod.size, dtype=bool) if injective else None
    out: list[np.ndarray] = []
    nodes = 0
    exhausted = True
    i_cod = cod.i_elem
    nvars = len(plan.vars)

    def candidates(p: int) -> np.ndarray:
        """Candidate values surviving the vectorized probe constraints."""
        v = plan.vars[p]
        cand = np.arange(lo, hi) if p == 0 else np.arange(cod.size)
        mask = np.ones(cand.size, dtype=bool)
        xs, ts = plan.pf_left[p]
        if xs.size:
            prod = cod.mul[cand[:, None], img[xs][None, :]]
            self_t = ts == v
            if self_t.any():
                mask &= (prod[:, self_t] == cand[:, None]).all(axis=1)
            rest = ~self_t
            if rest.any():
                mask &= (prod[:, rest] == img[ts[rest]][None, :]).all(axis=1)
        xs, ts = plan.pf_right[p]
        if xs.size:
            prod = cod.mul[img[xs][None, :], cand[:, None]]
            self_t = ts == v
            if self_t.any():
                mask &= (prod[:, self_t] == cand[:, None]).all(axis=1)
            rest = ~self_t
            if rest.any():
                mask &= (prod[:, rest] == img[ts[rest]][None, :]).all(axis=1)
        tvv = plan.pf_self[p]
        if tvv >= 0:
            sq = cod.mul[cand, cand]
            mask &= sq == (cand if tvv == v else int(img[tvv]))
        sv = plan.pf_star[p]
        if sv == -1:
            mask &= cod.star[cand] == cand
        elif sv >= 0:
            mask &= cod.star[cand] == int(img[sv])
        return cand[mask]

    def _pairs_ok(rows: np.ndarray, cols: np.ndarray) -> bool:
        return np.array_equal(img[dom.mul[np.ix_(rows, cols)]],
                              cod.mul[np.ix_(img[rows], img[cols])])

    def check_stage(p: int) -> bool:
        new = plan.new_elems[p]
        prev = plan.prev_elems[p]
        v = np.array([plan.vars[p]], dtype=np.int64)
        # Tiered rejection: the cheap slices run first so failing branches
        # rarely pay for the full grids.
        if prev.size:
            if not (_pairs_ok(v, prev) and _pairs_ok(prev, v)):
                return False
            s_new, s_prev = new[:96], prev[:96]
            if not (_pairs_ok(s_new, s_prev) and _pairs_ok(s_prev, s_new)):
                return False
        if not _pairs_ok(new[:96], new[:96]):
            return False
        if not _pairs_ok(new, new):
            return False
        if prev.size:
            if not (_pairs_ok(new, prev) and _pairs_ok(prev, new)):
                return False
        if plan.star_checks is not None:
            xs = plan.star_checks[p]
            if xs.size and not np.array_equal(img[dom.star[xs]],
                                              cod.star[img[xs]]):
                return False
        for kind in plan.checkpoints[p]:
            if kind == "unital":
                if int(img[dom.one]) != cod.one:
                    return False
            elif kind == "corner":
                one, e11, e22 = plan.relation_elems["corner"]
                if int(img[one]) != int(cod.add[img[e11], img[e22]]):
                    return False
            elif kind == "i_relation":
                i_dom, e11, e22 = plan.relation_elems["i_relation"]
                rhs = cod.add[cod.mul[i_cod, img[e11]],
                              cod.mul[i_cod, img[e22]]]
                if int(img[i_dom]) != int(rhs):
                    return False
        return True

    def rec(p: int):
        nonlocal nodes, exhausted
        if p == nvars:
            out.append(img.copy())
            if limit is not None and len(out) >= limit:
                exhausted = False
                raise _StopSearch
            return
        v = plan.vars[p]
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            exhausted = False
            raise _StopSearch
        for c in candidates(p):
            nodes += 1
            if node_budget is not None and nodes > node_budget:
                exhausted = False
                raise _StopSearch
            img[v] = c
            for rnd in plan.rounds[p][1:]:
                img[rnd] = cod.mul[img[plan.dx[rnd]], img[plan.dy[rnd]]]
            ok = check_stage(p)
            if ok and injective:
                vals = img[plan.new_elems[p]]
                uniq = np.unique(vals)
                if uniq.size != vals.size or used[uniq].any():
                    ok = False
                else:
                    used[uniq] = True
            if ok:
                rec(p + 1)
                if injective:
                    used[np.unique(img[plan.new_elems[p]])] = False
            img[plan.new_elems[p]] = -1

    try:
        rec(0)
    except _StopSearch:
        pass
    return out, nodes, exhausted


# Per-process cache so worker tasks parse each ring spec only once.
_task_rings: dict[str, RingTable] = {}
_task_plans: dict[tuple, _Plan] = {}


def _resolve_task_ring(spec: str) -> RingTable:
    ring = _task_rings.get(spec)
    if ring is None:
        ring = parse_ring_spec(spec)
        _task_rings[spec] = ring
    return ring


def _enum_task(dom_spec, cod_spec, filters, injective, limit, node_budget, lo, hi):
    dom = _resolve_task_ring(dom_spec)
    cod = _resolve_task_ring(cod_spec)
    key = (dom_spec, filters)
    plan = _task_plans.get(key)
    if plan is None:
        plan = _Plan(dom, filters)
        _task_plans[key] = plan
    out, nodes, exhausted = _search_range(
        dom, cod, plan, injective, limit, node_budget, lo, hi)
    return [o.tolist() for o in out], nodes, exhausted


def _partition(total: int, max_tasks: int = 16) -> list[tuple[int, int]]:
    """Fixed partition of [0, total) used regardless of worker count."""
    ntasks = min(total, max_tasks)
    if ntasks == 0:
        return [(0, 0)]
    bounds = np.linspace(0, total, ntasks + 1).astype(int)
    return [(int(bounds[i]), int(bounds[i + 1])) for i in range(ntasks)
            if bounds[i] < bounds[i + 1]]


def enumerate_multiplicative_maps(dom: RingTable, cod: RingTable,
                                  filters=(), limit: int | None = None,
                                  node_budget: int | None = None,
                                  workers: int = 1,
                                  injective: bool = False) -> EnumerationResult:
    """Enumerate all multiplicative maps ``dom -> cod`` passing the filters.

    Emission is in lexicographic order of the full image arrays and equals
    the brute-force-filtered set whenever the search runs to completion
    (``exhaustive`` in the result).  ``node_budget`` bounds the nodes each
    top-level branch may visit; ``limit`` truncates the output.  Both
    truncations clear the ``exhaustive`` flag.

    With ``workers > 1`` the fixed top-level partition is executed by a
    process pool; output is merged in partition order, so results are
    byte-identical for every worker count.
    """
    filters = canonical_filters(filters)
    if "star" in filters:
        dom.require_star()
        cod.require_star()
    if "i_relation" in filters:
        cod.require_i()
    plan = _Plan(dom, filters)  # validates filter applicability eagerly
    tasks = _partition(cod.size)
    specs_parseable = True
    try:
        parse_ring_spec(dom.label)
        parse_ring_spec(cod.label)
    except MatsemiError:
        specs_parseable = False

    results = []
    if workers > 1 and specs_parseable and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = [pool.submit(_enum_task, dom.label, cod.label, filters,
                                injective, limit, node_budget, lo, hi)
                    for lo, hi in tasks]
            for f in futs:
                imgs, nodes, exhausted = f.result()
                results.append(([np.asarray(i) for i in imgs], nodes, exhausted))
    else:
        for lo, hi in tasks:
            results.append(_search_range(dom, cod, plan, injective,
                                         limit, node_budget, lo, hi))

    maps: list[MapTable] = []
    nodes = 0
    exhaustive = True
    for imgs, n, ex in results:
        nodes += n
        exhaustive = exhaustive and ex
        for arr in imgs:
            if limit is None or len(maps) < limit:
                maps.append(MapTable(dom, cod, arr))
            else:
                exhaustive = False
    return EnumerationResult(maps=maps, nodes=nodes,
                             exhaustive=exhaustive, filters=filters)


def run_query(query: EnumerationQuery, workers: int = 1,
              node_budget: int | None = None,
              size_cap: int | None = None) -> EnumerationResult:
    dom = parse_ring_spec(query.dom, size_cap=size_cap)
    cod = parse_ring_spec(query.cod, size_cap=size_cap)
    return enumerate_multiplicative_maps(
        dom, cod, filters=query.filters, limit=query.limit,
        node_budget=node_budget, workers=workers)


# ---------------------------------------------------------------------------
# Counterexample mining and the unique-addition probe


def find_counterexamples(dom: RingTable, cod: RingTable,
                         limit: int | None = None,
                         node_budget: int | None = None,
                         workers: int = 1) -> list[MapTable]:
    """Multiplicative maps that fail additivity, in lexicographic order.

    On a 2x2 matrix ring domain every returned map is cross-checked to
    also fail the corner relation; a violation would disprove the
    additivity equivalence and raises :class:`MatsemiError`.
    """
    res = enumerate_multiplicative_maps(dom, cod, node_budget=node_budget,
                                        workers=workers)
    out = []
    is_mat2 = dom.matrix_view is not None and dom.matrix_view.k == 2
    for phi in res.maps:
        if is_additive(phi).passed:
            continue
        if is_mat2 and corner_relation_holds(phi).passed:
            raise MatsemiError(
                "multiplicative non-additive map satisfies the corner "
                "relation; additivity equivalence violated")
        out.append(phi)
        if limit is not None and len(out) >= limit:
            break
    return out


@dataclass
class UniqueAdditionReport:
    """Outcome of probing whether multiplicative structure forces addition."""

    dom: str
    cod: str
    isomorphisms: list[MapTable]
    additive_flags: list[bool]
    exhaustive: bool

    @property
    def unique_addition(self) -> bool:
        return all(self.additive_flags)

    def to_json(self) -> dict:
        return {
            "dom": self.dom, "cod": self.cod,
            "isomorphisms": [m.to_json() for m in self.isomorphisms],
            "additive": list(self.additive_flags),
            "unique_addition": self.unique_addition,
            "exhaustive": self.exhaustive,
        }


def unique_addition_probe(dom: RingTable, cod: RingTable,
                          node_budget: int | None = None,
                          workers: int = 1) -> UniqueAdditionReport:
    """Enumerate multiplicative monoid isomorphisms ``dom -> cod`` and flag
    which are additive.  Requires equal sizes (only bijections qualify)."""
    if dom.size != cod.size:
        raise SizeMismatch(
            f"|{dom.label}| = {dom.size} but |{cod.label}| = {cod.size}")
    res = enumerate_multiplicative_maps(dom, cod, node_budget=node_budget,
                                        workers=workers, injective=True)
    flags = [is_additive(m).passed for m in res.maps]
    return UniqueAdditionReport(dom=dom.label, cod=cod.label,
                                isomorphisms=res.maps, additive_flags=flags,
                                exhaustive=res.exhaustive)


# ---------------------------------------------------------------------------
# Full function-space scan (production side of the oracle cross-checks)


def _function_digits(ids: np.ndarray, n: int, c: int) -> np.ndarray:
    imgs = np.empty((ids.size, n), dtype=np.int64)
    r = ids.copy()
    for pos in range(n - 1, -1, -1):
        imgs[:, pos] = r % c
        r //= c
    return imgs


def function_space_masks(dom: RingTable, cod: RingTable, lo: int, hi: int,
                         want=("multiplicative", "additive")) -> dict:
    """Predicate masks over the function ids [lo, hi) in lexicographic order.

    Function id ``t`` is the image array given by the base-|cod| digits of
    ``t`` (most significant digit = image of element 0).
    """
    n, c = dom.size, cod.size
    ids = np.arange(lo, hi, dtype=np.int64)
    imgs = _function_digits(ids, n, c)
    masks: dict[str, np.ndarray] = {}
    if "multiplicative" in want:
        m = np.ones(ids.size, dtype=bool)
        for x in range(n):
            for y in range(n):
                m &= imgs[:, dom.mul[x, y]] == cod.mul[imgs[:, x], imgs[:, y]]
        masks["multiplicative"] = m
    if "additive" in want:
        a = np.ones(ids.size, dtype=bool)
        for x in range(n):
            for y in range(n):
                a &= imgs[:, dom.add[x, y]] == cod.add[imgs[:, x], imgs[:, y]]
        masks["additive"] = a
    if "corner" in want:
        view = dom.matrix_view
        e11 = view.matrix_unit(0, 0)
        e22 = view.matrix_unit(1, 1)
        masks["corner"] = imgs[:, dom.one] == cod.add[imgs[:, e11], imgs[:, e22]]
    if "star" in want:
        s = np.ones(ids.size, dtype=bool)
        for x in range(n):
            s &= imgs[:, dom.star[x]] == cod.star[imgs[:, x]]
        masks["star"] = s
    if "unital" in want:
        masks["unital"] = imgs[:, dom.one] == cod.one
    masks["_imgs"] = imgs
    return masks


def function_space_size(dom: RingTable, cod: RingTable) -> int:
    total = cod.size ** dom.size
    if total > BRUTE_FORCE_LIMIT:
        raise SizeCapExceeded(
            f"function space {cod.size}**{dom.size} exceeds {BRUTE_FORCE_LIMIT}")
    return total
