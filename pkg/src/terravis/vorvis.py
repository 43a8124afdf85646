"""Voronoi visibility map: the closest viewpoint seeing each interval.

Input is the colored visibility map, whose breakpoints become
appearance and disappearance events.  The sweep keeps the current
region owner and, for every other currently-seeing viewpoint, an
anchor: the abscissa from which it has been continuously seeing.  The
key predicate is that the squared-distance difference between two
fixed points is *linear* in x along any single edge, so whether the
owner stays closest over a whole stretch is decided in constant time
from the endpoints (``is_always_closer``), and ownership checks can be
deferred: they run only when the owner or a challenger disappears, or
the terrain ends.  When a deferred check finds that the owner actually
lost earlier, the event cursor backtracks to that abscissa and a new
iteration starts there; challengers proven dominated have their event
pair deleted, which keeps re-processing in check.

``first_region_change`` locates the earliest ownership change in a
window by a prune-and-search: challengers whose bisector with the
owner provably cannot cross first are discarded in rounds (at least a
quarter of them per round, which the statistics record), and only the
few survivors get an exact walk along the chain.
"""

from __future__ import annotations

from functools import cmp_to_key

from .exactnum import exact_cmp, exact_max, exact_min, rational_between
from .geometry import Line2, bisector, dist_diff_linear, sq_dist
from .maps import IntervalMap
from .terrain import Terrain, ViewpointSet


def _sign(v) -> int:
    return exact_cmp(v, 0)


def _edge_for(terrain: Terrain, x, side: int) -> int:
    """Index of the edge adjacent to abscissa x on the given side."""
    ei = terrain.edge_index_at(x)
    if side < 0 and ei > 0 and exact_cmp(x, terrain.vertices[ei].x) == 0:
        ei -= 1
    return ei


def closer_sign(terrain: Terrain, x, p1, p2, side: int) -> int:
    """Sign of d^2(T(x), p1) - d^2(T(x), p2); a tie is resolved by the
    slope of the (linear) difference on the edge toward ``side``."""
    q = (x, terrain.y_at(x))
    s = exact_cmp(sq_dist(q, p1), sq_dist(q, p2))
    if s != 0:
        return s
    u, w = terrain.edge(_edge_for(terrain, x, side))
    alpha, _ = dist_diff_linear(u, w, p1, p2)
    a = _sign(alpha)
    if a == 0:
        raise ValueError("bisector contains a terrain edge")
    return a * side


def is_always_closer(terrain: Terrain, lo, hi, p1, p2) -> bool:
    """Is p1 closer than p2 at every terrain point of [lo, hi]?

    Boundary ties are resolved just inside the window.  The test is
    constant time and exact whenever both points see the whole
    stretch: the squared-distance difference is piecewise linear in x,
    and with both window ends favoring p1 it can only dip toward p2 if
    p2's own abscissa -- where p2 is closer by distance zero -- lies
    strictly inside the window.
    """
    c = exact_cmp(lo, hi)
    if c > 0:
        raise ValueError("window ends out of order")
    if c == 0:
        return True
    if closer_sign(terrain, lo, p1, p2, 1) >= 0:
        return False
    if closer_sign(terrain, hi, p1, p2, -1) >= 0:
        return False
    return not (exact_cmp(lo, p2.x) < 0 and exact_cmp(p2.x, hi) < 0)


def _lines_cross_x(b1: Line2, b2: Line2):
    den = b1.a * b2.b - b2.a * b1.b
    if den == 0:
        return None
    return (b1.c * b2.b - b2.c * b1.b) / den


def _line_below(b1: Line2, b2: Line2, lo, hi) -> int:
    """-1 when non-vertical line b1 runs strictly below b2 on (lo, hi).

    The lines may cross only at the window ends, so two interior
    samples decide the order.
    """
    x = rational_between(lo, hi)
    s = exact_cmp((b1.c - b1.a * x) / b1.b, (b2.c - b2.a * x) / b2.b)
    if s:
        return s
    x = rational_between(x, hi)
    return exact_cmp((b1.c - b1.a * x) / b1.b, (b2.c - b2.a * x) / b2.b)


def _leftmost_closer(terrain: Terrain, lo, hi, owner, pos):
    """Leftmost abscissa in [lo, hi] where pos becomes closer than owner.

    Returns the boundary point of the pos-closer set (the exact map
    breakpoint), or None; an isolated interior tie is not a change.
    """
    n = terrain.n
    ei = terrain.edge_index_at(lo)
    while ei < n - 1:
        eu, ew = terrain.edge(ei)
        plo = exact_max(lo, eu.x)
        phi = exact_min(hi, ew.x)
        if exact_cmp(plo, phi) < 0:
            alpha, beta = dist_diff_linear(eu, ew, owner, pos)
            glo = _sign(alpha * plo + beta)   # >0 where pos is closer
            if glo > 0:
                return plo
            if glo == 0:
                if _sign(alpha) > 0:
                    return plo
            elif _sign(alpha * phi + beta) > 0:
                return -beta / alpha
        if exact_cmp(ew.x, hi) >= 0:
            break
        ei += 1
    return None


def first_region_change(terrain: Terrain, u, q, owner, cands, stats=None):
    """Leftmost abscissa in (u, q] where a candidate viewpoint becomes
    strictly closer than the owner, or None when the owner holds on.

    ``cands`` holds (position, anchor) pairs; each candidate sees the
    chain from its anchor through q, the owner sees all of [u, q], and
    no candidate is strictly closer at its own anchor point unless it
    appeared there.  Prune statistics accumulate into ``stats``.
    """
    if stats is not None:
        stats["frc_calls"] = stats.get("frc_calls", 0) + 1

    live = [(pos, a) for pos, a in cands
            if not is_always_closer(terrain, a, q, owner, pos)]
    if not live:
        return None

    # A candidate already closer at its anchor changes the region right
    # there; the leftmost such anchor caps every further search window.
    a_k, k_idx = q, None
    for i, (pos, a) in enumerate(live):
        if closer_sign(terrain, a, pos, owner, 1) < 0:
            if k_idx is None or exact_cmp(a, a_k) < 0:
                a_k, k_idx = a, i
    cand_xs = []
    if k_idx is not None:
        cand_xs.append(a_k)
        live = [c for i, c in enumerate(live)
                if i != k_idx and exact_cmp(c[1], a_k) < 0
                and not is_always_closer(terrain, c[1], a_k, owner, c[0])]

    # Vertical bisectors (equal heights): the closer side is a plain
    # x-halfplane, so the change point needs no search at all.
    r_up, r_down = [], []
    for pos, a in live:
        if pos.y == owner.y:
            if pos.x > owner.x:
                xb = (pos.x + owner.x) / 2
                if exact_cmp(xb, a_k) < 0 and exact_cmp(xb, u) > 0 \
                        and exact_cmp(a, xb) <= 0:
                    cand_xs.append(xb)
            # A left-side equal-height candidate still alive here was
            # never closer past its anchor.
        elif pos.y > owner.y:
            r_up.append((pos, a))
        else:
            r_down.append((pos, a))

    def has_closer(pos, wlo, whi):
        return not is_always_closer(terrain, wlo, whi, owner, pos)

    def resolve(ci, ch, sense, lo_clip, hi_clip):
        """The pair member that provably cannot change the region first.

        Anchors satisfy ci.anchor <= ch.anchor and the two bisectors do
        not cross strictly inside (ch.anchor, hi_clip) clipped windows.
        """
        ai = exact_max(ci[1], lo_clip)
        ah = exact_max(ch[1], lo_clip)
        if exact_cmp(ai, hi_clip) >= 0:
            return ci
        if exact_cmp(ah, hi_clip) >= 0:
            return ch
        if not has_closer(ci[0], ai, hi_clip):
            return ci
        if not has_closer(ch[0], ah, hi_clip):
            return ch
        rel = _line_below(bisector(owner, ch[0]), bisector(owner, ci[0]),
                          ah, hi_clip)
        ch_region_bigger = (rel < 0) if sense > 0 else (rel > 0)
        if ch_region_bigger:
            # ch's closer halfplane contains ci's on the shared window;
            # ci can only win strictly before ch's anchor.
            if exact_cmp(ai, ah) < 0 and has_closer(ci[0], ai, ah):
                return ch
            return ci
        return ch

    rounds = None
    if stats is not None:
        rounds = stats.setdefault("rounds", [])
    by_anchor = cmp_to_key(lambda c, d: exact_cmp(c[1], d[1]))
    while len(r_up) + len(r_down) > 2:
        size = len(r_up) + len(r_down)
        pairs = []
        for grp, sense in ((r_up, 1), (r_down, -1)):
            grp.sort(key=by_anchor)
            for j in range(0, len(grp) - 1, 2):
                pairs.append((grp[j], grp[j + 1], sense, grp))
        considered, direct = [], []
        for ci, ch, sense, grp in pairs:
            x_ih = _lines_cross_x(bisector(owner, ci[0]),
                                  bisector(owner, ch[0]))
            if (x_ih is not None and exact_cmp(ch[1], x_ih) < 0
                    and exact_cmp(x_ih, a_k) < 0):
                considered.append((x_ih, ci, ch, sense, grp))
            else:
                direct.append((ci, ch, sense, grp))
        drops = [(grp, resolve(ci, ch, sense, u, a_k))
                 for ci, ch, sense, grp in direct]
        if considered:
            xs = sorted((c[0] for c in considered), key=cmp_to_key(exact_cmp))
            mu = xs[(len(xs) - 1) // 2]
            go_left = any(
                exact_cmp(a, mu) < 0
                and not is_always_closer(terrain, a, mu, owner, pos)
                for pos, a in r_up + r_down)
            for x_ih, ci, ch, sense, grp in considered:
                if go_left and exact_cmp(x_ih, mu) >= 0:
                    drops.append((grp, resolve(ci, ch, sense, u, mu)))
                elif not go_left and exact_cmp(x_ih, mu) <= 0:
                    drops.append((grp, resolve(ci, ch, sense, mu, a_k)))
        for grp, loser in drops:
            grp.remove(loser)
        if rounds is not None:
            rounds.append((size, len(drops)))

    for pos, a in r_up + r_down:
        x = _leftmost_closer(terrain, a, a_k, owner, pos)
        if x is not None and exact_cmp(x, u) > 0:
            cand_xs.append(x)
    if not cand_xs:
        return None
    best = cand_xs[0]
    for x in cand_xs[1:]:
        best = exact_min(best, x)
    return best


class _Ev:
    __slots__ = ("x", "kind", "p", "prev", "next")

    def __init__(self, x, kind, p):
        self.x = x
        self.kind = kind
        self.p = p
        self.prev = None
        self.next = None


def _unlink(ev: _Ev):
    if ev.prev is not None:
        ev.prev.next = ev.next
    if ev.next is not None:
        ev.next.prev = ev.prev


def _closest_visible(terrain: Terrain, x, vis, positions):
    """Closest ordinal at T(x); a distance tie goes to the viewpoint
    that is closer just to the right (slope of the linear difference)."""
    q = (x, terrain.y_at(x))
    best = None
    for p in sorted(vis):
        if best is None:
            best = p
            continue
        s = exact_cmp(sq_dist(q, positions[p]), sq_dist(q, positions[best]))
        if s == 0:
            u, w = terrain.edge(_edge_for(terrain, x, 1))
            alpha, _ = dist_diff_linear(u, w, positions[p], positions[best])
            s = _sign(alpha)
        if s < 0:
            best = p
    return best


def build_vorvis(terrain: Terrain, viewpoints: ViewpointSet,
                 colvis=None) -> IntervalMap:
    """The Voronoi visibility map, driven by colored-map events.

    Expects general-position input (equal viewpoint heights are fine).
    Metadata carries the search statistics, including per-round prune
    sizes of first_region_change.
    """
    if colvis is None:
        if viewpoints.radius is not None:
            from .limited import build_colvis_limited
            colvis = build_colvis_limited(terrain, viewpoints)
        else:
            from .colvis_sweep import build_colvis
            colvis = build_colvis(terrain, viewpoints)
    positions = viewpoints.positions(terrain)
    stats = {"frc_calls": 0, "rounds": [], "backtracked": 0}

    # A permanent sentinel keeps the list front stable across deletions.
    head = _Ev(terrain.x_min, "start", None)
    tail = head
    def _append(ev):
        nonlocal tail
        tail.next = ev
        ev.prev = tail
        tail = ev
    for i in range(1, colvis.size):
        x = colvis.breakpoints[i]
        before, after = colvis.labels[i - 1], colvis.labels[i]
        for p in sorted(before - after):
            _append(_Ev(x, "dis", p))
        for p in sorted(after - before):
            _append(_Ev(x, "app", p))
    _append(_Ev(terrain.x_max, "end", None))

    def backtrack(ev, x_star):
        e = ev
        while e.kind != "start" and exact_cmp(e.x, x_star) > 0:
            pe = e.prev
            if e.kind == "app":
                if e.p in vis:
                    vis.discard(e.p)
                else:
                    _unlink(e)
                stats["backtracked"] += 1
            elif e.kind == "dis":
                vis.add(e.p)
                stats["backtracked"] += 1
            e = pe
        return e.next

    regions = []
    vis = set(colvis.labels[0])
    u = terrain.x_min
    ev = head.next
    done = False
    while not done:
        while ev.kind != "end" and exact_cmp(ev.x, u) == 0:
            if ev.kind == "app":
                vis.add(ev.p)
            else:
                vis.discard(ev.p)
            ev = ev.next
        owner = _closest_visible(terrain, u, vis, positions) if vis else None
        anchors = {p: (u, None) for p in vis}
        while True:
            if ev.kind == "app" and owner is not None:
                vis.add(ev.p)
                anchors[ev.p] = (ev.x, ev)
                ev = ev.next
                continue
            if ev.kind == "app":                      # first sight at all
                regions.append((u, ev.x, None))
                u = ev.x
                break
            if ev.kind == "end":
                if owner is None:
                    regions.append((u, terrain.x_max, None))
                    done = True
                    break
                members = [(positions[p], anchors[p][0])
                           for p in vis if p != owner]
                if all(is_always_closer(terrain, a, terrain.x_max,
                                        positions[owner], pos)
                       for pos, a in members):
                    regions.append((u, terrain.x_max, owner))
                    done = True
                    break
                x_star = first_region_change(
                    terrain, u, terrain.x_max, positions[owner], members,
                    stats)
                regions.append((u, x_star, owner))
                ev = backtrack(ev, x_star)
                u = x_star
                break
            p = ev.p
            if p == owner:
                vis.discard(p)
                members = [(positions[c], anchors[c][0]) for c in vis]
                if all(is_always_closer(terrain, a, ev.x,
                                        positions[owner], pos)
                       for pos, a in members):
                    regions.append((u, ev.x, owner))
                    u = ev.x
                    ev = ev.next
                    break
                x_star = first_region_change(
                    terrain, u, ev.x, positions[owner], members, stats)
                regions.append((u, x_star, owner))
                ev = backtrack(ev, x_star)
                u = x_star
                break
            vis.discard(p)
            a, a_ev = anchors.pop(p)
            if is_always_closer(terrain, a, ev.x, positions[owner],
                                positions[p]):
                # Dominated on its whole visible stretch: neither event
                # can matter again, even to a later owner, because the
                # current owner keeps seeing and beating p here.
                nxt = ev.next
                _unlink(ev)
                if a_ev is not None:
                    _unlink(a_ev)
                ev = nxt
                continue
            members = [(positions[c], anchors[c][0])
                       for c in vis if c != owner]
            members.append((positions[p], a))
            x_star = first_region_change(
                terrain, u, ev.x, positions[owner], members, stats)
            regions.append((u, x_star, owner))
            ev = backtrack(ev, x_star)
            u = x_star
            break

    return IntervalMap.from_cells("vorvis", regions, meta={"stats": stats})


def _merge_voronoi(terrain: Terrain, positions, a: IntervalMap,
                   b: IntervalMap) -> IntervalMap:
    """Overlay two closest-owner maps into one.

    Cells are refined by the terrain vertices, so within each cell the
    owners' squared-distance difference is linear and contributes at
    most one split point.
    """
    xs = list(a.breakpoints) + list(b.breakpoints) \
        + [v.x for v in terrain.vertices]
    xs.sort(key=cmp_to_key(exact_cmp))
    merged = [xs[0]]
    for x in xs[1:]:
        if exact_cmp(merged[-1], x) != 0:
            merged.append(x)
    ca = cb = 0
    cells = []
    for lo, hi in zip(merged, merged[1:]):
        while (ca + 1 < len(a.breakpoints)
               and exact_cmp(a.breakpoints[ca + 1], lo) <= 0):
            ca += 1
        while (cb + 1 < len(b.breakpoints)
               and exact_cmp(b.breakpoints[cb + 1], lo) <= 0):
            cb += 1
        la, lb = a.labels[ca], b.labels[cb]
        if la is None or lb is None:
            cells.append((lo, hi, lb if la is None else la))
            continue
        eu, ew = terrain.edge(terrain.edge_index_at(lo))
        alpha, beta = dist_diff_linear(eu, ew, positions[la], positions[lb])
        root = None if alpha == 0 else -beta / alpha
        if (root is not None and exact_cmp(lo, root) < 0
                and exact_cmp(root, hi) < 0):
            first, second = (la, lb) if _sign(alpha) > 0 else (lb, la)
            cells.append((lo, root, first))
            cells.append((root, hi, second))
        else:
            s = _sign(alpha * rational_between(lo, hi) + beta)
            if s == 0:
                raise ValueError("bisector contains a terrain edge")
            cells.append((lo, hi, la if s < 0 else lb))
    return IntervalMap.from_cells("vorvis", cells)


def build_vorvis_dnc(terrain: Terrain, viewpoints: ViewpointSet,
                     colvis=None) -> IntervalMap:
    """Voronoi visibility by divide and conquer over the viewpoints.

    Each viewpoint's viewshed is computed on its own and the
    closest-owner maps are merged pairwise; independent of the
    event-driven builder, which makes it a good cross-check.
    """
    positions = viewpoints.positions(terrain)
    sheds = []
    for k, vi in enumerate(viewpoints.indices):
        single = ViewpointSet([vi], viewpoints.radius)
        if viewpoints.radius is not None:
            from .limited import build_colvis_limited
            cv = build_colvis_limited(terrain, single)
        else:
            from .colvis_sweep import build_colvis
            cv = build_colvis(terrain, single)
        sheds.append(cv.relabeled(
            "vorvis", lambda s, k=k: k if s else None))
    while len(sheds) > 1:
        nxt = []
        for i in range(0, len(sheds) - 1, 2):
            nxt.append(_merge_voronoi(terrain, positions,
                                      sheds[i], sheds[i + 1]))
        if len(sheds) % 2:
            nxt.append(sheds[-1])
        sheds = nxt
    return sheds[0]
