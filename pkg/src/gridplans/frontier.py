"""Row-major frontier states for sweeping equal-size connected partitions.

Cells are placed one at a time in row-major order. The frontier is the last
``n`` placed cells: while placing cell ``(r, j)``, position ``p < j`` holds
``(r, p)`` and position ``p >= j`` holds ``(r - 1, p)``. Before row 0 every
position is empty (``-1``).

A state is a flat tuple ``dist + piece + sizes``:

* ``dist[p]``: district of frontier position ``p``, numbered by first
  appearance along the frontier (``-1`` if empty);
* ``piece[p]``: connected piece of that district inside the already placed
  region, numbered the same way. A district may have several pieces that
  still have to meet below the frontier;
* ``sizes[d]``: cells placed so far in open district ``d``.

Every open district touches the frontier, so the number of closed districts
is ``(cells placed - sum(sizes)) // n`` and need not be stored.
"""

from __future__ import annotations

from typing import Iterator

State = tuple[int, ...]


def initial_state(n: int) -> State:
    return (-1,) * (2 * n)


def split(n: int, state: State) -> tuple[State, State, State]:
    return state[:n], state[n:2 * n], state[2 * n:]


def canonicalize(dist: list[int], piece: list[int], sizes: list[int]) -> State:
    """Renumber districts and pieces by first appearance along the frontier.

    ``sizes`` is indexed by the raw district ids in ``dist``.
    """
    dmap: dict[int, int] = {}
    pmap: dict[int, int] = {}
    out_d = []
    out_p = []
    out_s = []
    for d, q in zip(dist, piece):
        if d < 0:
            out_d.append(-1)
            out_p.append(-1)
            continue
        nd = dmap.get(d)
        if nd is None:
            nd = dmap[d] = len(dmap)
            out_s.append(sizes[d])
        out_d.append(nd)
        nq = pmap.get(q)
        if nq is None:
            nq = pmap[q] = len(pmap)
        out_p.append(nq)
    return tuple(out_d + out_p + out_s)


def transitions(n: int, state: State, t: int) -> Iterator[tuple[int, State, int]]:
    """Yield ``(choice, next_state, cut_increment)`` for placing cell ``t``.

    ``choice`` is the district index (in ``state``) that the new cell joins, or
    ``-1`` for opening a new district. Dead continuations are not yielded.
    """
    j = t % n
    dist = state[:n]
    piece = state[n:2 * n]
    sizes = state[2 * n:]
    k = len(sizes)
    closed = (t - sum(sizes)) // n
    remaining = n * n - t - 1
    du, pu = dist[j], piece[j]
    if j > 0:
        dl, pl = dist[j - 1], piece[j - 1]
    else:
        dl, pl = -1, -1

    options = [d for d in range(k) if sizes[d] < n]
    if closed + k < n:
        options.append(-1)

    for d in options:
        nd = list(dist)
        npc = list(piece)
        ns = list(sizes)
        if d < 0:
            dd = k
            ns.append(1)
        else:
            dd = d
            ns[dd] += 1
        if du == dd and dl == dd:
            q = pu
            if pl != pu:
                npc = [pu if x == pl else x for x in npc]
        elif du == dd:
            q = pu
        elif dl == dd:
            q = pl
        else:
            q = max(piece) + 1
        nd[j] = dd
        npc[j] = q

        open_count = len(ns)
        if du >= 0 and du != dd and pu not in npc:
            # The cell leaving the frontier was the last contact of its piece:
            # its district must be complete and have no other piece left.
            if du in nd or ns[du] != n:
                continue
            ns[du] = n
            open_count -= 1
            if closed + 1 + open_count > n:
                continue
        if n * len(ns) - sum(ns) > remaining:
            continue

        cut = (du >= 0 and du != dd) + (dl >= 0 and dl != dd)
        yield d, canonicalize(nd, npc, ns), cut


def is_final(n: int, state: State) -> bool:
    """After the last cell: every remaining district is one piece of full size."""
    dist, piece, sizes = split(n, state)
    if any(s != n for s in sizes):
        return False
    owner: dict[int, int] = {}
    for d, q in zip(dist, piece):
        if owner.setdefault(d, q) != q:
            return False
    return True
