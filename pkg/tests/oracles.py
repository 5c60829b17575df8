"""Self-contained brute-force oracles for the stock puzzles.

These search plain tuple encodings with no code shared with the package, so
agreement with the dialogue-specified solver is meaningful evidence.
"""

from collections import deque


def _bfs(start, goal_fn, successors):
    if goal_fn(start):
        return 0
    dist = {start: 0}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        for nxt in successors(state):
            if nxt in dist:
                continue
            dist[nxt] = dist[state] + 1
            if goal_fn(nxt):
                return dist[nxt]
            queue.append(nxt)
    raise AssertionError("oracle: no solution")


def towers_distance(n_disks: int = 3) -> int:
    """Pegs as tuples of disk sizes, bottom first."""
    start = (tuple(range(n_disks, 0, -1)), (), ())
    goal = (tuple(), tuple(), tuple(range(n_disks, 0, -1)))

    def successors(state):
        for i, src in enumerate(state):
            if not src:
                continue
            disk = src[-1]
            for j, dst in enumerate(state):
                if i == j or (dst and dst[-1] < disk):
                    continue
                pegs = list(state)
                pegs[i] = src[:-1]
                pegs[j] = dst + (disk,)
                yield tuple(pegs)

    return _bfs(start, lambda s: s == goal, successors)


# 3x3 grid; cells numbered 1..9 row-major
_GRID_ADJ = {}
for c in range(1, 10):
    r, k = divmod(c - 1, 3)
    for dr, dk in ((1, 0), (-1, 0), (0, 1), (0, -1)):
        nr, nk = r + dr, k + dk
        if 0 <= nr < 3 and 0 <= nk < 3:
            _GRID_ADJ.setdefault(c, set()).add(nr * 3 + nk + 1)


def sliding_distance(start: tuple, goal: tuple) -> int:
    """States are 9-tuples of tile labels with None for the blank."""

    def successors(state):
        blank = state.index(None) + 1
        for nb in _GRID_ADJ[blank]:
            cells = list(state)
            cells[blank - 1], cells[nb - 1] = cells[nb - 1], None
            yield tuple(cells)

    return _bfs(start, lambda s: s == goal, successors)


def hoppers_distance(n_each: int = 3) -> int:
    """Row of 2n+1 cells: 'R' pieces step/jump right, 'G' left, one gap."""
    start = ("R",) * n_each + (None,) + ("G",) * n_each
    goal = ("G",) * n_each + (None,) + ("R",) * n_each

    def successors(state):
        gap = state.index(None)
        for src, piece in ((gap - 1, "R"), (gap + 1, "G"),
                           (gap - 2, "R"), (gap + 2, "G")):
            if not 0 <= src < len(state) or state[src] != piece:
                continue
            if abs(src - gap) == 2:
                over = state[(src + gap) // 2]
                if over is None or over == piece:
                    continue
            cells = list(state)
            cells[gap], cells[src] = cells[src], None
            yield tuple(cells)

    return _bfs(start, lambda s: s == goal, successors)
