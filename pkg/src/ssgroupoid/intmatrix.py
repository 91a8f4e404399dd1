"""Exact integer normal forms for finitely presented abelian groups.

A presentation is a list of relation rows over ``ncols`` generators; the group
is ``Z^ncols`` modulo the row span.  Rows may be dense lists or sparse dicts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

Row = Mapping[int, int]


def smith_diagonal(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form, each dividing the next."""
    a = [list(map(int, r)) for r in matrix]
    if not a or not a[0]:
        return []
    m, n = len(a), len(a[0])
    diag = []
    t = 0
    while t < min(m, n):
        # smallest nonzero entry in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        a[t], a[i] = a[i], a[t]
        for r in a:
            r[t], r[j] = r[j], r[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, n):
                            ri[j] -= q * rt[j]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for r in a[t:]:
                            r[j] -= q * r[t]
                    if a[t][j]:
                        done = False
            if done:
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                i = bad[0]
                for j in range(t, n):
                    a[t][j] += a[i][j]
                continue
            # move the smallest remainder in row/column t onto the pivot
            cands = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
            cands += [(abs(a[t][j]), t, j) for j in range(t, n) if a[t][j]]
            _, i, j = min(cands)
            a[t], a[i] = a[i], a[t]
            for r in a:
                r[t], r[j] = r[j], r[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def _eliminate_units(rows: list[dict[int, int]], ncols: int) -> tuple[list[dict[int, int]], list[int]]:
    """Use relations with a ±1 coefficient to delete generators; returns the reduced rows and surviving columns."""
    rows = [dict((c, v) for c, v in r.items() if v) for r in rows]
    rows = [r for r in rows if r]
    where: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for c in r:
            where.setdefault(c, set()).add(i)
    alive = set(range(len(rows)))
    removed: set[int] = set()
    changed = True
    while changed:
        changed = False
        for i in sorted(alive, key=lambda k: len(rows[k])):
            if i not in alive:
                continue
            r = rows[i]
            pivot = next((c for c in sorted(r) if abs(r[c]) == 1), None)
            if pivot is None:
                continue
            sign = r[pivot]
            alive.discard(i)
            removed.add(pivot)
            for c in r:
                where[c].discard(i)
            for k in list(where.get(pivot, ())):
                rk = rows[k]
                f = rk[pivot] * sign
                for c, v in r.items():
                    nv = rk.get(c, 0) - f * v
                    if nv:
                        if c not in rk:
                            where.setdefault(c, set()).add(k)
                        rk[c] = nv
                    elif c in rk:
                        del rk[c]
                        where[c].discard(k)
                if not rk:
                    alive.discard(k)
            changed = True
    cols = [c for c in range(ncols) if c not in removed]
    return [rows[i] for i in sorted(alive) if rows[i]], cols


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^free_rank ⊕ ⊕ Z/d`` with ``torsion`` the invariant factors greater than 1."""

    torsion: tuple[int, ...]
    free_rank: int

    def is_trivial(self) -> bool:
        return not self.torsion and self.free_rank == 0

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def _as_sparse(row) -> dict[int, int]:
    if isinstance(row, Mapping):
        return {int(c): int(v) for c, v in row.items() if v}
    return {c: int(v) for c, v in enumerate(row) if v}


def cokernel(rows: Sequence, ncols: int) -> AbelianGroup:
    """The group ``Z^ncols / span(rows)``."""
    sparse, cols = _eliminate_units([_as_sparse(r) for r in rows], ncols)
    index = {c: k for k, c in enumerate(cols)}
    dense = [[0] * len(cols) for _ in sparse]
    for i, r in enumerate(sparse):
        for c, v in r.items():
            dense[i][index[c]] = v
    diag = smith_diagonal(dense) if dense and cols else []
    return AbelianGroup(tuple(d for d in diag if d != 1), len(cols) - len(diag))


def invariant_factors(matrix: Sequence[Sequence[int]]) -> list[int]:
    return smith_diagonal(matrix)


def is_surjective(images: Sequence, target_rows: Sequence, ncols: int) -> bool:
    """Does ``Z^k → Z^ncols / span(target_rows)`` with generator images ``images`` hit everything?"""
    return cokernel(list(images) + list(target_rows), ncols).is_trivial()
