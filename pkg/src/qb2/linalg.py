"""Sparse Gauss-Jordan elimination over Scalars.

Systems are given column-wise: ``columns[c]`` maps a row label (any hashable)
to the entry in that row.  Row labels are whatever the caller uses to index
equations, typically basis keys of a product.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coeff import ONE, Scalar


@dataclass
class Echelon:
    pivots: dict  # column -> reduced row (dict column -> Scalar)
    ncols: int
    inconsistent: bool = False
    rows: int = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _weight(s: Scalar) -> int:
    return len(s.num) + len(s.den)


def _to_rows(columns, rhs=None) -> list[dict]:
    rows: dict = {}
    for c, col in enumerate(columns):
        for label, v in col.items():
            if v:
                rows.setdefault(label, {})[c] = v
    if rhs is not None:
        n = len(columns)
        for label, v in rhs.items():
            if v:
                rows.setdefault(label, {})[n] = v
    return list(rows.values())


def echelon(columns, rhs=None) -> Echelon:
    """Reduced row echelon form; column ``len(columns)`` holds ``rhs``."""
    n = len(columns)
    rows = _to_rows(columns, rhs)
    nrows = len(rows)
    pivots: dict = {}
    active = rows
    for c in range(n):
        candidates = [r for r in active if c in r]
        if not candidates:
            continue
        chosen = min(candidates, key=lambda r: (_weight(r[c]), len(r)))
        inv = chosen[c].inv()
        piv = {k: v * inv for k, v in chosen.items()}
        piv[c] = ONE
        remaining = []
        for r in active:
            if r is chosen:
                continue
            if c not in r:
                remaining.append(r)
                continue
            f = r[c]
            new = dict(r)
            for k, v in piv.items():
                w = new.get(k)
                w = -f * v if w is None else w - f * v
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            if new:
                remaining.append(new)
        for pc, prow in pivots.items():
            if c in prow:
                f = prow[c]
                for k, v in piv.items():
                    w = prow.get(k)
                    w = -f * v if w is None else w - f * v
                    if w:
                        prow[k] = w
                    else:
                        prow.pop(k, None)
        pivots[c] = piv
        active = remaining
    inconsistent = any(n in r for r in active)
    return Echelon(pivots=pivots, ncols=n, inconsistent=inconsistent, rows=nrows)


def nullspace(columns) -> list[dict]:
    """Basis of ``{x : sum_c x_c columns[c] = 0}`` as sparse vectors."""
    ech = echelon(columns)
    free = [c for c in range(ech.ncols) if c not in ech.pivots]
    basis = []
    for f in free:
        vec = {f: ONE}
        for pc, prow in ech.pivots.items():
            v = prow.get(f)
            if v:
                vec[pc] = -v
        basis.append(vec)
    return basis


def rank(columns) -> int:
    return echelon(columns).rank


def solve(columns, rhs) -> tuple[dict | None, Echelon]:
    """One solution of ``sum_c x_c columns[c] = rhs`` (free variables 0)."""
    ech = echelon(columns, rhs)
    if ech.inconsistent:
        return None, ech
    n = ech.ncols
    sol = {}
    for pc, prow in ech.pivots.items():
        v = prow.get(n)
        if v:
            sol[pc] = v
    return sol, ech
