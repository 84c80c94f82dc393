from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any, Dict, Iterable, Optional, Sequence

import numpy as np

from algebra.errors import StructureError


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class FiniteIpoAlgebra:
    """有限 ipo 半群の表現。要素は 0..n-1 の添字。

    公理は仮定しない（check_ipo で検査する）。構築時に検査するのは表の形と
    添字範囲だけ。
    """

    leq: np.ndarray
    mul: np.ndarray
    tilde: np.ndarray
    minus: np.ndarray
    unit: Optional[int] = None

    @classmethod
    def from_tables(
        cls,
        leq: Sequence[Sequence[Any]],
        mul: Sequence[Sequence[int]],
        tilde: Sequence[int],
        minus: Sequence[int],
        unit: Optional[int] = None,
    ) -> "FiniteIpoAlgebra":
        n = len(tilde)
        if n == 0:
            raise StructureError("an algebra needs at least one element")
        try:
            leq_arr = np.asarray(leq)
            mul_arr = np.asarray(mul)
            tilde_arr = np.asarray(tilde)
            minus_arr = np.asarray(minus)
        except ValueError as e:
            raise StructureError(f"ragged table: {e}") from e
        _check_shape("tilde", tilde_arr, (n,))
        _check_shape("leq", leq_arr, (n, n))
        _check_shape("mul", mul_arr, (n, n))
        _check_shape("minus", minus_arr, (n,))
        for i in range(n):
            for j in range(n):
                if leq_arr[i, j] not in (0, 1, True, False):
                    raise StructureError(f"leq[{i}][{j}] = {leq_arr[i, j]!r} is not 0/1")
                _check_index(f"mul[{i}][{j}]", mul_arr[i, j], n)
        for i in range(n):
            _check_index(f"tilde[{i}]", tilde_arr[i], n)
            _check_index(f"minus[{i}]", minus_arr[i], n)
        if unit is not None:
            _check_index("unit", unit, n)
            unit = int(unit)
        return cls(
            leq=_frozen(leq_arr.astype(bool)),
            mul=_frozen(mul_arr.astype(np.int64)),
            tilde=_frozen(tilde_arr.astype(np.int64)),
            minus=_frozen(minus_arr.astype(np.int64)),
            unit=unit,
        )

    @property
    def n(self) -> int:
        return int(self.tilde.shape[0])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteIpoAlgebra):
            return NotImplemented
        return (
            self.unit == other.unit
            and np.array_equal(self.leq, other.leq)
            and np.array_equal(self.mul, other.mul)
            and np.array_equal(self.tilde, other.tilde)
            and np.array_equal(self.minus, other.minus)
        )

    def __hash__(self) -> int:
        return hash(
            (self.leq.tobytes(), self.mul.tobytes(), self.tilde.tobytes(), self.minus.tobytes(), self.unit)
        )

    def with_unit(self, unit: Optional[int]) -> "FiniteIpoAlgebra":
        if unit is not None:
            _check_index("unit", unit, self.n)
            unit = int(unit)
        return replace(self, unit=unit)

    def relabel(self, perm: Sequence[int]) -> "FiniteIpoAlgebra":
        """perm[x] を x の新しい添字とした同型なコピーを返す。"""
        p = np.asarray(perm, dtype=np.int64)
        if sorted(p.tolist()) != list(range(self.n)):
            raise StructureError(f"relabeling {list(perm)} is not a permutation of 0..{self.n - 1}")
        inv = np.argsort(p)
        return FiniteIpoAlgebra(
            leq=_frozen(self.leq[np.ix_(inv, inv)].copy()),
            mul=_frozen(p[self.mul[np.ix_(inv, inv)]]),
            tilde=_frozen(p[self.tilde[inv]]),
            minus=_frozen(p[self.minus[inv]]),
            unit=None if self.unit is None else int(p[self.unit]),
        )

    def restrict(self, elements: Iterable[int], unit: Optional[int] = None) -> "FiniteIpoAlgebra":
        """閉じた部分集合への制限。elements の昇順が新しい添字になる。"""
        members = sorted(set(int(e) for e in elements))
        local = {e: i for i, e in enumerate(members)}
        idx = np.asarray(members, dtype=np.int64)
        try:
            mul = [[local[int(v)] for v in row] for row in self.mul[np.ix_(idx, idx)]]
            tilde = [local[int(v)] for v in self.tilde[idx]]
            minus = [local[int(v)] for v in self.minus[idx]]
        except KeyError as e:
            raise StructureError(f"subset {members} is not closed: leaves through {e.args[0]}") from e
        return FiniteIpoAlgebra.from_tables(
            self.leq[np.ix_(idx, idx)],
            mul,
            tilde,
            minus,
            unit=None if unit is None else local[int(unit)],
        )

    def tables(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "leq": self.leq.astype(int).tolist(),
            "mul": self.mul.tolist(),
            "tilde": self.tilde.tolist(),
            "minus": self.minus.tolist(),
            "unit": self.unit,
        }


def _check_shape(name: str, array: np.ndarray, shape: tuple) -> None:
    if array.shape != shape:
        raise StructureError(f"{name} has shape {array.shape}, expected {shape}")


def _check_index(cell: str, value: Any, n: int) -> None:
    if isinstance(value, (bool, np.bool_)) or not isinstance(value, (int, np.integer)):
        raise StructureError(f"{cell} = {value!r} is not an integer")
    if not 0 <= int(value) < n:
        raise StructureError(f"{cell} = {int(value)} is out of range 0..{n - 1}")
