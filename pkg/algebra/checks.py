from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from algebra.derived import global_identity, join_of, left_units, meet_of, right_units
from algebra.errors import MorphismError
from algebra.structure import FiniteIpoAlgebra

logger = logging.getLogger(__name__)

FLAGS: Tuple[str, ...] = (
    "poset",
    "semigroup",
    "dn",
    "antitone",
    "rotation",
    "ipo_semigroup",
    "cyclic",
    "commutative",
    "idempotent",
    "has_local_identities",
    "locally_integral",
    "integral",
    "has_global_identity",
    "lattice_ordered",
)


@dataclass(frozen=True)
class CheckResult:
    """真偽と反例。ok のときは witness が空。"""

    ok: bool
    witness: Tuple[int, ...] = ()
    condition: str = ""
    element: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok


_PASS = CheckResult(True)


@dataclass(frozen=True)
class ClassReport:
    flags: Dict[str, bool]
    witnesses: Dict[str, Tuple[int, ...]] = field(default_factory=dict)
    # 宣言の有無に関係なく見つかった大域単位元
    unit: Optional[int] = None

    def __getitem__(self, flag: str) -> bool:
        return self.flags[flag]

    def failed(self) -> List[str]:
        return [f for f in FLAGS if not self.flags[f]]


def _first(mask: np.ndarray) -> Optional[Tuple[int, ...]]:
    hits = np.argwhere(mask)
    if hits.shape[0] == 0:
        return None
    return tuple(int(v) for v in hits[0])


def _verdict(mask: np.ndarray, condition: str) -> CheckResult:
    witness = _first(mask)
    if witness is None:
        return _PASS
    return CheckResult(False, witness, condition)


# --- individual axioms ---
def check_poset(alg: FiniteIpoAlgebra) -> CheckResult:
    leq = alg.leq
    n = alg.n
    checks = (
        (~np.diag(leq), "reflexivity"),
        (leq & leq.T & ~np.eye(n, dtype=bool), "antisymmetry"),
        (leq[:, :, None] & leq[None, :, :] & ~leq[:, None, :], "transitivity"),
    )
    for mask, condition in checks:
        result = _verdict(mask, condition)
        if not result:
            return result
    return _PASS


def check_semigroup(alg: FiniteIpoAlgebra) -> CheckResult:
    # (xy)z と x(yz) を (x, y, z) の 3 次元配列で比較
    left = alg.mul[alg.mul]
    right = alg.mul[:, alg.mul]
    return _verdict(left != right, "associativity")


def check_dn(alg: FiniteIpoAlgebra) -> CheckResult:
    ar = np.arange(alg.n)
    bad = (alg.tilde[alg.minus] != ar) | (alg.minus[alg.tilde] != ar)
    return _verdict(bad, "dn")


def check_antitone(alg: FiniteIpoAlgebra) -> CheckResult:
    leq = alg.leq
    flipped_tilde = leq[np.ix_(alg.tilde, alg.tilde)].T
    flipped_minus = leq[np.ix_(alg.minus, alg.minus)].T
    return _verdict(leq & ~(flipped_tilde & flipped_minus), "antitone")


def _rotation_statements(alg: FiniteIpoAlgebra) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    leq, mul, t, m = alg.leq, alg.mul, alg.tilde, alg.minus
    # [x, y, z] = xy ≤ z
    first = leq[mul]
    # [x, y, z] = y·∼z ≤ ∼x
    y_tz = mul[:, t]
    second = leq[y_tz[None, :, :], t[:, None, None]]
    # [x, y, z] = −z·x ≤ −y
    mz_x = mul[m, :].T
    third = leq[mz_x[:, None, :], m[None, :, None]]
    return first, second, third


def check_rotation(alg: FiniteIpoAlgebra) -> CheckResult:
    first, second, third = _rotation_statements(alg)
    return _verdict((first != second) | (first != third), "rotation")


def is_residuated(alg: FiniteIpoAlgebra) -> CheckResult:
    """xy ≤ z ⟺ x ≤ z/y ⟺ y ≤ x\\z を全ての三つ組で調べる。"""
    leq, mul, t, m = alg.leq, alg.mul, alg.tilde, alg.minus
    first = leq[mul]
    # z/y = −(y·∼z) を [y, z] で
    over = m[mul[:, t]]
    second = leq[np.arange(alg.n)[:, None, None], over[None, :, :]]
    # x\z = ∼(−z·x) を [x, z] で
    under = t[mul[m, :].T]
    third = leq[np.arange(alg.n)[None, :, None], under[:, None, :]]
    return _verdict((first != second) | (first != third), "residuation")


def check_cyclic(alg: FiniteIpoAlgebra) -> CheckResult:
    return _verdict(alg.tilde != alg.minus, "cyclic")


def check_commutative(alg: FiniteIpoAlgebra) -> CheckResult:
    return _verdict(alg.mul != alg.mul.T, "commutative")


def check_idempotent(alg: FiniteIpoAlgebra) -> CheckResult:
    ar = np.arange(alg.n)
    return _verdict(alg.mul[ar, ar] != ar, "idempotent")


# --- local structure ---
def check_local_identities(alg: FiniteIpoAlgebra) -> CheckResult:
    ar = np.arange(alg.n)
    left, right = left_units(alg), right_units(alg)
    result = _verdict(left != right, "x\\x = x/x")
    if not result:
        return result
    return _verdict(alg.mul[left, ar] != ar, "1_x x = x")


def check_locally_integral(alg: FiniteIpoAlgebra) -> CheckResult:
    """局所整性の四条件（順に検査し、最初に破れた条件の反例を返す）。"""
    n = alg.n
    ar = np.arange(n)
    mul, leq = alg.mul, alg.leq
    zero_left = mul[alg.minus, ar]
    result = _verdict(zero_left != mul[ar, alg.tilde], "-x x = x ~x")
    if not result:
        return result
    left = left_units(alg)
    # [x, y] = y ≤ (x/x)·y
    lifted = leq[np.broadcast_to(ar, (n, n)), mul[left]]
    result = _verdict(~lifted, "x/x positive")
    if not result:
        return result
    result = _verdict(~leq[mul[ar, ar], ar], "xx <= x")
    if not result:
        return result
    return _verdict(mul[zero_left, zero_left] != zero_left, "0_x 0_x = 0_x")


def check_integral(alg: FiniteIpoAlgebra) -> CheckResult:
    n = alg.n
    ar = np.arange(n)
    left = left_units(alg)
    result = _verdict(~alg.leq[ar, alg.mul[left, ar]], "x <= (x/x)x")
    if not result:
        return result
    # [y, x] = yx ≤ x
    result = _verdict(~alg.leq[alg.mul, np.broadcast_to(ar, (n, n))], "yx <= x")
    if not result:
        return result
    return CheckResult(True, element=int(left[0]))


def check_global_identity(alg: FiniteIpoAlgebra) -> CheckResult:
    unit = global_identity(alg)
    if unit is not None:
        return CheckResult(True, element=unit)
    # 候補 e ごとに e·x ≠ x または x·e ≠ x となる最初の x
    ar = np.arange(alg.n)
    refuters = []
    for e in range(alg.n):
        bad = (alg.mul[e] != ar) | (alg.mul[:, e] != ar)
        refuters.append(int(np.flatnonzero(bad)[0]))
    return CheckResult(False, tuple(refuters), "global identity")


def check_lattice_ordered(alg: FiniteIpoAlgebra) -> CheckResult:
    for x in range(alg.n):
        for y in range(x + 1, alg.n):
            if join_of(alg, x, y) is None:
                return CheckResult(False, (x, y), "join")
            if meet_of(alg, x, y) is None:
                return CheckResult(False, (x, y), "meet")
    return _PASS


# --- aggregate ---
def check_ipo(alg: FiniteIpoAlgebra) -> ClassReport:
    results: Dict[str, CheckResult] = {
        "poset": check_poset(alg),
        "semigroup": check_semigroup(alg),
        "dn": check_dn(alg),
        "antitone": check_antitone(alg),
        "rotation": check_rotation(alg),
    }
    base = ("poset", "semigroup", "dn", "antitone", "rotation")
    ipo_failure = next((results[f] for f in base if not results[f]), None)
    results["ipo_semigroup"] = ipo_failure if ipo_failure is not None else _PASS
    results["cyclic"] = check_cyclic(alg)
    results["commutative"] = check_commutative(alg)
    results["idempotent"] = check_idempotent(alg)
    results["has_local_identities"] = check_local_identities(alg)
    results["locally_integral"] = check_locally_integral(alg)
    results["integral"] = check_integral(alg)
    results["has_global_identity"] = check_global_identity(alg)
    results["lattice_ordered"] = (
        check_lattice_ordered(alg) if results["poset"] else results["poset"]
    )
    # 局所整・整は ipo 半群であることが前提
    if ipo_failure is not None:
        for flag in ("locally_integral", "integral"):
            if results[flag]:
                results[flag] = ipo_failure

    flags = {f: results[f].ok for f in FLAGS}
    witnesses = {f: results[f].witness for f in FLAGS if not results[f].ok}
    report = ClassReport(flags, witnesses, results["has_global_identity"].element)
    logger.debug("check_ipo n=%d failed=%s", alg.n, report.failed())
    return report


# --- morphisms ---
def check_morphism(
    src: FiniteIpoAlgebra,
    dst: FiniteIpoAlgebra,
    h: Sequence[int],
    embedding: bool = False,
) -> CheckResult:
    if len(h) != src.n:
        raise MorphismError(f"map has {len(h)} entries, source has {src.n} elements")
    for x, value in enumerate(h):
        if not 0 <= int(value) < dst.n:
            raise MorphismError(f"h[{x}] = {value} is out of range 0..{dst.n - 1}")
    hm = np.asarray(h, dtype=np.int64)
    image_leq = dst.leq[np.ix_(hm, hm)]
    checks = [
        (src.leq & ~image_leq, "order"),
        (hm[src.mul] != dst.mul[np.ix_(hm, hm)], "product"),
        (hm[src.tilde] != dst.tilde[hm], "tilde"),
        (hm[src.minus] != dst.minus[hm], "minus"),
    ]
    if embedding:
        checks.append((image_leq & ~src.leq, "order reflection"))
    for mask, condition in checks:
        result = _verdict(mask, condition)
        if not result:
            return result
    if src.unit is not None and dst.unit is not None and int(hm[src.unit]) != dst.unit:
        return CheckResult(False, (src.unit,), "unit")
    return _PASS
