"""Exhaustive enumeration of size systems over small universes.

The search space for one universe is the product, over the nonempty subsets
X, of the ideal families allowed at X.  Every enumerated family contains ∅
(systems violating that are out of scope for the searches), and with
`monotone_only` the families are restricted to downward-closed ones, which
shrinks the space by orders of magnitude; the down-set counts per base-set
size are 2, 5, 19, 167, ... and the product across all base sets grows
Dedekind-fast, hence the size ceiling: exhaustive runs stop at universe
size 4, sizes 5-6 are admitted only with both `monotone_only` and
`canonical_only` set.

Ordering is canonical everywhere: families are ordered by their code (the
bitmask recording which subsets belong to the family, indexed in canonical
subset order), assignments are ordered lexicographically across base sets,
and with `canonical_only` only the lexicographically least system of each
element-relabeling class is emitted.  First findings are therefore
reproducible, also under parallel scanning, which splits the stream into
contiguous chunks and merges verdicts in stream order.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator, TypeVar

from .errors import CapacityExceeded
from .properties import PropertyId, check_property
from .report import CheckReport
from .rules import RuleId, check_rule
from .setcore import Subset, Universe, canon_key, submasks
from .sizesys import SizeSystem

T = TypeVar("T")
R = TypeVar("R")

EXHAUSTIVE_CEILING = 4

CheckId = PropertyId | RuleId


@dataclass(frozen=True)
class SearchSpec:
    universe_size: int
    required: tuple[CheckId, ...] = ()
    target: CheckId | None = None
    mode: str = "find-counterexample"  # | "verify-implication" | "count"
    monotone_only: bool = True
    canonical_only: bool = False

    def __post_init__(self):
        if not isinstance(self.required, tuple):
            object.__setattr__(self, "required", tuple(self.required))
        if self.mode not in ("find-counterexample", "verify-implication", "count"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.target is None and self.mode != "count":
            raise ValueError(f"mode {self.mode!r} needs a target")
        if self.target is not None and self.target in self.required:
            raise ValueError("target may not be in required")

    def to_dict(self) -> dict:
        return {
            "universe_size": self.universe_size,
            "required": [c.name for c in self.required],
            "target": None if self.target is None else self.target.name,
            "mode": self.mode,
            "monotone_only": self.monotone_only,
            "canonical_only": self.canonical_only,
        }


def evaluate_check(s: SizeSystem, c: CheckId) -> CheckReport:
    if isinstance(c, PropertyId):
        return check_property(s, c)
    return check_rule(s, c)


# --- family enumeration -------------------------------------------------------


def _families_with_empty(x: int) -> Iterator[frozenset[int]]:
    """All subset families over P(x) that contain ∅, ascending family code."""
    others = [m for m in submasks(x) if m]
    for bits in range(1 << len(others)):
        fam = [0]
        for i, m in enumerate(others):
            if bits >> i & 1:
                fam.append(m)
        yield frozenset(fam)


def _down_set_families(x: int) -> Iterator[frozenset[int]]:
    """All downward-closed families over P(x) containing ∅, ascending code.

    Membership is decided from the largest subset down, excluding before
    including (so smaller family codes come first); including a set forces
    every submask of it, all of which sit at lower positions.
    """
    subs = submasks(x)  # canonical order; subs[0] == 0
    m = len(subs)
    forced = [0] * m

    def rec(pos: int, picked: list[int]) -> Iterator[frozenset[int]]:
        if pos < 0:
            yield frozenset(picked)
            return
        if pos == 0 or forced[pos]:
            picked.append(subs[pos])
            yield from rec(pos - 1, picked)
            picked.pop()
            return
        yield from rec(pos - 1, picked)  # exclude first
        picked.append(subs[pos])
        sm = subs[pos]
        newly = []
        for q in range(pos):
            if subs[q] & ~sm == 0 and not forced[q]:
                forced[q] = 1
                newly.append(q)
        yield from rec(pos - 1, picked)
        for q in newly:
            forced[q] = 0
        picked.pop()

    yield from rec(m - 1, [])


@lru_cache(maxsize=None)
def _subset_index(x: int) -> dict[int, int]:
    return {m: i for i, m in enumerate(submasks(x))}


def family_code(x: int, fam: frozenset[int]) -> int:
    """Bitmask of the family over the canonical subset index of x."""
    idx = _subset_index(x)
    code = 0
    for m in fam:
        code |= 1 << idx[m]
    return code


def _letters(n: int) -> list[str]:
    return [chr(ord("a") + i) for i in range(n)]


def _permute_mask(mask: int, perm: tuple[int, ...]) -> int:
    out = 0
    for i, target in enumerate(perm):
        if mask >> i & 1:
            out |= 1 << target
    return out


def _unpermute_mask(mask: int, perm: tuple[int, ...]) -> int:
    out = 0
    for i, target in enumerate(perm):
        if mask >> target & 1:
            out |= 1 << i
    return out


def _is_canonical(
    domain: tuple[int, ...],
    ideals: dict[int, frozenset[int]],
    perms: list[tuple[int, ...]],
    codes: tuple[int, ...],
) -> bool:
    for perm in perms:
        other = []
        for x in domain:
            pre = _unpermute_mask(x, perm)
            fam = frozenset(_permute_mask(a, perm) for a in ideals[pre])
            other.append(family_code(x, fam))
        if tuple(other) < codes:
            return False
    return True


def enumerate_systems(spec: SearchSpec) -> Iterator[SizeSystem]:
    """Every full-powerset system of the given size whose ideals contain ∅.

    Deterministic canonical order; with monotone_only the ideals are also
    downward closed, with canonical_only exactly one representative per
    element-relabeling class is emitted.
    """
    n = spec.universe_size
    if n < 1:
        raise CapacityExceeded("universe size must be at least 1")
    if n > 6:
        raise CapacityExceeded("universe size beyond capacity 6")
    if n > EXHAUSTIVE_CEILING and not (spec.monotone_only and spec.canonical_only):
        raise CapacityExceeded(
            f"exhaustive enumeration is capped at size {EXHAUSTIVE_CEILING}; "
            "sizes 5-6 need monotone_only and canonical_only"
        )
    u = Universe(_letters(n))
    domain = tuple(m for m in u.all_masks() if m)
    gen = _down_set_families if spec.monotone_only else _families_with_empty
    per_set = [tuple(gen(x)) for x in domain]
    perms = None
    if spec.canonical_only:
        perms = [p for p in itertools.permutations(range(n)) if p != tuple(range(n))]
    index = 0
    for assignment in itertools.product(*per_set):
        ideals = dict(zip(domain, assignment))
        if perms:
            codes = tuple(family_code(x, fam) for x, fam in zip(domain, assignment))
            if not _is_canonical(domain, ideals, perms, codes):
                continue
        yield SizeSystem(u, domain, ideals, label=f"u{n}#{index}")
        index += 1


# --- ordered, optionally parallel stream scans ---------------------------------

_CHUNK = 256


def scan_stream(
    stream: Iterable[T], evaluate: Callable[[T], R], parallelism: int = 1
) -> Iterator[R]:
    """Yield evaluate(item) in stream order; chunks may run on worker threads.

    The caller may stop consuming at any point (first-witness semantics);
    results never depend on the degree of parallelism.
    """
    if parallelism <= 1:
        for item in stream:
            yield evaluate(item)
        return

    def eval_chunk(chunk: list[T]) -> list[R]:
        return [evaluate(item) for item in chunk]

    iter_stream = iter(stream)
    with ThreadPoolExecutor(max_workers=parallelism) as pool:
        pending: list = []
        exhausted = False
        while True:
            while not exhausted and len(pending) < parallelism + 1:
                chunk = list(itertools.islice(iter_stream, _CHUNK))
                if not chunk:
                    exhausted = True
                    break
                pending.append(pool.submit(eval_chunk, chunk))
            if not pending:
                return
            head = pending.pop(0)
            yield from head.result()


def _scan_systems(
    spec: SearchSpec, parallelism: int
) -> Iterator[tuple[SizeSystem, bool, CheckReport | None]]:
    """(system, required_ok, target_report_if_required_ok) in canonical order."""
    required = spec.required
    target = spec.target

    def evaluate(s: SizeSystem):
        for c in required:
            if not evaluate_check(s, c).holds:
                return (s, False, None)
        rep = evaluate_check(s, target) if target is not None else None
        return (s, True, rep)

    yield from scan_stream(enumerate_systems(spec), evaluate, parallelism)


def find_counterexample(
    spec: SearchSpec, parallelism: int = 1
) -> tuple[SizeSystem | None, CheckReport | None]:
    """First system satisfying all required checks while violating the target."""
    if spec.mode != "find-counterexample":
        raise ValueError("spec.mode must be find-counterexample")
    for s, ok, rep in _scan_systems(spec, parallelism):
        if ok and rep is not None and not rep.holds:
            return s, rep
    return None, None


def verify_implication(spec: SearchSpec, parallelism: int = 1) -> CheckReport:
    """No enumerated system may satisfy the required checks yet violate the target."""
    if spec.mode != "verify-implication":
        raise ValueError("spec.mode must be verify-implication")
    satisfying = 0
    for s, ok, rep in _scan_systems(spec, parallelism):
        if not ok:
            continue
        satisfying += 1
        if rep is not None and not rep.holds:
            return CheckReport(
                subject=f"search:u{spec.universe_size}",
                condition=_implication_name(spec),
                holds=False,
                witness=rep.witness,
                instances_checked=satisfying,
                notes=(f"violating system {s.label}",),
                witness_system=s.to_dict(),
            )
    return CheckReport(
        subject=f"search:u{spec.universe_size}",
        condition=_implication_name(spec),
        holds=True,
        instances_checked=satisfying,
    )


def count_systems(spec: SearchSpec, parallelism: int = 1) -> CheckReport:
    """Count the systems satisfying the required checks."""
    if spec.mode != "count":
        raise ValueError("spec.mode must be count")
    satisfying = sum(1 for _, ok, _ in _scan_systems(spec, parallelism) if ok)
    return CheckReport(
        subject=f"search:u{spec.universe_size}",
        condition="count:" + "+".join(c.name for c in spec.required),
        holds=True,
        instances_checked=satisfying,
    )


def _implication_name(spec: SearchSpec) -> str:
    left = "+".join(c.name for c in spec.required) or "(all)"
    return f"{left}=>{spec.target.name if spec.target else '?'}"


def verify_implication_upto(
    required: Iterable[CheckId],
    target: CheckId,
    max_universe: int,
    monotone_only: bool = True,
    parallelism: int = 1,
) -> CheckReport:
    """verify_implication over every universe size 1..max_universe, merged."""
    required = tuple(required)
    total = 0
    for size in range(1, max_universe + 1):
        spec = SearchSpec(
            universe_size=size,
            required=required,
            target=target,
            mode="verify-implication",
            monotone_only=monotone_only,
        )
        rep = verify_implication(spec, parallelism)
        total += rep.instances_checked
        if not rep.holds:
            rep.subject = f"search:u<={max_universe}"
            rep.instances_checked = total
            return rep
    name = _implication_name(
        SearchSpec(
            universe_size=max_universe,
            required=required,
            target=target,
            mode="verify-implication",
            monotone_only=monotone_only,
        )
    )
    return CheckReport(
        subject=f"search:u<={max_universe}",
        condition=name,
        holds=True,
        instances_checked=total,
    )


def verify_agreement_upto(
    ids: list[CheckId],
    max_universe: int,
    monotone_only: bool = True,
    parallelism: int = 1,
) -> CheckReport:
    """verify_agreement over every universe size 1..max_universe, merged."""
    total = 0
    for size in range(1, max_universe + 1):
        rep = verify_agreement(ids, size, monotone_only, parallelism)
        total += rep.instances_checked
        if not rep.holds:
            rep.subject = f"search:u<={max_universe}"
            rep.instances_checked = total
            return rep
    return CheckReport(
        subject=f"search:u<={max_universe}",
        condition="agree:" + "=".join(c.name for c in ids),
        holds=True,
        instances_checked=total,
    )


def verify_agreement(
    ids: list[CheckId],
    universe_size: int,
    monotone_only: bool = True,
    parallelism: int = 1,
) -> CheckReport:
    """All listed checks give one verdict on every enumerated system."""
    spec = SearchSpec(
        universe_size=universe_size,
        mode="count",
        monotone_only=monotone_only,
    )
    name = "agree:" + "=".join(c.name for c in ids)

    def evaluate(s: SizeSystem):
        return (s, [evaluate_check(s, c).holds for c in ids])

    count = 0
    for s, verdicts in scan_stream(enumerate_systems(spec), evaluate, parallelism):
        count += 1
        if any(v != verdicts[0] for v in verdicts):
            return CheckReport(
                subject=f"search:u{universe_size}",
                condition=name,
                holds=False,
                instances_checked=count,
                notes=(
                    "verdicts "
                    + ", ".join(f"{c.name}={v}" for c, v in zip(ids, verdicts)),
                ),
                witness_system=s.to_dict(),
            )
    return CheckReport(
        subject=f"search:u{universe_size}",
        condition=name,
        holds=True,
        instances_checked=count,
    )


# --- difference-robustness vs. union-closure ----------------------------------


def verify_two_s_breakdown(max_universe: int, parallelism: int = 1) -> CheckReport:
    """A base set that is difference-robust but not union-closed forces a 2*s failure.

    Claim checked: in any full-powerset system, if some X satisfies all three
    robustness variants M++:1..3 (instances based at X) while its small sets
    are not closed under union, then some Y ⊆ X is the union of two of its own
    small sets.

    Enumerating whole systems is hopeless (the family product at size 4 is
    astronomically large), but the claim is local to X: the robustness
    instances based at X only ever force *lower bounds* on the ideals of the
    carriers Z = X−B with B not big, namely {A ∩ Z : A ∈ I(X)} (variants 1
    and 2 force the same bound, variant 3 a weaker one), and "no Y fails 2*s"
    only gets harder as ideals grow.  So a whole-system counterexample exists
    iff some single family I(X) contains ∅, is not union-closed, has no two
    members covering X, and no forced minimal bound at any carrier has two
    members covering that carrier.  Since (A∩Z) ∪ (B∩Z) = Z iff A∪B ⊇ Z, the
    last two conditions reduce to: no pairwise union of members of I(X)
    covers any Z ⊆ X with Z not small.  That is what this scans, for every
    base-set size up to max_universe (a larger X restricts to this case).
    """
    checked = 0
    witness = None

    def eval_family(args: tuple[Universe, int, frozenset[int]]):
        u, x, fam = args
        members = sorted(fam, key=canon_key, reverse=True)
        broken = None
        for i, a in enumerate(members):
            for b in members[i:]:
                if (a | b) not in fam:
                    broken = (a, b)
                    break
            if broken:
                break
        if broken is None:
            return None  # union-closed: premise not triggered
        if x in fam:
            return "conclusion"  # X small in itself: X = X ∪ X fails 2*s
        covers2 = {a | b for a in fam for b in fam}
        big_covers = sorted(covers2, key=canon_key, reverse=True)
        for z in submasks(x):
            if z == 0 or z in fam:
                continue  # only carriers Z with Z not small are constrained
            if any(z & ~c == 0 for c in big_covers):
                return "conclusion"  # some Y fails 2*s, as claimed
        return ("counterexample", u, x, fam, broken)

    for n in range(1, max_universe + 1):
        u = Universe(_letters(n))
        x = u.full_mask
        candidates = ((u, x, fam) for fam in _families_with_empty(x))
        for result in scan_stream(candidates, eval_family, parallelism):
            if result is None:
                continue
            checked += 1
            if result == "conclusion":
                continue
            _, wu, wx, fam, broken = result
            witness = {
                "universe_size": n,
                "ideal_at_base": [
                    list(Subset(wu, m).labels()) for m in sorted(fam, key=canon_key)
                ],
                "union_gap": [
                    list(Subset(wu, broken[0]).labels()),
                    list(Subset(wu, broken[1]).labels()),
                ],
            }
            break
        if witness:
            break

    return CheckReport(
        subject=f"search:u<={max_universe}",
        condition="M++&not-I-omega=>2*s-failure",
        holds=witness is None,
        instances_checked=checked,
        notes=() if witness is None else ("counterexample found",),
        witness_system=witness,
    )
