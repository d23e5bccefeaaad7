"""Choice-function rules and the size↔choice-function correspondence.

A choice function f picks the "normal" part f(X) ⊆ X of every domain member.
It induces the principal-filter system F(X) = {A : f(X) ⊆ A ⊆ X}; conversely
a system whose every filter has a least element yields a choice function.
`verify_correspondence_forward` and `_backward` check, by exhaustion over
small universes, the ten rows tying size properties to choice-function rules:

    row  size side                     choice side
    1    eMI                        ⇔  mu-wOR       f(X∪Y) ⊆ f(X) ∪ Y
    2    eMI + I-omega              ⇔  mu-OR        f(X∪Y) ⊆ f(X) ∪ f(Y)
    3    eMI + I-omega              ⇔  mu-PR        X ⊆ Y ⇒ f(Y)∩X ⊆ f(X)
    4    I-union-disj               ⇔  mu-disjOR    disjoint form of mu-OR
    5    M+omega:4                  ⇔  mu-CM        f(X) ⊆ Y ⊆ X ⇒ f(Y) ⊆ f(X)
    6    M++:1                      ⇔  mu-RatM      X ⊆ Y, X∩f(Y) ≠ ∅ ⇒ f(X) ⊆ f(Y)∩X
    7    I-omega                    ⇔  (structural: principal filters intersect)
    8    eMI + I-omega              ⇒  mu-CUT       (converse fails)
    9    eMI + I-omega + M+omega:4  ⇒  mu-CUM       (converse fails)
    10   eMI + I-omega + eMF        ⇒  mu-sub-sup   (converse fails)

Forward runs over every monotone full-powerset system with principal filters
(non-principal systems are counted and skipped, not silently dropped).
Backward runs over every choice function on a full domain; rows 8–10 instead
confirm the known non-implication witness: the choice function over {a,b,c}
that picks {a} from {a,b} and is the identity elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import DomainNotClosed, NotPrincipal
from .properties import (
    EMF,
    EMI,
    IOMEGA,
    I_UNION_DISJ,
    PropertyId,
    check_property,
    m_plus_omega,
    m_plus_plus,
)
from .report import CheckReport, CorrespondenceReport
from .rules import RuleId, check_rule
from .setcore import Subset, Universe, submasks
from .sizesys import MuFunction, SizeSystem, _label_key, from_mu, principal_mu

_MU_RULES = {
    "mu-wOR",
    "mu-disjOR",
    "mu-OR",
    "mu-PR",
    "mu-PR'",
    "mu-CM",
    "mu-ResM",
    "mu-CUT",
    "mu-CUM",
    "mu-sub-sup",
    "mu-RatM",
    "mu-eq",
    "mu-eq'",
    "mu-parallel",
    "mu-union",
    "mu-union'",
    "mu-in",
    "mu-empty",
    "mu-empty-fin",
}


@dataclass(frozen=True)
class MuRuleId:
    tag: str

    def __post_init__(self):
        if self.tag not in _MU_RULES:
            raise ValueError(f"unknown mu rule {self.tag!r}")

    @property
    def name(self) -> str:
        return self.tag

    def __str__(self) -> str:
        return self.tag


MU_WOR = MuRuleId("mu-wOR")
MU_DISJ_OR = MuRuleId("mu-disjOR")
MU_OR = MuRuleId("mu-OR")
MU_PR = MuRuleId("mu-PR")
MU_PR_PRIME = MuRuleId("mu-PR'")
MU_CM = MuRuleId("mu-CM")
MU_RES_M = MuRuleId("mu-ResM")
MU_CUT = MuRuleId("mu-CUT")
MU_CUM = MuRuleId("mu-CUM")
MU_SUBSET_SUPSET = MuRuleId("mu-sub-sup")
MU_RATM = MuRuleId("mu-RatM")
MU_EQ = MuRuleId("mu-eq")
MU_EQ_PRIME = MuRuleId("mu-eq'")
MU_PARALLEL = MuRuleId("mu-parallel")
MU_UNION = MuRuleId("mu-union")
MU_UNION_PRIME = MuRuleId("mu-union'")
MU_IN = MuRuleId("mu-in")
MU_EMPTY = MuRuleId("mu-empty")
MU_EMPTY_FIN = MuRuleId("mu-empty-fin")


def parse_mu_rule(text: str) -> MuRuleId:
    return MuRuleId(text.strip())


def check_mu_rule(mu: MuFunction, r: MuRuleId) -> CheckReport:
    """Decide one choice-function rule over all instances; canonical witness.

    X and Y range over the domain; composite carriers (X∪Y, X∩A, {a,b}) must
    be in the domain when an instance needs their value: a missing nonempty
    carrier raises DomainNotClosed, an empty one skips the instance.
    """
    u = mu.universe
    dom = mu.domain_masks
    f = mu.choice
    count = 0
    skipped = 0
    witness: list[tuple[str, int]] | None = None
    tag = r.tag

    def need(mask: int, context: str) -> bool:
        """True if the carrier is usable; skips ∅, raises when missing."""
        nonlocal skipped
        if mask == 0:
            skipped += 1
            return False
        if mask not in f:
            raise DomainNotClosed(_label_key(u, mask), context)
        return True

    if tag in ("mu-wOR", "mu-disjOR", "mu-OR", "mu-parallel"):
        for x in dom:
            for y in dom:
                if tag == "mu-disjOR" and x & y:
                    continue
                un = x | y
                if un not in f:
                    raise DomainNotClosed(_label_key(u, un), tag)
                count += 1
                fu = f[un]
                if tag == "mu-wOR":
                    ok = not fu & ~(f[x] | y)
                elif tag == "mu-parallel":
                    ok = fu in (f[x], f[y], f[x] | f[y])
                else:
                    ok = not fu & ~(f[x] | f[y])
                if not ok:
                    witness = [("X", x), ("Y", y)]
                    break
            if witness:
                break

    elif tag == "mu-PR":
        for x in dom:
            for y in dom:
                if x & ~y:
                    continue
                count += 1
                if f[y] & x & ~f[x]:
                    witness = [("X", x), ("Y", y)]
                    break
            if witness:
                break

    elif tag == "mu-PR'":
        for x in dom:
            for y in dom:
                lhs = f[x] & y
                meet = x & y
                if meet == 0:
                    skipped += 1  # lhs ⊆ x∩y is empty too; nothing to test
                    continue
                if meet not in f:
                    raise DomainNotClosed(_label_key(u, meet), tag)
                count += 1
                if lhs & ~f[meet]:
                    witness = [("X", x), ("Y", y)]
                    break
            if witness:
                break

    elif tag in ("mu-CM", "mu-CUT", "mu-CUM"):
        for x in dom:
            fx = f[x]
            for y in dom:
                if fx & ~y or y & ~x:
                    continue
                count += 1
                if tag == "mu-CM":
                    ok = not f[y] & ~fx
                elif tag == "mu-CUT":
                    ok = not fx & ~f[y]
                else:
                    ok = f[y] == fx
                if not ok:
                    witness = [("X", x), ("Y", y)]
                    break
            if witness:
                break

    elif tag == "mu-ResM":
        all_masks = u.all_masks()
        for x in dom:
            fx = f[x]
            for a in all_masks:
                meet = x & a
                for b in all_masks:
                    if fx & ~(a & b):
                        continue
                    if not need(meet, tag):
                        continue
                    count += 1
                    if f[meet] & ~b:
                        witness = [("X", x), ("A", a), ("B", b)]
                        break
                if witness:
                    break
            if witness:
                break

    elif tag == "mu-sub-sup":
        for x in dom:
            for y in dom:
                if f[x] & ~y or f[y] & ~x:
                    continue
                count += 1
                if f[x] != f[y]:
                    witness = [("X", x), ("Y", y)]
                    break
            if witness:
                break

    elif tag in ("mu-RatM", "mu-eq"):
        for x in dom:
            for y in dom:
                if x & ~y or not x & f[y]:
                    continue
                count += 1
                if tag == "mu-RatM":
                    ok = not f[x] & ~(f[y] & x)
                else:
                    ok = f[x] == f[y] & x
                if not ok:
                    witness = [("X", x), ("Y", y)]
                    break
            if witness:
                break

    elif tag == "mu-eq'":
        for y in dom:
            fy = f[y]
            for x in dom:
                if not fy & x:
                    continue
                meet = y & x  # nonempty: it contains f(Y)∩X
                if meet not in f:
                    raise DomainNotClosed(_label_key(u, meet), tag)
                count += 1
                if f[meet] != fy & x:
                    witness = [("Y", y), ("X", x)]
                    break
            if witness:
                break

    elif tag in ("mu-union", "mu-union'"):
        for x in dom:
            fx = f[x]
            for y in dom:
                if not f[y] & (x & ~fx):
                    continue
                un = x | y
                if un not in f:
                    raise DomainNotClosed(_label_key(u, un), tag)
                count += 1
                if tag == "mu-union":
                    ok = not f[un] & y
                else:
                    ok = f[un] == fx
                if not ok:
                    witness = [("X", x), ("Y", y)]
                    break
            if witness:
                break

    elif tag == "mu-in":
        for x in dom:
            rest = x & ~f[x]
            for i in range(u.size):
                a = 1 << i
                if not rest & a:
                    continue
                count += 1
                found = False
                for j in range(u.size):
                    b = 1 << j
                    if not x & b:
                        continue
                    pair = a | b
                    if pair not in f:
                        raise DomainNotClosed(_label_key(u, pair), tag)
                    if not f[pair] & a:
                        found = True
                        break
                if not found:
                    witness = [("X", x), ("a", a)]
                    break
            if witness:
                break

    elif tag in ("mu-empty", "mu-empty-fin"):
        for x in dom:
            count += 1
            if f[x] == 0:
                witness = [("X", x)]
                break

    else:  # pragma: no cover
        raise ValueError(f"unhandled mu rule {r!r}")

    named = None
    if witness is not None:
        named = {name: Subset(u, mask) for name, mask in witness}
    notes: tuple[str, ...] = ()
    if named is None and count == 0:
        notes = ("vacuous: no instances to check",)
    return CheckReport(
        subject=mu.label,
        condition=r.name,
        holds=named is None,
        witness=named,
        instances_checked=count,
        notes=notes,
        skipped=skipped,
    )


def mu_rule_holds(mu: MuFunction, r: MuRuleId) -> bool:
    return check_mu_rule(mu, r).holds


def mu_to_rule_bridge(mu: MuFunction, r: RuleId) -> CheckReport:
    """Check a consequence-relation rule against the system induced by mu."""
    return check_rule(from_mu(mu), r)


# --- correspondence rows ------------------------------------------------------

ROW_LEFT: dict[int, tuple[PropertyId, ...]] = {
    1: (EMI,),
    2: (EMI, IOMEGA),
    3: (EMI, IOMEGA),
    4: (I_UNION_DISJ,),
    5: (m_plus_omega(4),),
    6: (m_plus_plus(1),),
    7: (IOMEGA,),
    8: (EMI, IOMEGA),
    9: (EMI, IOMEGA, m_plus_omega(4)),
    10: (EMI, IOMEGA, EMF),
}

ROW_MU: dict[int, MuRuleId | None] = {
    1: MU_WOR,
    2: MU_OR,
    3: MU_PR,
    4: MU_DISJ_OR,
    5: MU_CM,
    6: MU_RATM,
    7: None,  # structural: principal filters are intersection-closed
    8: MU_CUT,
    9: MU_CUM,
    10: MU_SUBSET_SUPSET,
}

NEGATIVE_BACKWARD_ROWS = (8, 9, 10)


def enumerate_mu_functions(universe: Universe) -> Iterator[MuFunction]:
    """Every choice function on the full domain, canonical order."""
    dom = tuple(m for m in universe.all_masks() if m)
    per_set = [submasks(m) for m in dom]

    def rec(i: int, acc: dict[int, int]) -> Iterator[MuFunction]:
        if i == len(dom):
            yield MuFunction(universe, dom, dict(acc), label=f"mu{universe.size}")
            return
        for choice in per_set[i]:
            acc[dom[i]] = choice
            yield from rec(i + 1, acc)

    yield from rec(0, {})


def _letters(n: int) -> list[str]:
    return [chr(ord("a") + i) for i in range(n)]


def counterexample_mu() -> MuFunction:
    """The known witness: over {a,b,c}, pick {a} from {a,b}, identity elsewhere."""
    u = Universe(_letters(3))
    dom = tuple(m for m in u.all_masks() if m)
    choice = {m: m for m in dom}
    ab = u.subset(["a", "b"]).mask
    choice[ab] = u.subset(["a"]).mask
    return MuFunction(u, dom, choice, label="cut-without-emi")


def verify_correspondence_forward(
    row: int, max_universe: int, parallelism: int = 1
) -> CorrespondenceReport:
    """Left side ⇒ choice side, over monotone principal systems up to size max."""
    from .search import SearchSpec, enumerate_systems, scan_stream

    if row not in ROW_LEFT:
        raise ValueError("row must be 1..10")
    left = ROW_LEFT[row]
    mu_rule = ROW_MU[row]
    checked = 0
    skipped = 0
    notes: list[str] = []
    witness = None

    if mu_rule is None:
        # Intersection-closure of principal filters is structural; count the
        # systems the row ranges over so the report is not an empty claim.
        for size in range(1, max_universe + 1):
            spec = SearchSpec(universe_size=size, required=[], target=None, mode="count")
            for s in enumerate_systems(spec):
                if all(check_property(s, p).holds for p in left):
                    try:
                        principal_mu(s)
                    except NotPrincipal:
                        skipped += 1
                        continue
                    checked += 1
        notes.append("choice side is structural for principal filters")
        return CorrespondenceReport(
            row=row,
            direction="forward",
            universe_max=max_universe,
            systems_checked=checked,
            holds=True,
            skipped_non_principal=skipped,
            notes=tuple(notes),
        )

    def eval_system(s: SizeSystem):
        for p in left:
            if not check_property(s, p).holds:
                return None
        try:
            mu = principal_mu(s)
        except NotPrincipal:
            return "skip"
        rep = check_mu_rule(mu, mu_rule)
        return (s, mu, rep)

    for size in range(1, max_universe + 1):
        spec = SearchSpec(universe_size=size, required=[], target=None, mode="count")
        stream = enumerate_systems(spec)
        for result in scan_stream(stream, eval_system, parallelism):
            if result is None:
                continue
            if result == "skip":
                skipped += 1
                continue
            s, mu, rep = result
            checked += 1
            if not rep.holds:
                witness = {
                    "system": s.to_dict(),
                    "mu": mu.to_dict(),
                    "violation": rep.to_dict(),
                }
                break
        if witness:
            break

    return CorrespondenceReport(
        row=row,
        direction="forward",
        universe_max=max_universe,
        systems_checked=checked,
        holds=witness is None,
        witness=witness,
        skipped_non_principal=skipped,
    )


def verify_correspondence_backward(
    row: int, max_universe: int, parallelism: int = 1
) -> CorrespondenceReport:
    """Choice side ⇒ left side over all choice functions; rows 8–10 confirm
    the non-implication instead, exhibiting the known witness."""
    from .search import scan_stream

    if row not in ROW_LEFT:
        raise ValueError("row must be 1..10")
    left = ROW_LEFT[row]
    mu_rule = ROW_MU[row]

    if row in NEGATIVE_BACKWARD_ROWS:
        mu = counterexample_mu()
        system = from_mu(mu)
        assert mu_rule is not None
        mu_rep = check_mu_rule(mu, mu_rule)
        failing = [p for p in left if not check_property(system, p).holds]
        confirmed = mu_rep.holds and bool(failing)
        return CorrespondenceReport(
            row=row,
            direction="backward",
            universe_max=max_universe,
            systems_checked=1,
            holds=not confirmed,
            witness={
                "mu": mu.to_dict(),
                "system": system.to_dict(),
                "mu_rule": mu_rule.name,
                "fails": [p.name for p in failing],
            },
            non_implication_confirmed=confirmed,
            notes=("expected non-implication",),
        )

    checked = 0
    witness = None
    for size in range(1, max_universe + 1):
        u = Universe(_letters(size))

        def evaluate(mu: MuFunction):
            if mu_rule is not None and not check_mu_rule(mu, mu_rule).holds:
                return None
            system = from_mu(mu)
            for p in left:
                rep = check_property(system, p)
                if not rep.holds:
                    return (mu, system, rep)
            return "ok"

        for result in scan_stream(enumerate_mu_functions(u), evaluate, parallelism):
            if result is None:
                continue
            if result == "ok":
                checked += 1
                continue
            mu, system, rep = result
            checked += 1
            witness = {
                "mu": mu.to_dict(),
                "system": system.to_dict(),
                "violation": rep.to_dict(),
            }
            break
        if witness:
            break

    return CorrespondenceReport(
        row=row,
        direction="backward",
        universe_max=max_universe,
        systems_checked=checked,
        holds=witness is None,
        witness=witness,
    )
