"""The consequence relation induced by a size system, and its rule checkers.

The relation itself is a one-liner: a |~ b iff the a∧b-part of a is big in a,
i.e. a−b ∈ I(a).  Everything else here is universally quantified rule
checking over model sets.  Two conventions make that well defined on a finite
full powerset:

* Antecedent convention.  ∅ is never in a domain, so `nm_entails` declares
  ∅ |~ b true for every b; this is the unique choice that keeps
  supraclassicality unconditional and consistency preservation meaningful.
* Rule quantification.  `check_rule` ranges every metavariable over all
  subsets of the universe (every set is the model set of some formula over a
  finite full powerset), but skips instantiations that would put ∅ on the
  left of a *bare* consequence statement: those instances are artifacts of
  the convention, not content of the rule.  Compound antecedents such as
  α∧β or α∨α' are evaluated as written, using the convention when they
  collapse to ∅.

Checked rules (n-ary families take their parameter from the RuleId):

    SC       α ⊢ β ⇒ α |~ β
    REF      α∧γ |~ γ
    RW       α |~ β, β ⊢ β' ⇒ α |~ β'
    wOR      α |~ β, α' ⊢ β ⇒ α∨α' |~ β
    PR'      α |~ β, α ⊢ α', α'∧¬α ⊢ β ⇒ α' |~ β
    wCM      α |~ β, α' ⊢ α, α∧β ⊢ α' ⇒ α' |~ β
    disjOR   φ |~ ψ, φ' |~ ψ', φ ⊢ ¬φ' ⇒ φ∨φ' |~ ψ∨ψ'
    CP       φ |~ ⊥ ⇒ φ ⊢ ⊥
    AND:n    α |~ β₁, …, α |~ βₙ ⇒ α ⊬ ¬β₁∨…∨¬βₙ
    AND:omega  α |~ β, α |~ β' ⇒ α |~ β∧β'
    OR:n     α₁ |~ β, …, α_{n−1} |~ β ⇒ α₁∨…∨α_{n−1} ̸|~ ¬β
    OR:omega   α |~ β, α' |~ β ⇒ α∨α' |~ β
    CM:n     α |~ β₁, …, α |~ β_{n−1} ⇒ α∧β₁∧…∧β_{n−2} ̸|~ ¬β_{n−1}
    CM:omega   α |~ β, α |~ β' ⇒ α∧β |~ β'
    RatM     φ |~ ψ, φ ̸|~ ¬ψ' ⇒ φ∧ψ' |~ ψ
    CUT      α |~ β, α∧β |~ γ ⇒ α |~ γ
    CUM      φ |~ ψ ⇒ (φ |~ ψ' ⇔ φ∧ψ |~ ψ')
    CCL      {β : α |~ β} is closed under ∩ and ⊇
    M+derived  γ ̸|~ ¬β, γ∧β |~ α ⇒ γ ̸|~ ¬(α∧β)

OR:2 and CM:2 are the same formula (α |~ β ⇒ α ̸|~ ¬β); both names map to one
checker and the report notes the aliasing.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import DomainNotFull, SetNotInDomain
from .logic import Formula, Interpretation, models
from .report import CheckReport
from .setcore import Subset
from .sizesys import SizeSystem

_PLAIN_RULES = {
    "SC",
    "REF",
    "RW",
    "wOR",
    "PR'",
    "wCM",
    "disjOR",
    "CP",
    "AND:omega",
    "OR:omega",
    "CM:omega",
    "RatM",
    "CUT",
    "CUM",
    "CCL",
    "M+derived",
}
_PARAM_RULES = {"AND": 1, "OR": 2, "CM": 2}  # minimal n per family


@dataclass(frozen=True)
class RuleId:
    tag: str
    param: int | None = None

    def __post_init__(self):
        if self.tag in _PLAIN_RULES:
            if self.param is not None:
                raise ValueError(f"{self.tag} takes no parameter")
        elif self.tag in _PARAM_RULES:
            if self.param is None or self.param < _PARAM_RULES[self.tag]:
                raise ValueError(f"{self.tag}:n needs n >= {_PARAM_RULES[self.tag]}")
        else:
            raise ValueError(f"unknown rule tag {self.tag!r}")

    @property
    def name(self) -> str:
        return self.tag if self.param is None else f"{self.tag}:{self.param}"

    def __str__(self) -> str:
        return self.name


SC = RuleId("SC")
REF = RuleId("REF")
RW = RuleId("RW")
WOR = RuleId("wOR")
PR_PRIME = RuleId("PR'")
WCM = RuleId("wCM")
DISJ_OR = RuleId("disjOR")
CP = RuleId("CP")
AND_OMEGA = RuleId("AND:omega")
OR_OMEGA = RuleId("OR:omega")
CM_OMEGA = RuleId("CM:omega")
RATM = RuleId("RatM")
CUT = RuleId("CUT")
CUM = RuleId("CUM")
CCL = RuleId("CCL")
M_PLUS_DERIVED = RuleId("M+derived")


def and_n(n: int) -> RuleId:
    return RuleId("AND", n)


def or_n(n: int) -> RuleId:
    return RuleId("OR", n)


def cm_n(n: int) -> RuleId:
    return RuleId("CM", n)


def parse_rule(text: str) -> RuleId:
    text = text.strip()
    if text in _PLAIN_RULES:
        return RuleId(text)
    base, _, arg = text.partition(":")
    if base in _PARAM_RULES and arg and arg != "omega":
        return RuleId(base, int(arg))
    if base in _PARAM_RULES and arg == "omega":
        return RuleId(f"{base}:omega")
    raise ValueError(f"unknown rule name {text!r}")


# --- the relation ------------------------------------------------------------


def nm_entails(s: SizeSystem, a: Subset, b: Subset) -> bool:
    """a |~ b: the b-part of a is big in a.  True by convention when a = ∅."""
    if a.mask == 0:
        return True
    if a.universe != s.universe or a.mask not in s.ideals:
        raise SetNotInDomain(f"antecedent {a!r} is not in the domain")
    if b.universe != s.universe:
        raise SetNotInDomain(f"consequent {b!r} is over a different universe")
    return (a.mask & ~b.mask) in s.ideals[a.mask]


def nm_entails_formulas(
    s: SizeSystem, i: Interpretation, f: Formula, g: Formula
) -> bool:
    return nm_entails(s, models(f, i), models(g, i))


def derive_relation(s: SizeSystem) -> list[tuple[Subset, Subset]]:
    """All pairs (a, b) with a |~ b, canonical order; for report diffing."""
    _require_full(s)
    u = s.universe
    ideals = s.ideals
    out = []
    for a in u.all_masks():
        if a == 0:
            out.extend((Subset(u, 0), Subset(u, b)) for b in u.all_masks())
            continue
        fam = ideals[a]
        for b in u.all_masks():
            if (a & ~b) in fam:
                out.append((Subset(u, a), Subset(u, b)))
    return out


def _require_full(s: SizeSystem) -> None:
    if not s.is_full_domain():
        raise DomainNotFull("rule checking needs the full powerset domain")


# --- rule checking -----------------------------------------------------------


class _RuleScan:
    __slots__ = ("count", "witness", "notes")

    def __init__(self):
        self.count = 0
        self.witness: list[tuple[str, int]] | None = None
        self.notes: list[str] = []


def check_rule(s: SizeSystem, r: RuleId) -> CheckReport:
    """Decide one rule over all model-set instantiations; canonical witness."""
    _require_full(s)
    sc = _RuleScan()
    ideals = s.ideals
    full = s.universe.full_mask
    masks = s.universe.all_masks()
    nonempty = tuple(m for m in masks if m)

    def nm(a: int, b: int) -> bool:
        return a == 0 or (a & ~b) in ideals[a]

    tag, n = r.tag, r.param

    if tag == "SC":
        for a in nonempty:
            fam = ideals[a]
            for b in masks:
                if a & ~b:
                    continue
                sc.count += 1
                if (a & ~b) not in fam:  # a − b is ∅ here; fails iff Opt fails at a
                    sc.witness = [("alpha", a), ("beta", b)]
                    return _rule_report(s, r, sc)

    elif tag == "REF":
        for a in masks:
            for g in masks:
                sc.count += 1
                if not nm(a & g, g):
                    sc.witness = [("alpha", a), ("gamma", g)]
                    return _rule_report(s, r, sc)

    elif tag == "RW":
        for a in nonempty:
            fam = ideals[a]
            for b in masks:
                if (a & ~b) not in fam:
                    continue
                for b2 in masks:
                    if b & ~b2:
                        continue
                    sc.count += 1
                    if (a & ~b2) not in fam:
                        sc.witness = [("alpha", a), ("beta", b), ("beta'", b2)]
                        return _rule_report(s, r, sc)

    elif tag == "wOR":
        for a in nonempty:
            fam = ideals[a]
            for a2 in masks:
                for b in masks:
                    if (a & ~b) not in fam or (a2 & ~b):
                        continue
                    sc.count += 1
                    if not nm(a | a2, b):
                        sc.witness = [("alpha", a), ("alpha'", a2), ("beta", b)]
                        return _rule_report(s, r, sc)

    elif tag == "PR'":
        for a in nonempty:
            fam = ideals[a]
            for a2 in nonempty:
                if a & ~a2:
                    continue
                for b in masks:
                    if (a & ~b) not in fam or (a2 & ~a) & ~b:
                        continue
                    sc.count += 1
                    if not nm(a2, b):
                        sc.witness = [("alpha", a), ("alpha'", a2), ("beta", b)]
                        return _rule_report(s, r, sc)

    elif tag == "wCM":
        for a in nonempty:
            fam = ideals[a]
            for a2 in nonempty:
                if a2 & ~a:
                    continue
                for b in masks:
                    if (a & ~b) not in fam or (a & b) & ~a2:
                        continue
                    sc.count += 1
                    if not nm(a2, b):
                        sc.witness = [("alpha", a), ("alpha'", a2), ("beta", b)]
                        return _rule_report(s, r, sc)

    elif tag == "disjOR":
        for p in nonempty:
            fam_p = ideals[p]
            for p2 in nonempty:
                if p & p2:
                    continue
                fam_p2 = ideals[p2]
                for q in masks:
                    if (p & ~q) not in fam_p:
                        continue
                    for q2 in masks:
                        if (p2 & ~q2) not in fam_p2:
                            continue
                        sc.count += 1
                        if not nm(p | p2, q | q2):
                            sc.witness = [
                                ("phi", p),
                                ("phi'", p2),
                                ("psi", q),
                                ("psi'", q2),
                            ]
                            return _rule_report(s, r, sc)

    elif tag == "CP":
        for p in nonempty:
            sc.count += 1
            if p in ideals[p]:
                sc.witness = [("phi", p)]
                return _rule_report(s, r, sc)

    elif tag == "AND":
        for a in nonempty:
            fam = ideals[a]
            small = [b for b in masks if (a & ~b) in fam]
            for combo in product(small, repeat=n):
                sc.count += 1
                meet = a
                for b in combo:
                    meet &= b
                if meet == 0:
                    sc.witness = [("alpha", a)] + [
                        (f"beta{i+1}", b) for i, b in enumerate(combo)
                    ]
                    return _rule_report(s, r, sc)

    elif tag == "AND:omega":
        for a in nonempty:
            fam = ideals[a]
            for b in masks:
                if (a & ~b) not in fam:
                    continue
                for b2 in masks:
                    if (a & ~b2) not in fam:
                        continue
                    sc.count += 1
                    if (a & ~(b & b2)) not in fam:
                        sc.witness = [("alpha", a), ("beta", b), ("beta'", b2)]
                        return _rule_report(s, r, sc)

    elif tag == "OR":
        if n == 2:
            sc.notes.append("OR:2 and CM:2 name the same rule")
        for combo in product(nonempty, repeat=n - 1):
            for b in masks:
                ok = True
                for a in combo:
                    if (a & ~b) not in ideals[a]:
                        ok = False
                        break
                if not ok:
                    continue
                sc.count += 1
                union = 0
                for a in combo:
                    union |= a
                if (union & b) in ideals[union]:
                    sc.witness = [
                        (f"alpha{i+1}", a) for i, a in enumerate(combo)
                    ] + [("beta", b)]
                    return _rule_report(s, r, sc)

    elif tag == "OR:omega":
        for a in nonempty:
            fam = ideals[a]
            for a2 in nonempty:
                fam2 = ideals[a2]
                for b in masks:
                    if (a & ~b) not in fam or (a2 & ~b) not in fam2:
                        continue
                    sc.count += 1
                    if ((a | a2) & ~b) not in ideals[a | a2]:
                        sc.witness = [("alpha", a), ("alpha'", a2), ("beta", b)]
                        return _rule_report(s, r, sc)

    elif tag == "CM":
        if n == 2:
            sc.notes.append("CM:2 and OR:2 name the same rule")
        for a in nonempty:
            fam = ideals[a]
            small = [b for b in masks if (a & ~b) in fam]
            for combo in product(small, repeat=n - 1):
                sc.count += 1
                t = a
                for b in combo[:-1]:
                    t &= b
                if nm(t, full & ~combo[-1]):
                    sc.witness = [("alpha", a)] + [
                        (f"beta{i+1}", b) for i, b in enumerate(combo)
                    ]
                    return _rule_report(s, r, sc)

    elif tag == "CM:omega":
        for a in nonempty:
            fam = ideals[a]
            for b in masks:
                if (a & ~b) not in fam:
                    continue
                for b2 in masks:
                    if (a & ~b2) not in fam:
                        continue
                    sc.count += 1
                    if not nm(a & b, b2):
                        sc.witness = [("alpha", a), ("beta", b), ("beta'", b2)]
                        return _rule_report(s, r, sc)

    elif tag == "RatM":
        for p in nonempty:
            fam = ideals[p]
            for q in masks:
                if (p & ~q) not in fam:
                    continue
                for q2 in masks:
                    if (p & q2) in fam:  # p |~ ¬q2: premise p ̸|~ ¬q2 false
                        continue
                    sc.count += 1
                    if not nm(p & q2, q):
                        sc.witness = [("phi", p), ("psi", q), ("psi'", q2)]
                        return _rule_report(s, r, sc)

    elif tag == "CUT":
        for a in nonempty:
            fam = ideals[a]
            for b in masks:
                if (a & ~b) not in fam:
                    continue
                for g in masks:
                    if not nm(a & b, g):
                        continue
                    sc.count += 1
                    if (a & ~g) not in fam:
                        sc.witness = [("alpha", a), ("beta", b), ("gamma", g)]
                        return _rule_report(s, r, sc)

    elif tag == "CUM":
        for p in nonempty:
            fam = ideals[p]
            for q in masks:
                if (p & ~q) not in fam:
                    continue
                for q2 in masks:
                    sc.count += 1
                    if ((p & ~q2) in fam) != nm(p & q, q2):
                        sc.witness = [("phi", p), ("psi", q), ("psi'", q2)]
                        return _rule_report(s, r, sc)

    elif tag == "CCL":
        for a in nonempty:
            fam = ideals[a]
            closed = [b for b in masks if (a & ~b) in fam]
            closed_set = set(closed)
            for b in closed:
                for b2 in closed:
                    sc.count += 1
                    if b & b2 not in closed_set:
                        sc.notes.append("consequences not closed under intersection")
                        sc.witness = [("alpha", a), ("beta", b), ("beta'", b2)]
                        return _rule_report(s, r, sc)
                for b2 in masks:
                    if b & ~b2:
                        continue
                    sc.count += 1
                    if b2 not in closed_set:
                        sc.notes.append("consequences not closed under superset")
                        sc.witness = [("alpha", a), ("beta", b), ("beta'", b2)]
                        return _rule_report(s, r, sc)

    elif tag == "M+derived":
        for g in nonempty:
            fam = ideals[g]
            for b in masks:
                if (g & b) in fam:  # γ |~ ¬β: premise γ ̸|~ ¬β false
                    continue
                for a in masks:
                    if not nm(g & b, a):
                        continue
                    sc.count += 1
                    if (g & a & b) in fam:  # γ |~ ¬(α∧β): conclusion fails
                        sc.witness = [("gamma", g), ("beta", b), ("alpha", a)]
                        return _rule_report(s, r, sc)

    else:  # pragma: no cover
        raise ValueError(f"unhandled rule {r!r}")

    return _rule_report(s, r, sc)


def _rule_report(s: SizeSystem, r: RuleId, sc: _RuleScan) -> CheckReport:
    u = s.universe
    witness = None
    if sc.witness is not None:
        witness = {name: Subset(u, mask) for name, mask in sc.witness}
    notes = list(sc.notes)
    if witness is None and sc.count == 0:
        notes.append("vacuous: no instances to check")
    return CheckReport(
        subject=s.label,
        condition=r.name,
        holds=witness is None,
        witness=witness,
        instances_checked=sc.count,
        notes=tuple(notes),
    )


def rule_holds(s: SizeSystem, r: RuleId) -> bool:
    return check_rule(s, r).holds
