"""Coherent systems of sizes and choice functions.

A coherent system of sizes assigns to every set X of a domain family a
collection I(X) of subsets of X deemed "small".  The dual "big" family
F(X) and the "not small" family M+(X) are always derived, never stored, so
duality can never desynchronize:

    A in F(X)   iff  X−A in I(X)
    A in M+(X)  iff  A not in I(X)
    medium      =    neither small nor big

The domain never contains the empty set.  Nothing beyond these structural
facts is enforced at build time: whether a system is monotone, union-closed
etc. is exactly what the checkers in `properties` decide, so they must be
able to observe failures.

A MuFunction is the preferential-semantics counterpart: a choice of
f(X) ⊆ X for every domain member.  `from_mu` turns it into the system with
principal filters F(X) = {X' : f(X) ⊆ X' ⊆ X}; `principal_mu` inverts that
whenever every filter has a least element.
"""

from __future__ import annotations

import json
from typing import Iterable, Mapping

from .errors import (
    ChoiceNotSubset,
    EmptySetInDomain,
    IdealMemberNotSubset,
    NotPrincipal,
    SetNotInDomain,
)
from .setcore import Subset, Universe, canon_key, submasks


def _label_key(u: Universe, mask: int) -> str:
    return ",".join(label for i, label in enumerate(u.elements) if mask >> i & 1)


def _labels(u: Universe, mask: int) -> list[str]:
    return [label for i, label in enumerate(u.elements) if mask >> i & 1]


def full_domain_masks(u: Universe) -> tuple[int, ...]:
    """Every nonempty subset mask in canonical order."""
    return tuple(m for m in u.all_masks() if m)


class SizeSystem:
    """Universe + domain family + per-set ideal families.  Immutable."""

    __slots__ = ("universe", "domain_masks", "ideals", "label")

    def __init__(
        self,
        universe: Universe,
        domain_masks: tuple[int, ...],
        ideals: dict[int, frozenset[int]],
        label: str = "system",
    ):
        # No validation here; use build() for checked construction.
        self.universe = universe
        self.domain_masks = domain_masks
        self.ideals = ideals
        self.label = label

    @property
    def domain(self) -> tuple[Subset, ...]:
        u = self.universe
        return tuple(Subset(u, m) for m in self.domain_masks)

    def is_full_domain(self) -> bool:
        return len(self.domain_masks) == self.universe.full_mask

    def in_domain(self, mask: int) -> bool:
        return mask in self.ideals

    def ideal_of(self, x: Subset) -> tuple[Subset, ...]:
        fam = self._ideal(self._domain_mask(x))
        u = self.universe
        return tuple(Subset(u, m) for m in sorted(fam, key=canon_key))

    def _domain_mask(self, x: Subset) -> int:
        if x.universe != self.universe:
            raise SetNotInDomain(f"{x!r} belongs to a different universe")
        if x.mask not in self.ideals:
            raise SetNotInDomain(f"{x!r} is not in the domain")
        return x.mask

    def _ideal(self, mask: int) -> frozenset[int]:
        return self.ideals[mask]

    def to_dict(self) -> dict:
        """JSON form; trivial ideals {∅} are omitted, full domains abbreviated."""
        u = self.universe
        out: dict = {"universe": list(u.elements)}
        if self.is_full_domain():
            out["domain"] = "full"
        else:
            out["domain"] = [_labels(u, m) for m in self.domain_masks]
        ideals = {}
        for m in self.domain_masks:
            fam = self.ideals[m]
            if fam == frozenset((0,)):
                continue
            ideals[_label_key(u, m)] = [
                _labels(u, a) for a in sorted(fam, key=canon_key)
            ]
        out["ideals"] = ideals
        return out

    def __repr__(self) -> str:
        return f"SizeSystem({self.label!r}, |U|={self.universe.size}, |Y|={len(self.domain_masks)})"


class MuFunction:
    """A choice function f(X) ⊆ X over a domain family.  Immutable."""

    __slots__ = ("universe", "domain_masks", "choice", "label")

    def __init__(
        self,
        universe: Universe,
        domain_masks: tuple[int, ...],
        choice: dict[int, int],
        label: str = "mu",
    ):
        self.universe = universe
        self.domain_masks = domain_masks
        self.choice = choice
        self.label = label

    @property
    def domain(self) -> tuple[Subset, ...]:
        u = self.universe
        return tuple(Subset(u, m) for m in self.domain_masks)

    def value(self, x: Subset) -> Subset:
        if x.universe != self.universe:
            raise SetNotInDomain(f"{x!r} belongs to a different universe")
        if x.mask not in self.choice:
            raise SetNotInDomain(f"{x!r} is not in the domain")
        return Subset(self.universe, self.choice[x.mask])

    def in_domain(self, mask: int) -> bool:
        return mask in self.choice

    def to_dict(self) -> dict:
        u = self.universe
        out: dict = {"universe": list(u.elements)}
        if len(self.domain_masks) == u.full_mask:
            out["domain"] = "full"
        else:
            out["domain"] = [_labels(u, m) for m in self.domain_masks]
        out["choice"] = {
            _label_key(u, m): _labels(u, self.choice[m]) for m in self.domain_masks
        }
        return out

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MuFunction)
            and self.universe == other.universe
            and self.domain_masks == other.domain_masks
            and self.choice == other.choice
        )

    def __hash__(self) -> int:
        return hash((self.universe.elements, self.domain_masks, tuple(sorted(self.choice.items()))))

    def __repr__(self) -> str:
        return f"MuFunction({self.label!r}, |U|={self.universe.size})"


def build(
    universe: Universe,
    domain: Iterable[Subset] | None = None,
    ideals: Mapping[Subset, Iterable[Subset]] | None = None,
    label: str = "system",
    require_monotone: bool = False,
) -> SizeSystem:
    """Validated construction.

    `domain=None` means the full powerset minus the empty set.  Domain members
    missing from `ideals` get the trivial ideal {∅}.  Only structural
    invariants are enforced (∅ not in the domain, ideal members inside their
    base set); table properties stay checkable, not structural.  The optional
    `require_monotone` flag additionally rejects ideals that are not closed
    downward.
    """
    if domain is None:
        domain_masks = full_domain_masks(universe)
    else:
        masks = []
        for x in domain:
            if x.universe != universe:
                raise SetNotInDomain(f"domain member {x!r} is over a different universe")
            if x.mask == 0:
                raise EmptySetInDomain("domain may not contain the empty set")
            masks.append(x.mask)
        domain_masks = tuple(sorted(set(masks), key=canon_key))
        if not domain_masks:
            raise EmptySetInDomain("domain is empty")

    ideal_map: dict[int, frozenset[int]] = {m: frozenset((0,)) for m in domain_masks}
    if ideals is not None:
        for x, family in ideals.items():
            if x.universe != universe:
                raise SetNotInDomain(f"ideal base {x!r} is over a different universe")
            if x.mask not in ideal_map:
                raise SetNotInDomain(f"ideal base {x!r} is not in the domain")
            fam = set()
            for a in family:
                if a.universe != universe:
                    raise SetNotInDomain(f"ideal member {a!r} is over a different universe")
                if a.mask & ~x.mask:
                    raise IdealMemberNotSubset(repr(x), repr(a))
                fam.add(a.mask)
            ideal_map[x.mask] = frozenset(fam)

    if require_monotone:
        for m, fam in ideal_map.items():
            for a in fam:
                for sub in submasks(a):
                    if sub not in fam:
                        raise IdealMemberNotSubset(
                            _label_key(universe, m) or "{}",
                            f"missing subset {_label_key(universe, sub) or '{}'} of "
                            f"{_label_key(universe, a) or '{}'}",
                        )

    return SizeSystem(universe, domain_masks, ideal_map, label=label)


def filter_of(s: SizeSystem, x: Subset) -> tuple[Subset, ...]:
    """F(x) = {A ⊆ x : x−A ∈ I(x)}, canonical order."""
    m = s._domain_mask(x)
    fam = s._ideal(m)
    u = s.universe
    return tuple(
        Subset(u, m & ~a) for a in sorted(fam, key=lambda a: canon_key(m & ~a))
    )


def mplus_of(s: SizeSystem, x: Subset) -> tuple[Subset, ...]:
    """M+(x) = P(x) − I(x): the subsets of x that are not small."""
    m = s._domain_mask(x)
    fam = s._ideal(m)
    u = s.universe
    return tuple(Subset(u, a) for a in submasks(m) if a not in fam)


def medium_of(s: SizeSystem, x: Subset) -> tuple[Subset, ...]:
    """Subsets of x that are neither small nor big."""
    m = s._domain_mask(x)
    fam = s._ideal(m)
    u = s.universe
    return tuple(
        Subset(u, a)
        for a in submasks(m)
        if a not in fam and (m & ~a) not in fam
    )


def principal_mu(s: SizeSystem, label: str | None = None) -> MuFunction:
    """Extract f(X) = the ⊆-least element of F(X).

    Raises NotPrincipal naming the first X (canonical order) whose filter has
    no least member; an empty ideal gives an empty filter and is reported the
    same way.  Whether F(X) contains the whole interval above f(X) is not
    checked here.
    """
    u = s.universe
    choice: dict[int, int] = {}
    for m in s.domain_masks:
        fam = s.ideals[m]
        if not fam:
            raise NotPrincipal(_label_key(u, m))
        filt = [m & ~a for a in fam]
        least = filt[0]
        for f in filt[1:]:
            least &= f
        if least not in set(filt):
            raise NotPrincipal(_label_key(u, m))
        choice[m] = least
    return MuFunction(u, s.domain_masks, choice, label=label or s.label)


def from_mu(mu: MuFunction, label: str | None = None) -> SizeSystem:
    """The principal-filter system F(X) = {X' : f(X) ⊆ X' ⊆ X}.

    Equivalently I(X) = {A ⊆ X : A ∩ f(X) = ∅}; principal_mu inverts this.
    """
    ideals: dict[int, frozenset[int]] = {}
    for m in mu.domain_masks:
        f = mu.choice[m]
        ideals[m] = frozenset(submasks(m & ~f))
    return SizeSystem(mu.universe, mu.domain_masks, ideals, label=label or mu.label)


def build_mu(
    universe: Universe,
    domain: Iterable[Subset] | None = None,
    choice: Mapping[Subset, Subset] | None = None,
    label: str = "mu",
) -> MuFunction:
    """Validated MuFunction; omitted choices default to the identity f(X)=X."""
    if domain is None:
        domain_masks = full_domain_masks(universe)
    else:
        masks = []
        for x in domain:
            if x.mask == 0:
                raise EmptySetInDomain("domain may not contain the empty set")
            masks.append(x.mask)
        domain_masks = tuple(sorted(set(masks), key=canon_key))
    choice_map = {m: m for m in domain_masks}
    if choice is not None:
        for x, fx in choice.items():
            if x.mask not in choice_map:
                raise SetNotInDomain(f"choice base {x!r} is not in the domain")
            if fx.mask & ~x.mask:
                raise ChoiceNotSubset(f"f({x!r}) = {fx!r} is not a subset of {x!r}")
            choice_map[x.mask] = fx.mask
    return MuFunction(universe, domain_masks, choice_map, label=label)


# --- JSON file format -------------------------------------------------------
#
# System files:
#   { "universe": ["x","y","z"],
#     "domain": "full" | [["x"], ["x","y"], ...],
#     "ideals": { "x,y,z": [[], ["x"], ["y"], ["z"]], ... },
#     "atoms":  { "p": ["x","y"], ... } }            -- optional
#
# Omitted ideal entries default to the trivial ideal [[]].  Subset keys and
# member lists use universe position order.  Mu files replace "ideals" with
# "choice"; omitted choice entries default to the identity.


def _parse_universe(doc: Mapping) -> Universe:
    return Universe(doc["universe"])


def _parse_domain(doc: Mapping, u: Universe) -> list[Subset] | None:
    dom = doc.get("domain", "full")
    if dom == "full":
        return None
    return [u.subset(labels) for labels in dom]


def system_from_dict(doc: Mapping, label: str = "system") -> SizeSystem:
    u = _parse_universe(doc)
    domain = _parse_domain(doc, u)
    ideals = {}
    for key, families in doc.get("ideals", {}).items():
        x = u.subset(key.split(",")) if key else u.empty
        ideals[x] = [u.subset(labels) for labels in families]
    return build(u, domain, ideals, label=label)


def mu_from_dict(doc: Mapping, label: str = "mu") -> MuFunction:
    u = _parse_universe(doc)
    domain = _parse_domain(doc, u)
    choice = {}
    for key, labels in doc.get("choice", {}).items():
        x = u.subset(key.split(",")) if key else u.empty
        choice[x] = u.subset(labels)
    return build_mu(u, domain, choice, label=label)


def load_system(path: str) -> SizeSystem:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    import os

    return system_from_dict(doc, label=os.path.splitext(os.path.basename(path))[0])


def load_mu(path: str) -> MuFunction:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    import os

    return mu_from_dict(doc, label=os.path.splitext(os.path.basename(path))[0])


def save_system(s: SizeSystem, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(s.to_dict(), fh, indent=2)
        fh.write("\n")
