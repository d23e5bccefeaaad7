"""Named regression fixtures and their expected-verdict tables.

Each fixture id names one stored scenario: a small size system or choice
function plus the exact verdicts the workbench must reproduce for it.  The
systems live in data/*.json (the same files work with `--system`/`--mu` on
the command line); the verdicts live in data/expected.json, so the expected
outcomes are data, not code.

    fact-3.4-1, fact-3.4-2     outer-monotony independence pair
    fact-3.5:2|3|4             level-n vs level-(n+1) separation
    fact-3.7:3                 union-robustness implications (ternary)
    ex-3.8:3|4                 rules without the matching robustness
    fact-3.9                   CM:omega ⇔ M+omega:4
    fact-3.10                  the five omega-robustness implications
    ex-3.11-1|2|3              independence of the M+omega variants
    fact-3.12                  the three M++ variants agree
    fact-3.13                  RatM ⇔ M++:1
    fact-3.3                   M++ without union closure forces a 2*s failure
    prop-4.1:<row>:<fwd|bwd>   correspondence table rows 1..10
"""

from __future__ import annotations

import json
from importlib import resources

from ..preferential import (
    verify_correspondence_backward,
    verify_correspondence_forward,
)
from ..properties import (
    EMF,
    EMI,
    IM,
    IOMEGA,
    OPT,
    check_level,
    m_plus_n,
    m_plus_omega,
    m_plus_plus,
    n_star_s,
    property_matrix,
)
from ..rules import RATM, CM_OMEGA, OR_OMEGA, check_rule, cm_n, or_n
from ..search import (
    verify_agreement_upto,
    verify_implication_upto,
    verify_two_s_breakdown,
)
from ..sizesys import MuFunction, SizeSystem, mu_from_dict, system_from_dict

SEARCH_MAX = 3
BREAKDOWN_MAX = 4


def _load(name: str) -> dict:
    data = resources.files(__package__).joinpath(f"data/{name}")
    return json.loads(data.read_text(encoding="utf-8"))


def fixture_system(name: str) -> SizeSystem:
    return system_from_dict(_load(f"{name}.json"), label=name)


def fixture_mu(name: str) -> MuFunction:
    return mu_from_dict(_load(f"{name}.json"), label=name)


def expected_table() -> dict:
    return _load("expected.json")


FIXTURE_IDS = (
    ["fact-3.3", "fact-3.4-1", "fact-3.4-2"]
    + [f"fact-3.5:{n}" for n in (2, 3, 4)]
    + ["fact-3.7:3"]
    + [f"ex-3.8:{n}" for n in (3, 4)]
    + ["fact-3.9", "fact-3.10"]
    + [f"ex-3.11-{k}" for k in (1, 2, 3)]
    + ["fact-3.12", "fact-3.13"]
    + [f"prop-4.1:{row}:{d}" for row in range(1, 11) for d in ("fwd", "bwd")]
)


def run_fixture(fid: str, parallelism: int = 1) -> dict:
    """Compute the records for one fixture id."""
    records: list[dict]

    if fid == "fact-3.4-1":
        s = fixture_system("fact34-1")
        records = [r.to_dict() for r in property_matrix(s, [OPT, IM, EMI, IOMEGA, EMF])]
    elif fid == "fact-3.4-2":
        s = fixture_system("fact34-2")
        records = [r.to_dict() for r in property_matrix(s, [OPT, IM, IOMEGA, EMF, EMI])]
    elif fid.startswith("fact-3.5:"):
        n = int(fid.split(":")[1])
        s = fixture_system(f"fact35-{n}")
        records = [check_level(s, n).to_dict(), check_level(s, n + 1).to_dict()]
    elif fid == "fact-3.7:3":
        req = (n_star_s(3), EMI)
        records = [
            verify_implication_upto(req, target, SEARCH_MAX, parallelism=parallelism).to_dict()
            for target in (m_plus_n(3), cm_n(3), or_n(3))
        ]
    elif fid.startswith("ex-3.8:"):
        n = int(fid.split(":")[1])
        s = fixture_system(f"ex38-{n}")
        records = [
            check_rule(s, or_n(n)).to_dict(),
            check_rule(s, cm_n(n)).to_dict(),
        ] + [r.to_dict() for r in property_matrix(s, [m_plus_n(n), n_star_s(n)])]
    elif fid == "fact-3.9":
        records = [
            verify_agreement_upto(
                [CM_OMEGA, m_plus_omega(4)], SEARCH_MAX, parallelism=parallelism
            ).to_dict()
        ]
    elif fid == "fact-3.10":
        cases = [
            ((IOMEGA, EMI), OR_OMEGA),
            ((IOMEGA, EMI), m_plus_omega(1)),
            ((IOMEGA, EMF), m_plus_omega(2)),
            ((IOMEGA, EMI), m_plus_omega(3)),
            ((IOMEGA, EMF), m_plus_omega(4)),
        ]
        records = [
            verify_implication_upto(req, target, SEARCH_MAX, parallelism=parallelism).to_dict()
            for req, target in cases
        ]
    elif fid.startswith("ex-3.11-"):
        k = int(fid.rsplit("-", 1)[1])
        s = fixture_system(f"ex311-{k}")
        records = [
            r.to_dict() for r in property_matrix(s, [m_plus_omega(v) for v in (1, 2, 3, 4)])
        ]
    elif fid == "fact-3.12":
        records = [
            verify_agreement_upto(
                [m_plus_plus(1), m_plus_plus(2), m_plus_plus(3)],
                SEARCH_MAX,
                parallelism=parallelism,
            ).to_dict()
        ]
    elif fid == "fact-3.13":
        records = [
            verify_agreement_upto(
                [RATM, m_plus_plus(1)], SEARCH_MAX, parallelism=parallelism
            ).to_dict()
        ]
    elif fid == "fact-3.3":
        records = [verify_two_s_breakdown(BREAKDOWN_MAX, parallelism=parallelism).to_dict()]
    elif fid.startswith("prop-4.1:"):
        _, row_text, direction = fid.split(":")
        row = int(row_text)
        if direction == "fwd":
            rep = verify_correspondence_forward(row, SEARCH_MAX, parallelism=parallelism)
        elif direction == "bwd":
            rep = verify_correspondence_backward(row, SEARCH_MAX, parallelism=parallelism)
        else:
            raise ValueError(f"unknown direction {direction!r}")
        records = [rep.to_dict()]
    else:
        raise ValueError(f"unknown fixture id {fid!r}")

    return {"fixture": fid, "records": records}


def compare_records(produced: dict, expected: dict) -> list[str]:
    """Mismatch descriptions; empty when every pinned field is reproduced."""
    mismatches = []
    exp_records = expected["records"]
    got_records = produced["records"]
    if len(exp_records) != len(got_records):
        return [f"expected {len(exp_records)} records, produced {len(got_records)}"]
    for i, (exp, got) in enumerate(zip(exp_records, got_records)):
        for key, want in exp.items():
            have = got.get(key)
            if have != want:
                mismatches.append(f"record {i} field {key!r}: expected {want!r}, got {have!r}")
    return mismatches
