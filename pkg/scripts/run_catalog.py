"""Verify every catalog reduction on its bundled instances, then run the continuity harness.

    python scripts/run_catalog.py [--ids cn_le_max count_le_cn] [--policies least alt] [--out results.json]
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field

from wlab.weihrauch import CATALOG, check_continuity, instances_for, verify_catalog


@dataclass
class CatalogRunConfig:
    ids: list[str] = field(default_factory=lambda: list(CATALOG))
    policies: list[str] = field(default_factory=lambda: ["least", "alt"])
    continuity: bool = True
    out: str | None = None


def run(cfg: CatalogRunConfig) -> dict:
    t0 = time.perf_counter()
    rows = verify_catalog(cfg.ids, tuple(cfg.policies))
    reports = []
    if cfg.continuity:
        for rid in cfg.ids:
            for inst in instances_for(rid).values():
                reports += [rep.to_json() for rep in check_continuity(CATALOG[rid], inst)]
    return {"config": asdict(cfg), "verification": rows, "continuity": reports,
            "seconds": round(time.perf_counter() - t0, 2)}


def main() -> int:
    cfg = CatalogRunConfig()
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ids", nargs="+", default=cfg.ids)
    ap.add_argument("--policies", nargs="+", default=cfg.policies, choices=["least", "alt"])
    ap.add_argument("--no-continuity", action="store_true")
    ap.add_argument("--out")
    a = ap.parse_args()
    unknown = [i for i in a.ids if i not in CATALOG]
    if unknown:
        ap.error(f"unknown reduction ids {unknown}")
    res = run(CatalogRunConfig(a.ids, a.policies, not a.no_continuity, a.out))

    by_id: dict[str, list[bool]] = {}
    for row in res["verification"]:
        by_id.setdefault(row["reduction"], []).append(row["ok"])
    for rep in res["continuity"]:
        by_id.setdefault(rep["reduction"], []).append(rep["ok"])
    width = max(map(len, by_id))
    for rid, oks in by_id.items():
        print(f"{rid:<{width}}  {sum(oks):3d}/{len(oks):<3d} {'ok' if all(oks) else 'FAIL'}")
    bad = sum(not ok for oks in by_id.values() for ok in oks)
    print(f"{len(by_id)} reductions, {bad} failures, {res['seconds']}s")
    if a.out:
        with open(a.out, "w") as fh:
            json.dump(res, fh, indent=2)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
