"""Measure the corpus constants and freeze them for regression testing.

The estimates proved in the literature assert existence of constants, never
values, so the only testable form is a pin: run every checker on the frozen
corpus once, record the worst ratio each frozen key saw, and let CI compare
future runs against those values with 5% slack.

Run as: python -m smoothness_lab.calibration [output.json]
"""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path

from . import checks
from .verify import run_checkers


def measure() -> dict:
    reports = run_checkers("all")
    frozen: dict = {}
    for rep in reports:
        key = rep.frozen_key
        if key is None or math.isnan(rep.max_ratio) or math.isinf(rep.max_ratio):
            continue
        frozen[key] = max(frozen.get(key, 0.0), rep.max_ratio)
    return frozen


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if argv:
        out = Path(argv[0])
    else:
        out = Path(__file__).parent / "data" / "frozen_constants.json"
    frozen = measure()
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(frozen, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {len(frozen)} constants to {out}")
    checks._FROZEN_CACHE = None
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
