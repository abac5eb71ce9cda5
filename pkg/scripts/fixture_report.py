#!/usr/bin/env python3
"""Print the four mu = 1 reference configurations as full JSON reports.

These are the cases whose closed forms appear in the literature; each report
carries a published_comparison section flagging agreements and the
adjudicated misprints.
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), os.pardir, "src"))

from qesolve.cli import build_report, render_report
from qesolve.families import MorseParams, SexticParams, make_morse, make_sextic


def main() -> int:
    models = [
        make_sextic(SexticParams.from_mu(1.0, 0)),
        make_sextic(SexticParams.from_mu(1.0, 1)),
        make_morse(MorseParams.from_mu(1.0, 0)),
        make_morse(MorseParams.from_mu(1.0, 1)),
    ]
    for model in models:
        report, _ = build_report(model)
        print(render_report(report))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
