#!/usr/bin/env python3
"""Regenerate the golden oracle fixtures under fixtures/.

The recorded counts come from running the brute-force oracle at each
configuration; the verify command and the acceptance suite check that
the counts keep satisfying the theoretical sandwich (and, with
--recompute, that reruns reproduce them exactly).
"""

import json
import math
from pathlib import Path

import numpy as np

from covent import FieldTag, FiniteEllipsoid, brute_force_covering, fixture_from_result

CASES = [
    ("interval_q2_eps4", [1.0], 2.0, 2.0, 0.25),
    ("interval_q2_eps8", [1.0], 2.0, 2.0, 0.125),
    ("interval_pinf_q1", [1.0], math.inf, 1.0, 0.25),
    ("interval_small", [0.75], 2.0, 2.0, 0.125),
    ("disk_eps2", [1.0, 1.0], 2.0, 2.0, 0.5),
    ("disk_eps4", [1.0, 1.0], 2.0, 2.0, 0.25),
    ("ellipse_half", [1.0, 0.5], 2.0, 2.0, 0.25),
    ("square_q2", [1.0, 1.0], math.inf, 2.0, 0.5),
    ("square_qinf", [1.0, 1.0], math.inf, math.inf, 0.25),
    ("ellipse_q1", [1.0, 0.75], 2.0, 1.0, 0.5),
    ("box_flat_q2", [1.0, 0.5], math.inf, 2.0, 0.5),
    ("ellipse_small", [0.9, 0.6], 2.0, 2.0, 0.25),
]


def main():
    out_dir = Path(__file__).resolve().parent.parent / "fixtures"
    out_dir.mkdir(exist_ok=True)
    for name, axes, p, q, eps in CASES:
        ellipsoid = FiniteEllipsoid(p=p, field=FieldTag.REAL, semi_axes=np.asarray(axes))
        result = brute_force_covering(ellipsoid, q, eps)
        fixture = fixture_from_result(ellipsoid, q, result)
        path = out_dir / f"{name}.json"
        path.write_text(json.dumps(fixture, indent=2) + "\n")
        print(f"{path.name}: lower={result.lower_count} upper={result.upper_count}")


if __name__ == "__main__":
    main()
