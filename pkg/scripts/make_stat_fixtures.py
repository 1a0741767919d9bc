#!/usr/bin/env python3
"""Regenerate tests/fixtures/stat_oracle.json from reference implementations.

The fixture freezes expected values computed by scipy (an implementation
independent of this package's own statistics code). scipy is NOT a runtime
or test dependency; this script is only needed to regenerate the fixture.

Usage:
    python scripts/make_stat_fixtures.py
"""

import json
import pathlib

import numpy as np
from scipy import stats as sps

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "stat_oracle.json"


def main() -> None:
    rng = np.random.default_rng(20240615)
    welch = []
    # 12 varied-size, varied-scale sample pairs, including near-equal means
    # and strongly separated ones.
    shapes = [
        (3, 4), (4, 3), (5, 5), (8, 30), (30, 8), (12, 12),
        (50, 7), (9, 40), (25, 25), (6, 6), (15, 45), (60, 60),
    ]
    for i, (na, nb) in enumerate(shapes):
        loc_b = 0.0 if i % 3 == 0 else rng.uniform(-3, 3)
        a = rng.normal(0.0, rng.uniform(0.5, 4.0), na)
        b = rng.normal(loc_b, rng.uniform(0.5, 4.0), nb)
        res = sps.ttest_ind(a, b, equal_var=False)
        welch.append(
            {
                "a": a.tolist(),
                "b": b.tolist(),
                "t": float(res.statistic),
                "df": float(res.df),
                "p": float(res.pvalue),
            }
        )

    pearson = []
    for i in range(4):
        n = int(rng.integers(5, 40))
        x = rng.normal(size=n)
        y = (0.5 + i) * x + rng.normal(scale=1.0 + i, size=n)
        r = sps.pearsonr(x, y).statistic
        pearson.append({"x": x.tolist(), "y": y.tolist(), "r": float(r)})

    spearman = []
    tied_sets = [
        ([1, 2, 2, 3, 3, 3, 10], [5, 5, 7, 8, 9, 9, 20]),
        ([1.5, 1.5, 2.0, 9.0, 9.0, 4.0], [3.0, 1.0, 1.0, 8.0, 2.0, 2.0]),
    ]
    for x, y in tied_sets:
        r = sps.spearmanr(x, y).statistic
        spearman.append({"x": list(map(float, x)), "y": list(map(float, y)), "r": float(r)})
    for _ in range(2):
        n = int(rng.integers(6, 30))
        x = rng.normal(size=n)
        y = rng.normal(size=n) + 0.8 * x
        r = sps.spearmanr(x, y).statistic
        spearman.append({"x": x.tolist(), "y": y.tolist(), "r": float(r)})

    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(
        json.dumps({"welch": welch, "pearson": pearson, "spearman": spearman}, indent=2)
        + "\n"
    )
    print(f"wrote {OUT} ({len(welch)} welch, {len(pearson)} pearson, {len(spearman)} spearman)")


if __name__ == "__main__":
    main()
