"""Smoke test for the citenorm_py extension module.

Build and install first, e.g. `maturin develop` or
`pip install --no-build-isolation .` from crates/py, then run this script.
"""

import math
import pathlib
import sys

import citenorm_py as cn

FIXTURES = pathlib.Path(__file__).resolve().parents[2] / "core" / "tests" / "fixtures"


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol


def main():
    assert cn.fractional_weight(6) == 1 / 6
    assert cn.fractional_weight(40) == 1 / 40
    try:
        cn.fractional_weight(0)
    except ValueError as e:
        assert "zero-reference" in str(e)
    else:
        raise AssertionError("zero references must be rejected")

    mor, _ = cn.mean_of_ratios([9, 1], [1, 9])
    assert close(cn.ratio_of_means([9, 1], [1, 9]), 1.0)
    assert abs(mor - 4.556) <= 1e-3

    window = cn.load_corpus(str(FIXTURES / "window.jsonl"))
    assert close(window.fractional_impact_factor("J", 2010), 0.225, 1e-15)
    assert close(window.fractional_score("A"), 0.25)

    corpus = cn.load_corpus(
        str(FIXTURES / "table1.jsonl"),
        [str(FIXTURES / "table1_journal_rates.jsonl"), str(FIXTURES / "table1_field_rates.jsonl")],
    )
    assert len(corpus.unit_ids()) == 7
    row = corpus.unit_report("R6")
    assert (row.sum_p, row.sum_c) == (23, 891)
    assert round(row.cpp_jcsm, 2) == 2.18
    assert round(row.sum_cf, 2) == 31.95

    assert cn.validate(str(FIXTURES / "table1.jsonl")) == []
    rules = {v[0] for v in cn.validate(str(FIXTURES / "invalid.jsonl"))}
    assert "dangling-citing" in rules

    mcs = [2.03, 1.74, 1.54, 1.50, 0.93, 0.91, 0.78]
    jcsm = [2.18, 1.86, 1.56, 1.00, 1.00, 0.58, 0.43]
    rho = cn.spearman(mcs, jcsm)
    assert rho.statistic > 0.99 and rho.p_value < 0.01
    r = cn.pearson(mcs, jcsm)
    assert abs(r.statistic - 0.94) <= 0.01

    groups = [[10 + i / 10 for i in range(10)]] * 3 + [[5 + i / 10 for i in range(10)]] * 4
    ph = cn.posthoc(groups, "tukey", 0.05)
    assert len(ph.homogeneous_subsets) == 2
    assert cn.one_way_anova(groups).p_value < 1e-10
    assert cn.kruskal_wallis(groups).method == "kruskal_wallis"

    s = cn.summarize([1, 2, 3, 4, 100])
    assert (s.q1, s.median, s.q3) == (2, 3, 4) and s.outliers == [100]

    assert close(cn.dist_cdf("t", 1.0, 1.0), 0.75, 1e-12)
    assert close(cn.dist_cdf("chi2", 3.841, 1.0), 0.9499863162360433, 1e-9)
    assert close(cn.dist_cdf("studentized_range", 3.877, 3, 10), 0.95, 1e-3)
    assert math.isfinite(cn.dist_cdf("f", 2.0, 3, 30))

    print("citenorm_py smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
