"""Smoke test for the binsum extension: python python/smoke_test.py"""

import json
from fractions import Fraction

import binsum


def main():
    assert binsum.binomial(10, 3) == 120
    assert binsum.binomial(3, 5) == 0
    assert binsum.catalan(5) == 42
    assert binsum.is_prime(499) and not binsum.is_prime(1001)
    assert binsum.legendre_symbol(-1, 7) == -1
    assert binsum.rational_congruent(117, Fraction(45, 8), 27)

    seqs = binsum.Sequences()
    assert seqs.values("S", 3) == [1, 7, 55, 465]
    assert seqs.eval("s", 2) == 9
    assert seqs.eval("h", 0) == -1
    assert seqs.weighted_prefix_sum("S", 3) == 117
    assert seqs.prefix_sum("s", 2) == 0
    assert seqs.prefix_sum("S_plus", 2) == 20
    assert seqs.eval("S_r(16)", 1) == 1 + 2 * 3**16

    op = binsum.fit_recurrence(seqs, "S", 3, 4, 1, 60)
    assert op is not None and op.order == 2
    assert op.annihilates(seqs, "S", 61, 120)
    assert binsum.RecurrenceOperator.parse(str(op)) == op
    assert binsum.fit_recurrence(seqs, "S", 3, 4, 1, 60, shuffle_seed=7) == op
    assert binsum.fit_recurrence(seqs, "S", 1, 2, 1, 40) is None

    assert len(binsum.operator_names()) == 11
    assert binsum.RecurrenceOperator.builtin("s3").annihilates(seqs, "s", 1, 50)
    assert all(ok for _, ok in binsum.check_certificates())

    report = json.loads(binsum.run_suite(seqs, ["theorems", "lemmas"], n_max=60, prime_max=61))
    reports = report["reports"]
    assert reports and all(r["status"] == "pass" for r in reports), reports

    assert binsum.minimal_multiplier(seqs, "a", 2, 100) == 3
    assert binsum.minimal_multiplier(seqs, "b", 2, 100) == 12

    try:
        seqs.eval("bogus", 1)
    except ValueError:
        pass
    else:
        raise AssertionError("unknown id accepted")

    print("binsum smoke test passed")


if __name__ == "__main__":
    main()
