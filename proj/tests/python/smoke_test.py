"""Smoke test for the python module: build a code, push a word through a
channel, decode it, and cross-check a couple of values against the C++ core."""

import math
import os
import sys

import tcc


def main():
    codes_dir = os.environ["TCC_CODES_DIR"]

    # in-memory construction
    t1 = tcc.build_check_trellis([[1, 1, 1, 0], [0, 1, 1, 1]])
    t2 = tcc.build_check_trellis([[1, 0, 1, 0]])
    code = tcc.make_intersection(t1, t2)
    assert code.n == 4
    words = tcc.enumerate_codewords(t1)
    assert len(words) == 4
    for w in words:
        assert tcc.contains(t1, w)

    # channel formulas
    ch = tcc.channel("bsc:0.1")
    assert abs(ch.lambda_() - math.log(3.0)) < 1e-12
    assert abs(ch.llr(1.0) - math.log(3.0)) < 1e-12
    assert tcc.channel("bec:0.3").llr(0.0) == 0.0

    # round trip: sample, transmit, decode
    loaded = tcc.load_code(os.path.join(codes_dir, "tcc_n12.txt"))
    sent = tcc.sample_codeword(loaded, seed=1)
    received = tcc.channel("bsc:0.02").transmit(sent, seed=2)
    result = tcc.decode(loaded, tcc.channel("bsc:0.02"), received)
    assert result.status in ("success", "iteration_limit", "stalled")
    if result.status == "success":
        assert tcc.contains(loaded.trellis1, result.c_hat)
        assert tcc.contains(loaded.trellis2, result.c_hat)
    assert len(result.trace) >= 1

    # determinism
    again = tcc.decode(loaded, tcc.channel("bsc:0.02"), received)
    assert again.status == result.status
    assert again.c_hat == result.c_hat

    # bp decoder and oracle
    bp = tcc.bp_decode(loaded, tcc.channel("bsc:0.02"), received)
    assert bp.status in ("success", "iteration_limit")
    ml_word, score, tie = tcc.ml_codeword_bruteforce(loaded, received)
    assert len(ml_word) == loaded.n
    assert isinstance(tie, bool)

    total, splits = tcc.xi_bruteforce(loaded, [0.0] * 12, [0.0] * 12, 1.0)
    n_pairs = len(tcc.enumerate_codewords(loaded.trellis1)) * len(
        tcc.enumerate_codewords(loaded.trellis2)
    )
    assert abs(total - math.log(n_pairs)) < 1e-9
    assert len(splits) == 12

    print("python smoke test ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
