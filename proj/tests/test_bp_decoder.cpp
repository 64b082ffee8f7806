#include <doctest.h>

#include <cmath>

#include "tcc/bp_decoder.hpp"
#include "test_helpers.hpp"

using namespace tcc;
using namespace tcc_test;

TEST_CASE("noiseless input decodes in one iteration") {
  const IntersectionCode code = make_intersection(build_check_trellis({{1, 1, 1, 0}, {0, 1, 1, 1}}),
                                                  build_check_trellis({{1, 0, 1, 0}}));
  const ChannelModel ch = ChannelModel::bsc(1e-9);
  const BinaryWord sent = BinaryWord::all_plus(4);
  const DecodeResult res = bp_decode(code, ch, ch.transmit(sent, 1), {});
  CHECK(res.status == DecodeStatus::success);
  CHECK(res.iterations == 1);
  CHECK(res.c_hat == sent);
}

TEST_CASE("with an unconstrained partner, one iteration reproduces the exact posterior") {
  Rng rng(55);
  const int n = 7;
  const Trellis t1 = build_check_trellis(random_checks(rng, 3, n));
  const IntersectionCode code = make_intersection(t1, build_free_trellis(n));
  const ChannelModel ch = ChannelModel::awgn(1.0);
  const ReceivedWord r = ch.transmit(BinaryWord::all_plus(n), 9);

  BpConfig cfg;
  cfg.max_iter = 1;
  const DecodeResult res = bp_decode(code, ch, r, cfg);

  const MarginalTable exact = forward_backward(t1, scaled_weights(ch, r));
  for (int j = 0; j < n; ++j) {
    const double want = (exact.at(j, +1) - exact.at(j, -1)) / 2.0;
    CHECK(std::fabs(res.soft[j] - want) <= 1e-9 * std::max(1.0, std::fabs(want)));
  }
}

TEST_CASE("erased positions are filled from the code structure") {
  // repetition pair: one surviving symbol pins the rest
  const std::vector<std::vector<int>> rows = {{1, 1, 0}, {0, 1, 1}};
  const IntersectionCode code = make_intersection(build_check_trellis(rows), build_check_trellis(rows));
  const DecodeResult res = bp_decode(code, ChannelModel::bec(0.5), {0.0, -1.0, 0.0}, {});
  CHECK(res.status == DecodeStatus::success);
  CHECK(res.c_hat == BinaryWord(std::vector<Symbol>{-1, -1, -1}));
}

TEST_CASE("deterministic given identical inputs") {
  const IntersectionCode code = make_intersection(build_check_trellis({{1, 1, 1, 0, 0}, {0, 0, 1, 1, 1}}),
                                                  build_check_trellis({{1, 0, 1, 0, 1}}));
  const ChannelModel ch = ChannelModel::awgn(1.2);
  const ReceivedWord r = ch.transmit(BinaryWord::all_plus(5), 3);
  const DecodeResult a = bp_decode(code, ch, r, {});
  const DecodeResult b = bp_decode(code, ch, r, {});
  CHECK(a.status == b.status);
  CHECK(a.c_hat == b.c_hat);
  CHECK(a.soft == b.soft);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) CHECK(a.trace[i].log_xi == b.trace[i].log_xi);
}

TEST_CASE("configuration is validated") {
  const IntersectionCode code = make_intersection(build_free_trellis(3), build_free_trellis(3));
  BpConfig bad;
  bad.damping = 1.0;
  CHECK_THROWS_AS(bp_decode(code, ChannelModel::bsc(0.1), {+1, +1, +1}, bad), std::invalid_argument);
  bad = {};
  bad.max_iter = 0;
  CHECK_THROWS_AS(bp_decode(code, ChannelModel::bsc(0.1), {+1, +1, +1}, bad), std::invalid_argument);
  CHECK_THROWS_AS(bp_decode(code, ChannelModel::bsc(0.1), {+1, +1}, {}), std::invalid_argument);
}
