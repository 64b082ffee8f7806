#ifndef TCC_MARGINALS_HPP
#define TCC_MARGINALS_HPP

#include <array>
#include <vector>

#include "tcc/channel.hpp"
#include "tcc/logsum.hpp"
#include "tcc/trellis.hpp"
#include "tcc/word.hpp"

namespace tcc {

/// Per-symbol contribution to an edge's log-weight. A plain entry gives the
/// edge labelled s the weight mu*s + offset. A pinned entry (pin = -1 or +1,
/// from erasure-channel certainty) additionally sends edges with the opposite
/// label to -infinity; this is how the unbounded exponent scale is realized
/// without ever doing float arithmetic on infinity.
struct SymbolWeight {
  double mu = 0.0;
  double offset = 0.0;
  Symbol pin = 0;
};

using WeightVector = std::vector<SymbolWeight>;

inline double edge_log_weight(const SymbolWeight& sw, Symbol s) {
  if (sw.pin != 0 && s != sw.pin) return kNegInf;
  return sw.mu * s + sw.offset;
}

/// lambda * w per entry when lambda is finite; hard pins to sign(w) when
/// lambda is infinite (zero entries stay free). lambda <= 0 is allowed and
/// simply produces uninformative or inverted weights.
WeightVector scaled_weights(double lambda, const std::vector<double>& w);

inline WeightVector scaled_weights(const ChannelModel& ch, const std::vector<double>& w) {
  return scaled_weights(ch.lambda(), w);
}

/// Exact log-domain sums over one trellis: total = log sum over codewords of
/// exp(sum_j edge weights), and for every position the same sum restricted to
/// each label value. Entries are finite or -infinity, never NaN.
struct MarginalTable {
  double total = kNegInf;
  std::vector<std::array<double, 2>> per_position;  // [0] -> label -1, [1] -> label +1

  int n() const { return static_cast<int>(per_position.size()); }
  double at(int j, Symbol s) const { return per_position[j][s == +1 ? 1 : 0]; }
};

/// One forward and one backward pass, O(n * edges) log-sum-exp work.
MarginalTable forward_backward(const Trellis& trellis, const WeightVector& weights);

/// Three-way split of the pair sum at position j by the labels (s_j, s'_j) of
/// the two constituents: opposite (-1,+1), agreeing, and opposite (+1,-1).
/// Built from the product factorization of the two independent single-trellis
/// sums, so no product trellis is ever formed.
struct XiSplit {
  double log_xi_m1 = kNegInf;  // s_j = -1, s'_j = +1
  double log_xi_0 = kNegInf;   // s_j = s'_j
  double log_xi_p1 = kNegInf;  // s_j = +1, s'_j = -1

  double log_total() const { return log_add(log_xi_m1, log_xi_0, log_xi_p1); }
};

XiSplit xi_split(const MarginalTable& mt1, const MarginalTable& mt2, int j);

/// log of the full pair sum: mt1.total + mt2.total.
double log_xi_total(const MarginalTable& mt1, const MarginalTable& mt2);

}  // namespace tcc

#endif
