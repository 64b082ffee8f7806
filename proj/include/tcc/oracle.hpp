#ifndef TCC_ORACLE_HPP
#define TCC_ORACLE_HPP

#include <vector>

#include "tcc/channel.hpp"
#include "tcc/marginals.hpp"
#include "tcc/trellis.hpp"
#include "tcc/word.hpp"

namespace tcc {

/// Reference answers computed by exhaustive enumeration. Every function here
/// refuses inputs past its hard size cap instead of silently grinding.

struct MlResult {
  BinaryWord word;       // lexicographically smallest argmax
  double score = 0;      // r * word, in units of lambda
  bool tie = false;      // another codeword reached the same score
};

/// Scans all of {-1,+1}^n (n <= 20), keeps the words contained in both
/// constituents, and maximizes the correlation with the weights.
MlResult ml_codeword_bruteforce(const IntersectionCode& code, const std::vector<double>& weights);

inline MlResult ml_codeword_bruteforce(const IntersectionCode& code, const ChannelModel&,
                                       const ReceivedWord& r) {
  return ml_codeword_bruteforce(code, r);
}

struct XiOracle {
  double log_total = kNegInf;
  std::vector<XiSplit> splits;  // one per position
};

/// Double enumeration over the two constituent codeword lists (n <= 14),
/// accumulating the pair sum and its per-position three-way splits directly.
XiOracle xi_bruteforce(const IntersectionCode& code, const std::vector<double>& w1,
                       const std::vector<double>& w2, double lambda);

}  // namespace tcc

#endif
