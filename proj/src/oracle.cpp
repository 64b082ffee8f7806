#include "tcc/oracle.hpp"

#include <stdexcept>

#include "tcc/logsum.hpp"

namespace tcc {

MlResult ml_codeword_bruteforce(const IntersectionCode& code, const std::vector<double>& weights) {
  const int n = code.n;
  if (n > 20) throw std::invalid_argument("ml_codeword_bruteforce: refused for n > 20");
  if (static_cast<int>(weights.size()) != n)
    throw std::invalid_argument("ml_codeword_bruteforce: weight length mismatch");

  MlResult best;
  bool found = false;
  std::vector<Symbol> symbols(n);
  for (std::uint32_t x = 0; x < (1u << n); ++x) {
    for (int j = 0; j < n; ++j) symbols[j] = (x >> (n - 1 - j)) & 1 ? +1 : -1;
    BinaryWord word(symbols);
    if (!contains(code.trellis1, word) || !contains(code.trellis2, word)) continue;
    double score = 0;
    for (int j = 0; j < n; ++j) score += weights[j] * symbols[j];
    if (!found || score > best.score) {
      best.word = std::move(word);
      best.score = score;
      best.tie = false;
      found = true;
    } else if (score == best.score) {
      best.tie = true;
    }
  }
  if (!found) throw std::runtime_error("ml_codeword_bruteforce: empty intersection code");
  return best;
}

XiOracle xi_bruteforce(const IntersectionCode& code, const std::vector<double>& w1,
                       const std::vector<double>& w2, double lambda) {
  const int n = code.n;
  if (n > 14) throw std::invalid_argument("xi_bruteforce: refused for n > 14");
  if (static_cast<int>(w1.size()) != n || static_cast<int>(w2.size()) != n)
    throw std::invalid_argument("xi_bruteforce: weight length mismatch");

  const WeightVector mu1 = scaled_weights(lambda, w1);
  const WeightVector mu2 = scaled_weights(lambda, w2);
  const std::vector<BinaryWord> words1 = enumerate_codewords(code.trellis1);
  const std::vector<BinaryWord> words2 = enumerate_codewords(code.trellis2);

  auto word_weight = [n](const WeightVector& mu, const BinaryWord& w) {
    double sum = 0;
    for (int j = 0; j < n; ++j) {
      const double lw = edge_log_weight(mu[j], w[j]);
      if (lw == kNegInf) return kNegInf;
      sum += lw;
    }
    return sum;
  };
  std::vector<double> a(words1.size()), b(words2.size());
  for (std::size_t i = 0; i < words1.size(); ++i) a[i] = word_weight(mu1, words1[i]);
  for (std::size_t i = 0; i < words2.size(); ++i) b[i] = word_weight(mu2, words2[i]);

  LogAccumulator total;
  std::vector<LogAccumulator> acc_m1(n), acc_0(n), acc_p1(n);
  for (std::size_t i = 0; i < words1.size(); ++i) {
    if (a[i] == kNegInf) continue;
    for (std::size_t k = 0; k < words2.size(); ++k) {
      if (b[k] == kNegInf) continue;
      const double term = a[i] + b[k];
      total.add(term);
      for (int j = 0; j < n; ++j) {
        const Symbol s = words1[i][j];
        const Symbol sp = words2[k][j];
        if (s == sp) acc_0[j].add(term);
        else if (s == -1) acc_m1[j].add(term);
        else acc_p1[j].add(term);
      }
    }
  }

  XiOracle out;
  out.log_total = total.value();
  out.splits.resize(n);
  for (int j = 0; j < n; ++j)
    out.splits[j] = {acc_m1[j].value(), acc_0[j].value(), acc_p1[j].value()};
  return out;
}

}  // namespace tcc
