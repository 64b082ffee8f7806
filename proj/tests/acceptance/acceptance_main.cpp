// End-to-end acceptance checks. Each criterion prints one [PASS]/[FAIL] line;
// the process exits nonzero if any failed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "tcc/amp_decoder.hpp"
#include "tcc/bp_decoder.hpp"
#include "tcc/oracle.hpp"
#include "tcc/rng.hpp"
#include "tcc/simulate.hpp"

using namespace tcc;

namespace {

const std::string kCodesDir = TCC_CODES_DIR;

int g_membership_checks = 0;
int g_membership_violations = 0;

// Success results must land in both constituents; tallied across every decode
// the suite performs.
void note_result(const IntersectionCode& code, const DecodeResult& res) {
  if (res.status != DecodeStatus::success) return;
  ++g_membership_checks;
  if (!contains(code.trellis1, res.c_hat) || !contains(code.trellis2, res.c_hat))
    ++g_membership_violations;
}

std::vector<std::vector<int>> random_checks(Rng& rng, int m, int n) {
  std::vector<std::vector<int>> rows(m, std::vector<int>(n, 0));
  for (auto& row : rows) {
    bool nonzero = false;
    while (!nonzero) {
      for (int j = 0; j < n; ++j) {
        row[j] = rng.uniform() < 0.5 ? 1 : 0;
        nonzero = nonzero || row[j];
      }
    }
  }
  return rows;
}

IntersectionCode random_code(Rng& rng, int n, int m1, int m2, std::size_t max_pairs) {
  for (;;) {
    IntersectionCode code = make_intersection(build_check_trellis(random_checks(rng, m1, n)),
                                              build_check_trellis(random_checks(rng, m2, n)));
    const std::size_t pairs =
        enumerate_codewords(code.trellis1).size() * enumerate_codewords(code.trellis2).size();
    if (pairs <= max_pairs) return code;
  }
}

std::vector<double> random_reals(Rng& rng, int n, double lo, double hi) {
  std::vector<double> v(n);
  for (double& x : v) x = lo + (hi - lo) * rng.uniform();
  return v;
}

double rel_err(double got, double want) {
  if (got == want) return 0.0;
  return std::fabs(got - want) / std::max(1.0, std::fabs(want));
}

// random mid-decode state: channel output, half split, then a sum-preserving wander
DecoderState random_state(Rng& rng, const IntersectionCode& code, const ChannelModel& ch,
                          std::uint64_t seed) {
  const BinaryWord sent = sample_codeword(code, splitmix64(seed));
  DecoderState st = init_state(code, ch, ch.transmit(sent, splitmix64(seed ^ 0x5bf03635ULL)));
  for (int j = 0; j < code.n; ++j) {
    const double eps = 0.6 * rng.uniform() - 0.3;
    st.w1[j] += eps;
    st.w2[j] -= eps;
  }
  return st;
}

double golden_min(const std::function<double(double)>& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-10) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return (a + b) / 2.0;
}

// --- criteria ---------------------------------------------------------------

bool criterion1(std::string& msg) {
  Rng rng(101);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const int n = 4 + static_cast<int>(rng.next_u64() % 9);  // 4..12
    const IntersectionCode code = random_code(rng, n, 3, 3, 300000);
    const std::vector<double> w1 = random_reals(rng, n, -2, 2), w2 = random_reals(rng, n, -2, 2);
    const double lambda = 0.25 + 1.75 * rng.uniform();

    const XiOracle ref = xi_bruteforce(code, w1, w2, lambda);
    const PairMarginals pm = pair_marginals(code, lambda, w1, w2);
    worst = std::max(worst, rel_err(pm.log_xi, ref.log_total));
    for (int j = 0; j < n; ++j) {
      const XiSplit s = xi_split(pm.mt1, pm.mt2, j);
      worst = std::max({worst, rel_err(s.log_xi_m1, ref.splits[j].log_xi_m1),
                        rel_err(s.log_xi_0, ref.splits[j].log_xi_0),
                        rel_err(s.log_xi_p1, ref.splits[j].log_xi_p1)});
    }
  }
  std::ostringstream s;
  s << "100 instances, max rel err " << worst;
  msg = s.str();
  return worst <= 1e-9;
}

bool criterion2(std::string& msg) {
  Rng rng(202);
  double worst_sum_drift = 0;
  int argmax_changes = 0;
  for (int i = 0; i < 1000; ++i) {
    const int n = 5 + static_cast<int>(rng.next_u64() % 6);  // 5..10
    const IntersectionCode code = random_code(rng, n, 2, 2, 300000);
    const ChannelModel ch = i % 2 ? ChannelModel::bsc(0.05) : ChannelModel::awgn(1.0);
    DecoderState st = random_state(rng, code, ch, 9000 + i);

    std::vector<double> sum(n);
    for (int j = 0; j < n; ++j) sum[j] = st.w1[j] + st.w2[j];
    const MlResult before = ml_codeword_bruteforce(code, sum);

    const DecoderState next = delta_step(st, code, {});
    for (int j = 0; j < n; ++j)
      worst_sum_drift = std::max(worst_sum_drift, std::fabs(next.w1[j] + next.w2[j] - sum[j]));
    std::vector<double> sum_after(n);
    for (int j = 0; j < n; ++j) sum_after[j] = next.w1[j] + next.w2[j];
    const MlResult after = ml_codeword_bruteforce(code, sum_after);
    if (after.word != before.word) {
      // exact ties may be reported either way once the sum drifts at the
      // last bit; the maximizer set itself must be preserved
      double before_word_score = 0;
      for (int j = 0; j < n; ++j) before_word_score += sum_after[j] * before.word[j];
      if (std::fabs(before_word_score - after.score) > 1e-9 * std::max(1.0, std::fabs(after.score)))
        ++argmax_changes;
    }
  }
  std::ostringstream s;
  s << "1000 steps, max |d(w1+w2)| " << worst_sum_drift << ", argmax changes " << argmax_changes;
  msg = s.str();
  return worst_sum_drift <= 1e-12 && argmax_changes == 0;
}

bool criterion3(std::string& msg) {
  Rng rng(303);
  double worst_increase = -1e300, worst_balance = 0, worst_argmin = 0;
  int steps = 0, balance_checks = 0;
  while (steps < 300 || balance_checks < 100) {
    const int n = 5 + static_cast<int>(rng.next_u64() % 6);
    const IntersectionCode code = random_code(rng, n, 2, 2, 300000);
    const ChannelModel ch = steps % 2 ? ChannelModel::bsc(0.08) : ChannelModel::awgn(0.9);
    DecoderState st = random_state(rng, code, ch, 37000 + steps);

    // accepted transfer steps may not raise the pair sum
    const double before = pair_marginals(code, st.lambda, st.w1, st.w2).log_xi;
    const DecoderState next = delta_step(st, code, {});
    worst_increase = std::max(worst_increase,
                              (next.last.log_xi - before) / std::max(1.0, std::fabs(before)));
    ++steps;

    // a single unclamped transfer balances its position, and the closed form
    // is where a blind line search lands
    const PairMarginals pm = pair_marginals(code, st.lambda, st.w1, st.w2);
    const int j = static_cast<int>(rng.next_u64() % n);
    const XiSplit split = xi_split(pm.mt1, pm.mt2, j);
    if (split.log_xi_m1 == kNegInf || split.log_xi_p1 == kNegInf) continue;
    const double closed = (split.log_xi_m1 - split.log_xi_p1) / (4.0 * st.lambda);

    std::vector<double> w1b = st.w1, w2b = st.w2;
    w1b[j] += closed;
    w2b[j] -= closed;
    const PairMarginals after = pair_marginals(code, st.lambda, w1b, w2b);
    const XiSplit sa = xi_split(after.mt1, after.mt2, j);
    worst_balance = std::max(worst_balance, std::fabs(sa.log_xi_m1 - sa.log_xi_p1) /
                                                std::max(1.0, std::fabs(sa.log_xi_m1)));

    const double lambda = st.lambda;
    auto xi_of = [&](double d) {
      return log_add(split.log_xi_m1 - 2.0 * lambda * d, split.log_xi_0,
                     split.log_xi_p1 + 2.0 * lambda * d);
    };
    const double numeric = golden_min(xi_of, closed - 3.0, closed + 3.0);
    worst_argmin = std::max(worst_argmin, std::fabs(numeric - closed));
    ++balance_checks;
  }
  std::ostringstream s;
  s << steps << " steps: max rel log_xi increase " << worst_increase << ", " << balance_checks
    << " balance checks: max imbalance " << worst_balance << ", max argmin gap " << worst_argmin;
  msg = s.str();
  return worst_increase <= 1e-9 && worst_balance <= 1e-9 && worst_argmin <= 1e-6;
}

bool criterion4(std::string& msg) {
  const std::vector<IntersectionCode> codes = {
      load_code_file(kCodesDir + "/parity3.txt"),
      load_code_file(kCodesDir + "/rep3.txt"),
      load_code_file(kCodesDir + "/tcc_n12.txt"),
      load_code_file(kCodesDir + "/conv75_n14.txt"),
  };
  const std::vector<std::string> specs = {"bsc:0.02", "bsc:0.1",  "bsc:0.2", "awgn:0.6",
                                          "awgn:1.0", "awgn:1.4", "bec:0.1", "bec:0.3",
                                          "bec:0.5"};
  int violations = 0, decodes = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const IntersectionCode& code = codes[trial % codes.size()];
    const ChannelModel ch = ChannelModel::parse(specs[trial % specs.size()]);
    const BinaryWord sent = sample_codeword(code, 40000 + trial);
    const ReceivedWord r = ch.transmit(sent, 50000 + trial);
    const DecodeResult res = decode(code, ch, r, {});
    note_result(code, res);
    ++decodes;
    for (std::size_t i = 1; i < res.trace.size(); ++i) {
      const double prev = res.trace[i - 1].objective;
      if (res.trace[i].objective < prev - 1e-9 * std::max(1.0, std::fabs(prev))) ++violations;
    }
  }
  std::ostringstream s;
  s << decodes << " decodes, monotonicity violations " << violations;
  msg = s.str();
  return violations == 0;
}

bool criterion5(std::string& msg) {
  std::ostringstream s;
  s << g_membership_checks << " successful decodes checked, " << g_membership_violations
    << " outside the code";
  msg = s.str();
  return g_membership_checks > 0 && g_membership_violations == 0;
}

bool criterion6(std::string& msg) {
  const IntersectionCode code = load_code_file(kCodesDir + "/tcc_n12.txt");
  int ok = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const BinaryWord sent = sample_codeword(code, 60000 + trial);
    for (const ChannelModel& ch : {ChannelModel::bsc(1e-12), ChannelModel::bec(0.0)}) {
      const DecodeResult res = decode(code, ch, ch.transmit(sent, 70000 + trial), {});
      note_result(code, res);
      if (res.status == DecodeStatus::success && res.iterations <= 2 && res.c_hat == sent) ++ok;
    }
  }
  std::ostringstream s;
  s << ok << "/200 noiseless decodes exact and immediate";
  msg = s.str();
  return ok == 200;
}

bool criterion7(std::string& msg, std::string& table) {
  SimConfig cfg;
  cfg.code_file = kCodesDir + "/tcc_n12.txt";
  cfg.channel_specs = {"bsc:0.02", "bsc:0.05", "bsc:0.1"};
  cfg.decoders = {"amp", "bp", "ml"};
  cfg.trials = 2000;
  cfg.base_seed = 7;
  cfg.oracle_compare = true;
  cfg.raw_out.clear();
  cfg.agg_out.clear();
  const ExperimentResult res = run_experiment(cfg);

  std::ostringstream t;
  write_aggregate_csv(t, res.aggregates);
  table = t.str();

  bool ok = true;
  std::ostringstream s;
  for (const auto& spec : cfg.channel_specs) {
    double fer_amp = 0, fer_ml = 0;
    for (const auto& row : res.aggregates) {
      if (row.sweep != spec) continue;
      if (row.decoder == "amp") fer_amp = row.fer;
      if (row.decoder == "ml") fer_ml = row.fer;
    }
    const double se = std::sqrt(fer_ml * (1.0 - fer_ml) / cfg.trials);
    if (fer_amp < fer_ml - 3.0 * se) ok = false;
    s << spec << " amp " << fer_amp << " vs ml " << fer_ml << "; ";
  }
  msg = s.str();
  return ok;
}

bool criterion8(std::string& msg) {
  double worst = 0;
  worst = std::max(worst, std::fabs(ChannelModel::bsc(0.1).lambda() - std::log(3.0)));
  worst = std::max(worst, std::fabs(ChannelModel::bec(0.3).llr(0.0)));
  if (!std::isinf(ChannelModel::bec(0.3).lambda())) worst = 1.0;
  for (double sigma : {0.5, 1.0, 2.0}) {
    const ChannelModel ch = ChannelModel::awgn(sigma);
    if (std::fabs(ch.lambda() - 1.0 / (sigma * sigma)) > 1e-12) worst = 1.0;
    for (double r = -2.0; r <= 2.0; r += 0.17) {
      auto logpdf = [&](double sv) { return -(r - sv) * (r - sv) / (2.0 * sigma * sigma); };
      worst = std::max(worst, std::fabs(ch.llr(r) - 0.5 * (logpdf(1.0) - logpdf(-1.0))));
    }
  }
  std::ostringstream s;
  s << "max formula error " << worst;
  msg = s.str();
  return worst <= 1e-9;
}

bool criterion9(std::string& msg) {
  SimConfig cfg;
  cfg.code_file = kCodesDir + "/tcc_n12.txt";
  cfg.channel_specs = {"bsc:0.05", "bec:0.3"};
  cfg.decoders = {"amp", "bp"};
  cfg.trials = 50;
  cfg.base_seed = 11;
  cfg.raw_out = "acceptance_raw_a.csv";
  cfg.agg_out = "acceptance_agg_a.csv";
  run_experiment(cfg);
  cfg.raw_out = "acceptance_raw_b.csv";
  cfg.agg_out = "acceptance_agg_b.csv";
  run_experiment(cfg);

  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  const std::string a = slurp("acceptance_raw_a.csv"), b = slurp("acceptance_raw_b.csv");
  msg = a == b ? "raw CSVs byte-identical (" + std::to_string(a.size()) + " bytes)"
               : "raw CSVs differ";
  return !a.empty() && a == b;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
  };
  std::vector<Entry> entries = {
      {1, "pair-sum engine matches enumeration"},
      {2, "transfer steps preserve the weight sum and the maximizer"},
      {3, "pair sum never raised; single transfers balance; closed form is the minimizer"},
      {4, "trace objective is non-decreasing"},
      {5, "successful decodes always land in the code"},
      {6, "noiseless decoding is exact and immediate"},
      {7, "amplification vs exhaustive ML frame error rates"},
      {8, "channel formulas"},
      {9, "simulate is byte-deterministic"},
  };

  std::string fer_table;
  auto run = [&](int id, const std::function<bool(std::string&)>& fn) {
    Entry& e = entries[id - 1];
    const auto start = std::chrono::steady_clock::now();
    try {
      e.pass = fn(e.detail);
    } catch (const std::exception& ex) {
      e.pass = false;
      e.detail = std::string("exception: ") + ex.what();
    }
    e.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  run(1, criterion1);
  run(2, criterion2);
  run(3, criterion3);
  run(4, criterion4);
  run(6, criterion6);
  run(7, [&](std::string& m) { return criterion7(m, fer_table); });
  run(8, criterion8);
  run(9, criterion9);
  run(5, criterion5);  // tallied across everything above

  bool all = true;
  for (const Entry& e : entries) {
    std::printf("[%s] %d. %s  (%s; %.1fs)\n", e.pass ? "PASS" : "FAIL", e.id, e.name,
                e.detail.c_str(), e.seconds);
    all = all && e.pass;
  }
  if (!fer_table.empty()) std::printf("\nframe error rates, 2000 trials per point:\n%s", fer_table.c_str());
  return all ? 0 : 1;
}
