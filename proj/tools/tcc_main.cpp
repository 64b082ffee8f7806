#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tcc/amp_decoder.hpp"
#include "tcc/bp_decoder.hpp"
#include "tcc/oracle.hpp"
#include "tcc/rng.hpp"
#include "tcc/simulate.hpp"

namespace {

tcc::ReceivedWord read_received_word(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file '" + path + "'");
  tcc::ReceivedWord r;
  double v;
  while (in >> v) r.push_back(v);
  if (static_cast<int>(r.size()) != n)
    throw std::invalid_argument("input word has " + std::to_string(r.size()) + " values, code length is " +
                                std::to_string(n));
  return r;
}

int run_decode(const std::string& code_file, const std::string& channel_spec, const std::string& decoder,
               const tcc::DecoderConfig& amp_cfg, const tcc::BpConfig& bp_cfg, const std::string& input_file,
               bool random, std::uint64_t seed, bool all_ones, bool oracle, const std::string& trace_out) {
  const tcc::IntersectionCode code = tcc::load_code_file(code_file);
  const tcc::ChannelModel channel = tcc::ChannelModel::parse(channel_spec);

  tcc::ReceivedWord r;
  std::optional<tcc::BinaryWord> sent;
  if (random) {
    sent = all_ones ? tcc::BinaryWord::all_plus(code.n)
                    : tcc::sample_codeword(code, tcc::splitmix64(seed));
    r = channel.transmit(*sent, tcc::splitmix64(seed ^ 0xD1B54A32D192ED03ULL));
  } else {
    r = read_received_word(input_file, code.n);
  }

  const tcc::DecodeResult result = decoder == "bp" ? tcc::bp_decode(code, channel, r, bp_cfg)
                                                   : tcc::decode(code, channel, r, amp_cfg);

  std::printf("status:      %s\n", tcc::to_string(result.status));
  std::printf("iterations:  %d\n", result.iterations);
  std::printf("c_hat:       %s\n", result.c_hat.to_string().c_str());
  if (sent) {
    std::printf("sent:        %s\n", sent->to_string().c_str());
    std::printf("bit_errors:  %zu\n", tcc::hamming_distance(result.c_hat, *sent));
  }
  if (!result.trace.empty()) std::printf("final_J:     %.12g\n", result.trace.back().objective);

  if (oracle) {
    const tcc::MlResult ml = tcc::ml_codeword_bruteforce(code, channel, r);
    std::printf("ml_word:     %s%s\n", ml.word.to_string().c_str(), ml.tie ? "  (tie)" : "");
    std::printf("ml_match:    %d\n", ml.word == result.c_hat ? 1 : 0);
  }

  if (!trace_out.empty()) {
    std::ofstream out(trace_out);
    if (!out) throw std::runtime_error("cannot write trace file '" + trace_out + "'");
    tcc::write_trace_csv(out, result.trace);
  }
  return 0;
}

int run_oracle_check(const std::string& code_file, int n_trials, std::uint64_t seed) {
  const tcc::IntersectionCode code = tcc::load_code_file(code_file);
  if (code.n > 14) throw std::invalid_argument("oracle-check: code length must be <= 14");

  double worst = 0;
  tcc::Rng rng(seed);
  for (int t = 0; t < n_trials; ++t) {
    std::vector<double> w1(code.n), w2(code.n);
    for (int j = 0; j < code.n; ++j) {
      w1[j] = 4.0 * rng.uniform() - 2.0;
      w2[j] = 4.0 * rng.uniform() - 2.0;
    }
    const double lambda = 0.25 + 1.75 * rng.uniform();

    const tcc::XiOracle ref = tcc::xi_bruteforce(code, w1, w2, lambda);
    const tcc::PairMarginals pm = tcc::pair_marginals(code, lambda, w1, w2);
    auto check = [&](double got, double want) {
      const double err = std::fabs(got - want) / std::max(1.0, std::fabs(want));
      worst = std::max(worst, err);
      if (err > 1e-9) throw std::runtime_error("oracle-check: engine disagrees with enumeration");
    };
    check(pm.log_xi, ref.log_total);
    for (int j = 0; j < code.n; ++j) {
      const tcc::XiSplit s = tcc::xi_split(pm.mt1, pm.mt2, j);
      check(s.log_xi_m1, ref.splits[j].log_xi_m1);
      check(s.log_xi_0, ref.splits[j].log_xi_0);
      check(s.log_xi_p1, ref.splits[j].log_xi_p1);
    }
  }
  std::printf("oracle-check: %d trials, max relative error %.3g\n", n_trials, worst);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trellis-constrained code decoding toolkit"};
  app.require_subcommand(1);

  // decode
  auto* dec = app.add_subcommand("decode", "decode one received word");
  std::string code_file, channel_spec, decoder = "amp", input_file, trace_out;
  bool random = false, all_ones = false, oracle = false;
  std::uint64_t seed = 0;
  tcc::DecoderConfig amp_cfg;
  tcc::BpConfig bp_cfg;
  double delta_max = 0;
  dec->add_option("--code", code_file, "code definition file")->required();
  dec->add_option("--channel", channel_spec, "channel spec, e.g. bsc:0.05")->required();
  dec->add_option("--decoder", decoder, "amp or bp")->check(CLI::IsMember({"amp", "bp"}));
  dec->add_option("--kappa", amp_cfg.kappa, "transfer step scale");
  auto* dm = dec->add_option("--delta-max", delta_max, "per-position transfer cap");
  dec->add_option("--rho-grid", amp_cfg.rho_grid, "rescaling factors")->delimiter(',');
  dec->add_option("--max-iter", amp_cfg.max_iter, "iteration budget");
  dec->add_option("--backtrack-limit", amp_cfg.backtrack_limit, "kappa halvings per step");
  dec->add_option("--bp-max-iter", bp_cfg.max_iter, "bp iteration budget");
  dec->add_option("--bp-damping", bp_cfg.damping, "bp extrinsic damping");
  auto* inp = dec->add_option("--input", input_file, "file with n received values");
  auto* rnd = dec->add_flag("--random", random, "transmit a random codeword instead");
  dec->add_flag("--all-ones", all_ones, "with --random, send the all-(+1) word");
  dec->add_flag("--oracle", oracle, "also run the exhaustive ML reference");
  dec->add_option("--seed", seed, "seed for --random");
  dec->add_option("--trace-out", trace_out, "write the iteration trace CSV here");
  inp->excludes(rnd);

  // simulate
  auto* sim = app.add_subcommand("simulate", "run a Monte Carlo sweep from a config file");
  std::string sim_config_file;
  sim->add_option("--config", sim_config_file, "key=value config file")->required();

  // oracle-check
  auto* chk = app.add_subcommand("oracle-check", "cross-check the marginal engine against enumeration");
  std::string chk_code_file;
  int n_trials = 100;
  std::uint64_t chk_seed = 0;
  chk->add_option("--code", chk_code_file, "code definition file")->required();
  chk->add_option("--n-trials", n_trials, "number of random-weight trials");
  chk->add_option("--seed", chk_seed, "rng seed");

  try {
    app.parse(argc, argv);
    if (dec->parsed()) {
      if (!random && input_file.empty())
        throw std::invalid_argument("decode: either --input FILE or --random is required");
      if (dm->count() > 0) amp_cfg.delta_max = delta_max;
      return run_decode(code_file, channel_spec, decoder, amp_cfg, bp_cfg, input_file, random, seed,
                        all_ones, oracle, trace_out);
    }
    if (sim->parsed()) {
      const tcc::SimConfig cfg = tcc::load_sim_config(sim_config_file);
      const tcc::ExperimentResult res = tcc::run_experiment(cfg);
      std::ostringstream table;
      tcc::write_aggregate_csv(table, res.aggregates);
      std::fputs(table.str().c_str(), stdout);
      return 0;
    }
    return run_oracle_check(chk_code_file, n_trials, chk_seed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
