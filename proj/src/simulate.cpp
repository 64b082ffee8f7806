#include "tcc/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "tcc/oracle.hpp"
#include "tcc/rng.hpp"

namespace tcc {

namespace {

constexpr std::uint64_t kSampleSalt = 0xC2B2AE3D27D4EB4FULL;
constexpr std::uint64_t kNoiseSalt = 0x165667B19E3779F9ULL;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "0" || v == "false") return false;
  if (v == "1" || v == "true") return true;
  throw std::invalid_argument("sim config: " + key + " must be 0/1");
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument("sim config: bad number for " + key);
  }
}

long parse_long(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const long d = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument("sim config: bad integer for " + key);
  }
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

SimConfig parse_sim_config(const std::string& text) {
  SimConfig cfg;
  bool have_code = false, have_channels = false, have_trials = false;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("sim config: expected key=value, got '" + line + "'");
    const std::string key = line.substr(0, eq);
    const std::string val = line.substr(eq + 1);

    if (key == "code") { cfg.code_file = val; have_code = true; }
    else if (key == "channels") { cfg.channel_specs = split_list(val); have_channels = true; }
    else if (key == "decoders") cfg.decoders = split_list(val);
    else if (key == "trials") { cfg.trials = static_cast<int>(parse_long(val, key)); have_trials = true; }
    else if (key == "seed") cfg.base_seed = static_cast<std::uint64_t>(parse_long(val, key));
    else if (key == "raw_out") cfg.raw_out = val;
    else if (key == "agg_out") cfg.agg_out = val;
    else if (key == "oracle_compare") cfg.oracle_compare = parse_bool(val, key);
    else if (key == "all_ones") cfg.all_ones = parse_bool(val, key);
    else if (key == "kappa") cfg.amp.kappa = parse_double(val, key);
    else if (key == "delta_max") cfg.amp.delta_max = parse_double(val, key);
    else if (key == "rho_grid") {
      cfg.amp.rho_grid.clear();
      for (const auto& tok : split_list(val)) cfg.amp.rho_grid.push_back(parse_double(tok, key));
    }
    else if (key == "max_iter") cfg.amp.max_iter = static_cast<int>(parse_long(val, key));
    else if (key == "backtrack_limit") cfg.amp.backtrack_limit = static_cast<int>(parse_long(val, key));
    else if (key == "bp_max_iter") cfg.bp.max_iter = static_cast<int>(parse_long(val, key));
    else if (key == "bp_damping") cfg.bp.damping = parse_double(val, key);
    else throw std::invalid_argument("sim config: unknown key '" + key + "'");
  }
  if (!have_code || !have_channels || !have_trials)
    throw std::invalid_argument("sim config: code, channels and trials are required");
  if (cfg.trials < 1) throw std::invalid_argument("sim config: trials must be >= 1");
  if (cfg.channel_specs.empty()) throw std::invalid_argument("sim config: empty channel sweep");
  if (cfg.decoders.empty()) throw std::invalid_argument("sim config: empty decoder list");
  for (const auto& d : cfg.decoders) {
    if (d != "amp" && d != "bp" && d != "ml")
      throw std::invalid_argument("sim config: unknown decoder '" + d + "'");
  }
  return cfg;
}

SimConfig load_sim_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open sim config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sim_config(buf.str());
}

std::pair<double, double> wilson_interval(int k, int n) {
  if (n <= 0) return {0.0, 1.0};
  const double z = 1.96;
  const double p = static_cast<double>(k) / n;
  const double z2n = z * z / n;
  const double denom = 1.0 + z2n;
  const double center = (p + z2n / 2.0) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2n / (4.0 * n)) / denom;
  // the bounds are exact at the extremes; don't let round-off pull them in
  const double lo = k == 0 ? 0.0 : std::max(0.0, center - half);
  const double hi = k == n ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

std::uint64_t trial_seed(std::uint64_t base_seed, int sweep_index, int trial_index) {
  const std::uint64_t sweep_stream =
      splitmix64(base_seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(sweep_index) + 1));
  return splitmix64(sweep_stream + static_cast<std::uint64_t>(trial_index));
}

BinaryWord sample_codeword(const IntersectionCode& code, std::uint64_t seed) {
  Rng rng(seed);
  if (code.n <= 20) {
    std::vector<BinaryWord> members;
    for (const BinaryWord& w : enumerate_codewords(code.trellis1)) {
      if (contains(code.trellis2, w)) members.push_back(w);
    }
    if (members.empty()) throw std::runtime_error("sample_codeword: empty intersection code");
    return members[rng.next_u64() % members.size()];
  }

  // uniform over first-constituent paths, rejected against the second
  const Trellis& t = code.trellis1;
  std::vector<std::vector<double>> count(t.n + 1);
  count[t.n].assign(t.level_sizes[t.n], 1.0);
  for (int sec = t.n - 1; sec >= 0; --sec) {
    count[sec].assign(t.level_sizes[sec], 0.0);
    for (const TrellisEdge& e : t.sections[sec]) count[sec][e.from] += count[sec + 1][e.to];
  }
  double start_total = 0;
  for (double c : count[0]) start_total += c;

  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<Symbol> symbols(t.n, +1);
    double pick = rng.uniform() * start_total;
    std::int32_t state = 0;
    for (std::int32_t s = 0; s < t.level_sizes[0]; ++s) {
      if (pick < count[0][s]) { state = s; break; }
      pick -= count[0][s];
    }
    for (int sec = 0; sec < t.n; ++sec) {
      double u = rng.uniform() * count[sec][state];
      const TrellisEdge* chosen = nullptr;
      for (const TrellisEdge& e : t.sections[sec]) {
        if (e.from != state) continue;
        if (u < count[sec + 1][e.to]) { chosen = &e; break; }
        u -= count[sec + 1][e.to];
      }
      if (!chosen) {  // float round-off at the top edge; take the last one
        for (const TrellisEdge& e : t.sections[sec])
          if (e.from == state) chosen = &e;
      }
      symbols[t.positions[sec]] = chosen->label;
      state = chosen->to;
    }
    BinaryWord word{symbols};
    if (contains(code.trellis2, word)) return word;
  }
  throw std::runtime_error("sample_codeword: rejection cap exceeded; consider all_ones");
}

std::vector<AggregateRow> aggregate_records(const std::vector<TrialRecord>& records, int n) {
  std::vector<AggregateRow> rows;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  std::vector<std::pair<int, long>> counters;  // frame errors, bit errors
  for (const TrialRecord& rec : records) {
    const auto key = std::make_pair(rec.sweep, rec.decoder);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, rows.size()).first;
      rows.push_back({rec.sweep, rec.decoder, 0, 0, 0, 0, 0});
      counters.emplace_back(0, 0);
    }
    rows[it->second].trials += 1;
    counters[it->second].first += rec.frame_error ? 1 : 0;
    counters[it->second].second += rec.bit_errors;
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto [fe, be] = counters[i];
    rows[i].fer = static_cast<double>(fe) / rows[i].trials;
    const auto [lo, hi] = wilson_interval(fe, rows[i].trials);
    rows[i].fer_lo = lo;
    rows[i].fer_hi = hi;
    rows[i].ber = static_cast<double>(be) / (static_cast<double>(rows[i].trials) * n);
  }
  return rows;
}

void write_raw_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "sweep,trial,decoder,status,iters,bit_errors,frame_error,ml_match,final_J\n";
  for (const TrialRecord& r : records) {
    out << r.sweep << ',' << r.trial << ',' << r.decoder << ',' << to_string(r.status) << ','
        << r.iterations << ',' << r.bit_errors << ',' << (r.frame_error ? 1 : 0) << ',';
    if (r.ml_match >= 0) out << r.ml_match;
    out << ',' << fmt(r.final_j) << '\n';
  }
}

void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows) {
  out << "sweep,decoder,trials,fer,fer_lo,fer_hi,ber\n";
  for (const AggregateRow& r : rows) {
    out << r.sweep << ',' << r.decoder << ',' << r.trials << ',' << fmt(r.fer) << ',' << fmt(r.fer_lo)
        << ',' << fmt(r.fer_hi) << ',' << fmt(r.ber) << '\n';
  }
}

ExperimentResult run_experiment(const SimConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
  if (config.channel_specs.empty()) throw std::invalid_argument("run_experiment: empty sweep");
  const IntersectionCode code = load_code_file(config.code_file);

  std::vector<ChannelModel> channels;
  for (const auto& spec : config.channel_specs) channels.push_back(ChannelModel::parse(spec));

  const bool want_ml =
      std::find(config.decoders.begin(), config.decoders.end(), "ml") != config.decoders.end();
  if (want_ml && code.n > 20)
    throw std::invalid_argument("run_experiment: ml decoder requires n <= 20");
  const bool oracle_on = config.oracle_compare && code.n <= 20;
  const bool need_ml = want_ml || oracle_on;

  // The exhaustive scorer reduces to an argmax over the enumerated
  // intersection, so enumerate it once instead of per trial.
  std::vector<BinaryWord> members;
  if (need_ml || code.n <= 20) {
    for (const BinaryWord& w : enumerate_codewords(code.trellis1)) {
      if (contains(code.trellis2, w)) members.push_back(w);
    }
    if (members.empty()) throw std::runtime_error("run_experiment: empty intersection code");
  }
  auto ml_decide = [&](const ReceivedWord& r) {
    std::size_t best = 0;
    double best_score = kNegInf;
    for (std::size_t i = 0; i < members.size(); ++i) {
      double score = 0;
      for (int j = 0; j < code.n; ++j) score += r[j] * members[i][j];
      if (score > best_score) { best_score = score; best = i; }
    }
    return members[best];
  };

  ExperimentResult result;
  for (std::size_t si = 0; si < channels.size(); ++si) {
    const ChannelModel& ch = channels[si];
    for (int trial = 0; trial < config.trials; ++trial) {
      const std::uint64_t seed = trial_seed(config.base_seed, static_cast<int>(si), trial);
      const BinaryWord sent = config.all_ones
                                  ? BinaryWord::all_plus(code.n)
                                  : sample_codeword(code, splitmix64(seed ^ kSampleSalt));
      const ReceivedWord r = ch.transmit(sent, splitmix64(seed ^ kNoiseSalt));
      BinaryWord ml_word;
      if (need_ml) ml_word = ml_decide(r);

      for (const std::string& dec : config.decoders) {
        TrialRecord rec;
        rec.sweep = config.channel_specs[si];
        rec.trial = trial;
        rec.decoder = dec;
        BinaryWord c_hat;
        if (dec == "amp") {
          const DecodeResult res = decode(code, ch, r, config.amp);
          rec.status = res.status;
          rec.iterations = res.iterations;
          rec.final_j = res.trace.empty() ? 0.0 : res.trace.back().objective;
          c_hat = res.c_hat;
        } else if (dec == "bp") {
          const DecodeResult res = bp_decode(code, ch, r, config.bp);
          rec.status = res.status;
          rec.iterations = res.iterations;
          rec.final_j = 0.0;
          c_hat = res.c_hat;
        } else {
          rec.status = DecodeStatus::success;
          rec.iterations = 0;
          rec.final_j = 0.0;
          c_hat = ml_word;
        }
        rec.bit_errors = static_cast<int>(hamming_distance(c_hat, sent));
        rec.frame_error = !(rec.status == DecodeStatus::success && c_hat == sent);
        rec.ml_match = oracle_on ? (c_hat == ml_word ? 1 : 0) : -1;
        result.records.push_back(std::move(rec));
      }
    }
  }

  result.aggregates = aggregate_records(result.records, code.n);

  if (!config.raw_out.empty()) {
    std::ofstream out(config.raw_out);
    if (!out) throw std::runtime_error("cannot write raw csv '" + config.raw_out + "'");
    write_raw_csv(out, result.records);
  }
  if (!config.agg_out.empty()) {
    std::ofstream out(config.agg_out);
    if (!out) throw std::runtime_error("cannot write aggregate csv '" + config.agg_out + "'");
    write_aggregate_csv(out, result.aggregates);
  }
  return result;
}

}  // namespace tcc
