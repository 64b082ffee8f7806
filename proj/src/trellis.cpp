#include "tcc/trellis.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tcc {

namespace {

struct IdEdge {
  std::int64_t from;
  std::int64_t to;
  Symbol label;
};

// Prunes states that cannot reach an accepting state, renumbers the survivors
// per level in ascending id order, and emits the final Trellis. Forward
// reachability is already guaranteed by the breadth-first construction.
Trellis finalize(int n, const std::vector<std::vector<IdEdge>>& raw,
                 const std::set<std::int64_t>& accepting) {
  std::vector<std::set<std::int64_t>> keep(n + 1);
  keep[n] = accepting;
  for (int t = n - 1; t >= 0; --t) {
    for (const IdEdge& e : raw[t]) {
      if (keep[t + 1].count(e.to)) keep[t].insert(e.from);
    }
  }
  if (keep[0].empty()) throw std::invalid_argument("trellis construction: no start-to-end path");

  std::vector<std::map<std::int64_t, std::int32_t>> index(n + 1);
  Trellis out;
  out.n = n;
  out.level_sizes.resize(n + 1);
  out.state_ids.resize(n + 1);
  for (int l = 0; l <= n; ++l) {
    std::int32_t k = 0;
    for (std::int64_t id : keep[l]) {
      index[l][id] = k++;
      out.state_ids[l].push_back(id);
    }
    out.level_sizes[l] = k;
  }
  out.sections.resize(n);
  for (int t = 0; t < n; ++t) {
    for (const IdEdge& e : raw[t]) {
      if (!keep[t].count(e.from) || !keep[t + 1].count(e.to)) continue;
      out.sections[t].push_back({index[t][e.from], index[t + 1][e.to], e.label});
    }
    std::sort(out.sections[t].begin(), out.sections[t].end(), [](const TrellisEdge& a, const TrellisEdge& b) {
      return std::tie(a.from, a.label, a.to) < std::tie(b.from, b.label, b.to);
    });
  }
  out.positions.resize(n);
  for (int t = 0; t < n; ++t) out.positions[t] = t;
  return out;
}

Symbol bit_to_symbol(int b) { return b == 0 ? +1 : -1; }

}  // namespace

Trellis build_conv_trellis(const std::vector<std::uint32_t>& generators, int memory, int info_len,
                           bool terminated) {
  if (memory < 1 || memory > 16)
    throw std::invalid_argument("build_conv_trellis: memory must be in 1..16");
  if (info_len < 1) throw std::invalid_argument("build_conv_trellis: info_len must be >= 1");
  if (generators.empty()) throw std::invalid_argument("build_conv_trellis: no generators");
  for (std::uint32_t g : generators) {
    if (g == 0) throw std::invalid_argument("build_conv_trellis: zero generator polynomial");
    if (g >= (1u << (memory + 1)))
      throw std::invalid_argument("build_conv_trellis: generator does not fit in memory+1 bits");
  }

  const int m_out = static_cast<int>(generators.size());
  const int steps = info_len + (terminated ? memory : 0);
  const int n = m_out * steps;
  const std::uint32_t mask = (1u << memory) - 1;

  std::vector<std::vector<IdEdge>> raw(n);
  std::set<std::int64_t> frontier = {0};
  for (int t = 0; t < steps; ++t) {
    std::set<std::int64_t> next;
    const bool tail = t >= info_len;
    for (std::int64_t u : frontier) {
      for (int b = 0; b <= (tail ? 0 : 1); ++b) {
        const std::uint32_t c = (static_cast<std::uint32_t>(u) << 1) | static_cast<std::uint32_t>(b);
        const std::uint32_t u2 = c & mask;
        for (int e = 0; e < m_out; ++e) {
          const int out_bit = std::popcount(generators[e] & c) & 1;
          // chain each step through private mid-states keyed by the full
          // register content c; merging happens only at step boundaries
          const std::int64_t from = e == 0 ? u : static_cast<std::int64_t>(c) + (1ll << 40);
          const std::int64_t to = e == m_out - 1 ? u2 : static_cast<std::int64_t>(c) + (1ll << 40);
          raw[t * m_out + e].push_back({from, to, bit_to_symbol(out_bit)});
        }
        next.insert(u2);
      }
    }
    frontier = std::move(next);
  }
  std::set<std::int64_t> accepting = terminated ? std::set<std::int64_t>{0} : frontier;
  return finalize(n, raw, accepting);
}

Trellis build_check_trellis(const std::vector<std::vector<int>>& check_rows) {
  if (check_rows.empty()) throw std::invalid_argument("build_check_trellis: need at least one row");
  const int m = static_cast<int>(check_rows.size());
  const int n = static_cast<int>(check_rows[0].size());
  if (n < 1) throw std::invalid_argument("build_check_trellis: empty row");
  if (m > 30) throw std::invalid_argument("build_check_trellis: too many rows");
  std::vector<std::uint32_t> col(n, 0);
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(check_rows[i].size()) != n)
      throw std::invalid_argument("build_check_trellis: ragged matrix");
    bool nonzero = false;
    for (int j = 0; j < n; ++j) {
      const int v = check_rows[i][j];
      if (v != 0 && v != 1) throw std::invalid_argument("build_check_trellis: entries must be 0/1");
      if (v) {
        col[j] |= 1u << i;
        nonzero = true;
      }
    }
    if (!nonzero) throw std::invalid_argument("build_check_trellis: all-zero check row");
  }

  std::vector<std::vector<IdEdge>> raw(n);
  std::set<std::int64_t> frontier = {0};
  for (int t = 0; t < n; ++t) {
    std::set<std::int64_t> next;
    for (std::int64_t s : frontier) {
      for (int b = 0; b <= 1; ++b) {
        const std::int64_t s2 = b ? (s ^ col[t]) : s;
        raw[t].push_back({s, s2, bit_to_symbol(b)});
        next.insert(s2);
      }
    }
    frontier = std::move(next);
  }
  return finalize(n, raw, {0});
}

Trellis build_free_trellis(int n) {
  if (n < 1) throw std::invalid_argument("build_free_trellis: n must be >= 1");
  std::vector<std::vector<IdEdge>> raw(n);
  for (int t = 0; t < n; ++t) {
    raw[t].push_back({0, 0, -1});
    raw[t].push_back({0, 0, +1});
  }
  return finalize(n, raw, {0});
}

bool contains(const Trellis& trellis, const BinaryWord& word) {
  if (static_cast<int>(word.size()) != trellis.n)
    throw std::invalid_argument("contains: word length does not match trellis");
  std::vector<char> reach(trellis.level_sizes[0], 1);
  for (int t = 0; t < trellis.n; ++t) {
    std::vector<char> next(trellis.level_sizes[t + 1], 0);
    const Symbol want = word[trellis.positions[t]];
    bool any = false;
    for (const TrellisEdge& e : trellis.sections[t]) {
      if (e.label == want && reach[e.from]) {
        next[e.to] = 1;
        any = true;
      }
    }
    if (!any) return false;
    reach = std::move(next);
  }
  return true;
}

namespace {

void enumerate_rec(const Trellis& t, int sec, std::int32_t state, std::vector<Symbol>& cur,
                   std::vector<BinaryWord>& out) {
  if (sec == t.n) {
    out.emplace_back(cur);
    return;
  }
  for (const TrellisEdge& e : t.sections[sec]) {
    if (e.from != state) continue;
    cur[t.positions[sec]] = e.label;
    enumerate_rec(t, sec + 1, e.to, cur, out);
  }
}

}  // namespace

std::vector<BinaryWord> enumerate_codewords(const Trellis& trellis) {
  if (trellis.n > 24) throw std::invalid_argument("enumerate_codewords: refused for n > 24");
  if (trellis.n == 0) throw std::invalid_argument("enumerate_codewords: empty trellis");

  // path count first, so over-large codes are refused instead of ground through
  std::vector<double> paths(trellis.level_sizes[trellis.n], 1.0);
  for (int t = trellis.n - 1; t >= 0; --t) {
    std::vector<double> prev(trellis.level_sizes[t], 0.0);
    for (const TrellisEdge& e : trellis.sections[t]) prev[e.from] += paths[e.to];
    paths = std::move(prev);
  }
  double total = 0;
  for (double p : paths) total += p;
  if (total > static_cast<double>(1 << 20))
    throw std::invalid_argument("enumerate_codewords: refused, more than 2^20 codewords");

  std::vector<BinaryWord> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<Symbol> cur(trellis.n, +1);
  for (std::int32_t s = 0; s < trellis.level_sizes[0]; ++s) enumerate_rec(trellis, 0, s, cur, out);
  std::sort(out.begin(), out.end());
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] == out[i - 1])
      throw std::logic_error("enumerate_codewords: duplicate codeword, path map is not injective");
  }
  return out;
}

IntersectionCode make_intersection(Trellis t1, Trellis t2) {
  if (t1.n != t2.n || t1.n == 0)
    throw std::invalid_argument("make_intersection: constituent lengths differ or are zero");
  IntersectionCode code;
  code.n = t1.n;
  code.trellis1 = std::move(t1);
  code.trellis2 = std::move(t2);
  return code;
}

IntersectionCode make_intersection(Trellis t1, Trellis t2, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != t2.n)
    throw std::invalid_argument("make_intersection: permutation length mismatch");
  std::vector<char> seen(perm.size(), 0);
  for (int p : perm) {
    if (p < 0 || p >= static_cast<int>(perm.size()) || seen[p])
      throw std::invalid_argument("make_intersection: not a permutation");
    seen[p] = 1;
  }
  t2.positions = perm;
  return make_intersection(std::move(t1), std::move(t2));
}

namespace {

std::vector<std::string> strip_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

long parse_int(const std::string& tok, const char* what) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(tok, &pos, 10);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("code file: bad ") + what + " '" + tok + "'");
  }
}

std::uint32_t parse_octal(const std::string& tok) {
  for (char c : tok) {
    if (c < '0' || c > '7') throw std::invalid_argument("code file: bad octal generator '" + tok + "'");
  }
  return static_cast<std::uint32_t>(std::stoul(tok, nullptr, 8));
}

}  // namespace

IntersectionCode parse_code_text(const std::string& text) {
  const auto lines = strip_lines(text);
  std::vector<Trellis> constituents;
  std::vector<int> perm;
  bool have_perm = false;

  std::size_t i = 0;
  auto next_tokens = [&]() -> std::vector<std::string> {
    while (i < lines.size()) {
      auto toks = tokens_of(lines[i++]);
      if (!toks.empty()) return toks;
    }
    return {};
  };

  for (auto toks = next_tokens(); !toks.empty(); toks = next_tokens()) {
    const std::string& kw = toks[0];
    if (kw == "conv") {
      if (have_perm) throw std::invalid_argument("code file: constituent after perm block");
      if (toks.size() < 4) throw std::invalid_argument("code file: conv needs memory, info_len, generators");
      const int memory = static_cast<int>(parse_int(toks[1], "memory"));
      const int info_len = static_cast<int>(parse_int(toks[2], "info_len"));
      std::vector<std::uint32_t> gens;
      for (std::size_t g = 3; g < toks.size(); ++g) gens.push_back(parse_octal(toks[g]));
      constituents.push_back(build_conv_trellis(gens, memory, info_len, true));
    } else if (kw == "checks") {
      if (have_perm) throw std::invalid_argument("code file: constituent after perm block");
      if (toks.size() != 3) throw std::invalid_argument("code file: checks needs m and n");
      const int m = static_cast<int>(parse_int(toks[1], "check count"));
      const int n = static_cast<int>(parse_int(toks[2], "code length"));
      if (m < 1 || n < 1) throw std::invalid_argument("code file: checks dimensions must be positive");
      std::vector<std::vector<int>> rows;
      for (int r = 0; r < m; ++r) {
        auto row_toks = next_tokens();
        if (static_cast<int>(row_toks.size()) != n)
          throw std::invalid_argument("code file: check row with wrong entry count");
        std::vector<int> row(n);
        for (int j = 0; j < n; ++j) row[j] = static_cast<int>(parse_int(row_toks[j], "check entry"));
        rows.push_back(std::move(row));
      }
      constituents.push_back(build_check_trellis(rows));
    } else if (kw == "perm") {
      if (toks.size() != 2) throw std::invalid_argument("code file: perm needs a length");
      const int n = static_cast<int>(parse_int(toks[1], "perm length"));
      std::vector<int> entries;
      while (static_cast<int>(entries.size()) < n) {
        auto row_toks = next_tokens();
        if (row_toks.empty()) throw std::invalid_argument("code file: perm block is short");
        for (const auto& t : row_toks) {
          const long v = parse_int(t, "perm entry");
          if (v < 1 || v > n) throw std::invalid_argument("code file: perm entries must be in 1..n");
          entries.push_back(static_cast<int>(v) - 1);
        }
      }
      if (static_cast<int>(entries.size()) != n)
        throw std::invalid_argument("code file: perm block has extra entries");
      perm = std::move(entries);
      have_perm = true;
    } else {
      throw std::invalid_argument("code file: unknown keyword '" + kw + "'");
    }
  }

  if (constituents.size() != 2)
    throw std::invalid_argument("code file: expected exactly two constituent codes");
  if (have_perm)
    return make_intersection(std::move(constituents[0]), std::move(constituents[1]), perm);
  return make_intersection(std::move(constituents[0]), std::move(constituents[1]));
}

IntersectionCode load_code_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open code file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_code_text(buf.str());
}

}  // namespace tcc
