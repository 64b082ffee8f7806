#ifndef TCC_WORD_HPP
#define TCC_WORD_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcc {

// Bipolar symbol alphabet. Bits map as 0 -> +1, 1 -> -1 throughout.
using Symbol = std::int8_t;

/// Fixed-length word over {-1,+1}.
class BinaryWord {
 public:
  BinaryWord() = default;

  explicit BinaryWord(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    for (Symbol s : symbols_) {
      if (s != -1 && s != +1) throw std::invalid_argument("BinaryWord: symbols must be -1 or +1");
    }
  }

  static BinaryWord all_plus(std::size_t n) { return BinaryWord(std::vector<Symbol>(n, +1)); }

  static BinaryWord from_bits(const std::vector<int>& bits) {
    std::vector<Symbol> s(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] != 0 && bits[i] != 1) throw std::invalid_argument("BinaryWord: bits must be 0 or 1");
      s[i] = bits[i] == 0 ? +1 : -1;
    }
    return BinaryWord(std::move(s));
  }

  std::size_t size() const { return symbols_.size(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  const std::vector<Symbol>& symbols() const { return symbols_; }

  std::vector<int> to_bits() const {
    std::vector<int> bits(symbols_.size());
    for (std::size_t i = 0; i < symbols_.size(); ++i) bits[i] = symbols_[i] == +1 ? 0 : 1;
    return bits;
  }

  /// Compact rendering, e.g. "+--+".
  std::string to_string() const {
    std::string out;
    out.reserve(symbols_.size());
    for (Symbol s : symbols_) out.push_back(s == +1 ? '+' : '-');
    return out;
  }

  friend bool operator==(const BinaryWord&, const BinaryWord&) = default;
  // numeric order, -1 before +1
  friend bool operator<(const BinaryWord& a, const BinaryWord& b) { return a.symbols_ < b.symbols_; }

 private:
  std::vector<Symbol> symbols_;
};

inline std::size_t hamming_distance(const BinaryWord& a, const BinaryWord& b) {
  if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

/// Channel output. BSC: -1/+1; BEC: -1/0/+1 with 0 meaning erased; AWGN: any real.
using ReceivedWord = std::vector<double>;

}  // namespace tcc

#endif
