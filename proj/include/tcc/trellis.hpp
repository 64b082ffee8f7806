#ifndef TCC_TRELLIS_HPP
#define TCC_TRELLIS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tcc/word.hpp"

namespace tcc {

struct TrellisEdge {
  std::int32_t from = 0;  // state index at the section's left level
  std::int32_t to = 0;    // state index at the right level
  Symbol label = +1;
};

/// Layered graph with one section per code symbol. After construction every
/// state and edge lies on at least one left-to-right path, all states of the
/// first level are valid sources and all states of the last level are valid
/// sinks, and distinct paths carry distinct label sequences.
///
/// positions[t] is the transmitted symbol index carried by section t; it is
/// the identity unless an interleaving permutation was applied, and it is what
/// membership tests, marginalization and enumeration index words by.
struct Trellis {
  int n = 0;
  std::vector<std::vector<TrellisEdge>> sections;        // size n
  std::vector<std::int32_t> level_sizes;                 // size n+1
  std::vector<std::vector<std::int64_t>> state_ids;      // per level, sorted; shift-register or syndrome value
  std::vector<int> positions;                            // size n

  std::size_t num_edges() const {
    std::size_t e = 0;
    for (const auto& sec : sections) e += sec.size();
    return e;
  }
};

/// Trellis of a terminated convolutional code, one section per output bit.
/// Generators are tap masks with bit k addressing the input delayed by k
/// steps (so the octal pair (7,5) is the usual memory-2 code). Termination
/// appends `memory` zero-input steps driving the register back to zero.
Trellis build_conv_trellis(const std::vector<std::uint32_t>& generators, int memory, int info_len,
                           bool terminated = true);

/// Syndrome trellis of the binary code {s : H s = 0} with H given as 0/1 rows.
/// States are partial syndromes, at most 2^m per level. All-zero rows are
/// rejected as degenerate.
Trellis build_check_trellis(const std::vector<std::vector<int>>& check_rows);

/// Unconstrained code {-1,+1}^n as a single-state trellis.
Trellis build_free_trellis(int n);

/// True iff the word labels some start-to-end path. O(n * states + edges).
bool contains(const Trellis& trellis, const BinaryWord& word);

/// All codewords, deduplicated and sorted (numeric order, -1 < +1).
/// Refuses n > 24 or more than 2^20 paths.
std::vector<BinaryWord> enumerate_codewords(const Trellis& trellis);

/// A pair of equal-length constituent trellises; the code is the set of words
/// contained in both. Interleaving between the constituents is baked into
/// trellis2.positions.
struct IntersectionCode {
  Trellis trellis1;
  Trellis trellis2;
  int n = 0;
};

IntersectionCode make_intersection(Trellis t1, Trellis t2);

/// Same, with a permutation applied to the second constituent: section t of
/// trellis2 carries transmitted position perm[t] (0-based, a bijection).
IntersectionCode make_intersection(Trellis t1, Trellis t2, const std::vector<int>& perm);

/// Code-definition text: one `conv <memory> <info_len> <gen_octal>...` or
/// `checks <m> <n>` block (followed by m rows of 0/1) per constituent, exactly
/// two constituents, then an optional `perm <n>` block with a permutation of
/// 1..n applied to the second constituent. `#` starts a comment.
IntersectionCode parse_code_text(const std::string& text);
IntersectionCode load_code_file(const std::string& path);

}  // namespace tcc

#endif
