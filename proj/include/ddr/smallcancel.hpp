#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ddr/core.hpp"
#include "ddr/weights.hpp"

namespace ddr {

struct SymmetrizedRelator {
  std::size_t source = 0;
  std::size_t rotation = 0;
  bool inverted = false;
  Word word;
};

/// For each relator r in order: the rotations of r, then the rotations of r^-1.
std::vector<SymmetrizedRelator> symmetrized_closure(const Presentation& p);

/// Longest common prefix of each element with any other element of the
/// closure, distinct as an occurrence; capped at the element's length.
class PieceTable {
 public:
  explicit PieceTable(const std::vector<SymmetrizedRelator>& closure);

  std::size_t max_piece(std::size_t element) const { return max_piece_.at(element); }

  /// Element with the same provenance as `element`, rotated `shift` further.
  std::size_t shifted(std::size_t element, std::size_t shift) const;

 private:
  std::vector<std::size_t> max_piece_;
  std::vector<std::size_t> block_start_;
  std::vector<std::size_t> block_length_;
};

struct PieceDecomposition {
  std::size_t element = 0;
  std::vector<std::size_t> piece_lengths;
};

/// Fewest pieces whose product is the element; nullopt when some letter
/// lies in no piece.
std::optional<PieceDecomposition> min_piece_decomposition(
    const std::vector<SymmetrizedRelator>& closure, const PieceTable& table,
    std::size_t element);

struct SmallCancellationResult {
  std::size_t p = 0;
  std::size_t q = 0;
  bool cp = true;
  bool tq = true;
  std::optional<PieceDecomposition> cp_witness;  // fewer than p pieces
  std::optional<std::vector<int>> tq_witness;    // reduced cycle, 3 <= length < q
};

SmallCancellationResult check_small_cancellation(const Presentation& p, std::size_t cp,
                                                 std::size_t tq);

enum class SmallCancellationCase { C4T4, C6T3 };

const char* to_string(SmallCancellationCase c);

/// Weight 1 on edges that lie on a reduced 2-cycle, otherwise 1/2 (C(4)T(4))
/// or 2/3 (C(6)T(3)).
WeightAssignment small_cancellation_weights(const Presentation& p, SmallCancellationCase c);

struct S44Result {
  bool certified = false;
  std::optional<SmallCancellationCase> fired;
  std::string failed_hypothesis;  // empty on success
  std::string detail;
  SmallCancellationResult c4t4;
  SmallCancellationResult c6t3;
  std::optional<std::pair<std::size_t, std::size_t>> adjacent_s_letters;  // (relator, position)
  std::optional<WeightCertificate> weights;
};

inline constexpr const char* kHypothesisSmallCancellation = "C(4)T(4) or C(6)T(3)";
inline constexpr const char* kHypothesisConsecutive = "no two consecutive letters in S^{+-1}";
inline constexpr const char* kHypothesisWeightCrossCheck = "constructed weights pass the weight test";

/// T(q) is read on the star graph as "no reduced cycle of length L with 3 <= L < q".
S44Result certify_s44(const Presentation& p, const GeneratorSet& s);

}  // namespace ddr
