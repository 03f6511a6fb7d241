#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "epclass/berry.hpp"
#include "epclass/errors.hpp"
#include "epclass/permutation.hpp"

namespace epclass {

/// Raised when a cycle phase is not close to 0 or pi; carries the raw phases.
class UnquantizedPhase : public Error {
 public:
  UnquantizedPhase(const std::string& what, std::vector<CyclePhase> phases)
      : Error(what), phases_(std::move(phases)) {}
  const std::vector<CyclePhase>& phases() const noexcept { return phases_; }

 private:
  std::vector<CyclePhase> phases_;
};

/// Cycle type: cycle length -> count.
struct PermutationClass {
  std::map<int, int> cycle_counts;

  static PermutationClass of(const Permutation& perm);
  int size() const;
  bool operator==(const PermutationClass&) const = default;
};

struct CycleLabel {
  int length = 1;
  bool barred = false;
  auto operator<=>(const CycleLabel&) const = default;
};

/// Cycle type with a Z2 bar per cycle. Cycles are kept in canonical order:
/// length ascending, unbarred before barred.
struct ExceptionalClass {
  std::vector<CycleLabel> cycles;

  int size() const;
  int barred_count() const;
  /// Parity of any permutation with this cycle type (0 even, 1 odd).
  int permutation_parity() const;
  bool satisfies_parity() const;
  void canonicalize();
  bool operator==(const ExceptionalClass&) const = default;
};

enum class EnumerationRule { ParityOnly };

/// Space-separated `b?<len>^<count>` tokens, e.g. "1^1 b2^1".
std::string signature(const ExceptionalClass& cls);

/// Inverse of signature(). Throws ParseError on malformed text and
/// ParityViolation when the bars contradict the cycle type.
ExceptionalClass parse_signature(std::string_view text);

/// Bars every cycle whose phase is quantized to pi. Throws UnquantizedPhase,
/// InvalidCycle when the phases do not cover the cycles of perm, and
/// ParityViolation when the result breaks the parity constraint.
ExceptionalClass classify(const Permutation& perm, const std::vector<CyclePhase>& phases);

/// All parity-consistent bar decorations of the cycle types of n states.
/// Ordered by cycle count (descending), cycle lengths, bar count and bar
/// placement.
std::vector<ExceptionalClass> enumerate_classes(int n, EnumerationRule rule = EnumerationRule::ParityOnly);

}  // namespace epclass
