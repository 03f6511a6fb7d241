#pragma once

#include <string>
#include <vector>

namespace epclass {

/// Bijection on {0..N-1}; images[i] is the strand reached by strand i after one
/// traversal of the loop.
struct Permutation {
  std::vector<int> images;

  static Permutation identity(int n);

  int size() const noexcept { return static_cast<int>(images.size()); }
  bool is_bijection() const;
  /// Disjoint cycles, each starting at its smallest element, ordered by that element.
  std::vector<std::vector<int>> cycles() const;
  /// 0 for even, 1 for odd.
  int parity() const;
  /// Smallest c > 0 with p^c = identity.
  int order() const;
  Permutation inverse() const;
  /// (this then other): i -> other.images[images[i]].
  Permutation then(const Permutation& other) const;
  Permutation power(int c) const;
  std::string to_string() const;

  bool operator==(const Permutation&) const = default;
};

}  // namespace epclass
