#include "epclass/permutation.hpp"

#include <numeric>
#include <sstream>

#include "epclass/errors.hpp"

namespace epclass {

Permutation Permutation::identity(int n) {
  Permutation p;
  p.images.resize(static_cast<std::size_t>(n));
  std::iota(p.images.begin(), p.images.end(), 0);
  return p;
}

bool Permutation::is_bijection() const {
  std::vector<bool> hit(images.size(), false);
  for (const int i : images) {
    if (i < 0 || i >= size() || hit[static_cast<std::size_t>(i)]) return false;
    hit[static_cast<std::size_t>(i)] = true;
  }
  return true;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  if (!is_bijection()) throw InvalidInput("not a permutation: " + to_string());
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(images.size(), false);
  for (int start = 0; start < size(); ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> cycle;
    for (int i = start; !seen[static_cast<std::size_t>(i)]; i = images[static_cast<std::size_t>(i)]) {
      seen[static_cast<std::size_t>(i)] = true;
      cycle.push_back(i);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

int Permutation::parity() const {
  return static_cast<int>((images.size() - cycles().size()) % 2);
}

int Permutation::order() const {
  int l = 1;
  for (const auto& c : cycles()) l = std::lcm(l, static_cast<int>(c.size()));
  return l;
}

Permutation Permutation::inverse() const {
  Permutation inv;
  inv.images.resize(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) inv.images[static_cast<std::size_t>(images[i])] = static_cast<int>(i);
  return inv;
}

Permutation Permutation::then(const Permutation& other) const {
  Permutation out;
  out.images.resize(images.size());
  for (std::size_t i = 0; i < images.size(); ++i)
    out.images[i] = other.images[static_cast<std::size_t>(images[i])];
  return out;
}

Permutation Permutation::power(int c) const {
  Permutation out = identity(size());
  for (int i = 0; i < c; ++i) out = out.then(*this);
  return out;
}

std::string Permutation::to_string() const {
  std::ostringstream s;
  s << '[';
  for (std::size_t i = 0; i < images.size(); ++i) s << (i ? " " : "") << images[i];
  s << ']';
  return s.str();
}

}  // namespace epclass
