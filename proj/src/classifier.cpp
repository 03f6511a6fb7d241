#include "epclass/classifier.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace epclass {
namespace {

std::vector<int> rotate_to_min(std::vector<int> cycle) {
  if (!cycle.empty()) std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  return cycle;
}

// Partitions of n as non-decreasing length lists, in ascending lexicographic order.
void partitions(int remaining, int min_part, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  for (int part = min_part; part <= remaining; ++part) {
    current.push_back(part);
    partitions(remaining - part, part, current, out);
    current.pop_back();
  }
}

int parse_int(std::string_view text, std::string_view token) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || v < 1)
    throw ParseError("malformed signature token '" + std::string(token) + "'");
  return v;
}

}  // namespace

PermutationClass PermutationClass::of(const Permutation& perm) {
  PermutationClass out;
  for (const auto& c : perm.cycles()) ++out.cycle_counts[static_cast<int>(c.size())];
  return out;
}

int PermutationClass::size() const {
  int n = 0;
  for (const auto& [len, count] : cycle_counts) n += len * count;
  return n;
}

int ExceptionalClass::size() const {
  int n = 0;
  for (const auto& c : cycles) n += c.length;
  return n;
}

int ExceptionalClass::barred_count() const {
  return static_cast<int>(std::count_if(cycles.begin(), cycles.end(), [](const CycleLabel& c) { return c.barred; }));
}

int ExceptionalClass::permutation_parity() const {
  int p = 0;
  for (const auto& c : cycles) p += c.length - 1;
  return p % 2;
}

bool ExceptionalClass::satisfies_parity() const { return barred_count() % 2 == permutation_parity(); }

void ExceptionalClass::canonicalize() { std::sort(cycles.begin(), cycles.end()); }

std::string signature(const ExceptionalClass& cls) {
  ExceptionalClass c = cls;
  c.canonicalize();
  std::ostringstream out;
  std::size_t i = 0;
  while (i < c.cycles.size()) {
    std::size_t j = i;
    while (j < c.cycles.size() && c.cycles[j] == c.cycles[i]) ++j;
    if (i > 0) out << ' ';
    out << (c.cycles[i].barred ? "b" : "") << c.cycles[i].length << '^' << (j - i);
    i = j;
  }
  return out.str();
}

ExceptionalClass parse_signature(std::string_view text) {
  ExceptionalClass cls;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == ' ') {
      ++pos;
      continue;
    }
    const std::size_t end = std::min(text.find(' ', pos), text.size());
    std::string_view token = text.substr(pos, end - pos);
    pos = end;
    bool barred = false;
    std::string_view body = token;
    if (!body.empty() && body.front() == 'b') {
      barred = true;
      body.remove_prefix(1);
    }
    const auto caret = body.find('^');
    if (caret == std::string_view::npos) throw ParseError("signature token '" + std::string(token) + "' lacks '^'");
    const int length = parse_int(body.substr(0, caret), token);
    const int count = parse_int(body.substr(caret + 1), token);
    for (int k = 0; k < count; ++k) cls.cycles.push_back({length, barred});
  }
  if (cls.cycles.empty()) throw ParseError("empty signature");
  cls.canonicalize();
  if (!cls.satisfies_parity())
    throw ParityViolation("signature '" + std::string(text) + "' has " + std::to_string(cls.barred_count()) +
                          " barred cycles but permutation parity " + std::to_string(cls.permutation_parity()));
  return cls;
}

ExceptionalClass classify(const Permutation& perm, const std::vector<CyclePhase>& phases) {
  const auto cycles = perm.cycles();
  if (phases.size() != cycles.size())
    throw InvalidCycle("expected one phase per cycle (" + std::to_string(cycles.size()) + "), got " +
                       std::to_string(phases.size()));
  std::set<std::vector<int>> wanted;
  for (const auto& c : cycles) wanted.insert(rotate_to_min(c));
  ExceptionalClass cls;
  bool unquantized = false;
  for (const auto& ph : phases) {
    if (wanted.erase(rotate_to_min(ph.cycle)) != 1) throw InvalidCycle("phase given for a cycle not in the permutation");
    if (ph.quantized == Quantized::Unquantized) unquantized = true;
    cls.cycles.push_back({static_cast<int>(ph.cycle.size()), ph.quantized == Quantized::Pi});
  }
  if (unquantized) throw UnquantizedPhase("cycle phase is not quantized to 0 or pi", phases);
  cls.canonicalize();
  if (!cls.satisfies_parity())
    throw ParityViolation("class " + signature(cls) + " violates the parity constraint");
  return cls;
}

std::vector<ExceptionalClass> enumerate_classes(int n, EnumerationRule rule) {
  (void)rule;
  if (n < 1 || n > 8) throw InvalidInput("enumerate_classes(): n must lie in [1, 8]");
  std::vector<std::vector<int>> types;
  std::vector<int> current;
  partitions(n, 1, current, types);
  std::stable_sort(types.begin(), types.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });

  std::vector<ExceptionalClass> out;
  std::set<std::vector<CycleLabel>> seen;
  for (const auto& lengths : types) {
    const int m = static_cast<int>(lengths.size());
    int parity = 0;
    for (const int l : lengths) parity += l - 1;
    parity %= 2;
    for (int bars = parity; bars <= m; bars += 2) {
      // Bar vectors with `bars` ones, lexicographically descending.
      std::vector<int> flags(static_cast<std::size_t>(m), 0);
      std::fill(flags.begin(), flags.begin() + bars, 1);
      do {
        ExceptionalClass cls;
        for (int i = 0; i < m; ++i) cls.cycles.push_back({lengths[static_cast<std::size_t>(i)], flags[static_cast<std::size_t>(i)] == 1});
        cls.canonicalize();
        if (seen.insert(cls.cycles).second) out.push_back(std::move(cls));
      } while (std::prev_permutation(flags.begin(), flags.end()));
    }
  }
  return out;
}

}  // namespace epclass
