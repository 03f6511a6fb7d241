#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epclass/berry.hpp"
#include "epclass/classifier.hpp"
#include "epclass/flow.hpp"
#include "epclass/loop.hpp"
#include "epclass/model.hpp"

namespace epclass {

struct ClassifyOptions {
  TrackOptions track;
  PhaseOptions phase;
};

enum class ClassStatus { Ok, Critical, Unquantized, Failed };

const char* to_string(ClassStatus s);

/// Outcome of track -> permutation -> cycle phases -> class for one loop.
struct Classification {
  ClassStatus status = ClassStatus::Failed;
  Permutation perm;
  std::vector<CyclePhase> phases;
  std::optional<ExceptionalClass> cls;
  double min_gap = 0.0;
  std::size_t refinements = 0;
  /// Loop parameter of the degeneracy for Critical results.
  double critical_lambda = 0.0;
  std::string message;

  /// Signature for Ok results, otherwise "Critical" or "Failed".
  std::string label() const;
};

/// Never throws for numerical outcomes; InvalidInput and model errors propagate.
Classification classify_loop(const ModelSpec& spec, const LoopPath& loop, const ClassifyOptions& options = {});

/// Classification of the Brillouin-zone loop k: 0 -> 2 pi at p.
Classification classify_point(const ModelSpec& spec, const ParamPoint& p, int samples = 512,
                              const ClassifyOptions& options = {});

}  // namespace epclass
