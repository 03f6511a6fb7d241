#include "epclass/pipeline.hpp"

namespace epclass {

const char* to_string(ClassStatus s) {
  switch (s) {
    case ClassStatus::Ok:
      return "ok";
    case ClassStatus::Critical:
      return "critical";
    case ClassStatus::Unquantized:
      return "unquantized";
    case ClassStatus::Failed:
      break;
  }
  return "failed";
}

std::string Classification::label() const {
  if (status == ClassStatus::Ok && cls) return signature(*cls);
  if (status == ClassStatus::Critical) return "Critical";
  return "Failed";
}

Classification classify_loop(const ModelSpec& spec, const LoopPath& loop, const ClassifyOptions& options) {
  Classification out;
  try {
    const SpectralFlow flow = track_loop(spec, loop, options.track);
    out.min_gap = flow.min_gap;
    out.refinements = flow.refinements;
    out.perm = extract_permutation(flow);
    out.phases = cycle_phases(flow, out.perm, options.phase);
    out.cls = classify(out.perm, out.phases);
    out.status = ClassStatus::Ok;
  } catch (const LoopTouchesEP& e) {
    out.status = ClassStatus::Critical;
    out.critical_lambda = e.lambda();
    out.min_gap = e.gap();
    out.message = e.what();
  } catch (const UnquantizedPhase& e) {
    out.status = ClassStatus::Unquantized;
    out.message = e.what();
  } catch (const NearDefective& e) {
    out.status = ClassStatus::Critical;
    out.message = e.what();
  } catch (const EndpointMismatch& e) {
    out.message = e.what();
  } catch (const BranchAmbiguity& e) {
    out.message = e.what();
  } catch (const ParityViolation& e) {
    out.message = e.what();
  } catch (const NonConvergence& e) {
    out.message = e.what();
  }
  return out;
}

Classification classify_point(const ModelSpec& spec, const ParamPoint& p, int samples,
                              const ClassifyOptions& options) {
  return classify_loop(spec, bz_loop(p, samples), options);
}

}  // namespace epclass
