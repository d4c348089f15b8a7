#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "maxtsp/instance.hpp"
#include "maxtsp/partitioner.hpp"
#include "maxtsp/tour.hpp"

namespace maxtsp {

struct PipelineOptions {
  bool with_oracle = false;
  int oracle_cap = kOracleCap;
  std::uint64_t seed = 0;  // recorded only; the pipeline itself is deterministic
};

/// Everything a run measured, with the chain of inequalities re-evaluated by
/// checks() from these raw values.
struct Certificate {
  int n = 0;
  std::uint64_t seed = 0;
  std::string method;  // "approximation", "single-cycle" or "exact"

  Weight cover_weight;
  int cover_cycles = 0;
  int bad_triangles = 0;
  int bad_squares = 0;
  Weight b_matching_weight;
  Weight gadget_max_error;
  bool gadget_errors_ok = true;

  Weight h_weight;
  Weight h_identity_rhs;
  int multiplicity_repairs = 0;
  bool h_structure_ok = true;  // loopless, 4-regular, pair multiplicity <= 2
  std::vector<int> component_sizes;
  std::vector<std::vector<VertexId>> small_components;
  bool small_components_doubled = true;  // each is a doubled cycle of C that is not bad

  int double_triangle_steps = 0;
  int single_triangle_steps = 0;
  int cap_steps = 0;
  int exempt_components = 0;
  int lift_fallbacks = 0;
  int lift_weight_violations = 0;

  int blanks = 0;
  int colorer_restarts = 0;
  std::array<Weight, kPhases> phase_weights{};
  int chosen_phase = -1;
  Weight core_weight;
  Weight removed_weight;  // E' on the core, after lifting

  Weight red_weight;
  Weight blue_weight;
  Weight class_weight;           // heavier class per core component
  Weight small_component_weight;  // linear forests of the small components
  Weight tour_weight;
  std::vector<VertexId> tour;
  std::optional<Weight> oracle;

  int safety_net_events = 0;
  std::vector<std::string> log;
};

struct CertificateChecks {
  std::optional<bool> upper_bound;  // w(C) >= opt
  std::optional<bool> h_bound;      // w(H) >= 35/18 opt
  std::optional<bool> identity;     // w(H) = 2 w(C) + w'(S_B), waived after repairs
  std::optional<bool> budget;       // w(E') <= w(core)/5, absent safety-net events
  std::optional<bool> class_bound;  // chosen class >= (w(core) - w(E'))/2
  bool tour_bound = true;           // tour >= chosen class + small components
  std::optional<bool> ratio;        // tour >= 7/9 opt
  bool all() const;
};

CertificateChecks checks(const Certificate& c);
nlohmann::json to_json(const Certificate& c);
std::string certificate_text(const Certificate& c);

struct PipelineResult {
  Tour tour;
  Certificate certificate;
  // The coloured part of H (small components split off) with its final
  // colouring and removal set; empty unless the method is "approximation".
  Multigraph core;
  EdgeColors colors;
  EdgeFlags removed;
};

/// Cycle cover, gadgets and b-matching, H, reduction, colouring, partition,
/// lifting and tour extraction. Instances with fewer than five vertices are
/// solved exactly.
PipelineResult run_pipeline(const Instance& inst, const PipelineOptions& options = {});

/// Integer weights uniform in [0, max_w].
Instance generate_instance(int n, int max_w, std::uint64_t seed);

struct BatchOptions {
  int count = 500;
  int n_min = 5;
  int n_max = 10;
  int max_w = 100;
  std::uint64_t seed = 1;
  bool parallel = true;
};

struct BatchRecord {
  int index = 0;
  int n = 0;
  Certificate certificate;
  CertificateChecks checks;
  std::string error;  // non-empty if the run threw
};

/// Size and generator seed of instance `index` of a batch.
struct BatchInstance {
  int n = 0;
  std::uint64_t seed = 0;
};
BatchInstance batch_instance(const BatchOptions& options, int index);

/// Independent pipeline runs with the oracle on; instance i depends only on
/// (seed, i), so serial and parallel batches agree record for record.
std::vector<BatchRecord> run_batch(const BatchOptions& options);

}  // namespace maxtsp
