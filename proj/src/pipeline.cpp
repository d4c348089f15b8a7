#include "maxtsp/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include "maxtsp/colorer.hpp"
#include "maxtsp/gadgets.hpp"
#include "maxtsp/hgraph.hpp"
#include "maxtsp/matching.hpp"
#include "maxtsp/reducer.hpp"

namespace maxtsp {

bool CertificateChecks::all() const {
  for (const auto& c : {upper_bound, h_bound, identity, budget, class_bound, ratio}) {
    if (c && !*c) return false;
  }
  return tour_bound;
}

CertificateChecks checks(const Certificate& c) {
  CertificateChecks k;
  k.tour_bound = c.tour_weight >= c.class_weight + c.small_component_weight;
  if (c.oracle) k.ratio = c.tour_weight * 9 >= *c.oracle * 7;
  if (c.method != "approximation") {
    if (c.oracle && c.method == "single-cycle") k.upper_bound = c.cover_weight >= *c.oracle;
    return k;
  }
  if (c.oracle) {
    k.upper_bound = c.cover_weight >= *c.oracle;
    k.h_bound = c.h_weight * 18 >= *c.oracle * 35;
  }
  k.identity = c.multiplicity_repairs > 0 || c.h_weight == c.h_identity_rhs;
  if (c.safety_net_events == 0) k.budget = c.removed_weight * 5 <= c.core_weight;
  k.class_bound = c.class_weight * 2 >= c.core_weight - c.removed_weight;
  return k;
}

namespace {

nlohmann::json weight_json(const Weight& w) { return to_decimal_string(w); }

nlohmann::json optional_json(const std::optional<bool>& b) {
  return b ? nlohmann::json(*b) : nlohmann::json(nullptr);
}

std::string ratio_text(const Weight& num, const Weight& den) {
  if (den == 0) return "1.000000";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", to_double(num / den));
  return buf;
}

}  // namespace

nlohmann::json to_json(const Certificate& c) {
  nlohmann::json j;
  j["n"] = c.n;
  j["seed"] = c.seed;
  j["method"] = c.method;
  j["cover"] = {{"weight", weight_json(c.cover_weight)},
                {"cycles", c.cover_cycles},
                {"bad_triangles", c.bad_triangles},
                {"bad_squares", c.bad_squares}};
  j["b_matching_weight"] = weight_json(c.b_matching_weight);
  j["gadget_audit"] = {{"max_error", weight_json(c.gadget_max_error)}, {"ok", c.gadget_errors_ok}};
  j["h"] = {{"weight", weight_json(c.h_weight)},
            {"identity_rhs", weight_json(c.h_identity_rhs)},
            {"multiplicity_repairs", c.multiplicity_repairs},
            {"structure_ok", c.h_structure_ok},
            {"component_sizes", c.component_sizes},
            {"small_components", c.small_components},
            {"small_components_doubled", c.small_components_doubled}};
  j["reduction"] = {{"double_edge_triangles", c.double_triangle_steps},
                    {"single_edge_triangles", c.single_triangle_steps},
                    {"caps", c.cap_steps},
                    {"exempt_components", c.exempt_components},
                    {"lift_fallbacks", c.lift_fallbacks},
                    {"lift_weight_violations", c.lift_weight_violations}};
  nlohmann::json phases = nlohmann::json::array();
  for (const auto& w : c.phase_weights) phases.push_back(weight_json(w));
  j["partition"] = {{"blanks", c.blanks},
                    {"colorer_restarts", c.colorer_restarts},
                    {"phase_weights", phases},
                    {"chosen_phase", c.chosen_phase},
                    {"core_weight", weight_json(c.core_weight)},
                    {"removed_weight", weight_json(c.removed_weight)}};
  j["classes"] = {{"red", weight_json(c.red_weight)},
                  {"blue", weight_json(c.blue_weight)},
                  {"chosen", weight_json(c.class_weight)},
                  {"small_components", weight_json(c.small_component_weight)}};
  j["tour"] = {{"weight", weight_json(c.tour_weight)}, {"order", c.tour}};
  j["oracle_opt"] = c.oracle ? weight_json(*c.oracle) : nlohmann::json(nullptr);
  j["ratio"] = c.oracle ? nlohmann::json(ratio_text(c.tour_weight, *c.oracle)) : nlohmann::json(nullptr);
  j["safety_net_events"] = c.safety_net_events;
  j["log"] = c.log;
  const auto k = checks(c);
  j["checks"] = {{"upper_bound", optional_json(k.upper_bound)},
                 {"h_bound", optional_json(k.h_bound)},
                 {"identity", optional_json(k.identity)},
                 {"budget", optional_json(k.budget)},
                 {"class_bound", optional_json(k.class_bound)},
                 {"tour_bound", k.tour_bound},
                 {"ratio", optional_json(k.ratio)},
                 {"all", k.all()}};
  return j;
}

std::string certificate_text(const Certificate& c) { return to_json(c).dump(2) + "\n"; }

namespace {

void finish_with_tour(Certificate& cert, const Tour& t) {
  cert.tour = t.order;
  cert.tour_weight = t.weight;
}

// A component that H splits off must be a cycle of C on its own, doubled,
// and not bad.
bool is_doubled_cover_cycle(const Instance& inst, const CycleCover& c, const Multigraph& h,
                            const std::vector<VertexId>& comp) {
  const auto& cyc = c.cycles()[c.cycle_of(comp.front())];
  std::vector<VertexId> sorted = cyc;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != comp || is_bad_cycle(inst, cyc)) return false;
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    if (h.multiplicity(cyc[i], cyc[(i + 1) % cyc.size()]) != 2) return false;
  }
  return true;
}

}  // namespace

namespace {

struct CoreColoring {
  EdgeColors colors;
  EdgeFlags removed;
  int double_triangle_steps = 0;
  int single_triangle_steps = 0;
  int cap_steps = 0;
  int exempt_components = 0;
  int colorer_restarts = 0;
  int blanks = 0;
  std::array<Weight, kPhases> phase_weights{};
  int chosen_phase = -1;
  int safety_net_events = 0;
  int lift_fallbacks = 0;
  int lift_weight_violations = 0;
  std::vector<std::string> log;
};

// Reduction, exact colouring of exempt components, colouring and partition
// of the rest, then lifting back to `core`.
CoreColoring color_core(const Multigraph& core, const ReduceOptions& reduce_options) {
  CoreColoring out;
  const Reduction red = reduce_to_fixpoint(core, reduce_options);
  out.double_triangle_steps = red.double_triangle_steps;
  out.single_triangle_steps = red.single_triangle_steps;
  out.cap_steps = red.cap_steps;
  out.exempt_components = static_cast<int>(red.exempt.size());
  EdgeColors rc(red.reduced.edge_capacity(), Color::None);
  EdgeFlags rr(red.reduced.edge_capacity(), false);

  std::vector<bool> exempt_vertex(red.reduced.vertex_capacity(), false);
  for (const auto& comp : red.exempt) {
    std::vector<EdgeId> edges;
    for (VertexId v : comp) {
      exempt_vertex[v] = true;
      for (EdgeId e : red.reduced.incident(v)) {
        if (red.reduced.edge(e).u == v) edges.push_back(e);
      }
    }
    const auto ex = exact_min_removal(red.reduced, edges);
    if (!ex.feasible) throw GraphError("no 2-path-colouring of an exempt component");
    for (EdgeId e : edges) {
      rc[e] = ex.colors[e];
      rr[e] = ex.removed[e];
    }
  }
  std::vector<VertexId> main_vertices;
  for (VertexId v : red.reduced.vertices()) {
    if (!exempt_vertex[v]) main_vertices.push_back(v);
  }
  if (!main_vertices.empty()) {
    const Multigraph main = red.reduced.induced(main_vertices);
    const auto wc = well_color(main);
    out.colorer_restarts = wc.stats.completion_restarts;
    out.safety_net_events += wc.stats.safety_net_events;
    for (const auto& line : wc.stats.log) out.log.push_back("colorer: " + line);
    const auto part = partition_and_choose(main, wc.colors);
    out.blanks = part.blanks;
    out.phase_weights = part.set_weight;
    out.chosen_phase = part.chosen_phase;
    out.safety_net_events += part.safety_net_events;
    for (const auto& line : part.log) out.log.push_back("partition: " + line);
    for (EdgeId e : main.edges()) {
      rc[e] = part.colors[e];
      rr[e] = part.removed[e];
    }
  }
  auto lifted = lift_through(red.stack, red.reduced, rc, rr);
  out.lift_fallbacks = lifted.fallbacks;
  out.lift_weight_violations = lifted.weight_violations;
  out.colors = std::move(lifted.colors);
  out.removed = std::move(lifted.removed);
  return out;
}

}  // namespace

PipelineResult run_pipeline(const Instance& inst, const PipelineOptions& options) {
  PipelineResult out;
  Certificate& cert = out.certificate;
  const int n = inst.size();
  cert.n = n;
  cert.seed = options.seed;
  for (Weight* w : {&cert.cover_weight, &cert.b_matching_weight, &cert.gadget_max_error, &cert.h_weight,
                    &cert.h_identity_rhs, &cert.core_weight, &cert.removed_weight, &cert.red_weight,
                    &cert.blue_weight, &cert.class_weight, &cert.small_component_weight}) {
    *w = Weight(0);
  }
  for (auto& w : cert.phase_weights) w = Weight(0);
  if (options.with_oracle && n <= options.oracle_cap) cert.oracle = oracle_opt(inst, options.oracle_cap).weight;

  if (n < 5) {
    cert.method = "exact";
    out.tour = oracle_opt(inst, std::max(options.oracle_cap, 4));
    cert.class_weight = out.tour.weight;
    finish_with_tour(cert, out.tour);
    return out;
  }

  const CycleCover c = max_weight_cycle_cover(inst);
  cert.cover_weight = c.weight();
  cert.cover_cycles = static_cast<int>(c.cycles().size());
  if (c.cycles().size() == 1) {
    cert.method = "single-cycle";
    out.tour.order = c.cycles().front();
    std::rotate(out.tour.order.begin(), std::find(out.tour.order.begin(), out.tour.order.end(), 0),
                out.tour.order.end());
    out.tour.weight = tour_weight(inst, out.tour.order);
    cert.class_weight = out.tour.weight;
    finish_with_tour(cert, out.tour);
    return out;
  }
  cert.method = "approximation";

  for (const auto& bc : find_bad_cycles(inst, c)) (bc.is_square() ? cert.bad_squares : cert.bad_triangles)++;
  const GPrime gp = build_gprime(inst, c);
  const auto b = solve_b_matching(gp.problem);
  for (int k : b) cert.b_matching_weight += gp.problem.edges[k].w;
  const QuasiAlternatingSet sb = extract_SB(gp, b, c);
  for (const auto& f : sb.fragments) {
    const Weight err = f.internal_weight - f.fragment_weight;
    cert.gadget_max_error = std::max(cert.gadget_max_error, err);
    if (err < 0 || err * 18 > gp.gadgets[f.gadget].cycle.total) cert.gadget_errors_ok = false;
  }

  const HGraph h = build_H(inst, c, sb.edges);
  cert.h_weight = h.graph.total_weight();
  cert.h_identity_rhs = c.weight() * 2 + alternating_weight(sb.edges, c, inst);
  cert.multiplicity_repairs = h.multiplicity_repairs;
  const auto structure = validate_multigraph(h.graph, 4, 1);
  cert.h_structure_ok = structure.regular && structure.loopless && structure.multiplicity_ok;
  for (const auto& comp : h.graph.components()) cert.component_sizes.push_back(static_cast<int>(comp.size()));

  const ComponentSplit split = split_small_components(h.graph, 5);
  cert.small_components = split.small;
  std::vector<VertexPair> extra;
  for (const auto& comp : split.small) {
    if (!is_doubled_cover_cycle(inst, c, h.graph, comp)) cert.small_components_doubled = false;
    cert.log.push_back("component of " + std::to_string(comp.size()) + " vertices solved exactly");
    const auto paths = exact_small_component(h.graph, comp);
    cert.small_component_weight += paths.weight;
    for (EdgeId e : paths.edges) extra.push_back(make_pair_key(h.graph.edge(e).u, h.graph.edge(e).v));
  }

  const Multigraph& core = split.core;
  cert.core_weight = core.total_weight();
  EdgeColors colors(core.edge_capacity(), Color::None);
  EdgeFlags removed(core.edge_capacity(), false);
  if (core.vertex_count() > 0) {
    CoreColoring cc = color_core(core, {});
    if (cc.safety_net_events > 0) {
      // Caps whose ribbons must differ around an odd cycle admit no proper
      // colouring; reducing them first usually does.
      CoreColoring capped = color_core(core, {true});
      if (capped.safety_net_events < cc.safety_net_events) {
        capped.log.insert(capped.log.begin(), "pipeline: recoloured with caps reduced after " +
                                                  std::to_string(cc.safety_net_events) + " safety-net events");
        cc = std::move(capped);
      }
    }
    cert.double_triangle_steps = cc.double_triangle_steps;
    cert.single_triangle_steps = cc.single_triangle_steps;
    cert.cap_steps = cc.cap_steps;
    cert.exempt_components = cc.exempt_components;
    cert.colorer_restarts = cc.colorer_restarts;
    cert.blanks = cc.blanks;
    cert.phase_weights = cc.phase_weights;
    cert.chosen_phase = cc.chosen_phase;
    cert.safety_net_events += cc.safety_net_events;
    cert.lift_fallbacks = cc.lift_fallbacks;
    cert.lift_weight_violations = cc.lift_weight_violations;
    cert.log.insert(cert.log.end(), cc.log.begin(), cc.log.end());
    colors = std::move(cc.colors);
    removed = std::move(cc.removed);
    const auto check = check_path_coloring(core, colors, removed);
    if (!check.ok) throw GraphError("lifted colouring is not a 2-path-colouring: " + check.reason);
    for (EdgeId e : core.edges()) {
      if (removed[e]) cert.removed_weight += core.edge(e).w;
    }
  }

  ExtractedClass cls;
  out.tour = extract_tour(inst, core, colors, removed, extra, &cls);
  cert.red_weight = cls.red_weight;
  cert.blue_weight = cls.blue_weight;
  cert.class_weight = cls.weight;
  finish_with_tour(cert, out.tour);
  out.core = core;
  out.colors = std::move(colors);
  out.removed = std::move(removed);
  return out;
}

Instance generate_instance(int n, int max_w, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(0, max_w);
  std::vector<std::vector<Weight>> m(n, std::vector<Weight>(n, Weight(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) m[i][j] = m[j][i] = Weight(dist(rng));
  }
  return Instance(std::move(m));
}

BatchInstance batch_instance(const BatchOptions& options, int index) {
  std::seed_seq seq{options.seed, static_cast<std::uint64_t>(index)};
  std::mt19937_64 rng(seq);
  BatchInstance out;
  out.n = std::uniform_int_distribution<int>(options.n_min, options.n_max)(rng);
  out.seed = rng();
  return out;
}

std::vector<BatchRecord> run_batch(const BatchOptions& options) {
  std::vector<BatchRecord> records(options.count);
  const long count = options.count;
#pragma omp parallel for schedule(dynamic) if (options.parallel)
  for (long i = 0; i < count; ++i) {
    BatchRecord& r = records[i];
    r.index = static_cast<int>(i);
    const BatchInstance bi = batch_instance(options, static_cast<int>(i));
    r.n = bi.n;
    const std::uint64_t instance_seed = bi.seed;
    try {
      PipelineOptions po;
      po.with_oracle = true;
      po.seed = instance_seed;
      const auto res = run_pipeline(generate_instance(r.n, options.max_w, instance_seed), po);
      r.certificate = res.certificate;
      r.checks = checks(r.certificate);
    } catch (const std::exception& e) {
      r.error = e.what();
    }
  }
  return records;
}

}  // namespace maxtsp
