#include "blowup/search.hpp"

#include <atomic>
#include <fstream>
#include <set>
#include <string>
#include <thread>

#include <json.hpp>

#include "blowup/blowup_opt.hpp"
#include "blowup/canonical.hpp"
#include "blowup/density.hpp"
#include "blowup/errors.hpp"
#include "blowup/graph_io.hpp"

namespace blowup {

namespace {

std::vector<Graph> parents_for(std::size_t n) {
  if (n == 0 || n > kMaxEnumerationOrder)
    throw PreconditionError("enumeration order must be between 1 and " + std::to_string(kMaxEnumerationOrder));
  if (n == 1) return {Graph(0)};
  return enumerate_graphs(n - 1);
}

const char* mode_name(ScanMode mode) { return mode == ScanMode::strong ? "strong" : "induced"; }

struct ParentResult {
  std::optional<Rational> best;
  std::vector<Graph> witnesses;
  std::vector<std::pair<Graph, Rational>> values;
  std::size_t count = 0;
};

struct ScanState {
  std::optional<Rational> best;
  std::vector<Graph> witnesses;
  std::size_t next_parent = 0;
  std::size_t classes = 0;
};

void absorb(ScanState& state, const std::optional<Rational>& value, const std::vector<Graph>& witnesses) {
  if (!value) return;
  if (!state.best || *value > *state.best) {
    state.best = value;
    state.witnesses = witnesses;
  } else if (*value == *state.best) {
    state.witnesses.insert(state.witnesses.end(), witnesses.begin(), witnesses.end());
  }
}

nlohmann::ordered_json scan_config(const Graph& core, const BlowupVector& k, std::size_t h, std::size_t n,
                                   ScanMode mode) {
  nlohmann::ordered_json config;
  config["core"] = write_graph6(core);
  config["k"] = k.values();
  config["h"] = h;
  config["n"] = n;
  config["mode"] = mode_name(mode);
  return config;
}

void save_checkpoint(const std::filesystem::path& path, const nlohmann::ordered_json& config, const ScanState& s) {
  nlohmann::ordered_json doc;
  doc["config"] = config;
  doc["next_parent"] = s.next_parent;
  doc["subset_cursor"] = 0;
  doc["best_value"] = s.best ? nlohmann::ordered_json(to_string(*s.best)) : nlohmann::ordered_json(nullptr);
  doc["witnesses"] = nlohmann::ordered_json::array();
  for (const auto& w : s.witnesses) doc["witnesses"].push_back(write_graph6(w));
  doc["classes_scanned"] = s.classes;
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw ParseError("cannot write checkpoint '" + tmp.string() + "'");
    out << doc.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

ScanState load_checkpoint(const std::filesystem::path& path, const nlohmann::ordered_json& config) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("checkpoint '" + path.string() + "': " + e.what());
  }
  if (doc.value("config", nlohmann::ordered_json()) != config)
    throw PreconditionError("checkpoint '" + path.string() + "' belongs to a different scan");
  ScanState s;
  try {
    s.next_parent = doc.at("next_parent").get<std::size_t>();
    s.classes = doc.at("classes_scanned").get<std::size_t>();
    if (!doc.at("best_value").is_null()) s.best = parse_rational(doc.at("best_value").get<std::string>());
    for (const auto& w : doc.at("witnesses")) s.witnesses.push_back(parse_graph6(w.get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("checkpoint '" + path.string() + "': " + e.what());
  }
  return s;
}

void for_each_composition(std::size_t n, std::size_t parts, std::vector<std::size_t>& prefix,
                          const std::function<void(const std::vector<std::size_t>&)>& visit) {
  if (prefix.size() + 1 == parts) {
    prefix.push_back(n);
    visit(prefix);
    prefix.pop_back();
    return;
  }
  for (std::size_t first = 1; first + (parts - prefix.size() - 1) <= n; ++first) {
    prefix.push_back(first);
    for_each_composition(n - first, parts, prefix, visit);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Graph> canonical_children(const Graph& parent) {
  const std::size_t m = parent.order();
  if (m >= kMaxEnumerationOrder) throw PreconditionError("parent too large for enumeration");
  std::vector<Graph> out;
  std::set<std::string> seen;
  std::vector<Vertex> neighbors;
  for (std::uint32_t subset = 0; subset < (1U << m); ++subset) {
    neighbors.clear();
    for (Vertex v = 0; v < m; ++v)
      if (subset >> v & 1U) neighbors.push_back(v);
    const Graph child = parent.with_vertex(neighbors);
    CanonicalLabeling lab = canonical_labeling(child);
    if (!(canonical_form(child.without_vertex(lab.order.back())) == parent)) continue;
    if (seen.insert(write_graph6(lab.form)).second) out.push_back(std::move(lab.form));
  }
  return out;
}

std::vector<Graph> enumerate_graphs(std::size_t n) {
  std::vector<Graph> out;
  for (const Graph& parent : parents_for(n)) {
    auto children = canonical_children(parent);
    out.insert(out.end(), std::make_move_iterator(children.begin()), std::make_move_iterator(children.end()));
  }
  return out;
}

Rational scan_value(const Graph& pattern, const Graph& g, ScanMode mode) {
  if (mode == ScanMode::induced) return induced_density(pattern, g);
  Natural total;
  mpz_ui_pow_ui(total.get_mpz_t(), g.order(), pattern.order());
  if (total == 0) return 0;
  return ratio(count_strong_homs(pattern, g), total);
}

ScanResult extremal_scan(const Graph& core, const BlowupVector& k, std::size_t h, std::size_t n,
                         const ScanOptions& options) {
  if (h == 0) throw PreconditionError("h must be positive");
  ScanResult result;
  result.n = n;
  result.mode = options.mode;
  result.target = blow_up(core, k.scaled(h));
  if (options.mode == ScanMode::induced && n < result.target.order())
    throw PreconditionError("induced scan needs n >= h * |k|_1");
  const std::vector<Graph> parents = parents_for(n);

  const auto config = scan_config(core, k, h, n, options.mode);
  ScanState state;
  if (options.checkpoint && std::filesystem::exists(*options.checkpoint))
    state = load_checkpoint(*options.checkpoint, config);

  const std::size_t block = std::max<std::size_t>(1, options.block);
  while (state.next_parent < parents.size()) {
    const std::size_t begin = state.next_parent;
    const std::size_t end = std::min(parents.size(), begin + block);
    std::vector<ParentResult> partial(end - begin);
    std::atomic<std::size_t> next{begin};
    auto worker = [&] {
      for (std::size_t p; (p = next++) < end;) {
        ParentResult& r = partial[p - begin];
        for (Graph& child : canonical_children(parents[p])) {
          Rational v = scan_value(result.target, child, options.mode);
          ++r.count;
          if (!r.best || v > *r.best) {
            r.best = v;
            r.witnesses.clear();
          }
          if (v == *r.best) r.witnesses.push_back(child);
          if (options.observer) r.values.emplace_back(std::move(child), std::move(v));
        }
      }
    };
    const std::size_t threads = std::max<std::size_t>(1, std::min(options.jobs, end - begin));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (const auto& r : partial) {
      if (options.observer)
        for (const auto& [g, v] : r.values) options.observer(g, v);
      absorb(state, r.best, r.witnesses);
      state.classes += r.count;
    }
    state.next_parent = end;
    if (options.checkpoint) save_checkpoint(*options.checkpoint, config, state);
  }

  result.best_value = state.best.value_or(Rational(0));
  result.witnesses = std::move(state.witnesses);
  result.classes_scanned = state.classes;

  if (n >= core.order() && core.order() > 0) {
    std::vector<std::size_t> prefix;
    for_each_composition(n, core.order(), prefix, [&](const std::vector<std::size_t>& parts) {
      const Rational v = scan_value(result.target, blow_up(core, BlowupVector(parts)), options.mode);
      if (!result.blowup_value || v > *result.blowup_value) result.blowup_value = v;
    });
  }
  OptimizeOptions opt;
  opt.restarts = options.restarts;
  opt.seed = options.seed;
  result.sup_simplex = optimize_nu(core, k, h, opt).value;
  result.blowup_inducibility = result.sup_simplex / static_cast<double>(automorphism_count(result.target));
  return result;
}

std::vector<EvidenceRow> report_inducibility_evidence(const Graph& core, const BlowupVector& k, std::size_t h,
                                                      const std::vector<std::size_t>& n_range,
                                                      const ScanOptions& options) {
  const std::size_t target_order = h * k.l1_norm();
  ScanOptions induced = options;
  induced.mode = ScanMode::induced;
  induced.checkpoint.reset();
  std::vector<EvidenceRow> rows;
  for (std::size_t n : n_range) {
    EvidenceRow row{n, n >= target_order && n >= 1 && n <= kMaxEnumerationOrder, std::nullopt, {}};
    if (row.feasible) {
      const ScanResult scan = extremal_scan(core, k, h, n, induced);
      row.best_value = scan.best_value;
      for (const auto& w : scan.witnesses)
        row.witnesses.push_back({w, is_isomorphic(twin_free_factor(w).core, core)});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace blowup
