#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "blowup/graph.hpp"
#include "blowup/scalar.hpp"

namespace blowup {

inline constexpr std::size_t kMaxEnumerationOrder = 9;

/// Accepted children of a canonical parent on n - 1 vertices, in order of
/// the neighborhood subset of the new vertex. A child is kept iff deleting
/// its last canonical vertex gives back the parent; duplicates within the
/// parent are dropped. Each child is returned in canonical form.
std::vector<Graph> canonical_children(const Graph& parent);

/// One canonical graph per isomorphism class on n vertices, 1 <= n <= 9,
/// in stream order (parent index, then subset).
std::vector<Graph> enumerate_graphs(std::size_t n);

enum class ScanMode { strong, induced };

/// Uniform strong-hom density or induced density of pattern in g.
Rational scan_value(const Graph& pattern, const Graph& g, ScanMode mode);

struct ScanOptions {
  ScanMode mode = ScanMode::strong;
  std::size_t jobs = 1;
  /// Progress file; an existing file with the same configuration resumes.
  std::optional<std::filesystem::path> checkpoint;
  /// Parents per checkpoint block.
  std::size_t block = 64;
  std::size_t restarts = 8;
  std::uint64_t seed = 0;
  /// Called for every scanned class in stream order.
  std::function<void(const Graph&, const Rational&)> observer;
};

struct ScanResult {
  std::size_t n = 0;
  Graph target;
  ScanMode mode = ScanMode::strong;
  Rational best_value;
  std::vector<Graph> witnesses;
  /// Best value over blow-ups of the core on n vertices; empty when n is
  /// smaller than the core.
  std::optional<Rational> blowup_value;
  double sup_simplex = 0;
  /// sup_simplex / |Aut(target)|.
  double blowup_inducibility = 0;
  std::size_t classes_scanned = 0;
};

/// Exhaustive maximum of scan_value(core^(h k), G) over all classes G on n
/// vertices. The result does not depend on jobs or on resuming.
ScanResult extremal_scan(const Graph& core, const BlowupVector& k, std::size_t h, std::size_t n,
                         const ScanOptions& options = {});

struct EvidenceWitness {
  Graph graph;
  bool is_blowup;
};

struct EvidenceRow {
  std::size_t n;
  bool feasible;
  std::optional<Rational> best_value;
  std::vector<EvidenceWitness> witnesses;
};

/// Induced-mode scans for each n, classifying every witness by whether its
/// twin-free factor is isomorphic to the core.
std::vector<EvidenceRow> report_inducibility_evidence(const Graph& core, const BlowupVector& k, std::size_t h,
                                                      const std::vector<std::size_t>& n_range,
                                                      const ScanOptions& options = {});

}  // namespace blowup
