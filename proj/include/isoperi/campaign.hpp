#pragma once

// Verification campaigns over parameter grids. Each cell is independent
// and seeded from (campaign seed, cell index); results are collected in
// cell order, so a report depends on the options only, never on timing or
// the worker count.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isoperi/io.hpp"

namespace isoperi {

using IndexRange = std::pair<std::size_t, std::size_t>;  // inclusive

struct CellResult {
  std::size_t index = 0;
  std::string kind;
  std::size_t n = 0;
  std::string param_name;  // phi, beta or m
  std::size_t param = 0;
  std::uint64_t seed = 0;
  bool exact = true;
  std::size_t samples = 0;  // per Monte Carlo estimate, 0 when exact
  bool skipped = false;
  std::string skip_reason;
  bool passed = false;
  std::vector<std::string> violations;
  std::map<std::string, double> values;
  std::map<std::string, std::string> labels;
};

struct Band {
  double lo = 0.0;
  double hi = 0.0;
};

struct CampaignReport {
  std::string campaign;  // theorem1, theorem2, spectral
  std::uint64_t seed = 0;
  io::Json options;
  std::vector<CellResult> cells;
  std::map<std::string, Band> bands;
  double wall_seconds = 0.0;  // kept out of the serialized forms

  bool passed() const;
};

struct CampaignOptions {
  IndexRange n_range{2, 5};
  std::optional<IndexRange> phi_range;
  std::optional<IndexRange> beta_range;
  std::optional<IndexRange> m_range;  // default n..8
  std::size_t trials = 0;             // 0 picks the campaign default
  std::size_t samples = 1000000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

inline constexpr std::size_t kTheorem1Trials = 20;
inline constexpr std::size_t kSpectralTrials = 50;
inline constexpr std::size_t kTheorem1MaxDim = 6;
inline constexpr std::size_t kTheorem2MaxDim = 5;
inline constexpr std::size_t kSpectralMaxSlabs = 12;

CampaignReport verify_theorem1(const CampaignOptions& opt);
CampaignReport verify_theorem2(const CampaignOptions& opt);
CampaignReport verify_spectral(const CampaignOptions& opt);

io::Json report_to_json(const CampaignReport& r);
CampaignReport report_from_json(const io::Json& j);
// Fixed leading columns, then every value and label key in sorted order.
std::string report_to_csv(const CampaignReport& r);

}  // namespace isoperi
