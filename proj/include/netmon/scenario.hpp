#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netmon/anomaly.hpp"
#include "netmon/block_model.hpp"
#include "netmon/eval.hpp"
#include "netmon/latent_space.hpp"
#include "netmon/monitor.hpp"
#include "netmon/network.hpp"
#include "netmon/statistics.hpp"

namespace netmon {

enum class ModelKind { Dlsm, Ddcsbm };

std::string to_string(ModelKind model);
ModelKind parse_model_kind(const std::string& text);

/// Density-scaling constants a for each (model, edge kind, target density).
///
/// Loaded from a JSON document:
///
///     {"version": 1,
///      "phi_sweep": {"density": 0.11,
///                    "dlsm": {"binary": 0.00014, "count": 0.00042}, ...},
///      "cells": [{"model": "dlsm", "edge_kind": "binary", "density": 0.21, "a": 0.0002},
///                {"model": "dlsm", "edge_kind": "count", "density": 0.21, "times_binary": 3.5}, ...]}
///
/// A cell given as `times_binary` is that multiple of the binary cell at the
/// same density.
class DensityCatalog {
 public:
  static DensityCatalog load(const std::filesystem::path& path);
  static DensityCatalog parse(const std::string& json_text);

  /// The bundled catalog (path fixed at build time).
  static const DensityCatalog& builtin();
  static std::filesystem::path builtin_path();

  /// Tabulated a for the cell. The fixed-density sweep constants answer for
  /// the sweep density; other densities must match a tabulated column.
  /// Throws std::out_of_range for cells not in the catalog.
  double lookup(ModelKind model, EdgeKind kind, double density) const;

  /// Tabulated columns (sweep density excluded), in file order.
  std::vector<double> densities(ModelKind model, EdgeKind kind) const;
  double sweep_density() const { return sweep_density_; }

 private:
  struct Key {
    ModelKind model;
    EdgeKind kind;
    auto operator<=>(const Key&) const = default;
  };
  double sweep_density_ = 0.11;
  std::map<Key, double> sweep_;
  std::map<Key, std::vector<std::pair<double, double>>> cells_;
};

double lookup_a_scale(ModelKind model, EdgeKind kind, double density);

struct AnomalySetup {
  AnomalyFamily family = AnomalyFamily::OddsRatio;
  AnomalyProfile profile = AnomalyProfile::Sustained;
  std::size_t n_affected = 0;
  std::size_t t_start = 61;
  std::size_t cpl = 10;
  double magnitude = 1.0;
  RadiusPolicy radius_policy = RadiusPolicy::Proportional;

  AnomalySpec spec() const;
};

struct Scenario {
  std::string id = "scenario";
  ModelKind model = ModelKind::Dlsm;
  EdgeKind edge_kind = EdgeKind::Binary;
  std::size_t n = 100;
  std::size_t T = 110;
  std::size_t t1 = 50;
  double phi = 0.5;
  double target_density = 0.11;
  std::optional<double> a_scale;  // taken from the catalog when absent
  std::optional<AnomalySetup> anomaly;
  std::size_t reps = 200;
  std::size_t calibration_reps = 200;
  std::uint64_t base_seed = 1;
  std::vector<StatKind> statistics{std::begin(kAllStats), std::end(kAllStats)};
  std::size_t m = 20;
  SigmaEstimator estimator = SigmaEstimator::CorrSD;
  double p_target = 0.03;
  LatentPrior prior = LatentPrior::Var1;

  double resolved_a_scale() const;
  std::optional<Window> window() const;
};

/// Throws std::invalid_argument on a broken scenario invariant.
void check_scenario(const Scenario& s);

/// Scenario file: {"scenarios": [ {...}, ... ]} or a bare array. Keys
/// mirror the Scenario fields; unknown keys are rejected.
std::vector<Scenario> parse_scenarios(const std::string& json_text);
std::vector<Scenario> load_scenarios(const std::filesystem::path& path);
std::string scenario_to_json(const Scenario& s);

/// The full study grid around `base`: phi over {0.1, 0.3, 0.5, 0.75, 0.9,
/// 0.95, 0.99} at the sweep density, and every tabulated density at phi 0.5.
std::vector<Scenario> expand_full_grid(const Scenario& base);

DlsmConfig dlsm_config(const Scenario& s, std::uint64_t seed);
DdcsbmConfig ddcsbm_config(const Scenario& s, std::uint64_t seed);

/// One network of the scenario, with or without its anomaly.
DynamicNetwork generate_network(const Scenario& s, std::uint64_t seed, bool with_anomaly,
                                GenerationStats* stats = nullptr);

/// Seeds base_seed + reps + r' for r' = 0..calibration_reps-1.
std::uint64_t calibration_seed(const Scenario& s, std::size_t r);

/// Null-replicate series for calibration, indexed [statistic][replicate].
std::map<StatKind, std::vector<StatSeries>> null_series(const Scenario& s, std::size_t count, int jobs = 0);

std::map<StatKind, CalibrationResult> calibrate_scenario(const Scenario& s, int jobs = 0);

struct ScenarioResult {
  Scenario scenario;
  double a_scale = 0.0;
  std::map<StatKind, CalibrationResult> calibration;
  std::vector<EvalRecord> records;
  std::vector<SummaryRow> summary;
  std::size_t gamma_clamps = 0;   // Phase I fits whose gamma1 had to be clamped
  std::size_t clamped_rates = 0;  // latent-space Poisson rates capped at exp(10)
};

/// Calibrates q per statistic on null seeds, then scores every replicate
/// r with seed base_seed + r. `jobs` <= 0 uses all available threads.
/// Failures inside a replicate become error records; the rest proceeds.
ScenarioResult run_scenario(const Scenario& s, int jobs = 0);

/// Same as run_scenario but with the thresholds supplied instead of calibrated.
ScenarioResult run_with_thresholds(const Scenario& s, const std::map<StatKind, double>& q, int jobs = 0);

std::string result_metadata_json(const ScenarioResult& result);

}  // namespace netmon
