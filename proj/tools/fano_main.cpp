// Command-line front end: classify plane families on complete
// intersections, certify the curve-freeness bound, enumerate explicit
// instances over prime fields, sweep parameter grids and export chart
// ideals.
//
// Exit codes: 0 success / certificate holds, 2 invalid input,
// 3 certificate fails, 4 plane budget exceeded, 1 internal invariant
// violation (sweep only).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fano/fano.hpp"

namespace {

using nlohmann::ordered_json;

struct CliConfig {
  int n = 0;
  std::string degrees;
  int k = 0;
  std::uint32_t p = 0;
  std::string input;
  std::string out;
  bool json = false;
  std::int64_t budget = fano::kDefaultPlaneBudget;
  std::uint64_t seed = 0;
  int threads = 1;
  bool meets = false;
  bool components = false;
  std::string chart = "all";
  // sweep ranges
  int n_min = 3, n_max = 0;
  int d_min = 2, d_max = 0;
  int s_min = 1, s_max = 1;
  int k_min = 1, k_max = 0;
};

std::vector<int> parse_degree_list(const std::string& text) {
  std::vector<int> degrees;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int d = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      degrees.push_back(d);
    } catch (const std::exception&) {
      throw fano::invalid_input("cannot parse degree '" + item + "'");
    }
  }
  if (degrees.empty()) throw fano::invalid_input("empty degree list");
  return degrees;
}

std::string degrees_to_string(const std::vector<int>& degrees, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(degrees[i]);
  }
  return out;
}

void write_text(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw fano::invalid_input("cannot open output file: " + path);
  out << content;
}

std::string setup_text(const fano::FanoSetup& s) {
  return "n=" + std::to_string(s.n) + ", degrees=(" + degrees_to_string(s.degrees) +
         "), k=" + std::to_string(s.k);
}

std::string classification_text(const fano::FanoClassification& c) {
  std::ostringstream out;
  out << "raw setup:              " << setup_text(c.raw) << "\n";
  out << "normalized setup:       " << setup_text(c.normalized) << "\n";
  out << "degree product:         " << c.degree_product << "\n";
  out << "status:                 " << fano::to_string(c.status) << "\n";
  out << "scope:                  "
      << (c.scope_note == fano::ScopeNote::VeryGeneralX ? "very general X" : "all smooth X")
      << "\n";
  out << "expected dimension t:   " << c.t << "\n";
  out << "component count:        " << fano::to_string(c.component_count) << "\n";
  out << "canonical degree:       "
      << (c.canonical_degree ? c.canonical_degree->str() : std::string("undefined (empty)"))
      << "\n";
  out << "ample threshold m:      " << c.m << "\n";
  out << "rationally connected:   " << (c.rationally_connected ? "yes" : "no") << "\n";
  out << "general type:           " << (c.general_type ? "yes" : "no") << "\n";
  out << "curve-free certificate: " << (c.curve_free_certificate ? "yes" : "no") << "\n";
  for (const auto& note : c.notes) out << "note: " << note << "\n";
  return out.str();
}

int run_classify(const CliConfig& cfg) {
  const fano::FanoSetup setup{cfg.n, parse_degree_list(cfg.degrees), cfg.k};
  const auto cls = fano::classify(setup);
  if (cfg.json)
    write_text(cfg.out, fano::classification_json(cls).dump(2) + "\n");
  else
    write_text(cfg.out, classification_text(cls));
  return 0;
}

int run_certify(const CliConfig& cfg) {
  const fano::FanoSetup setup{cfg.n, parse_degree_list(cfg.degrees), cfg.k};
  const auto normalized = fano::normalize(setup);
  if (normalized.degree_product() == 2) {
    std::cerr << "error: the bound does not apply to quadrics (degree product 2)\n";
    return 2;
  }
  const fano::BigInt lhs = fano::BigInt(setup.k + 2) * (setup.n - setup.k + 1);
  fano::BigInt rhs(0);
  for (int d : setup.degrees) rhs += fano::binomial(d + setup.k + 1, setup.k + 1);
  if (fano::curve_free_bound_holds(setup)) {
    std::cout << "certified: (k+2)(n-k+1) = " << lhs << " <= " << rhs
              << " = sum C(d_i+k+1, k+1); the k-plane family of a very general member "
                 "contains neither rational nor elliptic curves\n";
    return 0;
  }
  std::cout << "not certified: (k+2)(n-k+1) = " << lhs << " > " << rhs
            << " = sum C(d_i+k+1, k+1); the bound fails for " << setup_text(setup) << "\n";
  return 3;
}

std::string consistency_text(const fano::FanoClassification& cls, std::size_t observed) {
  std::ostringstream out;
  switch (cls.status) {
    case fano::FanoStatus::GenericallyEmpty:
      if (observed > 0) {
        out << "observed " << observed << " plane(s) although a very general member has none "
            << "(t = " << cls.t << " < 0); this explicit instance is special, which the "
            << "very-general quantifier allows";
      } else {
        out << "observed 0 planes, matching the very-general emptiness (t = " << cls.t << ")";
      }
      break;
    case fano::FanoStatus::EmptyForAllSmooth:
      if (observed > 0) {
        out << "observed " << observed << " plane(s); every smooth member has none, so this "
            << "instance must be singular";
      } else {
        out << "observed 0 planes, as required for every smooth member";
      }
      break;
    default:
      out << "generic verdict: " << fano::to_string(cls.status) << " with t = " << cls.t
          << (cls.scope_note == fano::ScopeNote::AllSmoothX ? " for all smooth members"
                                                            : " for very general members")
          << "; observed " << observed
          << " rational plane(s) on this instance (a finite-field sample, not a prediction)";
      break;
  }
  return out.str();
}

int run_enumerate(const CliConfig& cfg) {
  const auto instance = fano::load_instance(cfg.input);
  auto points = fano::fano_points(instance, cfg.k, fano::EnumerationStrategy::ChartIdeals,
                                  fano::BigInt(cfg.budget), cfg.threads);
  if (cfg.meets || cfg.components) points.meets = fano::compute_meet_matrix(points.planes);
  std::optional<std::vector<std::vector<std::size_t>>> components;
  if (cfg.components && !points.planes.empty()) components = fano::meet_components(points);
  ordered_json j = fano::point_set_json(points, components ? &*components : nullptr);
  if (!cfg.meets) j.erase("meets");

  const fano::FanoSetup shape{instance.ambient_dim(), instance.degrees(), cfg.k};
  const auto cls = fano::classify(shape);
  std::ostringstream summary;
  summary << "instance: n=" << instance.ambient_dim() << " over F_"
          << instance.field().modulus() << ", degrees=(" << degrees_to_string(instance.degrees())
          << ")\n";
  summary << "candidate " << cfg.k << "-planes: "
          << fano::gaussian_binomial(instance.ambient_dim() + 1, cfg.k + 1,
                                     instance.field().modulus())
          << "\n";
  summary << "planes on X: " << points.planes.size() << "\n";
  summary << "classifier: status=" << fano::to_string(cls.status) << ", t=" << cls.t
          << ", scope=" << fano::to_string(cls.scope_note) << "\n";
  summary << "consistency: " << consistency_text(cls, points.planes.size()) << "\n";
  if (components) {
    summary << "disjointness components: " << components->size() << " (sizes:";
    for (const auto& part : *components) summary << " " << part.size();
    summary << ")\n";
  }

  const std::string payload = j.dump(2) + "\n";
  if (!cfg.out.empty()) {
    write_text(cfg.out, payload);
    std::cout << summary.str();
  } else {
    std::cout << payload;
    std::cerr << summary.str();
  }
  return 0;
}

int run_count_planes(const CliConfig& cfg) {
  const auto count = fano::gaussian_binomial(cfg.n + 1, cfg.k + 1, cfg.p);
  if (cfg.json) {
    ordered_json j{{"n", cfg.n}, {"k", cfg.k}, {"p", cfg.p}, {"count", fano::json_int(count)}};
    write_text(cfg.out, j.dump(2) + "\n");
  } else {
    write_text(cfg.out, count.str() + "\n");
  }
  return 0;
}

fano::PivotSet parse_chart_selector(const std::string& text, int n, int k) {
  fano::PivotSet pivots;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      pivots.push_back(v);
    } catch (const std::exception&) {
      throw fano::invalid_input("cannot parse chart selector entry '" + item + "'");
    }
  }
  if (static_cast<int>(pivots.size()) != k + 1)
    throw fano::invalid_input("chart selector must list k+1 = " + std::to_string(k + 1) +
                              " pivot columns");
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] < 0 || pivots[i] > n)
      throw fano::invalid_input("pivot column " + std::to_string(pivots[i]) +
                                " out of range [0, " + std::to_string(n) + "]");
    if (i > 0 && pivots[i] <= pivots[i - 1])
      throw fano::invalid_input("pivot columns must be strictly increasing");
  }
  return pivots;
}

int run_ideal(const CliConfig& cfg) {
  const auto instance = fano::load_instance(cfg.input);
  const int n = instance.ambient_dim();
  std::vector<fano::PivotSet> selected;
  if (cfg.chart == "all") {
    selected = fano::all_pivot_sets(n, cfg.k);
  } else {
    selected.push_back(parse_chart_selector(cfg.chart, n, cfg.k));
  }
  if (cfg.k < 1 || cfg.k > n - instance.codim() - 1)
    throw fano::invalid_input("ideal: need 1 <= k <= n-s-1");
  for (const auto& pivots : selected) {
    const auto chart = fano::build_chart_ideal(instance, cfg.k, pivots);
    const std::string payload = fano::chart_ideal_json(chart).dump(2) + "\n";
    if (cfg.out.empty()) {
      std::cout << payload;
    } else {
      std::filesystem::create_directories(cfg.out);
      std::string name = "chart";
      for (int p : pivots) name += "_" + std::to_string(p);
      write_text((std::filesystem::path(cfg.out) / (name + ".json")).string(), payload);
    }
  }
  if (!cfg.out.empty())
    std::cout << "wrote " << selected.size() << " chart ideal file(s) to " << cfg.out << "\n";
  return 0;
}

/// Multisets (ascending) of the given size with entries in [lo, hi].
void each_multiset(int size, int lo, int hi, std::vector<int>& current,
                   const std::function<void(const std::vector<int>&)>& fn) {
  if (size == 0) {
    fn(current);
    return;
  }
  const int start = current.empty() ? lo : current.back();
  for (int d = start; d <= hi; ++d) {
    current.push_back(d);
    each_multiset(size - 1, lo, hi, current, fn);
    current.pop_back();
  }
}

struct SweepCheckFailure : fano::error {
  using fano::error::error;
};

void check_row_invariants(const fano::FanoSetup& setup, const fano::FanoClassification& cls,
                          int pad_max) {
  using fano::BigInt;
  const BigInt t = fano::expected_dimension(setup);
  const BigInt m = fano::ample_threshold_m(setup.degrees, setup.k);
  const BigInt canonical = fano::canonical_degree(setup);
  if (canonical != m - setup.n + 1)
    throw SweepCheckFailure("canonical degree identity failed for " + setup_text(setup));
  if (cls.degree_product > 2) {
    if (fano::curve_free_bound_holds(setup) != (m - setup.n >= t))
      throw SweepCheckFailure("bound equivalence failed for " + setup_text(setup));
  } else {
    const int ns = cls.normalized.n - cls.normalized.codim();
    const BigInt doubled = BigInt(setup.k + 1) * (2 * ns - 3 * setup.k);
    if (doubled % 2 != 0)
      throw SweepCheckFailure("quadric dimension not integral for " + setup_text(setup));
    if (setup.k <= ns / 2) {
      if (doubled / 2 != t)
        throw SweepCheckFailure("quadric dimension mismatch for " + setup_text(setup));
      if (!cls.canonical_degree || *cls.canonical_degree != BigInt(-ns + setup.k) ||
          *cls.canonical_degree > -1)
        throw SweepCheckFailure("quadric canonical degree failed for " + setup_text(setup));
    }
  }
  for (int M = setup.n + 1; M <= setup.n + pad_max; ++M) {
    if (!fano::classify(fano::pad_degrees(setup, M)).verdict_equals(cls))
      throw SweepCheckFailure("padding invariance failed for " + setup_text(setup) +
                              " at M=" + std::to_string(M));
  }
}

int run_sweep(const CliConfig& cfg) {
  if (cfg.n_min < 3 || cfg.d_min < 1 || cfg.s_min < 1 || cfg.k_min < 1)
    throw fano::invalid_input("sweep: range minima out of bounds (need n>=3, d>=1, s>=1, k>=1)");
  constexpr int kPadMax = 5;
  std::vector<fano::FanoClassification> rows;
  try {
    for (int s = cfg.s_min; s <= cfg.s_max; ++s) {
      std::vector<int> current;
      each_multiset(s, cfg.d_min, cfg.d_max, current, [&](const std::vector<int>& degrees) {
        for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
          for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
            const fano::FanoSetup setup{n, degrees, k};
            fano::FanoClassification cls;
            try {
              cls = fano::classify(setup);
            } catch (const fano::invalid_input&) {
              continue;  // cell outside the validity region of the grid
            }
            check_row_invariants(setup, cls, kPadMax);
            rows.push_back(std::move(cls));
          }
        }
      });
    }
    // Seeded spot-checks beyond the grid: padding invariance on random
    // valid setups.
    std::mt19937_64 rng(cfg.seed);
    for (int i = 0; i < 50; ++i) {
      const int s = 1 + static_cast<int>(rng() % 3);
      const int n = 3 + s + static_cast<int>(rng() % 12);
      std::vector<int> degrees;
      for (int j = 0; j < s; ++j) degrees.push_back(2 + static_cast<int>(rng() % 5));
      const int k_hi = n - s - 1;
      const int k = 1 + static_cast<int>(rng() % std::min(5, k_hi));
      const fano::FanoSetup setup{n, degrees, k};
      check_row_invariants(setup, fano::classify(setup), kPadMax);
    }
  } catch (const SweepCheckFailure& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return 1;
  }

  if (cfg.json) {
    auto table = ordered_json::array();
    for (const auto& cls : rows) table.push_back(fano::classification_json(cls));
    write_text(cfg.out, table.dump(2) + "\n");
  } else {
    std::ostringstream csv;
    csv << "n,degrees,k,s,t,status,component_count,canonical_degree,m,"
           "rationally_connected,general_type,curve_free_certificate,scope_note\n";
    for (const auto& cls : rows) {
      csv << cls.raw.n << "," << degrees_to_string(cls.raw.degrees, ";") << "," << cls.raw.k
          << "," << cls.raw.codim() << "," << cls.t << "," << fano::to_string(cls.status) << ","
          << fano::to_string(cls.component_count) << ","
          << (cls.canonical_degree ? cls.canonical_degree->str() : std::string()) << "," << cls.m
          << "," << (cls.rationally_connected ? 1 : 0) << "," << (cls.general_type ? 1 : 0)
          << "," << (cls.curve_free_certificate ? 1 : 0) << "," << fano::to_string(cls.scope_note)
          << "\n";
    }
    write_text(cfg.out, csv.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CliConfig cfg;
  CLI::App app{"Plane families on complete intersections: closed-form classification "
               "and exact enumeration over prime fields"};
  app.require_subcommand(1);

  auto* classify_cmd = app.add_subcommand("classify", "Classify the k-plane family of a setup");
  classify_cmd->add_option("--n", cfg.n, "ambient projective dimension")->required();
  classify_cmd->add_option("--degrees", cfg.degrees, "comma-separated degrees")->required();
  classify_cmd->add_option("--k", cfg.k, "plane dimension")->required();
  classify_cmd->add_flag("--json", cfg.json, "emit JSON instead of text");
  classify_cmd->add_option("--out", cfg.out, "output file (default stdout)");

  auto* certify_cmd =
      app.add_subcommand("certify", "Check the curve-freeness bound (exit 0 holds, 3 fails)");
  certify_cmd->add_option("--n", cfg.n, "ambient projective dimension")->required();
  certify_cmd->add_option("--degrees", cfg.degrees, "comma-separated degrees")->required();
  certify_cmd->add_option("--k", cfg.k, "plane dimension")->required();

  auto* enumerate_cmd =
      app.add_subcommand("enumerate", "Enumerate the F_p-points of the k-plane family of an "
                                      "explicit instance");
  enumerate_cmd->add_option("--input", cfg.input, "instance JSON file")->required();
  enumerate_cmd->add_option("--k", cfg.k, "plane dimension")->required();
  enumerate_cmd->add_flag("--meets", cfg.meets, "include the incidence matrix");
  enumerate_cmd->add_flag("--components", cfg.components,
                          "include disjointness-graph components");
  enumerate_cmd->add_option("--out", cfg.out, "write JSON here (summary goes to stdout)");
  enumerate_cmd->add_flag("--json", cfg.json, "JSON to stdout (default when --out is absent)");
  enumerate_cmd->add_option("--budget", cfg.budget, "max candidate planes")
      ->default_val(fano::kDefaultPlaneBudget);
  enumerate_cmd->add_option("--threads", cfg.threads, "worker threads across charts")
      ->default_val(1);

  auto* sweep_cmd = app.add_subcommand("sweep", "Classify a parameter grid and verify internal "
                                                "identities cell by cell");
  sweep_cmd->add_option("--n-min", cfg.n_min)->default_val(3);
  sweep_cmd->add_option("--n-max", cfg.n_max)->required();
  sweep_cmd->add_option("--d-min", cfg.d_min)->default_val(2);
  sweep_cmd->add_option("--d-max", cfg.d_max)->required();
  sweep_cmd->add_option("--s-min", cfg.s_min)->default_val(1);
  sweep_cmd->add_option("--s-max", cfg.s_max)->default_val(1);
  sweep_cmd->add_option("--k-min", cfg.k_min)->default_val(1);
  sweep_cmd->add_option("--k-max", cfg.k_max)->required();
  sweep_cmd->add_flag("--json", cfg.json, "emit a JSON array instead of CSV");
  sweep_cmd->add_option("--out", cfg.out, "output file (default stdout)");
  sweep_cmd->add_option("--seed", cfg.seed, "seed for the randomized padding spot-checks")
      ->default_val(0);

  auto* ideal_cmd = app.add_subcommand("ideal", "Export chart ideals of the k-plane family");
  ideal_cmd->add_option("--input", cfg.input, "instance JSON file")->required();
  ideal_cmd->add_option("--k", cfg.k, "plane dimension")->required();
  ideal_cmd->add_option("--chart", cfg.chart, "'all' or comma-separated pivot columns")
      ->default_val("all");
  ideal_cmd->add_option("--out", cfg.out, "output directory (default: print to stdout)");

  auto* count_cmd = app.add_subcommand("count-planes",
                                       "Print the number of k-planes in P^n(F_p)");
  count_cmd->add_option("--n", cfg.n, "ambient projective dimension")->required();
  count_cmd->add_option("--k", cfg.k, "plane dimension")->required();
  count_cmd->add_option("--p", cfg.p, "prime modulus")->required();
  count_cmd->add_flag("--json", cfg.json, "emit JSON");
  count_cmd->add_option("--out", cfg.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(classify_cmd)) return run_classify(cfg);
    if (app.got_subcommand(certify_cmd)) return run_certify(cfg);
    if (app.got_subcommand(enumerate_cmd)) return run_enumerate(cfg);
    if (app.got_subcommand(sweep_cmd)) return run_sweep(cfg);
    if (app.got_subcommand(ideal_cmd)) return run_ideal(cfg);
    if (app.got_subcommand(count_cmd)) return run_count_planes(cfg);
  } catch (const fano::budget_exceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
