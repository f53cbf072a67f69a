#pragma once

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddr/cayley.hpp"
#include "ddr/certificate.hpp"
#include "ddr/core.hpp"
#include "ddr/diagram.hpp"
#include "ddr/lot.hpp"
#include "ddr/weights.hpp"

namespace ddr {

enum class TestKind { FreeEdge, OneRelator, Forest, S44, Weight, Finite };

/// free, onerel, forest, s44, weight, finite
const char* to_string(TestKind t);
TestKind parse_test_kind(std::string_view name);
std::vector<TestKind> parse_test_list(std::string_view csv);
const std::vector<TestKind>& default_tests();

struct CheckConfig {
  std::vector<TestKind> tests = default_tests();
  std::size_t coset_limit = kDefaultCosetLimit;
  std::optional<WeightAssignment> weights;  // checked instead of searching
  std::optional<SurfaceDiagram> diagram;    // refutation evidence
  std::optional<std::string> subcomplex;    // subcomplex file text
  std::optional<Lot> lot;                   // source LOT; enables the collapse test
  bool exhaustive = false;                  // keep running after a verdict
};

struct Attempt {
  std::string test;
  std::string outcome;  // certified, decided_dr, decided_not_dr, refuted, failed, not_applicable, skipped
  std::string reason;
};

struct SubsetReport {
  Certificate certificate;                  // first decisive result, else UNKNOWN
  std::vector<Certificate> corroborating;   // later decisive results (exhaustive mode)
  std::vector<Attempt> attempts;
};

struct Report {
  std::string presentation_digest;
  bool all_directions = false;
  std::vector<TestKind> tests;
  std::vector<SubsetReport> subsets;
  std::optional<Certificate> combined;  // all-directions mode

  Verdict verdict() const;
};

/// Runs supplied refutation evidence, the LOT collapse test when a LOT is
/// given, then the configured tests in order.
Report run_check(const Presentation& p, const GeneratorSet& s, const CheckConfig& config = {});

/// DR in all directions is DR away from every co-singleton; the one-relator
/// test covers all of them at once.
Report run_check_all_directions(const Presentation& p, const CheckConfig& config = {});

/// Plain DR of P_S by the forest, one-relator, small-cancellation or weight
/// test; the method name, or nullopt.
std::optional<std::string> subpresentation_dr(const Presentation& p, const GeneratorSet& s);

nlohmann::json certificate_to_json(const Certificate& c, const Presentation& p);
nlohmann::json report_to_json(const Report& r, const Presentation& p);
std::string serialize_report(const Report& r, const Presentation& p);

/// Exit status: 0 positive, 1 negative, 2 unknown.
int exit_code(Verdict v);

/// Re-checks a certificate's evidence from scratch against `p`. On failure
/// `why` receives a reason.
bool verify_certificate(const Certificate& c, const Presentation& p, std::string* why = nullptr);

/// Recovers the LOT whose relators are exactly those of `p`, if any.
std::optional<Lot> lot_from_presentation(const Presentation& p);

}  // namespace ddr
