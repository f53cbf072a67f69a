#include "ddr/certificate.hpp"

#include <cstdint>
#include <cstdio>

namespace ddr {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedDrAwayFrom: return "CERTIFIED_DR_AWAY_FROM";
    case Verdict::CertifiedDrAllDirections: return "CERTIFIED_DR_ALL_DIRECTIONS";
    case Verdict::DecidedDr: return "DECIDED_DR";
    case Verdict::DecidedNotDr: return "DECIDED_NOT_DR";
    case Verdict::Refuted: return "REFUTED";
    case Verdict::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

bool is_positive(Verdict v) {
  return v == Verdict::CertifiedDrAwayFrom || v == Verdict::CertifiedDrAllDirections ||
         v == Verdict::DecidedDr;
}

bool is_negative(Verdict v) { return v == Verdict::DecidedNotDr || v == Verdict::Refuted; }

std::string presentation_digest(const Presentation& p) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize(p)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<Consequence> derive_consequences(const Certificate& cert, const Presentation& p,
                                             bool subpresentation_dr) {
  if (!is_positive(cert.verdict)) {
    throw Error(ErrorCode::InvalidArgument, "consequences need a positive verdict");
  }
  const GeneratorSet& s = cert.s;
  const std::string sname = format_generator_set(s, p);
  std::vector<Consequence> out;
  out.push_back({"pi2_generated_by_subpresentation",
                 "pi_2(K(P)) is generated as a G(P)-module by the image of pi_2(K(P_S)), S = " +
                     sname});
  out.push_back({"pi1_injective", "pi_1(K(P_S)) -> pi_1(K(P)) is injective, S = " + sname});

  bool every_relator_leaves_s = true;
  bool every_relator_has_all = true;
  for (const auto& r : p.relators()) {
    const auto sup = support(r);
    bool leaves = false;
    for (int g : sup) leaves = leaves || !s.contains(g);
    every_relator_leaves_s = every_relator_leaves_s && leaves;
    every_relator_has_all = every_relator_has_all && sup.size() == p.generator_count();
  }
  if (every_relator_leaves_s && !s.empty()) {
    out.push_back({"free_subgroup", sname + " generates a free subgroup of G(P) with basis " + sname});
  }
  if (cert.verdict == Verdict::CertifiedDrAllDirections) {
    out.push_back({"pi1_injective_all_subsets",
                   "G(P_S) -> G(P) is injective for every subset S of the generators"});
  }
  if (cert.verdict == Verdict::CertifiedDrAllDirections && every_relator_has_all) {
    out.push_back({"freiheitssatz_all_proper_subsets",
                   "every proper subset of the generators freely generates a free subgroup of G(P)"});
  }
  if (subpresentation_dr || relators_over(p, s).empty()) {
    out.push_back({"aspherical", "K(P) is aspherical"});
  }
  return out;
}

}  // namespace ddr
