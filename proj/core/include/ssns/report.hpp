#pragma once

// JSON run reports.  Every field except the "timing" subtree is a pure
// function of the run configuration and seed, so two runs with identical
// inputs compare byte-identical after strip_volatile().  Each report embeds
// the grid checksum and the library version string so archived outputs stay
// attributable to the code and discretization that produced them.

#include "ssns/head_pressure.hpp"
#include "ssns/solver.hpp"
#include "ssns/validators.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace ssns {

using Json = nlohmann::ordered_json;

// Run-level configuration echoed into every report.
struct RunConfig {
  int n = 5;
  int grid_points = 64;
  std::string force_family = "radial-cosine";
  double amplitude = 1e-2;
  double tol = 1e-11;
  std::uint64_t seed = 0x5eed;
};

Json run_config_json(const RunConfig& cfg);
Json exponents_json(const Exponents& e);
Json ratio_json(const RatioEntry& r);
Json identity_report_json(const IdentityReport& rep);
Json trace_json(const ContinuationTrace& trace);

// Norm block: sup-type X norm, the Dirichlet seminorm ||grad u||_{L^2}, and
// the sphere pressure norms ||p||_{L^{(n-1)/(n-3)}} and
// ||grad p||_{L^{(n-1)/(n-2)}}, using the pointwise identity
// |grad p|^2 = (1-x^2) P'(x)^2 + 4 P^2 for the (-2)-homogeneous extension.
Json norms_json(const AxisymField& u, const ScalarSphereField& p);

// Full report for one solve; wall time goes into the single "timing" subtree.
Json solve_report(const RunConfig& cfg, const ForceSpec& f, const SelfsimSolution& sol,
                  const IdentityReport& identities, double seconds);

// Copy with every "timing" subtree removed, for byte-identity comparisons.
Json strip_volatile(const Json& report);

// Fixed layout: 2-space indent, terminating newline.
std::string to_stable_string(const Json& j);
void write_json_file(const std::string& path, const Json& j);

}  // namespace ssns
