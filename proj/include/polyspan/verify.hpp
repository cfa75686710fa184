#pragma once

// Oracle-equivalence and property checks shared by the CLI `verify` verb and
// the acceptance binary.

#include <cstdint>
#include <string>
#include <vector>

#include "polyspan/carrier.hpp"

namespace polyspan {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

inline constexpr double kEquivalenceBudgetSeconds = 5.0;
inline constexpr double kGradientTolerance = 1e-4;

CheckResult check_bellman_ford_equivalence(std::uint64_t seed, std::size_t graphs = 200);
CheckResult check_floyd_warshall_equivalence(std::uint64_t seed, std::size_t matrices = 200);
CheckResult check_bellman_ford_update(std::uint64_t seed, std::size_t graphs = 200);
CheckResult check_algebra_laws(std::uint64_t seed, std::size_t samples = 1000);
CheckResult check_equivariance(std::uint64_t seed, std::size_t triples = 50);
CheckResult check_mpnn_correspondence(std::uint64_t seed, std::size_t instances = 50);
CheckResult check_v3_alignment(std::uint64_t seed, std::size_t matrices = 50);
CheckResult check_gradients(std::uint64_t seed, std::size_t mlps = 20);
CheckResult check_single_span_rejected();

/// Engine vs oracle for every source of `g`, and for its distance matrix.
CheckResult check_graph(const GraphContext& g, const std::string& label);

std::vector<CheckResult> run_verification(std::uint64_t seed);

std::string format_check(const CheckResult& r);

}  // namespace polyspan
