#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sepcycle {

// Known suites: few-bounds, lemma4, ptas-vs-oracle, sqrt-ratio, cauchy, poly3d.
// Returns an RFC-4180 CSV table (LF endings), one row per (instance, algorithm).
// Every column is deterministic except the trailing wall_ms column, which is
// omitted when include_walltime is false.
std::string run_bench_suite(const std::string& suite, const std::vector<std::uint64_t>& seeds,
                            bool include_walltime = true);

bool is_known_suite(const std::string& suite);
std::vector<std::string> known_suites();

}  // namespace sepcycle
