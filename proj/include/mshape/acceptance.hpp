#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mshape::acceptance {

enum class Suite { Exact, Oracle, MonteCarlo };

struct CriterionResult {
  int id = 0;
  Suite suite = Suite::Exact;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr std::uint64_t kDefaultSeed = 20240611;

std::string_view suite_name(Suite s);
std::optional<Suite> parse_suite(std::string_view name);

using Listener = std::function<void(const CriterionResult&)>;

// Runs every criterion of the suite in order; `on_result` sees each as it finishes.
std::vector<CriterionResult> run_suite(Suite suite, std::uint64_t seed, const Listener& on_result = {});

std::string format_line(const CriterionResult& r);

}  // namespace mshape::acceptance
