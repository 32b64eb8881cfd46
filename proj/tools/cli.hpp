#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "disctest/types.hpp"

namespace disctest::cli {

enum ExitCode : int { exit_pass = 0, exit_error = 1, exit_failed = 2, exit_hypothesis = 3 };

/// Entry point shared by the executable and the tests; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "2", "-1.5i", "0.3+0.7i", "1e-3-2i"
[[nodiscard]] Complex parse_complex(std::string_view text);

/// Comma-separated items: a complex literal, "r@theta" (polar), "ring:r:n" (n points at
/// radius r, arguments (j + 1/2) 2 pi / n) or "inf" (returned as nullopt).
[[nodiscard]] std::vector<std::optional<Complex>> parse_zeta_grid(std::string_view spec);

[[nodiscard]] std::uint64_t fnv1a(std::string_view bytes) noexcept;

} // namespace disctest::cli
