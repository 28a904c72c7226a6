#pragma once

namespace antcover {

inline constexpr const char* kVersion = "1.0.0";

// Identifier of the seeded random source used by every stochastic
// component; recorded in machine-readable reports for reproducibility.
inline constexpr const char* kRngId = "mt19937_64";

}  // namespace antcover
