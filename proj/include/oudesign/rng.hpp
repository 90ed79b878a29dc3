#pragma once

#include <cstdint>
#include <random>

namespace oudesign {

// Generator identification recorded in output metadata.
inline constexpr const char* kGeneratorName = "mt19937_64/splitmix64-substreams";
inline constexpr const char* kNormalVariateMethod = "inverse-cdf-acklam-halley";

// splitmix64 step; used to derive well-separated substream seeds.
std::uint64_t splitmix64_next(std::uint64_t& state);

// Deterministic substream engine for (seed, index); replications and
// multistart runs each own one, so results do not depend on scheduling.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index);

// Uniform on the open interval (0,1), 53-bit resolution.
double uniform01(std::mt19937_64& engine);

// Quantile of the standard normal; rational approximation refined by one
// Halley step against erfc, accurate to a few ulp.
double inverse_normal_cdf(double p);

// Standard normal draw via the inverse CDF.
double standard_normal(std::mt19937_64& engine);

}  // namespace oudesign
