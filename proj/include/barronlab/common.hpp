#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace barronlab {

using Point = std::vector<double>;
using RealFn = std::function<double(std::span<const double>)>;

class LabError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Point outside the unit cube or wrong dimension.
class DomainError : public LabError {
 public:
  using LabError::LabError;
};

class InfeasibleError : public LabError {
 public:
  using LabError::LabError;
};

class IndexError : public LabError {
 public:
  using LabError::LabError;
};

class ResolutionError : public LabError {
 public:
  using LabError::LabError;
};

class MembershipError : public LabError {
 public:
  using LabError::LabError;
};

class RangeError : public LabError {
 public:
  using LabError::LabError;
};

class DegenerateError : public LabError {
 public:
  using LabError::LabError;
};

class InternalError : public LabError {
 public:
  using LabError::LabError;
};

// Malformed or invariant-violating serialized input.
class FormatError : public LabError {
 public:
  using LabError::LabError;
};

class ExhaustionError : public LabError {
 public:
  ExhaustionError(const std::string& what, double best) : LabError(what), best_found(best) {}
  double best_found;
};

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0);

Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Uniform double in [0, 1) built from the top 53 bits, identical on every platform.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, n) by rejection, platform independent.
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);

void check_unit_cube(std::span<const double> x, std::size_t dim);

}  // namespace barronlab
