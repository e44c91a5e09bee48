#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace qtcc {

/// Stable seed derivation: the same (master, label, index) triple yields the
/// same seed on every platform and build. Labels name the consumer
/// ("train_points", "noise", ...) so that streams never alias.
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view label, std::uint64_t index);
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index);

/// A seeded 64-bit engine that counts how many values were drawn from it.
/// Satisfies UniformRandomBitGenerator, so standard distributions accept it.
class RngStream {
public:
    using result_type = std::mt19937_64::result_type;

    explicit RngStream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }

    result_type operator()() {
        ++draws_;
        return engine_();
    }

    double normal(double mean, double stddev) {
        return std::normal_distribution<double>(mean, stddev)(*this);
    }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(*this); }

    std::uint64_t draws() const noexcept { return draws_; }
    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
    std::uint64_t draws_ = 0;
};

}  // namespace qtcc
