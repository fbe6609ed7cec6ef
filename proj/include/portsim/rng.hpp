#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace portsim {

// Mixes a run seed with a stream name. Equal inputs give equal seeds on every
// platform; different names give unrelated seeds.
std::uint64_t derive_stream_seed(std::uint64_t run_seed, std::string_view name);

// Named random stream. Sampling is done by hand on top of mt19937_64 so the
// sequences do not depend on the standard library's distribution code.
class RngStream {
public:
    RngStream(std::uint64_t run_seed, std::string_view name);

    const std::string& name() const { return name_; }
    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform01();

    // Uniform on [lo, hi]; throws std::invalid_argument when lo > hi.
    double uniform(double lo, double hi);

    // Uniform integer in [0, n); n must be positive.
    std::size_t index(std::size_t n);

private:
    std::string name_;
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace portsim
