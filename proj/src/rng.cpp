#include "portsim/rng.hpp"

#include <stdexcept>

namespace portsim {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

std::uint64_t derive_stream_seed(std::uint64_t run_seed, std::string_view name)
{
    return splitmix64(splitmix64(run_seed) ^ fnv1a(name));
}

RngStream::RngStream(std::uint64_t run_seed, std::string_view name)
    : name_(name)
    , seed_(derive_stream_seed(run_seed, name))
    , engine_(seed_)
{
}

double RngStream::uniform01()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi)
{
    if (lo > hi) {
        throw std::invalid_argument("uniform: lo > hi");
    }
    if (lo == hi) {
        return lo;
    }
    return lo + (hi - lo) * uniform01();
}

std::size_t RngStream::index(std::size_t n)
{
    if (n == 0) {
        throw std::invalid_argument("index: empty range");
    }
    // Rejection sampling keeps the result exactly uniform.
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
}

} // namespace portsim
