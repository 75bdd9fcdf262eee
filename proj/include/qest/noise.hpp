#pragma once

#include <cstdint>
#include <random>

namespace qest {

// Seeded Gaussian/uniform source with per-trajectory substreams. The same
// (seed, stream_id) pair reproduces the identical draw sequence bit for bit:
// the engine is a standards-specified mt19937_64 and the variate transforms
// below avoid the implementation-defined std distributions.
class NoiseStream {
public:
    explicit NoiseStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform();

    // Standard normal via Box-Muller; the second variate of each pair is
    // cached, so call parity affects the raw-word consumption but not
    // determinism.
    double normal();

private:
    std::uint64_t raw();

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// sqrt(dt) times a standard normal draw; advances the stream.
double wiener_increment(NoiseStream& noise, double dt);

}  // namespace qest
