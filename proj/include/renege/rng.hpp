#pragma once

// Counter-based random streams. Every draw is a pure hash of
// (seed, stream kind, entity index, draw counter), so any entity's stream can
// be consumed out of order, simulations are bit-reproducible regardless of
// worker count, and common-random-number coupling across scenarios holds
// draw-for-draw for exogenous entities.

#include <cmath>
#include <cstdint>

#include "renege/numerics.hpp"

namespace renege {

namespace detail {
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
}  // namespace detail

// Stream kinds used by the market simulator and generators. Values are part
// of the cache/replay format; append only.
enum class StreamKind : std::uint64_t {
    CarrierArrival = 1,
    ShipmentArrival = 2,
    CarrierCost = 3,
    PairCost = 4,
    PairView = 5,
    PairChoice = 6,
    Offer = 7,
    OfferValue = 8,
    Attention = 9,
    ShipCancel = 10,
    Clear = 11,
    DayTick = 12,
    ShipmentValue = 13,
    InitialShipments = 14,
    McBidder = 15,
    Generic = 16,
};

class RandomStream {
public:
    RandomStream() = default;
    explicit RandomStream(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t bits(StreamKind kind, std::uint64_t entity, std::uint64_t counter,
                       std::uint64_t salt = 0) const {
        std::uint64_t h = detail::mix64(seed_ ^ 0x2545f4914f6cdd1dULL);
        h = detail::mix64(h ^ static_cast<std::uint64_t>(kind));
        h = detail::mix64(h ^ entity);
        h = detail::mix64(h ^ counter);
        if (salt) h = detail::mix64(h ^ salt);
        return h;
    }

    // Uniform on (0,1): 53-bit mantissa, never exactly 0 or 1.
    double uniform(StreamKind kind, std::uint64_t entity, std::uint64_t counter,
                   std::uint64_t salt = 0) const {
        std::uint64_t u = bits(kind, entity, counter, salt);
        return (static_cast<double>(u >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    }

    double normal(StreamKind kind, std::uint64_t entity, std::uint64_t counter,
                  std::uint64_t salt = 0) const {
        return normal_quantile(uniform(kind, entity, counter, salt));
    }

    double exponential(StreamKind kind, std::uint64_t entity, std::uint64_t counter,
                       std::uint64_t salt = 0) const {
        return -std::log(uniform(kind, entity, counter, salt));
    }

    // Poisson by single-draw CDF inversion; fine for the rates used here.
    int poisson(double lambda, StreamKind kind, std::uint64_t entity,
                std::uint64_t counter, std::uint64_t salt = 0) const {
        if (lambda <= 0.0) return 0;
        double u = uniform(kind, entity, counter, salt);
        double p = std::exp(-lambda), cdf = p;
        int k = 0;
        while (u > cdf && k < 10000) {
            ++k;
            p *= lambda / k;
            cdf += p;
        }
        return k;
    }

    std::uint64_t seed() const { return seed_; }

    // Derives an independent child stream (e.g. one per market).
    RandomStream child(std::uint64_t index) const {
        return RandomStream(detail::mix64(seed_ ^ detail::mix64(index ^ 0x9d39247e33776d41ULL)));
    }

private:
    std::uint64_t seed_ = 0;
};

}  // namespace renege
