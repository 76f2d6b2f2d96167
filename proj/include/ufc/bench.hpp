#pragma once

// Small measurement helpers shared by the algorithms and the bench CLI:
// cooperative deadlines, wall clocks, and a sampled peak-RSS watcher.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <thread>

#include "ufc/core.hpp"

namespace ufc {

struct TimeoutError : Error {
    using Error::Error;
};

// Cooperative deadline. Algorithms call poll() at loop boundaries; it throws
// TimeoutError once the budget is exhausted. A default-constructed deadline
// never fires.
class Deadline {
public:
    Deadline() = default;
    static Deadline after_seconds(double s) {
        Deadline d;
        d.enabled_ = true;
        d.at_ = std::chrono::steady_clock::now() +
                std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(s));
        return d;
    }

    bool enabled() const { return enabled_; }
    bool expired() const {
        return enabled_ && std::chrono::steady_clock::now() >= at_;
    }
    void poll() const {
        // cheap enough to call every few thousand iterations
        if (expired()) throw TimeoutError("time budget exhausted");
    }

private:
    bool enabled_ = false;
    std::chrono::steady_clock::time_point at_{};
};

class WallTimer {
public:
    WallTimer() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

// Samples /proc/self/statm every ~10ms on a helper thread and keeps the peak
// resident set size. Best effort by construction: short-lived spikes between
// samples are missed.
class PeakRssSampler {
public:
    PeakRssSampler();
    ~PeakRssSampler();
    PeakRssSampler(const PeakRssSampler&) = delete;
    PeakRssSampler& operator=(const PeakRssSampler&) = delete;

    // Stops sampling and returns the peak in bytes (0 when /proc is unreadable).
    std::uint64_t stop();

    static std::uint64_t current_rss_bytes();

private:
    std::atomic<bool> done_{false};
    std::atomic<std::uint64_t> peak_{0};
    std::thread worker_;
};

} // namespace ufc
