#include "ufc/bench.hpp"

#include <cstdio>
#include <unistd.h>

namespace ufc {

std::uint64_t PeakRssSampler::current_rss_bytes() {
    // second field of /proc/self/statm = resident pages
    FILE* f = std::fopen("/proc/self/statm", "r");
    if (!f) return 0;
    unsigned long long total = 0, resident = 0;
    int n = std::fscanf(f, "%llu %llu", &total, &resident);
    std::fclose(f);
    if (n != 2) return 0;
    return static_cast<std::uint64_t>(resident) *
           static_cast<std::uint64_t>(sysconf(_SC_PAGESIZE));
}

PeakRssSampler::PeakRssSampler() {
    peak_.store(current_rss_bytes());
    worker_ = std::thread([this] {
        while (!done_.load(std::memory_order_relaxed)) {
            std::uint64_t now = current_rss_bytes();
            std::uint64_t prev = peak_.load(std::memory_order_relaxed);
            while (now > prev &&
                   !peak_.compare_exchange_weak(prev, now, std::memory_order_relaxed)) {
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(10));
        }
    });
}

std::uint64_t PeakRssSampler::stop() {
    if (worker_.joinable()) {
        done_.store(true);
        worker_.join();
    }
    std::uint64_t final_now = current_rss_bytes();
    std::uint64_t prev = peak_.load();
    if (final_now > prev) peak_.store(final_now);
    return peak_.load();
}

PeakRssSampler::~PeakRssSampler() {
    if (worker_.joinable()) {
        done_.store(true);
        worker_.join();
    }
}

} // namespace ufc
