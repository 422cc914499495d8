#include "holoprec/ledger.hpp"

namespace holoprec::ledger {

namespace {
std::atomic<bool> g_enabled{false};
std::atomic<std::int64_t> g_current{0};
std::atomic<std::int64_t> g_peak{0};
}  // namespace

void enable(bool on) { g_enabled.store(on, std::memory_order_relaxed); }

bool enabled() { return g_enabled.load(std::memory_order_relaxed); }

void reset() {
    g_current.store(0, std::memory_order_relaxed);
    g_peak.store(0, std::memory_order_relaxed);
}

void add(std::int64_t bits) {
    if (!enabled() || bits == 0) return;
    std::int64_t cur = g_current.fetch_add(bits, std::memory_order_relaxed) + bits;
    std::int64_t peak = g_peak.load(std::memory_order_relaxed);
    while (cur > peak &&
           !g_peak.compare_exchange_weak(peak, cur, std::memory_order_relaxed)) {
    }
}

void sub(std::int64_t bits) {
    if (!enabled() || bits == 0) return;
    g_current.fetch_sub(bits, std::memory_order_relaxed);
}

Probe probe() {
    return {g_current.load(std::memory_order_relaxed), g_peak.load(std::memory_order_relaxed)};
}

}  // namespace holoprec::ledger
