// Deterministic memory accounting: a process-wide ledger of the total bit
// size of live tracked objects (product matrices, truncated accumulators).
// This is the quantity the space analysis talks about, unlike process RSS.
// Updates are atomic so parallel product trees can share the ledger.

#pragma once

#include <atomic>
#include <cstdint>

namespace holoprec::ledger {

struct Probe {
    std::int64_t current_bits = 0;
    std::int64_t peak_bits = 0;
};

void enable(bool on);
bool enabled();
void reset();
void add(std::int64_t bits);
void sub(std::int64_t bits);
Probe probe();

// RAII handle for one tracked object's contribution.
class Registration {
public:
    Registration() = default;
    explicit Registration(std::int64_t bits) { update(bits); }
    Registration(const Registration&) = delete;
    Registration& operator=(const Registration&) = delete;
    Registration(Registration&& o) noexcept : amount_(o.amount_) { o.amount_ = 0; }
    Registration& operator=(Registration&& o) noexcept {
        if (this != &o) {
            release();
            amount_ = o.amount_;
            o.amount_ = 0;
        }
        return *this;
    }
    ~Registration() { release(); }

    void update(std::int64_t bits) {
        if (bits != amount_) {
            add(bits - amount_);
            amount_ = bits;
        }
    }
    void release() {
        if (amount_ != 0) {
            sub(amount_);
            amount_ = 0;
        }
    }

private:
    std::int64_t amount_ = 0;
};

}  // namespace holoprec::ledger
