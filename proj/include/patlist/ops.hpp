#pragma once

#include <cstdint>

// Elementary-operation counter shared by every lister. Counting is per
// thread so corpus runs on worker threads do not interfere.
namespace patlist::ops {

inline thread_local std::uint64_t counter = 0;

inline void add(std::uint64_t n = 1) { counter += n; }
inline std::uint64_t count() { return counter; }
inline void reset() { counter = 0; }

// Excludes instrumentation bookkeeping from the tally.
class Pause {
public:
    Pause() : saved_(counter) {}
    ~Pause() { counter = saved_; }
    Pause(const Pause&) = delete;
    Pause& operator=(const Pause&) = delete;

private:
    std::uint64_t saved_;
};

}  // namespace patlist::ops
