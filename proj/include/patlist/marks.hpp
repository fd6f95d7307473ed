#pragma once

#include <cstdint>
#include <vector>

namespace patlist {

// Membership array cleared in O(1) by bumping an epoch.
class EpochMarks {
public:
    explicit EpochMarks(std::size_t n = 0) : stamp_(n, 0) {}

    void resize(std::size_t n) { stamp_.assign(n, 0), epoch_ = 1; }
    void clear() {
        if (++epoch_ == 0) {
            std::fill(stamp_.begin(), stamp_.end(), 0u);
            epoch_ = 1;
        }
    }
    void set(std::size_t i) { stamp_[i] = epoch_; }
    void reset(std::size_t i) { stamp_[i] = 0; }
    bool test(std::size_t i) const { return stamp_[i] == epoch_; }

private:
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 1;
};

}  // namespace patlist
