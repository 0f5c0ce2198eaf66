#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "prrtc/nn.hpp"
#include "prrtc/types.hpp"

namespace prrtc {

// Append-only tree with preallocated storage and two-phase publication:
// a writer reserves a slot with an atomic counter, fills it, then advances
// the published length past its slot once the predecessor slots are
// published. Readers only ever touch indices below published(), which are
// immutable from then on.
class Tree {
public:
    static constexpr std::size_t kRootParent = SIZE_MAX;
    static constexpr std::size_t kFull = SIZE_MAX;

    Tree(std::size_t capacity, std::size_t dof)
        : capacity_(capacity), dof_(dof), configs_(capacity * dof), parents_(capacity) {}

    // Returns the new node index, or kFull when capacity is exhausted.
    std::size_t append(ConfigView config, std::size_t parent) {
        const std::size_t slot = reserved_.fetch_add(1, std::memory_order_relaxed);
        if (slot >= capacity_) return kFull;
        double* dst = configs_.data() + slot * dof_;
        for (std::size_t d = 0; d < dof_; ++d) dst[d] = config[d];
        parents_[slot] = parent;
        // Publish in slot order so published() always covers a fully
        // written prefix.
        int spins = 0;
        while (published_.load(std::memory_order_acquire) != slot) {
            if (++spins > 64) {
                std::this_thread::yield();
                spins = 0;
            }
        }
        published_.store(slot + 1, std::memory_order_release);
        return slot;
    }

    std::size_t published() const { return published_.load(std::memory_order_acquire); }

    ConfigView config(std::size_t i) const { return {configs_.data() + i * dof_, dof_}; }
    std::size_t parent(std::size_t i) const { return parents_[i]; }

    TreeView view(std::size_t snapshot) const { return {configs_.data(), dof_, snapshot}; }

    std::size_t capacity() const { return capacity_; }
    std::size_t dof() const { return dof_; }

private:
    std::size_t capacity_;
    std::size_t dof_;
    std::vector<double> configs_;
    std::vector<std::size_t> parents_;
    std::atomic<std::size_t> reserved_{0};
    std::atomic<std::size_t> published_{0};
};

}  // namespace prrtc
