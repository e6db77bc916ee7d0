#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

namespace csl {

/// Binomial coefficients C(n, k) for n, k <= 64.
std::uint64_t binomial(int n, int k) noexcept;

/// Colex rank of a bitmask among all masks with the same popcount:
/// rank = sum_k C(p_k, k+1) over set bit positions p_0 < p_1 < ...
/// This is the order in which increasing integers visit the masks.
std::uint64_t colex_rank(std::uint64_t mask) noexcept;

/// Next larger integer with the same popcount.
inline std::uint64_t next_combination(std::uint64_t v) noexcept {
    const std::uint64_t t = v | (v - 1);
    return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

/// All `ups`-element subsets of `sites` sites as bitmasks, in rank order.
class ConfigurationSpace {
  public:
    ConfigurationSpace(int sites, int ups);

    [[nodiscard]] int sites() const noexcept { return sites_; }
    [[nodiscard]] int ups() const noexcept { return ups_; }
    [[nodiscard]] std::size_t size() const noexcept { return masks_.size(); }
    [[nodiscard]] std::uint64_t mask(std::size_t rank) const noexcept { return masks_[rank]; }
    [[nodiscard]] std::size_t rank(std::uint64_t mask) const noexcept {
        return static_cast<std::size_t>(colex_rank(mask));
    }
    [[nodiscard]] bool contains(std::uint64_t mask) const noexcept {
        return std::popcount(mask) == ups_ && (sites_ == 64 || (mask >> sites_) == 0);
    }

  private:
    int sites_;
    int ups_;
    std::vector<std::uint64_t> masks_;
};

} // namespace csl
